"""Words, polynomials, identities and inequalities, and their text syntax.

Grammar of a claim::

    claim      := polynomial ("=" | "<=") polynomial
    polynomial := word ("+" word)*
    word       := factor (["*"] factor)*
    factor     := NAME ["^" INT]

``NAME`` matches ``[a-zA-Z][a-zA-Z0-9_]*``.  A claim whose two sides are
single words is a semigroup claim; anything with a ``+`` is a semiring claim.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from typing import Iterable, Iterator, Union, overload

SEMIGROUP_IDENTITY = "semigroup-identity"
SEMIGROUP_INEQUALITY = "semigroup-inequality"
SEMIRING_IDENTITY = "semiring-identity"
SEMIRING_INEQUALITY = "semiring-inequality"
CLAIM_KINDS = (SEMIGROUP_IDENTITY, SEMIGROUP_INEQUALITY, SEMIRING_IDENTITY, SEMIRING_INEQUALITY)


@dataclass(frozen=True, order=True, slots=True)
class Variable:
    id: int
    name: str = ""

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"Variable({self.name!r})"


_lock = threading.Lock()
_by_name: dict[str, Variable] = {}
_by_id: list[Variable] = []
_NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


def var(name: str) -> Variable:
    """Return the interned variable called ``name``.

    Ids are handed out in order of first request and never change afterwards.
    """
    v = _by_name.get(name)
    if v is not None:
        return v
    if not _NAME_RE.match(name):
        raise ValueError(f"invalid variable name {name!r}")
    with _lock:
        v = _by_name.get(name)
        if v is None:
            v = Variable(len(_by_id), name)
            _by_id.append(v)
            _by_name[name] = v
    return v


def variables(*names: str) -> tuple[Variable, ...]:
    return tuple(var(n) for n in names)


def mask_of(vs: Iterable[Variable]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v.id
    return m


def variable_by_id(i: int) -> Variable:
    return _by_id[i]


def vars_of_mask(mask: int) -> list[Variable]:
    """Variables whose id bits are set in ``mask``, sorted by id."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(_by_id[i])
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True, slots=True)
class Word:
    letters: tuple[Variable, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Variable]:
        return iter(self.letters)

    @overload
    def __getitem__(self, i: int) -> Variable: ...
    @overload
    def __getitem__(self, i: slice) -> Word: ...

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i])
        return self.letters[i]

    def __mul__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> Word:
        if k < 0:
            raise ValueError("negative power of a word")
        return Word(self.letters * k)

    def alphabet(self) -> frozenset[Variable]:
        return frozenset(self.letters)

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(v.id for v in self.letters)

    @property
    def mask(self) -> int:
        return mask_of(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


EMPTY = Word(())


def word(text: str | Iterable[Variable] | Word) -> Word:
    """Build a word from text such as ``"x^2 y x"`` or from variables."""
    if isinstance(text, Word):
        return text
    if isinstance(text, str):
        return parse_word(text)
    return Word(tuple(text))


def alphabet(w: Word) -> frozenset[Variable]:
    return w.alphabet()


def format_word(w: Word) -> str:
    if not w.letters:
        return "ε"
    parts = []
    letters = w.letters
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        run = j - i
        parts.append(letters[i].name if run == 1 else f"{letters[i].name}^{run}")
        i = j
    return " ".join(parts)


class Polynomial:
    """A finite nonempty set of nonempty words.

    Summands keep their first-seen order for display, but equality and
    hashing ignore order and duplicates.
    """

    __slots__ = ("words", "_set")

    def __init__(self, words: Iterable[Word | str]):
        seen: dict[Word, None] = {}
        for w in words:
            w = word(w)
            if not w.letters:
                raise ValueError("a polynomial summand must be a nonempty word")
            seen.setdefault(w, None)
        if not seen:
            raise ValueError("a polynomial must have at least one summand")
        self.words: tuple[Word, ...] = tuple(seen)
        self._set = frozenset(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._set == other._set
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._set)

    def alphabet(self) -> frozenset[Variable]:
        out: set[Variable] = set()
        for w in self.words:
            out.update(w.letters)
        return frozenset(out)

    def size(self) -> int:
        return sum(len(w) for w in self.words)

    def __str__(self) -> str:
        return " + ".join(format_word(w) for w in self.words)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


Side = Union[Word, Polynomial]


def as_polynomial(side: Side) -> Polynomial:
    return side if isinstance(side, Polynomial) else Polynomial([side])


@dataclass(frozen=True)
class Claim:
    """An identity or inequality; for inequalities ``lhs`` is the lower side."""

    kind: str
    lhs: Side
    rhs: Side

    def __post_init__(self) -> None:
        if self.kind not in CLAIM_KINDS:
            raise ValueError(f"unknown claim kind {self.kind!r}")
        want = Polynomial if self.is_semiring else Word
        for side in (self.lhs, self.rhs):
            if not isinstance(side, want):
                raise TypeError(f"{self.kind} sides must be {want.__name__} values")
            if isinstance(side, Word) and not side.letters:
                raise ValueError("a side of a claim cannot be the empty word")

    @property
    def is_semiring(self) -> bool:
        return self.kind in (SEMIRING_IDENTITY, SEMIRING_INEQUALITY)

    @property
    def is_identity(self) -> bool:
        return self.kind in (SEMIGROUP_IDENTITY, SEMIRING_IDENTITY)

    def polynomials(self) -> tuple[Polynomial, Polynomial]:
        return as_polynomial(self.lhs), as_polynomial(self.rhs)

    def variables(self) -> list[Variable]:
        lo, hi = self.polynomials()
        return sorted(lo.alphabet() | hi.alphabet())

    def as_semiring(self) -> Claim:
        """The same claim with both sides read as polynomials."""
        if self.is_semiring:
            return self
        kind = SEMIRING_IDENTITY if self.is_identity else SEMIRING_INEQUALITY
        lo, hi = self.polynomials()
        return Claim(kind, lo, hi)

    def __str__(self) -> str:
        rel = "=" if self.is_identity else "<="
        return f"{self.lhs} {rel} {self.rhs}"


def identity_claim(lhs: Side | str, rhs: Side | str) -> Claim:
    return _make_claim(_side(lhs), _side(rhs), identity=True)


def inequality_claim(lower: Side | str, upper: Side | str) -> Claim:
    return _make_claim(_side(lower), _side(upper), identity=False)


def _side(s: Side | str) -> Side:
    if isinstance(s, str):
        p = parse_polynomial(s)
        return p.words[0] if len(p) == 1 else p
    return s


def _make_claim(lhs: Side, rhs: Side, identity: bool) -> Claim:
    if isinstance(lhs, Word) and isinstance(rhs, Word):
        kind = SEMIGROUP_IDENTITY if identity else SEMIGROUP_INEQUALITY
        return Claim(kind, lhs, rhs)
    kind = SEMIRING_IDENTITY if identity else SEMIRING_INEQUALITY
    return Claim(kind, as_polynomial(lhs), as_polynomial(rhs))


def claim_size(c: Claim) -> int:
    """Total length of all words on both sides."""
    lo, hi = c.polynomials()
    return lo.size() + hi.size()


def zimin(m: int) -> Word:
    """Z_1 = x1, Z_{m+1} = Z_m x_{m+1} Z_m."""
    if m < 1:
        raise ValueError("Zimin words are indexed from 1")
    z = Word((var("x1"),))
    for i in range(2, m + 1):
        z = z * Word((var(f"x{i}"),)) * z
    return z


# -- parsing ---------------------------------------------------------------

class ClaimSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[a-zA-Z][a-zA-Z0-9_]*)|(?P<pow>\^\s*(?P<exp>\d+))"
    r"|(?P<op><=|=|\+|\*))"
)


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ClaimSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastgroup) if m.lastgroup != "exp" else m.start("pow")
        if m.group("name"):
            out.append(("name", m.group("name"), start))
        elif m.group("pow"):
            out.append(("pow", m.group("exp"), m.start("pow")))
        else:
            out.append(("op", m.group("op"), start))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, msg: str) -> ClaimSyntaxError:
        tok = self.peek()
        return ClaimSyntaxError(msg, self.text, tok[2] if tok else len(self.text))

    def word(self) -> Word:
        letters: list[Variable] = []
        start = self.peek()
        if start is None or start[0] != "name":
            raise self.error("expected a variable")
        while True:
            tok = self.peek()
            if tok is None:
                break
            if tok[0] == "op" and tok[1] == "*":
                self.i += 1
                tok = self.peek()
                if tok is None or tok[0] != "name":
                    raise self.error("expected a variable after '*'")
            if tok[0] != "name":
                break
            self.i += 1
            v = var(tok[1])
            nxt = self.peek()
            if nxt is not None and nxt[0] == "pow":
                self.i += 1
                letters.extend([v] * int(nxt[1]))
            else:
                letters.append(v)
        if not letters:
            raise ClaimSyntaxError("empty word summand", self.text, start[2])
        return Word(tuple(letters))

    def polynomial(self) -> Polynomial:
        words = [self.word()]
        while (tok := self.peek()) is not None and tok[:2] == ("op", "+"):
            self.i += 1
            words.append(self.word())
        return Polynomial(words)

    def done(self) -> None:
        if self.peek() is not None:
            raise self.error("unexpected trailing input")


def parse_word(text: str) -> Word:
    p = _Parser(text)
    w = p.word()
    p.done()
    return w


def parse_polynomial(text: str) -> Polynomial:
    p = _Parser(text)
    poly = p.polynomial()
    p.done()
    return poly


def parse_claim(text: str) -> Claim:
    p = _Parser(text)
    if p.peek() is None:
        raise ClaimSyntaxError("empty claim", text, 0)
    lhs = p.polynomial()
    tok = p.peek()
    if tok is None or tok[0] != "op" or tok[1] not in ("=", "<="):
        raise p.error("expected '=' or '<='")
    p.i += 1
    if p.peek() is None:
        raise p.error("empty right-hand side")
    rhs = p.polynomial()
    p.done()
    identity = tok[1] == "="
    if len(lhs) == 1 and len(rhs) == 1:
        return _make_claim(lhs.words[0], rhs.words[0], identity)
    return _make_claim(lhs, rhs, identity)


def read_claims(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, text)`` for each claim line, skipping comments."""
    for lineno, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].strip()
        if text:
            yield lineno, text
