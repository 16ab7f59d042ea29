"""Languages of the form S1* u1 S2* ... uk S(k+1)* over sets of variables.

Text syntax: ``{x,y}* x {}* x {x,y}*`` -- sets in braces followed by ``*``,
alternating with single marker variables.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .boolmat import identity
from .decider import sem_inequality_holds
from .oracle import build_phi_uv, eval_word
from .terms import Variable, Word, var, vars_of_mask


class LanguageSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleLanguage:
    markers: tuple[Variable, ...]
    sigmas: tuple[frozenset[Variable], ...]

    def __post_init__(self) -> None:
        if len(self.sigmas) != len(self.markers) + 1:
            raise ValueError(f"{len(self.markers)} markers need {len(self.markers) + 1} sets, got {len(self.sigmas)}")

    @property
    def k(self) -> int:
        return len(self.markers)

    def __contains__(self, w: Word) -> bool:
        return language_member_scan(w, self)

    def __str__(self) -> str:
        parts = []
        for i, s in enumerate(self.sigmas):
            parts.append("{" + ",".join(v.name for v in sorted(s)) + "}*")
            if i < self.k:
                parts.append(self.markers[i].name)
        return " ".join(parts)


_LANG_TOKEN = re.compile(r"\s*(?:\{(?P<set>[^}]*)\}\s*\*|(?P<name>[a-zA-Z][a-zA-Z0-9_]*))")


def parse_language(text: str) -> SimpleLanguage:
    pos = 0
    sigmas: list[frozenset[Variable]] = []
    markers: list[Variable] = []
    expect_set = True
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _LANG_TOKEN.match(text, pos)
        if m is None:
            raise LanguageSyntaxError(f"unexpected input at position {pos}: {text!r}")
        if m.group("set") is not None:
            if not expect_set:
                raise LanguageSyntaxError(f"two sets in a row at position {pos}: {text!r}")
            names = [t.strip() for t in m.group("set").split(",") if t.strip()]
            sigmas.append(frozenset(var(n) for n in names))
        else:
            if expect_set:
                raise LanguageSyntaxError(f"expected a set at position {pos}: {text!r}")
            markers.append(var(m.group("name")))
        expect_set = not expect_set
        pos = m.end()
    if expect_set:
        raise LanguageSyntaxError(f"language must end with a set: {text!r}")
    return SimpleLanguage(tuple(markers), tuple(sigmas))


def language_member_scan(w: Word, lang: SimpleLanguage) -> bool:
    """Simulate the obvious nondeterministic automaton; state l = markers read so far."""
    k = lang.k
    states = {0}
    for c in w.letters:
        nxt = set()
        for l in states:
            if c in lang.sigmas[l]:
                nxt.add(l)
            if l < k and lang.markers[l] == c:
                nxt.add(l + 1)
        if not nxt:
            return False
        states = nxt
    return k in states


def realizing_word(lang: SimpleLanguage) -> tuple[Word, tuple[int, ...]]:
    """A word whose i-th segment has alphabet exactly S_i, plus the marker positions."""
    letters: list[Variable] = []
    pos = []
    for i, s in enumerate(lang.sigmas):
        letters.extend(sorted(s))
        if i < lang.k:
            pos.append(len(letters))
            letters.append(lang.markers[i])
    return Word(tuple(letters)), tuple(pos)


def language_member_matrix(w: Word, lang: SimpleLanguage, n: Optional[int] = None) -> bool:
    """Membership through the detecting substitution into T_n: entry (1, k+1) of w's value."""
    k = lang.k
    n = k + 1 if n is None else n
    if n < k + 1:
        raise ValueError(f"n={n} is too small for a language with {k} markers")
    host, occ = realizing_word(lang)
    phi = build_phi_uv(Word(lang.markers), host, occ, n)
    value = eval_word(w, phi) if w.letters else identity(n)
    return value.entry(1, k + 1) == 1


def distinguishing_language(w: Word, w2: Word, n: int) -> Optional[SimpleLanguage]:
    """A language with fewer than n markers containing ``w`` but not ``w2``, if one exists."""
    v = sem_inequality_holds(w, w2, n)
    if v.holds:
        return None
    ev = v.witness
    return SimpleLanguage(ev.subword.letters, tuple(frozenset(vars_of_mask(g)) for g in ev.profile))


def count_languages(sigma_size: int, k: int) -> int:
    return sigma_size**k * (2**sigma_size) ** (k + 1)


def enumerate_languages(
    sigma: Iterable[Variable], n: int, include_empty_marker: bool = True, cap: int = 1 << 20
) -> Iterator[SimpleLanguage]:
    """All languages with markers and sets drawn from ``sigma`` and k < n markers.

    ``include_empty_marker`` adds the k = 0 languages S1*.
    """
    sig = sorted(set(sigma))
    ks = range(0 if include_empty_marker else 1, n)
    total = sum(count_languages(len(sig), k) for k in ks)
    if total > cap:
        raise ValueError(f"{total} languages exceed the cap of {cap}")
    subsets = [frozenset(c) for size in range(len(sig) + 1) for c in itertools.combinations(sig, size)]
    return _languages(sig, subsets, ks)


def _languages(sig, subsets, ks) -> Iterator[SimpleLanguage]:
    for k in ks:
        for markers in itertools.product(sig, repeat=k):
            for sigmas in itertools.product(subsets, repeat=k + 1):
                yield SimpleLanguage(tuple(markers), tuple(sigmas))
