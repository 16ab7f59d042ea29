"""The nine-element semigroup C4 inside T_4 and the Hitting Set reduction.

A Hitting Set instance over {1..r} asks for H meeting every listed set in
exactly one element.  ``reduce_hitting_set`` turns it into a semigroup
identity w = w^2 that fails in C4 exactly when such an H exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, TextIO

from .boolmat import BoolMatrix, is_idempotent, mat_mul
from .oracle import MatrixSpace, Substitution, eval_word
from .terms import SEMIGROUP_IDENTITY, Claim, Word, var

C4_TAGS = ("e", "a", "b", "a2", "ab", "ba", "b2", "a2b", "ba2")

_C4_LITERALS = {
    "e": "1 0 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1",
    "a": "1 1 0 0; 0 0 0 1; 0 0 0 0; 0 0 0 1",
    "b": "1 0 1 0; 0 0 0 0; 0 0 0 1; 0 0 0 1",
    "a2": "1 1 0 1; 0 0 0 1; 0 0 0 0; 0 0 0 1",
    "ab": "1 0 1 0; 0 0 0 1; 0 0 0 0; 0 0 0 1",
    "ba": "1 1 0 0; 0 0 0 0; 0 0 0 1; 0 0 0 1",
    "b2": "1 0 1 1; 0 0 0 0; 0 0 0 1; 0 0 0 1",
    "a2b": "1 0 1 1; 0 0 0 1; 0 0 0 0; 0 0 0 1",
    "ba2": "1 1 0 1; 0 0 0 0; 0 0 0 1; 0 0 0 1",
}

IDEAL_TAGS = ("a2", "b2", "a2b", "ba2")


class ClosureError(ValueError):
    """A product of C4 matrices left the nine-element set."""


@dataclass(frozen=True)
class C4Element:
    tag: str
    matrix: BoolMatrix

    def __mul__(self, other: C4Element) -> C4Element:
        return c4_element(mat_mul(self.matrix, other.matrix))

    def __str__(self) -> str:
        return self.tag


@lru_cache(maxsize=None)
def c4_elements() -> tuple[C4Element, ...]:
    return tuple(C4Element(t, BoolMatrix.parse(_C4_LITERALS[t])) for t in C4_TAGS)


@lru_cache(maxsize=None)
def _by_matrix() -> dict[BoolMatrix, C4Element]:
    return {el.matrix: el for el in c4_elements()}


def c4(tag: str) -> C4Element:
    return c4_elements()[C4_TAGS.index(tag)]


def c4_element(m: BoolMatrix) -> C4Element:
    try:
        return _by_matrix()[m]
    except KeyError:
        raise ClosureError(f"matrix [{m}] is not in C4") from None


@lru_cache(maxsize=None)
def c4_table() -> dict[tuple[str, str], str]:
    """Multiplication table on tags, computed from the matrices."""
    table = {}
    for x in c4_elements():
        for y in c4_elements():
            table[x.tag, y.tag] = (x * y).tag
    return table


@lru_cache(maxsize=None)
def c4_space() -> MatrixSpace:
    return MatrixSpace("C4", 4, [el.matrix for el in c4_elements()])


def product(*tags: str) -> str:
    """Tag of the product of the given tags, left to right."""
    table = c4_table()
    acc = tags[0]
    for t in tags[1:]:
        acc = table[acc, t]
    return acc


def verify_c4_properties() -> dict[str, bool]:
    """Check the listed structural facts about C4 by direct computation."""
    els = c4_elements()
    tags = [el.tag for el in els]
    idem = {t for t in tags if is_idempotent(c4(t).matrix)}

    # Subsemigroup generated by the idempotents.
    gen = set(idem)
    while True:
        more = {product(s, t) for s in gen for t in gen} - gen
        if not more:
            break
        gen |= more

    with_14 = {el.tag for el in els if el.matrix.entry(1, 4)}
    report = {
        "0: a^3=a^2, b^3=b^2, ab^2=a^2b=a^2b^2": (
            product("a", "a", "a") == product("a", "a")
            and product("b", "b", "b") == product("b", "b")
            and product("a", "b", "b") == product("a", "a", "b") == product("a", "a", "b", "b")
        ),
        "1: aba=a, bab=b": product("a", "b", "a") == "a" and product("b", "a", "b") == "b",
        "2: all but a, b idempotent": idem == set(tags) - {"a", "b"},
        "3: squares idempotent": all(product(t, t) in idem for t in tags),
        "4: products of idempotents idempotent": gen <= idem,
        "5: I is an ideal of the (1,4) matrices": (
            with_14 == set(IDEAL_TAGS)
            and all(product(c, d) in with_14 and product(d, c) in with_14 for c in tags for d in IDEAL_TAGS)
        ),
    }
    return report


@dataclass(frozen=True)
class HittingSetInstance:
    """Sets over the 1-based universe {1..r}; duplicate indices are dropped."""

    r: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("universe size must be at least 1")
        if not self.sets:
            raise ValueError("a Hitting Set instance needs at least one set")
        for s in self.sets:
            if not s:
                raise ValueError("empty sets are not allowed")
            if not all(1 <= j <= self.r for j in s):
                raise ValueError(f"set {sorted(s)} is not inside 1..{self.r}")

    @classmethod
    def of(cls, r: int, sets: Iterable[Iterable[int]]) -> HittingSetInstance:
        return cls(r, tuple(frozenset(s) for s in sets))

    @property
    def q(self) -> int:
        return len(self.sets)

    def is_hitting_set(self, h: Iterable[int]) -> bool:
        h = set(h)
        return all(len(h & s) == 1 for s in self.sets)


def parse_instance(text: str) -> HittingSetInstance:
    """First line ``r q``, then q lines of 1-based indices."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty instance file")
    try:
        r, q = (int(t) for t in lines[0].split())
        sets = [[int(t) for t in ln.split()] for ln in lines[1:]]
    except ValueError:
        raise ValueError("malformed instance: expected integers") from None
    if len(sets) != q:
        raise ValueError(f"header announces {q} sets, found {len(sets)}")
    return HittingSetInstance.of(r, sets)


def read_instance(fh: TextIO) -> HittingSetInstance:
    return parse_instance(fh.read())


def format_instance(inst: HittingSetInstance) -> str:
    lines = [f"{inst.r} {inst.q}"]
    lines += [" ".join(str(j) for j in sorted(s)) for s in inst.sets]
    return "\n".join(lines) + "\n"


def _x(j: int):
    return var(f"x{j}")


def _y(j: int):
    return var(f"y{j}")


def reduction_word(inst: HittingSetInstance) -> Word:
    """w = z u_1 ... u_q v_1 ... v_r with u_i = (x_U z)^2 and v_j = (x_j y_j z y_j x_j z)^2."""
    z = var("z")
    letters = [z]
    for s in inst.sets:
        block = [_x(j) for j in sorted(s)] + [z]
        letters += block * 2
    for j in range(1, inst.r + 1):
        block = [_x(j), _y(j), z, _y(j), _x(j), z]
        letters += block * 2
    return Word(tuple(letters))


def reduce_hitting_set(inst: HittingSetInstance) -> Claim:
    w = reduction_word(inst)
    return Claim(SEMIGROUP_IDENTITY, w, w * w)


def size_bound(r: int, q: int) -> int:
    return 3 * (1 + 2 * (r + 1) * q + 12 * r)


def hitting_set_exists(inst: HittingSetInstance, max_r: int = 20) -> Optional[frozenset[int]]:
    """Smallest-first search over all subsets of {1..r}."""
    if inst.r > max_r:
        raise ValueError(f"r={inst.r} is too large for exhaustive search (limit {max_r})")
    universe = range(1, inst.r + 1)
    for size in range(inst.r + 1):
        for h in itertools.combinations(universe, size):
            if inst.is_hitting_set(h):
                return frozenset(h)
    return None


def forward_substitution(inst: HittingSetInstance, h: Iterable[int]) -> Substitution:
    """x_j -> b, y_j -> e for j in H; x_j -> e, y_j -> b otherwise; z -> a."""
    h = set(h)
    a, b, e = (c4(t).matrix for t in ("a", "b", "e"))
    images = {var("z"): a}
    for j in range(1, inst.r + 1):
        images[_x(j)] = b if j in h else e
        images[_y(j)] = e if j in h else b
    return Substitution(4, images)


def extract_hitting_set(inst: HittingSetInstance, phi: Substitution) -> frozenset[int]:
    """Read a hitting set off a substitution into C4 that falsifies the reduced identity.

    When z goes to ``a`` the set is where x_j goes to ``b``; when z goes to
    ``b`` the roles of ``a`` and ``b`` swap.
    """
    w = reduction_word(inst)
    value = eval_word(w, phi)
    if mat_mul(value, value) == value:
        raise ValueError("substitution does not falsify the reduced identity")
    zt = c4_element(phi[var("z")]).tag
    if zt not in ("a", "b"):
        raise ValueError(f"z maps to {zt}, but a falsifying substitution sends z to a or b")
    marker = "b" if zt == "a" else "a"
    h = frozenset(j for j in range(1, inst.r + 1) if c4_element(phi[_x(j)]).tag == marker)
    if not inst.is_hitting_set(h):
        raise AssertionError(f"extracted set {sorted(h)} is not a hitting set")
    return h


def all_instances(max_r: int, max_q: int) -> Iterable[HittingSetInstance]:
    """Every instance with r <= max_r and 1 <= q <= max_q, sets as ordered lists."""
    for r in range(1, max_r + 1):
        subsets = [frozenset(c) for size in range(1, r + 1) for c in itertools.combinations(range(1, r + 1), size)]
        for q in range(1, max_q + 1):
            for family in itertools.product(subsets, repeat=q):
                yield HittingSetInstance(r, family)
