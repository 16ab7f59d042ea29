"""Semantic ground truth: evaluate claims under substitutions into matrix spaces.

Exhaustive checks enumerate substitutions as an odometer over the space's
element order, with variables sorted by id and the last variable turning
fastest.  Values are computed for whole blocks of substitutions at once with
numpy, either through a precomputed multiplication table (small spaces) or
through bitwise row products.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np

from .boolmat import (
    DEFAULT_SPACE_CAP,
    BoolMatrix,
    SpaceTooLarge,
    enumerate_space,
    mat_add,
    mat_le,
    mat_mul,
    matrix_unit,
    zero,
)
from .occurrences import Occurrence, gaps_of
from .terms import Claim, Polynomial, Side, Variable, Word, as_polynomial

TABLE_LIMIT = 1024
CHUNK = 1 << 18

SPACE_ALIASES = {"tri": "triangular", "triangular": "triangular", "unitri": "unitriangular", "unitriangular": "unitriangular"}


class Substitution(Mapping):
    """Variables to n x n matrices; unmapped variables go to the zero matrix."""

    def __init__(self, n: int, images: Mapping[Variable, BoolMatrix] | None = None):
        images = dict(images or {})
        for v, m in images.items():
            if m.n != n:
                raise ValueError(f"image of {v} has dimension {m.n}, expected {n}")
        self.n = n
        self._images = images

    def __getitem__(self, v: Variable) -> BoolMatrix:
        m = self._images.get(v)
        return zero(self.n) if m is None else m

    def __contains__(self, v: object) -> bool:
        return v in self._images

    def __iter__(self):
        return iter(sorted(self._images))

    def __len__(self) -> int:
        return len(self._images)

    def __repr__(self) -> str:
        body = ", ".join(f"{v.name}: [{m}]" for v, m in sorted(self._images.items()))
        return f"Substitution(n={self.n}, {{{body}}})"

    def to_dict(self) -> dict[str, str]:
        return {v.name: str(m) for v, m in sorted(self._images.items())}


def eval_word(w: Word, phi: Substitution) -> BoolMatrix:
    if not w.letters:
        raise ValueError("cannot evaluate the empty word in a semigroup")
    it = iter(w.letters)
    acc = phi[next(it)]
    for x in it:
        acc = mat_mul(acc, phi[x])
    return acc


def eval_polynomial(poly: Side, phi: Substitution) -> BoolMatrix:
    it = iter(as_polynomial(poly))
    acc = eval_word(next(it), phi)
    for w in it:
        acc = mat_add(acc, eval_word(w, phi))
    return acc


def violates(claim: Claim, phi: Substitution) -> bool:
    lo, hi = claim.polynomials()
    a, b = eval_polynomial(lo, phi), eval_polynomial(hi, phi)
    return a != b if claim.is_identity else not mat_le(a, b)


def build_phi_uv(u: Word, host: Word, occ: Occurrence, n: int) -> Substitution:
    """The substitution that detects occurrences of ``u`` with gaps inside those of ``occ``.

    A variable gets a diagonal 1 at row l when it lies in the l-th gap and a
    superdiagonal 1 at (l, l+1) when it is the l-th letter of ``u``.
    """
    k = len(u)
    if k >= n:
        raise ValueError(f"subword length {k} must be smaller than n={n}")
    if len(occ) != k or tuple(host.letters[p] for p in occ) != u.letters:
        raise ValueError(f"positions {occ} do not spell {u} in {host}")
    gaps = gaps_of(host, occ)
    images: dict[Variable, BoolMatrix] = {}
    for x in host.alphabet():
        m = zero(n)
        for l, g in enumerate(gaps, 1):
            if (g >> x.id) & 1:
                m = mat_add(m, matrix_unit(n, l, l))
        for l, ul in enumerate(u.letters, 1):
            if ul == x:
                m = mat_add(m, matrix_unit(n, l, l + 1))
        images[x] = m
    return Substitution(n, images)


def subword_criterion(u: Word, host: Word, occ: Occurrence, n: int, probe: Word) -> bool:
    """Entry (1, k+1) of the probe's value under the detecting substitution."""
    phi = build_phi_uv(u, host, occ, n)
    return eval_word(probe, phi).entry(1, len(u) + 1) == 1


# -- finite spaces ---------------------------------------------------------

@dataclass(eq=False)
class MatrixSpace:
    """A finite set of n x n Boolean matrices closed under product."""

    name: str
    n: int
    elements: list[BoolMatrix]
    codes: np.ndarray = field(init=False, repr=False)
    table: Optional[np.ndarray] = field(init=False, repr=False, default=None)

    def __post_init__(self) -> None:
        self.codes = np.array([m.code for m in self.elements], dtype=np.uint64)
        self.index = {m: i for i, m in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements in matrix space")
        if len(self.elements) <= TABLE_LIMIT:
            self.table = self._build_table()

    def __len__(self) -> int:
        return len(self.elements)

    def _build_table(self) -> np.ndarray:
        size = len(self.elements)
        left = np.repeat(np.arange(size), size)
        right = np.tile(np.arange(size), size)
        prod = _codes_from_rows(_rows_mul(self.rows_of(left), self.rows_of(right), self.n), self.n)
        order = np.argsort(self.codes)
        pos = np.minimum(np.searchsorted(self.codes[order], prod), size - 1)
        if not np.array_equal(self.codes[order][pos], prod):
            raise ValueError(f"{self.name} is not closed under multiplication")
        return order[pos].astype(np.int32).reshape(size, size)

    def rows_of(self, idx: np.ndarray) -> np.ndarray:
        """Row bitmasks, shape (n, len(idx)), for element indices ``idx``."""
        codes = self.codes[idx]
        mask = np.uint64((1 << self.n) - 1)
        return np.stack([(codes >> np.uint64(i * self.n)) & mask for i in range(self.n)])


@lru_cache(maxsize=None)
def standard_space(kind: str, n: int) -> MatrixSpace:
    kind = SPACE_ALIASES.get(kind, kind)
    return MatrixSpace(f"{kind}-{n}", n, list(enumerate_space(kind, n)))


def _resolve_space(space: str | MatrixSpace, n: Optional[int]) -> MatrixSpace:
    if isinstance(space, MatrixSpace):
        if n is not None and n != space.n:
            raise ValueError(f"space {space.name} has n={space.n}, not {n}")
        return space
    if n is None:
        raise ValueError("n is required for a named space")
    if space not in SPACE_ALIASES:
        raise ValueError(f"unknown space {space!r}")
    return standard_space(space, n)


def _rows_mul(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros_like(a)
    one = np.uint64(1)
    for i in range(n):
        acc = out[i]
        for k in range(n):
            acc |= ((a[i] >> np.uint64(k)) & one) * b[k]
    return out


def _codes_from_rows(rows: np.ndarray, n: int) -> np.ndarray:
    c = np.zeros(rows.shape[1], dtype=np.uint64)
    for i in range(n):
        c |= rows[i] << np.uint64(i * n)
    return c


def _word_codes(space: MatrixSpace, word_ids: Sequence[int], assign: dict[int, np.ndarray]) -> np.ndarray:
    if space.table is not None:
        vals = assign[word_ids[0]]
        for c in word_ids[1:]:
            vals = space.table[vals, assign[c]]
        return space.codes[vals]
    rows = space.rows_of(assign[word_ids[0]])
    for c in word_ids[1:]:
        rows = _rows_mul(rows, space.rows_of(assign[c]), space.n)
    return _codes_from_rows(rows, space.n)


def _poly_codes(space: MatrixSpace, poly: Polynomial, assign: dict[int, np.ndarray]) -> np.ndarray:
    acc = None
    for w in poly:
        c = _word_codes(space, w.ids, assign)
        acc = c if acc is None else acc | c
    return acc


def _violation_mask(claim: Claim, space: MatrixSpace, assign: dict[int, np.ndarray]) -> np.ndarray:
    lo, hi = claim.polynomials()
    a, b = _poly_codes(space, lo, assign), _poly_codes(space, hi, assign)
    if claim.is_identity:
        return a != b
    return (a & ~b) != 0


def _blocks(nvars: int, size: int, chunk: int) -> Iterator[tuple[int, list[np.ndarray]]]:
    total = size ** nvars
    for start in range(0, total, chunk):
        t = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = []
        for i in range(nvars):
            digits.append(((t // size ** (nvars - 1 - i)) % size).astype(np.int64))
        yield start, digits


def _substitution(space: MatrixSpace, vs: list[Variable], t: int) -> Substitution:
    size = len(space)
    images = {}
    for i, v in enumerate(vs):
        images[v] = space.elements[(t // size ** (len(vs) - 1 - i)) % size]
    return Substitution(space.n, images)


@dataclass(frozen=True)
class OracleVerdict:
    holds: bool
    substitution: Optional[Substitution] = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.holds


def count_substitutions(claim: Claim, space: MatrixSpace) -> int:
    return len(space) ** len(claim.variables())


def falsifying_substitutions(
    claim: Claim,
    n: Optional[int] = None,
    space: str | MatrixSpace = "triangular",
    cap: int = DEFAULT_SPACE_CAP,
) -> Iterator[Substitution]:
    """Every violating substitution, in enumeration order."""
    sp = _resolve_space(space, n)
    vs = claim.variables()
    total = len(sp) ** len(vs)
    if total > cap:
        raise SpaceTooLarge(f"{total} substitutions exceed the cap of {cap}")
    for start, digits in _blocks(len(vs), len(sp), CHUNK):
        assign = {v.id: d for v, d in zip(vs, digits)}
        bad = np.flatnonzero(_violation_mask(claim, sp, assign))
        for off in bad:
            yield _substitution(sp, vs, start + int(off))


def brute_force_check(
    claim: Claim,
    n: Optional[int] = None,
    space: str | MatrixSpace = "triangular",
    cap: int = DEFAULT_SPACE_CAP,
) -> OracleVerdict:
    """Try every substitution; report the first violator if there is one."""
    sp = _resolve_space(space, n)
    total = count_substitutions(claim, sp)
    for phi in falsifying_substitutions(claim, n, sp, cap):
        return OracleVerdict(False, phi, total)
    return OracleVerdict(True, None, total)


def random_matrix(rng: np.random.Generator, n: int, kind: str = "triangular") -> BoolMatrix:
    kind = SPACE_ALIASES.get(kind, kind)
    rows = []
    for i in range(n):
        lo = i if kind == "triangular" else i + 1
        bits = rng.integers(0, 2, size=n - lo)
        r = sum(1 << (lo + j) for j, b in enumerate(bits) if b)
        if kind == "unitriangular":
            r |= 1 << i
        rows.append(r)
    return BoolMatrix(n, tuple(rows))


def random_falsify(
    claim: Claim, n: int, trials: int, seed: int = 0, space: str = "triangular"
) -> Optional[Substitution]:
    """Sample substitutions uniformly; return the first violator found."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    vs = claim.variables()
    for _ in range(trials):
        phi = Substitution(n, {v: random_matrix(rng, n, space) for v in vs})
        if violates(claim, phi):
            return phi
    return None
