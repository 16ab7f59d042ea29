"""Boolean matrices with bit-packed rows.

Entry ``(i, j)`` of the public API is 1-based, as in the usual matrix
notation; internally row ``i - 1`` stores column ``j - 1`` as bit ``j - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

MAX_DIM = 64
DEFAULT_SPACE_CAP = 1 << 24

KINDS = ("triangular", "unitriangular", "full")


class DimensionError(ValueError):
    """Raised when two matrices of different sizes are combined."""


class SpaceTooLarge(ValueError):
    """Raised when an enumeration would exceed the configured cap."""


def _check_dim(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"matrix dimension must be a positive integer, got {n!r}")
    if n > MAX_DIM:
        raise ValueError(f"matrix dimension {n} exceeds the supported maximum {MAX_DIM}")


@dataclass(frozen=True, slots=True)
class BoolMatrix:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_dim(self.n)
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        limit = 1 << self.n
        for r in self.rows:
            if not 0 <= r < limit:
                raise ValueError(f"row {r:#x} has bits outside a {self.n}-column matrix")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> BoolMatrix:
        n = len(entries)
        rows = []
        for row in entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
            bits = 0
            for j, a in enumerate(row):
                if a not in (0, 1, True, False):
                    raise ValueError(f"entries must be 0 or 1, got {a!r}")
                if a:
                    bits |= 1 << j
            rows.append(bits)
        return cls(n, tuple(rows))

    @classmethod
    def parse(cls, text: str) -> BoolMatrix:
        """Read the ``1 1 0; 0 0 1; 0 0 1`` literal format."""
        chunks = [c.split() for c in text.strip().split(";")]
        try:
            entries = [[int(a) for a in row] for row in chunks]
        except ValueError:
            raise ValueError(f"bad matrix literal: {text!r}") from None
        return cls.from_lists(entries)

    @classmethod
    def from_code(cls, n: int, code: int) -> BoolMatrix:
        mask = (1 << n) - 1
        return cls(n, tuple((code >> (i * n)) & mask for i in range(n)))

    @property
    def code(self) -> int:
        """All n*n entries packed row-major into one integer."""
        c = 0
        for i, r in enumerate(self.rows):
            c |= r << (i * self.n)
        return c

    def entry(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"index ({i}, {j}) out of range for n={self.n}")
        return (self.rows[i - 1] >> (j - 1)) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def is_upper_triangular(self) -> bool:
        return all(r & ((1 << i) - 1) == 0 for i, r in enumerate(self.rows))

    def is_unitriangular(self) -> bool:
        return self.is_upper_triangular() and all((r >> i) & 1 for i, r in enumerate(self.rows))

    def __add__(self, other: BoolMatrix) -> BoolMatrix:
        return mat_add(self, other)

    def __matmul__(self, other: BoolMatrix) -> BoolMatrix:
        return mat_mul(self, other)

    def __mul__(self, other: BoolMatrix) -> BoolMatrix:
        return mat_mul(self, other)

    def __le__(self, other: BoolMatrix) -> bool:
        return mat_le(self, other)

    def __str__(self) -> str:
        return "; ".join(" ".join(str(a) for a in row) for row in self.to_lists())


def _same_dim(a: BoolMatrix, b: BoolMatrix) -> None:
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")


def mat_add(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    _same_dim(a, b)
    return BoolMatrix(a.n, tuple(x | y for x, y in zip(a.rows, b.rows)))


def mat_mul(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    _same_dim(a, b)
    out = []
    brows = b.rows
    for r in a.rows:
        acc = 0
        k = 0
        while r:
            if r & 1:
                acc |= brows[k]
            r >>= 1
            k += 1
        out.append(acc)
    return BoolMatrix(a.n, tuple(out))


def mat_le(a: BoolMatrix, b: BoolMatrix) -> bool:
    """The semiring order: ``a <= b`` iff ``a + b == b``."""
    _same_dim(a, b)
    return all(x & ~y == 0 for x, y in zip(a.rows, b.rows))


def zero(n: int) -> BoolMatrix:
    return BoolMatrix(n, (0,) * n)


def identity(n: int) -> BoolMatrix:
    return BoolMatrix(n, tuple(1 << i for i in range(n)))


def matrix_unit(n: int, i: int, j: int) -> BoolMatrix:
    """The matrix with a single 1 at the 1-based position ``(i, j)``."""
    _check_dim(n)
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"matrix unit ({i}, {j}) out of range for n={n}")
    rows = [0] * n
    rows[i - 1] = 1 << (j - 1)
    return BoolMatrix(n, tuple(rows))


def is_idempotent(a: BoolMatrix) -> bool:
    return mat_mul(a, a) == a


def _free_positions(kind: str, n: int) -> list[tuple[int, int]]:
    if kind == "triangular":
        return [(i, j) for i in range(n) for j in range(i, n)]
    if kind == "unitriangular":
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    if kind == "full":
        return [(i, j) for i in range(n) for j in range(n)]
    raise ValueError(f"unknown matrix space {kind!r}; expected one of {KINDS}")


def space_size(kind: str, n: int) -> int:
    _check_dim(n)
    return 1 << len(_free_positions(kind, n))


def enumerate_space(kind: str, n: int, cap: int = DEFAULT_SPACE_CAP) -> Iterator[BoolMatrix]:
    """Yield every matrix of T_n, U_n or the full matrix space exactly once.

    The order is that of a binary counter over the free positions taken in
    row-major order, with the first free position as the low bit.
    """
    _check_dim(n)
    free = _free_positions(kind, n)
    size = 1 << len(free)
    if size > cap:
        raise SpaceTooLarge(f"{kind} space for n={n} has {size} elements, cap is {cap}")
    base = [0] * n
    if kind == "unitriangular":
        base = [1 << i for i in range(n)]
    return _enumerate(n, free, base, size)


def _enumerate(n: int, free: list[tuple[int, int]], base: list[int], size: int) -> Iterator[BoolMatrix]:
    for counter in range(size):
        rows = list(base)
        for bit, (i, j) in enumerate(free):
            if (counter >> bit) & 1:
                rows[i] |= 1 << j
        yield BoolMatrix(n, tuple(rows))
