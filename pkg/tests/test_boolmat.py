import numpy as np
import pytest
from hypothesis import given, strategies as st

from trimatid.boolmat import (
    BoolMatrix,
    DimensionError,
    SpaceTooLarge,
    enumerate_space,
    identity,
    is_idempotent,
    mat_add,
    mat_le,
    mat_mul,
    matrix_unit,
    space_size,
    zero,
)
from trimatid.hardness import c4

from conftest import matrix_st


def as_array(m):
    return np.array(m.to_lists(), dtype=np.int64)


def test_parse_and_format_roundtrip():
    m = BoolMatrix.parse("1 1 0; 0 0 1; 0 0 1")
    assert m.to_lists() == [[1, 1, 0], [0, 0, 1], [0, 0, 1]]
    assert str(m) == "1 1 0; 0 0 1; 0 0 1"
    assert BoolMatrix.parse(str(m)) == m


@pytest.mark.parametrize("bad", ["1 2; 0 1", "1 1; 0", "a b; c d"])
def test_parse_rejects_bad_literals(bad):
    with pytest.raises(ValueError):
        BoolMatrix.parse(bad)


def test_entry_is_one_based():
    m = matrix_unit(3, 1, 3)
    assert m.entry(1, 3) == 1
    assert sum(m.entry(i, j) for i in range(1, 4) for j in range(1, 4)) == 1


def test_unit_sum():
    s = mat_add(matrix_unit(2, 1, 1), matrix_unit(2, 1, 2))
    assert s.to_lists() == [[1, 1], [0, 0]]


def test_unit_product_rule():
    assert mat_mul(matrix_unit(3, 1, 2), matrix_unit(3, 2, 3)) == matrix_unit(3, 1, 3)
    assert mat_mul(matrix_unit(2, 1, 2), matrix_unit(2, 1, 2)) == zero(2)


def test_displayed_phi_matrix():
    m = matrix_unit(4, 1, 1) + matrix_unit(4, 2, 3) + matrix_unit(4, 3, 4) + matrix_unit(4, 4, 4)
    assert m == BoolMatrix.parse("1 0 0 0; 0 0 1 0; 0 0 0 1; 0 0 0 1")


def test_one_by_one():
    assert matrix_unit(1, 1, 1).to_lists() == [[1]]
    assert [m.to_lists() for m in enumerate_space("triangular", 1)] == [[[0]], [[1]]]


def test_le_examples():
    e = matrix_unit(2, 1, 1) + matrix_unit(2, 1, 2)
    assert not mat_le(e, matrix_unit(2, 1, 1))
    assert mat_le(matrix_unit(2, 1, 1), e)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        mat_mul(zero(2), zero(3))
    with pytest.raises(DimensionError):
        mat_add(zero(2), zero(3))


@pytest.mark.parametrize("kind,n,count", [("triangular", 2, 8), ("unitriangular", 3, 8), ("triangular", 3, 64),
                                          ("full", 2, 16), ("unitriangular", 1, 1)])
def test_space_counts(kind, n, count):
    ms = list(enumerate_space(kind, n))
    assert len(ms) == count == space_size(kind, n)
    assert len(set(ms)) == count
    for m in ms:
        if kind != "full":
            assert m.is_upper_triangular()
        if kind == "unitriangular":
            assert m.is_unitriangular()


def test_space_cap():
    with pytest.raises(SpaceTooLarge):
        list(enumerate_space("triangular", 5, cap=100))


def test_idempotents():
    assert is_idempotent(identity(4))
    assert not is_idempotent(c4("a").matrix)
    assert is_idempotent(c4("ab").matrix)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(matrix_st(n, "full"), matrix_st(n, "full"))))
def test_mul_matches_integer_product(pair):
    a, b = pair
    expect = (as_array(a) @ as_array(b) > 0).astype(int)
    assert as_array(mat_mul(a, b)).tolist() == expect.tolist()


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(matrix_st(n), matrix_st(n), matrix_st(n))))
def test_semiring_laws(triple):
    a, b, c = triple
    n = a.n
    assert a + a == a
    assert a + zero(n) == a
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a * identity(n) == a == identity(n) * a
    assert mat_le(zero(n), a)
    assert mat_le(a, a + b)
    assert mat_le(a, b) == (a + b == b)
    # Triangular and unitriangular matrices are closed under both operations.
    assert (a * b).is_upper_triangular() and (a + b).is_upper_triangular()


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(matrix_st(n, "unitriangular"), matrix_st(n, "unitriangular"))))
def test_unitriangular_closed(pair):
    a, b = pair
    assert (a * b).is_unitriangular() and (a + b).is_unitriangular()


@given(matrix_st(kind="full"))
def test_code_roundtrip(m):
    assert BoolMatrix.from_code(m.n, m.code) == m
    assert BoolMatrix.from_lists(m.to_lists()) == m
