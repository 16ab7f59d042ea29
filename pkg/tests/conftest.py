import itertools

import pytest
from hypothesis import settings, strategies as st

from trimatid.boolmat import BoolMatrix
from trimatid.terms import Word, var

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

X, Y, Z = var("x"), var("y"), var("z")


def words_over(letters, max_len, min_len=1):
    for n in range(min_len, max_len + 1):
        for t in itertools.product(letters, repeat=n):
            yield Word(t)


def word_st(letters=(X, Y), min_size=1, max_size=6):
    return st.lists(st.sampled_from(letters), min_size=min_size, max_size=max_size).map(lambda t: Word(tuple(t)))


@st.composite
def matrix_st(draw, n=None, kind="triangular"):
    n = draw(st.integers(1, 5)) if n is None else n
    rows = []
    for i in range(n):
        lo = 0 if kind == "full" else i
        bits = 0
        for j in range(lo, n):
            if kind == "unitriangular" and j == i:
                bits |= 1 << j
            elif draw(st.booleans()):
                bits |= 1 << j
        rows.append(bits)
    return BoolMatrix(n, tuple(rows))


@pytest.fixture
def xy():
    return X, Y
