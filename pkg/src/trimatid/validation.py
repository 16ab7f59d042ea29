"""Input checks shared by the estimators and the command line."""

from __future__ import annotations

from typing import Any, Iterable

from .decider import STRUCTURES
from .terms import Claim, Word, parse_claim, parse_word

MAX_N = 64


def check_n(n: Any, name: str = "n") -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if not 1 <= n <= MAX_N:
        raise ValueError(f"{name} must lie in 1..{MAX_N}, got {n}")
    return n


def check_positive(value: Any, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return value


def check_structure(structure: str) -> str:
    if structure not in STRUCTURES:
        raise ValueError(f"unknown structure {structure!r}; expected one of {', '.join(STRUCTURES)}")
    return structure


def check_word(w: Word | str) -> Word:
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return parse_word(w)
    raise TypeError(f"expected a Word or a string, got {type(w).__name__}")


def check_claim(c: Claim | str) -> Claim:
    if isinstance(c, Claim):
        return c
    if isinstance(c, str):
        return parse_claim(c)
    raise TypeError(f"expected a Claim or a string, got {type(c).__name__}")


def _flatten(X: Any) -> list:
    # Accept lists, tuples, 1-d arrays and single-column 2-d arrays.
    if isinstance(X, (str, Claim, Word)):
        raise ValueError("expected a sequence of samples, got a single sample")
    items = list(X)
    out = []
    for it in items:
        if not isinstance(it, (str, Claim, Word)) and hasattr(it, "__len__"):
            if len(it) != 1:
                raise ValueError("each sample must be a single claim or word")
            it = it[0]
        out.append(it)
    return out


def check_claims(X: Iterable) -> list[Claim]:
    return [check_claim(c) for c in _flatten(X)]


def check_words(X: Iterable) -> list[Word]:
    return [check_word(w) for w in _flatten(X)]
