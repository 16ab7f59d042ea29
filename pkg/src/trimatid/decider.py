"""Combinatorial decision procedures for (T_n,+,.), (T_n,.,<=), (T_n,.) and (U_{n+1},.).

A semiring inequality W <= W' holds in T_n exactly when, for every k < n,
each occurrence of a length-k word in a summand of W with gaps G is matched
by an occurrence of the same word in a summand of W' whose gaps are
componentwise contained in G.  For single words only k = n - 1 needs
checking once the lower side has length at least n; shorter lower sides
are maximal, so they sit below nothing but themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .occurrences import (
    GapProfile,
    Occurrence,
    find_occurrence,
    format_profile,
    gaps_of,
    ids_to_word,
    leftmost_occurrence,
    minimal_profiles,
    occurrence_profiles,
    profile_dominates,
    subwords,
)
from .terms import Claim, Polynomial, Side, Word, as_polynomial

LOWER_IN_UPPER_MISSING = "lower-in-upper-missing"
LEFT_IN_RIGHT_MISSING = "left-in-right-missing"
RIGHT_IN_LEFT_MISSING = "right-in-left-missing"

STRUCTURES = ("tn-semiring", "tn-semigroup", "tn-ordered", "un-semigroup")


class StructureMismatch(ValueError):
    """The claim cannot be read in the requested structure."""


@dataclass(frozen=True)
class CounterEvidence:
    """An occurrence on one side that the other side fails to match.

    ``host`` is the summand the occurrence lives in and ``positions`` the
    0-based positions of ``subword`` inside it.
    """

    subword: Word
    profile: GapProfile
    side: str
    host: Word
    positions: Occurrence

    @property
    def k(self) -> int:
        return len(self.subword)

    def describe(self) -> str:
        return (
            f"subword {self.subword} occurs in {self.host} with gaps {format_profile(self.profile)} "
            f"({self.side})"
        )

    def to_dict(self) -> dict:
        return {
            "subword": str(self.subword),
            "gaps": format_profile(self.profile),
            "side": self.side,
            "host": str(self.host),
            "positions": [p + 1 for p in self.positions],
        }


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[CounterEvidence] = None

    def __post_init__(self) -> None:
        if not self.holds and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    def __bool__(self) -> bool:
        return self.holds


HOLDS = Verdict(True)


def _unmatched(lower: Iterable[Word], upper: Iterable[Word], k: int) -> Optional[tuple[tuple[int, ...], GapProfile, Word]]:
    """First (subword, profile, host) of length k in ``lower`` with no dominated match in ``upper``."""
    upper_profiles: dict[tuple[int, ...], set[GapProfile]] = {}
    for w in upper:
        for u, profs in occurrence_profiles(w, k).items():
            upper_profiles.setdefault(u, set()).update(profs)
    upper_min = {u: minimal_profiles(p) for u, p in upper_profiles.items()}
    best = None
    for idx, host in enumerate(lower):
        for u, profs in occurrence_profiles(host, k).items():
            mins = upper_min.get(u, ())
            for g in profs:
                if not any(profile_dominates(g, h) for h in mins):
                    key = (u, g, idx)
                    if best is None or key < best[0]:
                        best = (key, host)
    if best is None:
        return None
    (u, g, _), host = best
    return u, g, host


def _evidence(found: tuple[tuple[int, ...], GapProfile, Word], side: str) -> CounterEvidence:
    u_ids, g, host = found
    u = ids_to_word(u_ids)
    pos = find_occurrence(host, u, g)
    assert pos is not None
    return CounterEvidence(u, g, side, host, pos)


def _check(lower: Iterable[Word], upper: Iterable[Word], ks: Iterable[int], side: str) -> Verdict:
    lower, upper = list(lower), list(upper)
    for k in ks:
        found = _unmatched(lower, upper, k)
        if found is not None:
            return Verdict(False, _evidence(found, side))
    return HOLDS


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def ais_inequality_holds(lower: Side, upper: Side, n: int, side: str = LOWER_IN_UPPER_MISSING) -> Verdict:
    """Decide ``lower <= upper`` in the semiring (T_n,+,.)."""
    _check_n(n)
    lo, hi = as_polynomial(lower), as_polynomial(upper)
    return _check(lo, hi, range(n), side)


def ais_identity_holds(lhs: Side, rhs: Side, n: int) -> Verdict:
    v = ais_inequality_holds(lhs, rhs, n, LEFT_IN_RIGHT_MISSING)
    if not v:
        return v
    return ais_inequality_holds(rhs, lhs, n, RIGHT_IN_LEFT_MISSING)


def sem_inequality_holds(lower: Word, upper: Word, n: int, side: str = LOWER_IN_UPPER_MISSING) -> Verdict:
    """Decide ``lower <= upper`` in the ordered semigroup (T_n,.,<=)."""
    _check_n(n)
    if not lower.letters or not upper.letters:
        raise ValueError("semigroup claims need nonempty words")
    if lower == upper:
        return HOLDS
    if len(lower) < n:
        # The word itself, with all gaps empty, occurs only in itself.
        k = len(lower)
        ev = CounterEvidence(lower, (0,) * (k + 1), side, lower, tuple(range(k)))
        return Verdict(False, ev)
    return _check([lower], [upper], [n - 1], side)


def sem_identity_holds(lhs: Word, rhs: Word, n: int) -> Verdict:
    v = sem_inequality_holds(lhs, rhs, n, LEFT_IN_RIGHT_MISSING)
    if not v:
        return v
    return sem_inequality_holds(rhs, lhs, n, RIGHT_IN_LEFT_MISSING)


def u_sem_identity_holds(lhs: Word, rhs: Word, n: int) -> Verdict:
    """Decide ``lhs = rhs`` in (U_{n+1},.): same subwords of every length up to n."""
    _check_n(n)
    a, b = subwords(lhs, n), subwords(rhs, n)
    for k in range(1, n + 1):
        for side, host, mine, theirs in (
            (LEFT_IN_RIGHT_MISSING, lhs, a[k], b[k]),
            (RIGHT_IN_LEFT_MISSING, rhs, b[k], a[k]),
        ):
            missing = mine - theirs
            if missing:
                u = ids_to_word(min(missing))
                pos = leftmost_occurrence(u, host)
                return Verdict(False, CounterEvidence(u, gaps_of(host, pos), side, host, pos))
    return HOLDS


def same_subwords_of_length(w: Word, w2: Word, k: int) -> bool:
    if k == 0:
        return True
    return subwords(w, k)[k] == subwords(w2, k)[k]


def condition_exists_EG(w: Word, w2: Word, n: int) -> bool:
    """Every common subword of length < n has an occurrence with equal gaps in both words.

    The empty subword is included, so the two alphabets must coincide.
    """
    _check_n(n)
    for k in range(n):
        a, b = occurrence_profiles(w, k), occurrence_profiles(w2, k)
        for u in a.keys() & b.keys():
            if not a[u] & b[u]:
                return False
    return True


def condition_forall_EG(w: Word, w2: Word, n: int) -> bool:
    """Every occurrence of a length-(<n) subword in one word has an equal-gap twin in the other."""
    _check_n(n)
    return all(occurrence_profiles(w, k) == occurrence_profiles(w2, k) for k in range(n))


def leftmost_gaps_equal(w: Word, w2: Word, n: int) -> bool:
    _check_n(n)
    a, b = subwords(w, n - 1), subwords(w2, n - 1)
    for k in range(n):
        for u_ids in a[k] & b[k]:
            u = ids_to_word(u_ids)
            if gaps_of(w, leftmost_occurrence(u, w)) != gaps_of(w2, leftmost_occurrence(u, w2)):
                return False
    return True


def check_claim(claim: Claim, n: int, structure: str) -> Verdict:
    """Dispatch a parsed claim to the procedure for ``structure``."""
    if structure not in STRUCTURES:
        raise ValueError(f"unknown structure {structure!r}; expected one of {STRUCTURES}")
    if structure == "tn-semiring":
        if claim.is_identity:
            return ais_identity_holds(claim.lhs, claim.rhs, n)
        return ais_inequality_holds(claim.lhs, claim.rhs, n)
    if claim.is_semiring:
        raise StructureMismatch(f"{structure} takes single words on both sides, got {claim}")
    if structure == "un-semigroup":
        if not claim.is_identity:
            raise StructureMismatch("un-semigroup decides identities only")
        return u_sem_identity_holds(claim.lhs, claim.rhs, n)
    if claim.is_identity:
        return sem_identity_holds(claim.lhs, claim.rhs, n)
    return sem_inequality_holds(claim.lhs, claim.rhs, n)


def recheck_witness(ev: CounterEvidence, other: Side) -> bool:
    """Independently confirm a witness against the side it claims is deficient."""
    if tuple(ev.host.letters[p] for p in ev.positions) != ev.subword.letters:
        return False
    if gaps_of(ev.host, ev.positions) != ev.profile:
        return False
    return all(find_occurrence(w, ev.subword, ev.profile, exact=False) is None for w in as_polynomial(other))


def witness_other_side(claim: Claim, ev: CounterEvidence) -> Polynomial:
    """The side of ``claim`` in which ``ev`` says a match is missing."""
    lo, hi = claim.polynomials()
    return lo if ev.side == RIGHT_IN_LEFT_MISSING else hi
