"""Occurrences of subwords with gaps.

An occurrence of a length-k word ``u`` in a host word is a strictly
increasing tuple of k positions (0-based) spelling ``u``.  Its gap profile
is the tuple of the k+1 alphabets of the segments around those positions,
each alphabet stored as a bitmask over variable ids.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Optional

from .terms import Word, variable_by_id, vars_of_mask

Occurrence = tuple[int, ...]
GapProfile = tuple[int, ...]


class OccurrenceRecord(NamedTuple):
    subword: Word
    positions: Occurrence
    gaps: GapProfile


def _segment_mask(ids: tuple[int, ...], start: int, stop: int) -> int:
    m = 0
    for c in ids[start:stop]:
        m |= 1 << c
    return m


def gaps_of(host: Word, occ: Occurrence) -> GapProfile:
    """Gap profile of the occurrence at positions ``occ`` in ``host``."""
    ids = host.ids
    prev = -1
    for p in occ:
        if not (prev < p < len(ids)):
            raise ValueError(f"invalid occurrence {occ} in a word of length {len(ids)}")
        prev = p
    bounds = (-1, *occ, len(ids))
    return tuple(_segment_mask(ids, bounds[i] + 1, bounds[i + 1]) for i in range(len(bounds) - 1))


def enumerate_occurrences(host: Word, k: int) -> Iterator[OccurrenceRecord]:
    """Every choice of k positions in ``host``, in lexicographic order."""
    if not 0 <= k <= len(host):
        raise ValueError(f"subword length {k} out of range for a word of length {len(host)}")
    for occ in combinations(range(len(host)), k):
        sub = Word(tuple(host.letters[p] for p in occ))
        yield OccurrenceRecord(sub, occ, gaps_of(host, occ))


def occurrence_profiles(host: Word, k: int) -> dict[tuple[int, ...], set[GapProfile]]:
    """Map each length-k subword (as an id tuple) to the set of its gap profiles.

    Works left to right keeping the distinct partial states (subword prefix,
    closed gaps, open gap) instead of enumerating position choices, so the
    cost is bounded by the number of distinct profiles rather than C(m, k).
    """
    ids = host.ids
    m = len(ids)
    if k > m:
        return {}
    states: set[tuple[tuple[int, ...], tuple[int, ...], int]] = {((), (), 0)}
    for pos, c in enumerate(ids):
        bit = 1 << c
        left = m - pos - 1
        nxt = set()
        for u, closed, cur in states:
            need = k - len(u)
            if need <= left:
                nxt.add((u, closed, cur | bit))
            if need and need - 1 <= left:
                nxt.add((u + (c,), closed + (cur,), 0))
        states = nxt
    out: dict[tuple[int, ...], set[GapProfile]] = defaultdict(set)
    for u, closed, cur in states:
        if len(u) == k:
            out[u].add(closed + (cur,))
    return dict(out)


def subwords(host: Word, max_len: int) -> dict[int, set[tuple[int, ...]]]:
    """Distinct subwords of each length 0..max_len, as id tuples."""
    found: set[tuple[int, ...]] = {()}
    for c in host.ids:
        found |= {u + (c,) for u in found if len(u) < max_len}
    by_len: dict[int, set[tuple[int, ...]]] = {k: set() for k in range(max_len + 1)}
    for u in found:
        by_len[len(u)].add(u)
    return by_len


def profile_dominates(g: GapProfile, g2: GapProfile) -> bool:
    """True iff every gap of ``g2`` is contained in the matching gap of ``g``."""
    if len(g) != len(g2):
        raise ValueError(f"profile arity mismatch: {len(g)} vs {len(g2)}")
    return all(b & ~a == 0 for a, b in zip(g, g2))


def minimal_profiles(profiles: Iterable[GapProfile]) -> set[GapProfile]:
    """The antichain of componentwise-minimal profiles."""
    items = set(profiles)
    arities = {len(p) for p in items}
    if len(arities) > 1:
        raise ValueError(f"profiles of mixed arity {sorted(arities)}")
    # Sorting by total size puts every strict sub-profile before its supersets.
    ordered = sorted(items, key=lambda p: (sum(bin(g).count("1") for g in p), p))
    kept: list[GapProfile] = []
    for p in ordered:
        if not any(profile_dominates(p, q) for q in kept):
            kept.append(p)
    return set(kept)


def leftmost_occurrence(u: Word, v: Word) -> Optional[Occurrence]:
    """Greedy scan: each letter of ``u`` is matched at its first chance."""
    pos = []
    i = 0
    vl = v.letters
    for x in u.letters:
        while i < len(vl) and vl[i] != x:
            i += 1
        if i == len(vl):
            return None
        pos.append(i)
        i += 1
    return tuple(pos)


def is_leftmost(host: Word, occ: Occurrence) -> bool:
    """Check ``u_i`` does not occur in the i-th gap, for every i."""
    gaps = gaps_of(host, occ)
    return all(not (gaps[i] >> host.letters[p].id) & 1 for i, p in enumerate(occ))


def find_occurrence(host: Word, u: Word, profile: GapProfile, exact: bool = True) -> Optional[Occurrence]:
    """Positions of an occurrence of ``u`` in ``host`` with the given gaps.

    With ``exact=False`` any occurrence whose gaps are contained in
    ``profile`` qualifies.
    """
    if len(profile) != len(u) + 1:
        raise ValueError("profile arity must be len(u) + 1")
    ids = host.ids
    uid = u.ids
    k = len(uid)
    m = len(ids)
    suffix = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] | (1 << ids[i])
    # The outcome from (level, start) never depends on earlier choices.
    dead: set[tuple[int, int]] = set()

    def extend(level: int, start: int, acc: list[int]) -> Optional[Occurrence]:
        allowed = profile[level]
        if level == k:
            tail = suffix[start]
            ok = tail == allowed if exact else tail & ~allowed == 0
            return tuple(acc) if ok else None
        if (level, start) in dead:
            return None
        seen = 0
        for p in range(start, m - (k - level) + 1):
            c = ids[p]
            if c == uid[level] and (seen == allowed if exact else True):
                acc.append(p)
                found = extend(level + 1, p + 1, acc)
                if found is not None:
                    return found
                acc.pop()
            if not (allowed >> c) & 1:
                break
            seen |= 1 << c
        dead.add((level, start))
        return None

    return extend(0, 0, [])


def format_mask(mask: int) -> str:
    vs = vars_of_mask(mask)
    if not vs:
        return "∅"
    return "{" + ",".join(v.name for v in vs) + "}"


def format_profile(profile: GapProfile) -> str:
    return "; ".join(format_mask(g) for g in profile)


def ids_to_word(ids: Iterable[int]) -> Word:
    return Word(tuple(variable_by_id(i) for i in ids))
