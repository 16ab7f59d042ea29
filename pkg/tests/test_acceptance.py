"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line."""

import itertools
import time
from collections import defaultdict

import numpy as np
import pytest

from trimatid.boolmat import BoolMatrix
from trimatid.cli import random_identity
from trimatid.decider import (
    check_claim,
    condition_exists_EG,
    condition_forall_EG,
    leftmost_gaps_equal,
    same_subwords_of_length,
    sem_identity_holds,
    sem_inequality_holds,
)
from trimatid.hardness import (
    HittingSetInstance,
    all_instances,
    c4_space,
    extract_hitting_set,
    hitting_set_exists,
    reduce_hitting_set,
    verify_c4_properties,
)
from trimatid.langtools import (
    distinguishing_language,
    enumerate_languages,
    language_member_matrix,
    language_member_scan,
)
from trimatid.occurrences import enumerate_occurrences, gaps_of, minimal_profiles, occurrence_profiles
from trimatid.oracle import Substitution, brute_force_check, falsifying_substitutions, standard_space
from trimatid.oracle import subword_criterion, violates
from trimatid.terms import (
    SEMIGROUP_IDENTITY,
    SEMIGROUP_INEQUALITY,
    Claim,
    Polynomial,
    Word,
    identity_claim,
    inequality_claim,
    parse_claim,
    parse_word,
    var,
    zimin,
)

from conftest import X, Y, words_over


@pytest.fixture
def report(capsys):
    def emit(number, name, ok, detail=""):
        with capsys.disabled():
            tail = f" ({detail})" if detail else ""
            print(f"\nCRITERION {number} {name}: {'PASS' if ok else 'FAIL'}{tail}")
        assert ok, f"criterion {number} failed: {detail}"

    return emit


def _oracle(claim, structure, n):
    if structure == "un-semigroup":
        return brute_force_check(claim, space=standard_space("unitriangular", n + 1)).holds
    return brute_force_check(claim, space=standard_space("triangular", n)).holds


def test_criterion_1_oracle_equivalence(report):
    words = list(words_over((X, Y), 5))
    assert len(words) == 62
    disagreements = []
    checked = 0
    for n in (1, 2, 3):
        for a, b in itertools.product(words, repeat=2):
            for kind, structure in ((SEMIGROUP_IDENTITY, "tn-semigroup"), (SEMIGROUP_INEQUALITY, "tn-ordered")):
                claim = Claim(kind, a, b)
                checked += 1
                if check_claim(claim, n, structure).holds != _oracle(claim, structure, n):
                    disagreements.append((n, str(claim)))
            claim = Claim(SEMIGROUP_IDENTITY, a, b)
            checked += 1
            if check_claim(claim, n, "un-semigroup").holds != _oracle(claim, "un-semigroup", n):
                disagreements.append((n, "U", str(claim)))

    rng = np.random.default_rng(20240601)
    short = list(words_over((X, Y), 4))
    for n in (1, 2, 3):
        for _ in range(10_000):
            sides = []
            for _side in range(2):
                size = int(rng.integers(1, 4))
                sides.append(Polynomial([short[int(i)] for i in rng.integers(0, len(short), size)]))
            make = identity_claim if rng.integers(0, 2) else inequality_claim
            claim = make(*sides).as_semiring()
            checked += 1
            if check_claim(claim, n, "tn-semiring").holds != _oracle(claim, "tn-semiring", n):
                disagreements.append((n, str(claim)))
    report(1, "oracle equivalence", not disagreements, f"{checked} claims, {len(disagreements)} disagreements")


KNOWN_PHI = Substitution(3, {X: BoolMatrix.parse("1 1 0; 0 0 1; 0 0 1"), Y: BoolMatrix.parse("1 0 0; 0 0 0; 0 0 1")})


def test_criterion_2_worked_examples(report):
    results = {}

    def both(text, n, structure, expect, oracle=True):
        claim = parse_claim(text)
        ok = check_claim(claim, n, structure).holds == expect
        if oracle:
            ok = ok and _oracle(claim, structure, n) == expect
        results[f"{text} [{structure}, n={n}]"] = ok

    for n in (1, 2, 3, 4):
        both(f"x^{n} = x^{n + 1}", n, "tn-semigroup", True)
    for n in (2, 3):
        both(f"x^{n - 1} y^{n - 1} = x^{n} y^{n - 1} + x^{n - 1} y^{n}", n, "tn-semiring", True)
    both("x y x^2 y x = x y x y x", 3, "tn-semigroup", False)
    results["known substitution violates"] = violates(parse_claim("x y x^2 y x = x y x y x"), KNOWN_PHI)
    both("x^2 y x = x y x", 2, "tn-semigroup", True)
    for n in (2, 3):
        lhs, rhs = " ".join(["x y"] * n), " ".join(["y x"] * n)
        both(f"{lhs} = {rhs}", n, "tn-semigroup", False)
        both(f"{lhs} = {rhs}", n, "un-semigroup", True)
    both("x y = x^2 y + x y^2", 2, "tn-semiring", True)
    claim = parse_claim("x y = x^2 y + x y^2")
    results["x y = x^2 y + x y^2 fails in (U_3,+,.) by oracle"] = not brute_force_check(claim, 3, "unitriangular").holds
    bad = [k for k, v in results.items() if not v]
    report(2, "worked example regression", not bad, f"{len(results)} checks" + (f", failing: {bad}" if bad else ""))


def _dominated_occurrence_exists(u, g, probe):
    k = len(u)
    for occ in itertools.combinations(range(len(probe)), k):
        if tuple(probe.letters[p] for p in occ) != u.letters:
            continue
        h = gaps_of(probe, occ)
        if all(b & ~a == 0 for a, b in zip(g, h)):
            return True
    return False


def test_criterion_3_substitution_grid(report):
    hosts = list(words_over((X, Y), 5))
    probes = list(words_over((X, Y), 6))
    disagreements = 0
    checked = 0
    for host in hosts:
        for k in range(0, 3):
            if k > len(host):
                continue
            for rec in enumerate_occurrences(host, k):
                for n in (k + 1, k + 2):
                    for probe in probes:
                        a = subword_criterion(rec.subword, host, rec.positions, n, probe)
                        b = _dominated_occurrence_exists(rec.subword, rec.gaps, probe)
                        checked += 1
                        disagreements += a != b
    report(3, "substitution criterion grid", disagreements == 0, f"{checked} cases, {disagreements} disagreements")


def test_criterion_4_c4_and_reduction(report):
    props = verify_c4_properties()
    problems = [name for name, ok in props.items() if not ok]
    sp = c4_space()
    instances = list(all_instances(2, 2))
    extracted = 0
    for inst in instances:
        claim = reduce_hitting_set(inst)
        h = hitting_set_exists(inst)
        violators = list(falsifying_substitutions(claim, space=sp))
        if bool(violators) != (h is not None):
            problems.append(f"reduction mismatch on {inst}")
        for phi in violators:
            try:
                got = extract_hitting_set(inst, phi)
            except (ValueError, AssertionError) as e:
                problems.append(f"extraction failed on {inst}: {e}")
                break
            if not inst.is_hitting_set(got):
                problems.append(f"bad extraction on {inst}")
            extracted += 1
    # Instances with three sets and no hitting set, checked the same way.
    for sets in ([[1], [2], [1, 2]], [[1], [1, 2], [2]]):
        inst = HittingSetInstance.of(2, sets)
        if hitting_set_exists(inst) is not None or not brute_force_check(reduce_hitting_set(inst), space=sp).holds:
            problems.append(f"no-hitting-set instance {sets} mismatched")
    report(4, "C4 and Hitting Set reduction", not problems,
           f"6 properties, {len(instances)} instances, {extracted} counterexamples extracted"
           + (f"; problems: {problems[:3]}" if problems else ""))


def _zimin_variants(m):
    z = zimin(m)
    x1 = var("x1")
    slots = [i for i, c in enumerate(z.letters) if c == x1]
    for eps in itertools.product((0, 1, 2), repeat=len(slots)):
        letters = []
        for i, c in enumerate(z.letters):
            letters += [c] * (eps[slots.index(i)] if i in slots else 1)
        if letters:
            yield eps, Word(tuple(letters))


def test_criterion_5_zimin(report):
    problems = []
    total = 0
    for m in (1, 2, 3):
        z = zimin(m)
        for eps, w in _zimin_variants(m):
            total += 1
            expect = all(e == 1 for e in eps)
            claim = inequality_claim(w, z)
            if sem_inequality_holds(w, z, 3).holds != expect or brute_force_check(claim, 3).holds != expect:
                problems.append((m, eps))
    bigger = parse_word("x1 x2 x1^2 x3 x1 x2 x1")
    z3 = zimin(3)
    if not (sem_inequality_holds(z3, bigger, 3) and brute_force_check(inequality_claim(z3, bigger), 3).holds):
        problems.append("Z3 <= x1 x2 x1^2 x3 x1 x2 x1")
    if sem_inequality_holds(bigger, z3, 3) or brute_force_check(inequality_claim(bigger, z3), 3).holds:
        problems.append("reverse inequality")
    report(5, "Zimin suite", not problems, f"{total} variants" + (f"; problems: {problems}" if problems else ""))


def test_criterion_6_languages(report):
    problems = []
    sigma = [X, Y]
    langs = list(enumerate_languages(sigma, 3))
    words = [Word(())] + list(words_over(sigma, 6))
    mismatches = 0
    for lang in langs:
        for w in words:
            mismatches += language_member_scan(w, lang) != language_member_matrix(w, lang)
    if mismatches:
        problems.append(f"{mismatches} scan/matrix mismatches")

    pairs = list(words_over(sigma, 5))
    char_bad = 0
    dist_bad = 0
    for n in (2, 3):
        ls = [L for L in langs if L.k < n]
        member = {w: np.array([language_member_scan(w, L) for L in ls]) for w in pairs}
        for a, b in itertools.product(pairs, repeat=2):
            by_langs = bool(np.all(member[b][member[a]]))
            if sem_inequality_holds(a, b, n).holds != by_langs:
                char_bad += 1
            d = distinguishing_language(a, b, n)
            if d is None:
                dist_bad += not by_langs
            elif not (d.k < n and language_member_scan(a, d) and not language_member_scan(b, d)
                      and language_member_matrix(a, d) and not language_member_matrix(b, d)):
                dist_bad += 1
    if char_bad:
        problems.append(f"{char_bad} language-characterization mismatches")
    if dist_bad:
        problems.append(f"{dist_bad} bad distinguishing languages")
    report(6, "language suite", not problems,
           f"{len(langs)} languages x {len(words)} words; {2 * len(pairs) ** 2} pairs"
           + (f"; problems: {problems}" if problems else ""))


def _best_time(claim, n, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        check_claim(claim, n, "tn-semigroup")
        best = min(best, time.perf_counter() - t0)
    return best


def test_criterion_7_performance(report):
    details = []
    ok = True
    for n, m, budget in ((3, 2000, 10.0), (2, 10_000, 10.0)):
        claim = random_identity(m, np.random.default_rng(7))
        t = _best_time(claim, n, repeat=1)
        details.append(f"n={n} m={m}: {t:.3f}s")
        ok = ok and t < budget
    for n, m in ((3, 2000), (2, 10_000)):
        small = big = 0.0
        for seed in range(3):
            small += _best_time(random_identity(m, np.random.default_rng(seed)), n)
            big += _best_time(random_identity(2 * m, np.random.default_rng(seed)), n)
        ratio = big / small
        details.append(f"n={n} m={m}->{2 * m}: x{ratio:.2f} (limit {2 ** n + 1})")
        ok = ok and ratio <= 2**n + 1
    report(7, "performance", ok, "; ".join(details))


def _canonical_key(w, n):
    # Identities at n hold exactly between equal words or words of length >= n
    # with the same minimal length-(n-1) profiles per subword.
    if len(w) < n:
        return ("short", w)
    return frozenset((u, frozenset(minimal_profiles(p))) for u, p in occurrence_profiles(w, n - 1).items())


def test_criterion_8_necessary_conditions(report):
    n = 3
    classes = defaultdict(list)
    for w in words_over((X, Y), 10, min_len=3):
        classes[_canonical_key(w, n)].append(w)
    pairs = [(a, b) for ws in classes.values() for a, b in itertools.combinations(ws, 2)]
    rng = np.random.default_rng(8)
    chosen = [pairs[int(i)] for i in rng.choice(len(pairs), size=1000, replace=False)]
    problems = []
    for a, b in chosen:
        if not sem_identity_holds(a, b, n):
            problems.append(f"not accepted: {a} = {b}")
            continue
        if not brute_force_check(identity_claim(a, b), n).holds:
            problems.append(f"oracle rejects {a} = {b}")
        if not (leftmost_gaps_equal(a, b, n) and same_subwords_of_length(a, b, n) and condition_exists_EG(a, b, n)):
            problems.append(f"necessary condition fails for {a} = {b}")
    w1, w2 = parse_word("x y x^2 y x"), parse_word("x y x y x")
    if not (condition_exists_EG(w1, w2, 3) and not sem_identity_holds(w1, w2, 3)):
        problems.append("exists-EG_3 counterexample did not reproduce")
    v1, v2 = parse_word("x^2 y x"), parse_word("x y x")
    if not (sem_identity_holds(v1, v2, 2) and not condition_forall_EG(v1, v2, 2)):
        problems.append("forall-EG_2 counterexample did not reproduce")
    report(8, "necessary conditions suite", not problems,
           f"1000 accepted identities from {len(pairs)} candidates" + (f"; problems: {problems[:3]}" if problems else ""))
