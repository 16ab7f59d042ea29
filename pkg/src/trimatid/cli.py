"""Command line entry point ``trimatid``.

Exit codes: 0 when every claim holds, 1 when some claim fails, 2 on usage
or parse errors, 3 when ``--oracle`` disagrees with the decider.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, TextIO

import numpy as np

from .boolmat import DEFAULT_SPACE_CAP, SpaceTooLarge
from .decider import (
    STRUCTURES,
    StructureMismatch,
    Verdict,
    check_claim,
    condition_exists_EG,
    condition_forall_EG,
)
from .hardness import extract_hitting_set, parse_instance, reduce_hitting_set, verify_c4_properties
from .hardness import all_instances, c4_space, hitting_set_exists
from .langtools import LanguageSyntaxError, distinguishing_language, language_member_matrix, language_member_scan
from .langtools import parse_language
from .occurrences import enumerate_occurrences, format_profile
from .oracle import Substitution, brute_force_check, build_phi_uv, count_substitutions, random_falsify
from .oracle import standard_space
from .terms import Claim, ClaimSyntaxError, Word, parse_claim, parse_word, read_claims, var
from .validation import check_n, check_positive

EXIT_HOLDS, EXIT_FAILS, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2, 3

_SPACES = {"tri": "triangular", "unitri": "unitriangular"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: Optional[int] = None
    structure: Optional[str] = None
    inputs: list[str] = field(default_factory=list)
    seed: int = 0
    cap: int = DEFAULT_SPACE_CAP
    output: str = "text"

    def __post_init__(self) -> None:
        if self.n is not None:
            check_n(self.n)
        check_positive(self.cap, "cap")
        if self.output not in ("text", "json-lines"):
            raise ValueError(f"unknown output format {self.output!r}")


def _oracle_target(structure: str, n: int) -> tuple[str, int]:
    # (U_{n+1},.) is checked in the unitriangular space one size up.
    if structure == "un-semigroup":
        return "unitriangular", n + 1
    return "triangular", n


def _falsifier(claim: Claim, v: Verdict, n: int, structure: str) -> Optional[Substitution]:
    if v.holds or structure == "un-semigroup":
        return None
    ev = v.witness
    return build_phi_uv(ev.subword, ev.host, ev.positions, n)


def _claim_record(claim: Claim, v: Verdict, n: int, structure: str) -> dict:
    rec = {"claim": str(claim), "n": n, "structure": structure, "holds": v.holds}
    if not v.holds:
        rec["witness"] = v.witness.to_dict()
        phi = _falsifier(claim, v, n, structure)
        if phi is not None:
            rec["substitution"] = phi.to_dict()
    return rec


def _collect_claims(inputs: Sequence[str], files: Sequence[str]) -> list[tuple[str, str]]:
    items = [(f"arg{i + 1}", text) for i, text in enumerate(inputs)]
    for path in files:
        fh = sys.stdin if path == "-" else open(path, encoding="utf-8")
        try:
            items += [(f"{path}:{ln}", text) for ln, text in read_claims(fh)]
        finally:
            if fh is not sys.stdin:
                fh.close()
    return items


def cmd_check(args, out: TextIO) -> int:
    n = check_n(args.n)
    items = _collect_claims(args.claims, args.file or [])
    if not items:
        raise UsageError("no claims given")
    status = EXIT_HOLDS
    for where, text in items:
        try:
            claim = parse_claim(text)
            v = check_claim(claim, n, args.structure)
        except (ClaimSyntaxError, StructureMismatch, ValueError) as e:
            _emit_error(out, args.json, where, text, str(e))
            status = EXIT_USAGE
            continue
        rec = _claim_record(claim, v, n, args.structure)
        if args.oracle:
            space, on = _oracle_target(args.structure, n)
            try:
                ov = brute_force_check(claim, on, space, args.cap)
            except SpaceTooLarge as e:
                rec["oracle"] = f"skipped: {e}"
            else:
                rec["oracle"] = "agrees" if ov.holds == v.holds else "DISAGREES"
                if ov.holds != v.holds:
                    _emit(out, args.json, rec)
                    return EXIT_DISAGREE
        _emit(out, args.json, rec)
        if not v.holds and status == EXIT_HOLDS:
            status = EXIT_FAILS
    return status


def _emit(out: TextIO, as_json: bool, rec: dict) -> None:
    if as_json:
        out.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")
        return
    word = "holds" if rec["holds"] else "FAILS"
    out.write(f"{word}: {rec['claim']}  [{rec['structure']}, n={rec['n']}]\n")
    if "witness" in rec:
        w = rec["witness"]
        pos = ",".join(str(p) for p in w["positions"])
        out.write(f"  witness: {w['subword']} @ ({pos}) in {w['host']} | {w['gaps']}  ({w['side']})\n")
    if "substitution" in rec:
        for name, m in rec["substitution"].items():
            out.write(f"  {name} -> [{m}]\n")
    if "oracle" in rec:
        out.write(f"  oracle: {rec['oracle']}\n")


def _emit_error(out: TextIO, as_json: bool, where: str, text: str, msg: str) -> None:
    if as_json:
        out.write(json.dumps({"input": where, "claim": text, "error": msg}, ensure_ascii=False) + "\n")
    else:
        out.write(f"error: {where}: {msg}\n")


def cmd_oracle(args, out: TextIO) -> int:
    n = check_n(args.n)
    claim = parse_claim(args.claim)
    space = _SPACES[args.space]
    if args.trials is not None:
        check_positive(args.trials, "trials")
        phi = random_falsify(claim, n, args.trials, args.seed, space)
        rec = {"claim": str(claim), "n": n, "space": args.space, "mode": "random", "trials": args.trials,
               "seed": args.seed, "holds": phi is None}
    else:
        v = brute_force_check(claim, n, space, args.cap)
        phi = v.substitution
        rec = {"claim": str(claim), "n": n, "space": args.space, "mode": "exhaustive", "checked": v.checked,
               "holds": v.holds}
    if phi is not None:
        rec["substitution"] = phi.to_dict()
    if args.json:
        out.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")
    else:
        if rec["holds"]:
            how = f"{args.trials} random trials" if args.trials is not None else f"all {rec['checked']} substitutions"
            out.write(f"no violation: {claim}  [{args.space}, n={n}, {how}]\n")
        else:
            out.write(f"VIOLATED: {claim}  [{args.space}, n={n}]\n")
            for name, m in rec["substitution"].items():
                out.write(f"  {name} -> [{m}]\n")
    return EXIT_HOLDS if rec["holds"] else EXIT_FAILS


def format_occurrence_line(sub: Word, positions: Sequence[int], profile) -> str:
    """``u @ (p1,...,pk) | G1; ...; Gk+1`` with 1-based positions."""
    pos = ",".join(str(p + 1) for p in positions)
    return f"{sub} @ ({pos}) | {format_profile(profile)}"


def cmd_subwords(args, out: TextIO) -> int:
    w = parse_word(args.word)
    if args.k < 0 or args.k > len(w):
        raise UsageError(f"k must lie in 0..{len(w)}")
    for rec in enumerate_occurrences(w, args.k):
        out.write(format_occurrence_line(rec.subword, rec.positions, rec.gaps) + "\n")
    return EXIT_HOLDS


def cmd_reduce(args, out: TextIO) -> int:
    fh = sys.stdin if args.instance == "-" else open(args.instance, encoding="utf-8")
    try:
        inst = parse_instance(fh.read())
    finally:
        if fh is not sys.stdin:
            fh.close()
    out.write(str(reduce_hitting_set(inst)) + "\n")
    return EXIT_HOLDS


def cmd_language(args, out: TextIO) -> int:
    if args.lang_cmd == "member":
        lang = parse_language(args.language)
        w = parse_word(args.word)
        scan = language_member_scan(w, lang)
        if args.n is not None and args.n < lang.k + 1:
            raise UsageError(f"--n must be at least {lang.k + 1} for this language")
        matrix = language_member_matrix(w, lang, args.n)
        if scan != matrix:
            out.write(f"internal disagreement: scan={scan} matrix={matrix}\n")
            return EXIT_DISAGREE
        out.write(f"{'member' if scan else 'not a member'}: {w} in {lang}\n")
        return EXIT_HOLDS if scan else EXIT_FAILS
    n = check_n(args.n)
    w, w2 = parse_word(args.word), parse_word(args.other)
    lang = distinguishing_language(w, w2, n)
    if lang is None:
        out.write(f"none: every language with fewer than {n} markers containing {w} also contains {w2}\n")
        return EXIT_FAILS
    out.write(f"{lang}\n")
    return EXIT_HOLDS


def random_identity(m: int, rng: np.random.Generator) -> Claim:
    """Two-letter semigroup identity of total size m, sides of sizes ceil(m/2) and floor(m/2)."""
    if m < 2:
        raise ValueError("total size must be at least 2")
    x, y = var("x"), var("y")
    letters = rng.integers(0, 2, size=m)
    side = [x if b else y for b in letters]
    half = (m + 1) // 2
    return Claim("semigroup-identity", Word(tuple(side[:half])), Word(tuple(side[half:])))


def time_decider(claim: Claim, n: int, structure: str = "tn-semigroup") -> float:
    t0 = time.perf_counter()
    check_claim(claim, n, structure)
    return time.perf_counter() - t0


def cmd_bench(args, out: TextIO) -> int:
    n = check_n(args.n)
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(args.seed)
    prev = None
    rows = []
    for m in sizes:
        claim = random_identity(m, rng)
        best = min(time_decider(claim, n) for _ in range(args.repeat))
        ratio = None if prev is None else best / prev if prev > 0 else None
        rows.append({"m": m, "n": n, "seconds": round(best, 6), "ratio": None if ratio is None else round(ratio, 3)})
        prev = best
    for r in rows:
        if args.json:
            out.write(json.dumps(r, sort_keys=True) + "\n")
        else:
            tail = "" if r["ratio"] is None else f"  x{r['ratio']}"
            out.write(f"m={r['m']:>7}  n={n}  {r['seconds']:.4f}s{tail}\n")
    return EXIT_HOLDS


def selftest_checks() -> list[tuple[str, Callable[[], bool]]]:
    """Named regression checks on the worked examples, each returning True on success."""

    def both(text: str, n: int, structure: str, expect: bool) -> Callable[[], bool]:
        def run() -> bool:
            claim = parse_claim(text)
            if check_claim(claim, n, structure).holds != expect:
                return False
            space, on = _oracle_target(structure, n)
            sp = standard_space(space, on)
            if count_substitutions(claim, sp) > DEFAULT_SPACE_CAP:
                return True
            return brute_force_check(claim, on, sp).holds == expect

        return run

    checks: list[tuple[str, Callable[[], bool]]] = []
    for n in (1, 2, 3):
        checks.append((f"x^{n} = x^{n + 1} holds in (T_{n},.)", both(f"x^{n} = x^{n + 1}", n, "tn-semigroup", True)))
        if n >= 2:
            a, b = n - 1, n
            text = f"x^{a} y^{a} = x^{b} y^{a} + x^{a} y^{b}"
            checks.append((f"{text} holds in (T_{n},+,.)", both(text, n, "tn-semiring", True)))
    checks.append(("x y x^2 y x = x y x y x fails in (T_3,.)", both("x y x^2 y x = x y x y x", 3, "tn-semigroup", False)))
    checks.append(("x^2 y x = x y x holds in (T_2,.)", both("x^2 y x = x y x", 2, "tn-semigroup", True)))
    for n in (2, 3):
        text = f"(x y)^{n} = (y x)^{n}"
        expanded = " ".join(["x y"] * n) + " = " + " ".join(["y x"] * n)
        checks.append((f"{text} fails in (T_{n},.)", both(expanded, n, "tn-semigroup", False)))
        checks.append((f"{text} holds in (U_{n + 1},.)", both(expanded, n, "un-semigroup", True)))

    def eg_pair() -> bool:
        w, w2 = parse_word("x y x^2 y x"), parse_word("x y x y x")
        a, b = parse_word("x^2 y x"), parse_word("x y x")
        return (
            condition_exists_EG(w, w2, 3)
            and not check_claim(Claim("semigroup-identity", w, w2), 3, "tn-semigroup").holds
            and not condition_forall_EG(a, b, 2)
            and check_claim(Claim("semigroup-identity", a, b), 2, "tn-semigroup").holds
        )

    checks.append(("exists-EG_3 is not sufficient, forall-EG_2 is not necessary", eg_pair))
    checks.append(("C4 properties 0-5", lambda: all(verify_c4_properties().values())))

    def reduction() -> bool:
        sp = c4_space()
        for inst in all_instances(2, 2):
            v = brute_force_check(reduce_hitting_set(inst), space=sp)
            if v.holds != (hitting_set_exists(inst) is None):
                return False
            if not v.holds:
                extract_hitting_set(inst, v.substitution)
        return True

    checks.append(("Hitting Set reduction, r <= 2, q <= 2", reduction))
    return checks


def cmd_selftest(args, out: TextIO) -> int:
    failed = 0
    for name, run in selftest_checks():
        try:
            ok = run()
        except Exception as e:  # report and keep going
            ok = False
            name = f"{name} ({type(e).__name__}: {e})"
        failed += not ok
        out.write(f"{'PASS' if ok else 'FAIL'}  {name}\n")
    return EXIT_HOLDS if failed == 0 else EXIT_FAILS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trimatid", description="Identities of triangular Boolean matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="decide claims with the combinatorial criterion")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--structure", choices=STRUCTURES, default="tn-semigroup")
    c.add_argument("--oracle", action="store_true", help="cross-check against brute force when within cap")
    c.add_argument("--cap", type=int, default=DEFAULT_SPACE_CAP)
    c.add_argument("--json", action="store_true", help="one JSON record per claim")
    c.add_argument("--file", action="append", help="read one claim per line ('-' for stdin)")
    c.add_argument("claims", nargs="*")
    c.set_defaults(func=cmd_check)

    o = sub.add_parser("oracle", help="search for a falsifying substitution")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--space", choices=sorted(_SPACES), default="tri")
    o.add_argument("--trials", type=int)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--cap", type=int, default=DEFAULT_SPACE_CAP)
    o.add_argument("--json", action="store_true")
    o.add_argument("claim")
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("subwords", help="list occurrences of length-k subwords with their gaps")
    s.add_argument("word")
    s.add_argument("k", type=int)
    s.set_defaults(func=cmd_subwords)

    r = sub.add_parser("reduce", help="Hitting Set instance file to a C4 identity")
    r.add_argument("instance")
    r.set_defaults(func=cmd_reduce)

    lg = sub.add_parser("language", help="simple languages")
    lsub = lg.add_subparsers(dest="lang_cmd", required=True)
    lm = lsub.add_parser("member")
    lm.add_argument("--n", type=int)
    lm.add_argument("language")
    lm.add_argument("word")
    ld = lsub.add_parser("distinguish")
    ld.add_argument("--n", type=int, required=True)
    ld.add_argument("word")
    ld.add_argument("other")
    lg.set_defaults(func=cmd_language)

    b = sub.add_parser("bench", help="decider wall time against claim size")
    b.add_argument("--n", type=int, default=3)
    b.add_argument("--sizes", default="250,500,1000,2000")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeat", type=int, default=1)
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bench)

    t = sub.add_parser("selftest", help="run the worked-example regressions")
    t.set_defaults(func=cmd_selftest)
    return p


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_HOLDS
    try:
        args.config = RunConfig(
            command=args.command,
            n=getattr(args, "n", None),
            structure=getattr(args, "structure", None),
            inputs=list(getattr(args, "file", None) or []),
            seed=getattr(args, "seed", 0),
            cap=getattr(args, "cap", DEFAULT_SPACE_CAP),
            output="json-lines" if getattr(args, "json", False) else "text",
        )
        return args.func(args, out)
    except (UsageError, ClaimSyntaxError, LanguageSyntaxError, StructureMismatch, SpaceTooLarge, ValueError,
            TypeError, OSError) as e:
        print(f"trimatid {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
