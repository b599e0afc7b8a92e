"""Command-line driver.

Every subcommand streams one JSON object per result line on stdout and a
human summary on stderr.  Exit status 0 means success with all assertions
holding, 1 means an assertion was violated, 2 means usage or data error.
Identical invocations produce byte-identical stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import contfrac, dioph, linforms
from .arith import DomainError
from .dependence import classify_family, is_multiplicatively_dependent
from .intervals import PrecisionError
from .lattice import LatticeError, auto_reduce
from .search import search_consecutive_md_triples, verify_main_theorems

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _note(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _cmd_search(args) -> int:
    require_k = "all-2md" if args.all_2md else "any"
    records = search_consecutive_md_triples(
        args.max, require_k=require_k, jobs=args.jobs, checkpoint=args.checkpoint
    )
    if args.exclude_fam1:
        records = [r for r in records if r.family != "Fam1"]
    for rec in records:
        _emit(rec.to_json_dict())
    _note(f"search --max {args.max}: {len(records)} triple(s)")
    return EXIT_OK


def _cmd_classify(args) -> int:
    a, b, c = args.a, args.b, args.c
    shifts = [is_multiplicatively_dependent((a + i, b + i, c + i)) for i in range(3)]
    out = {
        "a": a,
        "b": b,
        "c": c,
        "family": classify_family(a, b, c),
        "dependent": [s.dependent for s in shifts],
        "k": [s.k for s in shifts],
        "witness": [list(s.witness) if s.witness else None for s in shifts],
    }
    _emit(out)
    _note(f"classify {a} {b} {c}: family {out['family']}, k levels {out['k']}")
    return EXIT_OK


def _cmd_verify_theorem(args) -> int:
    report = verify_main_theorems(args.max, which=args.which, jobs=args.jobs)
    for t in report.checked:
        _emit({"triple": list(t), "violation": t in set(report.violations)})
    _note(
        f"verify-theorem {args.which} --max {args.max}: "
        f"{len(report.checked)} checked, {len(report.violations)} violation(s)"
    )
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _parse_bounds(spec: str | None) -> dict | None:
    if not spec:
        return None
    out = {}
    for part in spec.split(","):
        key, _, val = part.partition("=")
        out[key.strip()] = int(val)
    return out


def _cmd_lemma(args) -> int:
    sols = sorted(dioph.lemma_search(args.lemma_id, _parse_bounds(args.bounds)))
    for s in sols:
        _emit({"lemma": args.lemma_id, "solution": list(s)})
    _note(f"lemma {args.lemma_id}: {len(sols)} solution(s) in box")
    return EXIT_OK


def _cmd_sit_pipeline(args) -> int:
    sign = "+" if args.sign == "plus" else "-"
    bounds = linforms.sit_pipeline(sign, prec=args.precision)
    _emit(
        {
            "sign": args.sign,
            "M_max": bounds.M_max,
            "x_max": bounds.x_max,
            "r_max": bounds.r_max,
            "r_max_reduced": bounds.r_max_reduced,
        }
    )
    for note in bounds.provenance:
        _note("  " + note)
    # the --slack knob caps how far each bound may sit above its reference
    scale = 1 + args.slack / 100.0
    refs = [
        (bounds.M_max, 272 * 10**23),
        (bounds.x_max, 175000),
        (bounds.r_max, 476 * 10**28),
    ]
    if any(got > scale * ref for got, ref in refs):
        _note("bounds exceed the slack envelope")
        return EXIT_VIOLATION
    return EXIT_OK


def _parse_range(spec: str) -> tuple[int, int]:
    lo, _, hi = spec.partition("..")
    return int(lo), int(hi)


def _cmd_sit_solve(args) -> int:
    sign = "+" if args.sign == "plus" else "-"
    x_range = _parse_range(args.x_range) if args.x_range else (3, 296)
    sweep = dioph.sit_sweep(sign, x_range)
    sols = dioph.solve_sit_final(sign, x_range, sweep=sweep)
    for entry in sweep:
        _emit({"x": entry.x, "C": str(entry.C_used), "U": entry.U_hi})
    for sol in sols:
        _emit(
            {
                "solution": {
                    "x": sol.x,
                    "y": sol.y,
                    "z": sol.z,
                    "w": sol.w,
                    "r": sol.r,
                }
            }
        )
    bad = [s for s in sols if s.r != 0]
    _note(
        f"sit-solve {args.sign} x in {x_range}: {len(sols)} solution(s), "
        f"{len(bad)} with r != 0"
    )
    return EXIT_OK if not bad else EXIT_VIOLATION


def _cmd_x2minus2(args) -> int:
    report = linforms.x2minus2_exponent_bound(prec=args.precision)
    _emit(
        {
            "n_max": report.n_max,
            "C_max": float(report.C_max.hi),
            "C_prime_max": float(report.C_prime_max.hi),
            "swept": list(report.swept),
        }
    )
    for note in report.provenance:
        _note("  " + note)
    return EXIT_OK


def _cmd_reduce(args) -> int:
    with open(args.logs) as fh:
        gammas = [int(line.strip()) for line in fh if line.strip()]
    if len(gammas) != 4:
        _note("reduce: logs file must contain exactly four integers >= 2")
        return EXIT_USAGE
    m_bound = int(args.M)
    c_seed = int(args.C) if args.C else 10 ** (4 * len(str(m_bound)))
    cert = auto_reduce(gammas, m_bound, c_seed)
    _emit(
        {
            "C_used": str(cert.C),
            "U": float(cert.u_value().hi),
            "lower_bound_log2": float((-cert.u_value()).lo),
        }
    )
    _note(f"reduce: C = {cert.C}, U = {float(cert.u_value().hi):.2f}")
    return EXIT_OK


def _cmd_contfrac(args) -> int:
    if args.alpha == "log3log2":
        source = contfrac.log_ratio_source(3, 2)
    else:
        with open(args.alpha_file) as fh:
            num, den = (int(x) for x in fh.read().split()[:2])
        source = contfrac.log_ratio_source(num, den)
    convs = contfrac.convergents(
        source, denominator_target=int(args.target), prec=args.precision
    )
    last = convs[-1]
    _emit(
        {
            "index": last.index,
            "p": str(last.p),
            "q": str(last.q),
            "error_low": float(last.error.lo),
        }
    )
    _note(f"contfrac: stopped at index {last.index}, q has {len(str(last.q))} digits")
    return EXIT_OK


def _cmd_factors_check(args) -> int:
    if args.table == "bundled":
        table = dioph.load_bundled_factor_table()
    else:
        with open(args.table) as fh:
            table = dioph.parse_factor_table(fh.read(), source=args.table)
    report = dioph.factor_table_check(table)
    _emit(
        {
            "checked": report.checked_t,
            "missing": len(report.missing_t),
            "incomplete": report.incomplete_t,
            "violations": [list(v) for v in report.violations],
            "square_parts": {
                str(t): {str(p): e for p, e in sq.items()}
                for t, sq in sorted(report.square_parts.items())
            },
        }
    )
    _note(
        f"factors-check: {len(report.checked_t)} entries checked, "
        f"{len(report.violations)} violation(s), "
        f"{len(report.incomplete_t)} incomplete"
    )
    return EXIT_OK if report.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="muldep")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=256, help="working bits")
    common.add_argument("--slack", type=float, default=5.0,
                        help="bound slack percent")
    sub = ap.add_subparsers(dest="command", required=True,
                            parser_class=lambda **kw: argparse.ArgumentParser(
                                parents=[common], **kw))

    p = sub.add_parser("search", help="consecutive dependent triples up to N")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--all-2md", action="store_true", dest="all_2md")
    p.add_argument("--exclude-fam1", action="store_true", dest="exclude_fam1")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--checkpoint", default=None)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("classify", help="classify one triple")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("c", type=int)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("verify-theorem", help="check classification theorems")
    p.add_argument("which", choices=["a2", "3x2md"])
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_verify_theorem)

    p = sub.add_parser("lemma", help="small-case lemma box search")
    p.add_argument("lemma_id")
    p.add_argument("--bounds", default=None, help="e.g. x=30,e=60")
    p.set_defaults(func=_cmd_lemma)

    p = sub.add_parser("sit-pipeline", help="certified bound chain")
    p.add_argument("sign", choices=["plus", "minus"])
    p.set_defaults(func=_cmd_sit_pipeline)

    p = sub.add_parser("sit-solve", help="final bounded equation search")
    p.add_argument("sign", choices=["plus", "minus"])
    p.add_argument("--x-range", dest="x_range", default=None, help="LO..HI")
    p.set_defaults(func=_cmd_sit_solve)

    p = sub.add_parser("x2minus2-bound", help="exponent bound for x^2-2=y^n")
    p.set_defaults(func=_cmd_x2minus2)

    p = sub.add_parser("reduce", help="one lattice reduction")
    p.add_argument("--logs", required=True, help="file with four integers")
    p.add_argument("--M", required=True)
    p.add_argument("--C", default=None)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("contfrac", help="certified convergents")
    p.add_argument("--alpha", default="log3log2", choices=["log3log2", "custom"])
    p.add_argument("--alpha-file", dest="alpha_file", default=None)
    p.add_argument("--target", required=True, help="denominator target")
    p.set_defaults(func=_cmd_contfrac)

    p = sub.add_parser("factors-check", help="factor table congruence check")
    p.add_argument("--table", required=True, help="path or 'bundled'")
    p.set_defaults(func=_cmd_factors_check)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (DomainError, dioph.FactorTableError, OSError, ValueError) as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE
    except (PrecisionError, LatticeError, linforms.PipelineError) as exc:
        _note(f"computation failed: {exc}")
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
