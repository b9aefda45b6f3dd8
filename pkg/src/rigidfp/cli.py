"""Command line front end: enumerate, fingerprint, check, fibers, render.

Text output uses exponent form; --json emits one JSON object per line
(UTF-8 JSONL) with a stable field order.  Exit codes: 0 success / suite
pass, 1 invariant violation, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .blocks import decompose_blocks
from .checks import DEFAULT_MAX_RANK, SUITES, run_suite
from .fingerprint import (
    ALL_CONDITIONS,
    FingerprintOptions,
    FingerprintResult,
    fingerprint,
)
from .partitions import (
    COMPONENTWISE,
    DPRIME_FIRST,
    INTERLEAVE,
    PRIME_FIRST,
    OperatorPair,
    Theory,
    combine,
    enumerate_rigid,
    enumerate_rigid_pairs,
    format_partition,
    parse_partition,
)
from .render import render_tagged

MODES = {"interleave": INTERLEAVE, "sum": COMPONENTWISE}
TIE_BREAKS = {"prime": PRIME_FIRST, "dprime": DPRIME_FIRST}


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + ("\n" if text else ""))
    else:
        print(text)


def _options_from_args(args) -> FingerprintOptions:
    conditions = ALL_CONDITIONS
    if args.conditions:
        tokens = [t.strip().lower() for t in args.conditions.split(",") if t.strip()]
        bad = [t for t in tokens if t not in ("i", "ii", "iii")]
        if bad:
            raise ValueError(f"unknown condition {bad[0]!r}")
        conditions = frozenset(tokens)
    return FingerprintOptions(
        mode=MODES[args.mode],
        tie_break=TIE_BREAKS[args.tie_break],
        conditions=conditions,
        iii_variant=args.iii,
    )


def result_record(res: FingerprintResult) -> dict:
    """One CatalogRecord, keyed and ordered deterministically."""
    pair = res.pair
    diagnostics = []
    if res.diagnostic is not None:
        diagnostics = [
            {"value": v, "multiplicity": n, "tau": t}
            for v, n, t in res.diagnostic.entries
        ]
    blocks = []
    if res.tagged.mode == INTERLEAVE:
        src = res.blocks or decompose_blocks(res.tagged, res.theory)
        blocks = [
            {"start": b.start, "end": b.end, "kind": b.kind,
             "operator_label": b.operator_label}
            for b in src
        ]
    return {
        "theory": res.theory.value,
        "rank": res.rank,
        "lambda_prime": list(pair.lambda_prime) if pair else None,
        "lambda_dprime": list(pair.lambda_dprime) if pair else None,
        "combine_mode": res.options.mode,
        "iii_variant": res.options.variant_for(res.theory),
        "tie_break": res.options.tie_break,
        "mu": list(res.trace.mu_partition()),
        "alpha": list(res.weyl.alpha) if res.weyl else None,
        "beta": list(res.weyl.beta) if res.weyl else None,
        "diagnostics": diagnostics,
        "blocks": blocks,
    }


def _result_text(res: FingerprintResult) -> str:
    lines = [
        f"theory: {res.theory.value}",
        f"rank: {res.rank}",
    ]
    if res.pair:
        lines.append(f"lambda': {format_partition(res.pair.lambda_prime)}")
        lines.append(f"lambda'': {format_partition(res.pair.lambda_dprime)}")
    lines.append(
        f"mode: {res.options.mode}  iii: {res.options.variant_for(res.theory)}"
        f"  tie-break: {res.options.tie_break}"
        f"  conditions: {','.join(sorted(res.options.conditions))}"
    )
    lines.append(f"mu: {format_partition(res.trace.mu_partition())}")
    taus = "  ".join(
        f"{m}:{t:+d}" + (f"({w})" if w else "") for m, t, w in res.tau.entries
    )
    lines.append(f"tau: {taus if taus else '-'}")
    if res.weyl is not None:
        lines.append(f"alpha: {format_partition(res.weyl.alpha)}")
        lines.append(f"beta: {format_partition(res.weyl.beta)}")
    else:
        lines.append(f"diagnostic: {res.diagnostic.message()}")
    if res.tagged.mode == INTERLEAVE:
        src = res.blocks or decompose_blocks(res.tagged, res.theory)
        parts = [
            f"[{b.start},{b.end}) {b.kind}"
            + (f" {b.operator_label}" if b.operator_label else "")
            for b in src
        ]
        lines.append("blocks: " + (" | ".join(parts) if parts else "-"))
    return "\n".join(lines)


def cmd_enumerate(args) -> int:
    theory = Theory(args.theory)
    lines = []
    if args.pairs:
        for pair in enumerate_rigid_pairs(theory, args.rank):
            if args.json:
                lines.append(json.dumps({
                    "theory": theory.value,
                    "rank": args.rank,
                    "lambda_prime": list(pair.lambda_prime),
                    "lambda_dprime": list(pair.lambda_dprime),
                }))
            else:
                lines.append(
                    f"({format_partition(pair.lambda_prime)}; "
                    f"{format_partition(pair.lambda_dprime)})"
                )
    else:
        for p in enumerate_rigid(theory, args.rank):
            if args.json:
                lines.append(json.dumps({
                    "theory": theory.value,
                    "rank": args.rank,
                    "partition": list(p),
                }))
            else:
                lines.append(format_partition(p))
    _emit("\n".join(lines), args.out)
    return 0


def cmd_fingerprint(args) -> int:
    pair = OperatorPair(
        parse_partition(args.prime), parse_partition(args.dprime), Theory(args.theory)
    )
    if args.compare:
        combos = [
            FingerprintOptions(mode=m, tie_break=t, iii_variant=args.iii)
            for m in (INTERLEAVE, COMPONENTWISE)
            for t in (PRIME_FIRST, DPRIME_FIRST)
        ]
        lines = []
        for opts in combos:
            res = fingerprint(pair, opts)
            if args.json:
                lines.append(json.dumps(result_record(res)))
            else:
                if res.weyl is not None:
                    outcome = (
                        f"[{format_partition(res.weyl.alpha)}; "
                        f"{format_partition(res.weyl.beta)}]"
                    )
                else:
                    outcome = f"diagnostic: {res.diagnostic.message()}"
                lines.append(
                    f"mode={opts.mode} tie-break={opts.tie_break}: {outcome}"
                )
        _emit("\n".join(lines), args.out)
        return 0
    res = fingerprint(pair, _options_from_args(args))
    text = json.dumps(result_record(res)) if args.json else _result_text(res)
    _emit(text, args.out)
    return 0


def cmd_check(args) -> int:
    report = run_suite(args.suite, args.max_rank)
    lines = []
    if args.json:
        lines.append(json.dumps({
            "suite": report.name,
            "checked": report.checked,
            "ok": report.ok,
            "failures": report.failures,
            "info": report.info,
        }))
    else:
        lines.append(f"suite {report.name}: checked {report.checked} inputs")
        lines.extend(f"info: {msg}" for msg in report.info)
        if report.ok:
            lines.append("PASS")
        else:
            lines.append(f"FAIL ({len(report.failures)} counterexamples)")
            lines.extend(f"  {c}" for c in report.failures[:10])
    _emit("\n".join(lines), args.out)
    return 0 if report.ok else 1


def _fiber_key(pair: OperatorPair):
    """Mirror pairs label the same class in the D theory; canonicalize there."""
    if pair.theory is Theory.D and pair.lambda_dprime > pair.lambda_prime:
        return (pair.lambda_dprime, pair.lambda_prime)
    return (pair.lambda_prime, pair.lambda_dprime)


def cmd_fibers(args) -> int:
    theory = Theory(args.theory)
    groups: dict = {}
    seen = set()
    for pair in enumerate_rigid_pairs(theory, args.rank):
        key = _fiber_key(pair)
        if key in seen:
            continue
        seen.add(key)
        res = fingerprint(pair)
        fp = (res.weyl.alpha, res.weyl.beta) if res.weyl else ("diagnostic",)
        groups.setdefault(fp, []).append(pair)
    lines = []
    for fp in sorted(groups, key=str):
        members = groups[fp]
        if len(members) < 2:
            continue
        if args.json:
            lines.append(json.dumps({
                "theory": theory.value,
                "rank": args.rank,
                "alpha": list(fp[0]) if fp[0] != "diagnostic" else None,
                "beta": list(fp[1]) if fp[0] != "diagnostic" else None,
                "members": [
                    {"lambda_prime": list(m.lambda_prime),
                     "lambda_dprime": list(m.lambda_dprime)}
                    for m in members
                ],
            }))
        else:
            if fp[0] == "diagnostic":
                head = "fiber <diagnostic>"
            else:
                head = (
                    f"fiber [{format_partition(fp[0])}; {format_partition(fp[1])}]"
                )
            lines.append(f"{head}: {len(members)} members")
            lines.extend(
                f"  ({format_partition(m.lambda_prime)}; "
                f"{format_partition(m.lambda_dprime)})"
                for m in members
            )
    _emit("\n".join(lines), args.out)
    return 0


def cmd_render(args) -> int:
    pair = OperatorPair(
        parse_partition(args.prime), parse_partition(args.dprime), Theory(args.theory)
    )
    tagged = combine(pair, INTERLEAVE, TIE_BREAKS[args.tie_break])
    _emit(render_tagged(tagged), args.out)
    return 0


def _add_common(p, mode_flags: bool = True):
    p.add_argument("--theory", required=True, choices=["B", "C", "D"])
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rigidfp",
        description="Fingerprints of rigid operators in the B/C/D theories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list rigid partitions or rigid pairs")
    _add_common(p)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--pairs", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("fingerprint", help="compute [alpha;beta] for one operator")
    _add_common(p)
    p.add_argument("--prime", default="", help="lambda' (e.g. \"2^2 1\")")
    p.add_argument("--dprime", default="", help="lambda'' (default empty)")
    p.add_argument("--mode", choices=sorted(MODES), default="interleave")
    p.add_argument("--iii", choices=["so", "sp", "vacuous"], default=None)
    p.add_argument("--tie-break", choices=sorted(TIE_BREAKS), default="prime")
    p.add_argument("--conditions", default=None, metavar="i,ii,iii")
    p.add_argument("--compare", action="store_true",
                   help="show all combine mode / tie-break conventions")
    p.set_defaults(func=cmd_fingerprint)

    p = sub.add_parser("check", help="run a named invariant suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--max-rank", type=int, default=None,
                   help=f"rank bound (defaults: {DEFAULT_MAX_RANK})")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fibers", help="group rigid pairs sharing a fingerprint")
    _add_common(p)
    p.add_argument("--rank", type=int, required=True)
    p.set_defaults(func=cmd_fibers)

    p = sub.add_parser("render", help="print the ASCII Young diagram of a pair")
    p.add_argument("--theory", required=True, choices=["B", "C", "D"])
    p.add_argument("--prime", default="")
    p.add_argument("--dprime", default="")
    p.add_argument("--tie-break", choices=sorted(TIE_BREAKS), default="prime")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
