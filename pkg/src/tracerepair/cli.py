"""Command line: ``python -m tracerepair {repair,count-triples,compare,selftest}``."""

from __future__ import annotations

import argparse
import sys

from tracerepair.analysis import (
    CENSUS_HEADER,
    CENSUS_TOWERS,
    CENSUS_TOWERS_LARGE,
    default_k,
    repair_lower_bound,
    scheme_table,
    threshold_report,
)
from tracerepair.errors import TraceRepairError
from tracerepair.field import field_tower
from tracerepair.selftest import run_selftest
from tracerepair.sim import SCHEME_NAMES, ConfigError, census_rows, parse_config, run_scenario, scenario_from_mapping


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _tower_args(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--p", type=int, required=required, help="characteristic")
    parser.add_argument("--m", type=int, default=1, help="degree of B over GF(p)")
    parser.add_argument("--t", type=int, required=required, help="degree of F over B")


def cmd_repair(args) -> int:
    values: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            values.update(parse_config(fh.read()))
    for key in ("p", "m", "t", "k", "erasures", "scheme", "trials", "seed", "message"):
        val = getattr(args, key)
        if val is not None:
            values[key] = val
    values.setdefault("m", 1)
    try:
        sc = scenario_from_mapping(values)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = run_scenario(sc, transcript=bool(args.transcript))
    _write(args.out, report.to_csv())
    if args.transcript:
        _write(args.transcript, "".join(report.transcripts))
    sys.stderr.write(report.summary())
    return 0 if report.ok else 1


def cmd_count_triples(args) -> int:
    if args.standard_towers:
        towers = [tw for tw in CENSUS_TOWERS if args.full or tw not in CENSUS_TOWERS_LARGE]
    else:
        if args.p is None or args.t is None:
            print("error: give --p and --t, or --standard-towers", file=sys.stderr)
            return 2
        towers = [(args.p, args.m, args.t)]
    alpha, beta = (s.strip() for s in args.pair.split(","))
    try:
        rows = census_rows(towers, alpha, beta)
    except (TraceRepairError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _write(args.out, CENSUS_HEADER + "\n" + "".join(r + "\n" for r in rows))
    return 0


def cmd_compare(args) -> int:
    try:
        F = field_tower(args.p, args.m, args.t)
    except TraceRepairError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    n, q, t = F.order, F.sub_order, F.t
    k = default_k(q, t) if args.k is None else args.k
    lines = [f"# {F.name}, n={n}, k={k}", "scheme,erasures,bandwidth_subsymbols,conditions"]
    for row in scheme_table(F, k):
        lines.append(f"{row.scheme},{row.erasures},{row.bandwidth},{row.conditions}")
    bound = repair_lower_bound(n, k, q, t)
    lines.append(f"lower_bound,1,{bound:g},one erasure")
    for e in (2, 3):
        lines.append(f"lower_bound,{e},{e * bound:g},e erasures")
    rep = threshold_report(q, t)
    lines.append(
        f"# dist1 {rep.dist1_total} vs naive+gw {rep.naive_plus_gw}: "
        f"strictly smaller={rep.dist1_beats} (t >= (2|B|-1)/(|B|-1): {rep.dist1_condition})"
    )
    lines.append(
        f"# central2 {rep.central2_total} vs naive {rep.naive_two}: "
        f"strictly smaller={rep.central2_beats} (t >= 2|B|/(|B|-1): {rep.central2_condition})"
    )
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_selftest(args) -> int:
    outcomes = run_selftest()
    lines = [line for o in outcomes for line in o.lines()]
    ok = all(o.passed for o in outcomes)
    lines.append("selftest: " + ("PASS" if ok else "FAIL"))
    _write(args.out, "\n".join(lines) + "\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tracerepair", description="Trace repair of full-length Reed-Solomon codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    rp = sub.add_parser("repair", help="run a repair scenario and write a CSV report")
    rp.add_argument("--config", help="flat key = value scenario file; flags override it")
    _tower_args(rp, required=False)
    rp.set_defaults(m=None)
    rp.add_argument("--k", type=int)
    rp.add_argument("--erasures", help="comma-separated positions or elements (x^k)")
    rp.add_argument("--scheme", choices=SCHEME_NAMES)
    rp.add_argument("--trials", type=int)
    rp.add_argument("--seed", type=int)
    rp.add_argument("--message", help="fixed message coefficients instead of random ones")
    rp.add_argument("--out", help="CSV path (default stdout)")
    rp.add_argument("--transcript", help="write per-trial transcripts to this file")
    rp.set_defaults(func=cmd_repair)

    ct = sub.add_parser("count-triples", help="census of correctable three-erasure patterns")
    _tower_args(ct, required=False)
    ct.add_argument("--pair", default="0,1", help="fixed pair of points (default 0,1)")
    ct.add_argument("--standard-towers", action="store_true", help="run the standard list of towers")
    ct.add_argument("--full", action="store_true", help="include the two largest towers")
    ct.add_argument("--out")
    ct.set_defaults(func=cmd_count_triples)

    cp = sub.add_parser("compare", help="closed-form bandwidth of every scheme")
    _tower_args(cp)
    cp.add_argument("--k", type=int)
    cp.add_argument("--out")
    cp.set_defaults(func=cmd_compare)

    st = sub.add_parser("selftest", help="replay the built-in reference values")
    st.add_argument("--out")
    st.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)
