"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 domain violation
(goodness, acyclicity, invalid coloring, disagreeing methods), 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import bounds as bnd
from .catalog import parse_catalog_spec
from .circular import (
    DEFAULT_ORIENTATION_CAP,
    chi_c_exact_kd,
    chi_c_exact_minty,
    chi_c_via_dynamics,
    chi_c_via_token_game,
    verify_circular_coloring,
    verify_kd_coloring,
)
from .dynamics import DEFAULT_STEP_CAP, run_to_steady_state, sink_sequence
from .errors import CircDynError, DomainError, ParseError
from .formats import (
    coloring_to_dot,
    format_orientation_spec,
    format_tmg,
    format_ug,
    frac_str,
    graph_to_dot,
    orientation_to_dot,
    parse_coloring_file,
    parse_orientation_spec,
    parse_tmg,
    parse_ug,
    read_text,
)
from .graph import (
    KdColoring,
    Marking,
    UndirectedGraph,
    WeightedSymmetricDigraph,
    marking_from_orientation,
    random_acyclic_orientation,
    to_symmetric_digraph,
)
from .ratio import max_cycle_ratio

AUTO_ALL_LIMIT = 6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    source: str | None
    method: str
    orientation_cap: int
    pulse_cap: int | None
    step_cap: int
    alpha_t_cap: int
    mis_cap: int
    json: bool
    trace: bool
    output: str | None
    seed: int | None

    def __post_init__(self):
        for name in ("orientation_cap", "step_cap", "alpha_t_cap", "mis_cap"):
            if getattr(self, name) <= 0:
                raise ParseError(f"--{name.replace('_', '-')} must be positive")
        if self.pulse_cap is not None and self.pulse_cap <= 0:
            raise ParseError("--pulse-cap must be positive")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise ParseError("--seed must fit in an unsigned 64-bit integer")


# ---------------------------------------------------------------------------
# input handling
# ---------------------------------------------------------------------------


@dataclass
class Loaded:
    graph: UndirectedGraph
    digraph: WeightedSymmetricDigraph
    marking: Marking | None
    weighted: bool


def load_input(spec: str) -> Loaded:
    if spec.startswith("catalog:"):
        try:
            g = parse_catalog_spec(spec[len("catalog:"):])
        except DomainError as exc:
            raise ParseError(str(exc)) from None
        return Loaded(g, to_symmetric_digraph(g, 1), None, False)
    text = read_text(spec)
    is_tmg = spec.endswith(".tmg") or any(
        line.split()[:1] == ["a"] for line in text.splitlines() if not line.lstrip().startswith("#")
    )
    if is_tmg:
        d, t = parse_tmg(text)
        unit = all(c == 1 for c in d.weights.values())
        return Loaded(d.underlying(), d, t, not unit)
    g = parse_ug(text)
    return Loaded(g, to_symmetric_digraph(g, 1), None, False)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_chi(cfg: RunConfig) -> int:
    data = load_input(cfg.source)
    g, d = data.graph, data.digraph
    method = cfg.method
    if method == "auto":
        method = "all" if g.n <= AUTO_ALL_LIMIT else "kd"
    if data.weighted and method == "kd":
        raise DomainError("kd method needs unit weights; use minty or dynamics")
    wanted = ["kd", "minty", "dynamics"] if method == "all" else [method]
    if data.weighted and method == "all":
        wanted = ["minty", "dynamics"]

    results: dict[str, Fraction] = {}
    witnesses: dict[str, object] = {}
    for m in wanted:
        if m == "kd":
            r, f = chi_c_exact_kd(g)
            witnesses[m] = {"k": f.k, "d": f.d, "colors": list(f.colors)}
        elif m == "minty":
            r, t = chi_c_exact_minty(d, cfg.orientation_cap)
            witnesses[m] = {"tokens": {f"{u}>{v}": k for (u, v), k in t.tokens.items()}}
        elif data.weighted:
            r, t = chi_c_via_token_game(d, cfg.orientation_cap, cfg.pulse_cap)
            witnesses[m] = {"tokens": {f"{u}>{v}": k for (u, v), k in t.tokens.items()}}
        else:
            r, omega = chi_c_via_dynamics(g, cfg.orientation_cap)
            witnesses[m] = {"orientation": format_orientation_spec(omega)}
        results[m] = r

    values = set(results.values())
    agree = len(values) == 1
    value = next(iter(values))
    if cfg.json:
        _print_json(
            {
                "chi_c": frac_str(value) if agree else None,
                "agree": agree,
                "results": {m: frac_str(r) for m, r in results.items()},
                "witnesses": witnesses,
            }
        )
    else:
        if agree and len(results) > 1:
            print(f"chi_c = {frac_str(value)} ({len(results)} methods agree)")
        elif agree:
            print(f"chi_c = {frac_str(value)}")
        else:
            print("methods disagree: " + ", ".join(f"{m}={frac_str(r)}" for m, r in results.items()))
        for m, w in witnesses.items():
            print(f"  {m} witness: {json.dumps(w, sort_keys=True)}")
    return 0 if agree else 2


def cmd_bounds(cfg: RunConfig, extra_t: Sequence[int]) -> int:
    g = load_input(cfg.source).graph
    config = bnd.BoundsConfig(alpha_t_cap=cfg.alpha_t_cap, mis_cap=cfg.mis_cap, extra_t=tuple(extra_t))
    reports, best = bnd.best_lower_bound(g, config)
    if cfg.json:
        _print_json({"reports": [r.to_dict() for r in reports], "combined": frac_str(best)})
        return 0
    width = max(len(r.bound_name) for r in reports)
    for r in reports:
        value = frac_str(r.value) if r.value is not None else "-"
        print(f"{r.bound_name:<{width}}  {'yes' if r.applicable else 'no ':<3}  {value}")
        for h in r.hypothesis_log:
            mark = "ok  " if h.holds else "FAIL"
            print(f"    [{mark}] {h.property}: {json.dumps(h.witness, sort_keys=True)}")
    print(f"combined = {frac_str(best)}")
    return 0


def _print_pulse(pulse, fired, tokens) -> None:
    rec = {"t": pulse, "fired": sorted(fired), "tokens": {f"{u}>{v}": k for (u, v), k in tokens.items()}}
    print(json.dumps(rec, sort_keys=True))


def cmd_simulate(cfg: RunConfig, check_ratio: bool) -> int:
    data = load_input(cfg.source)
    if data.marking is None:
        raise ParseError("simulate needs a .tmg input carrying a marking")
    d, t = data.digraph, data.marking

    steady = run_to_steady_state(d, t, cfg.pulse_cap, _print_pulse if cfg.trace else None)
    out = {
        "M": steady.transient,
        "p": frac_str(steady.period_time),
        "m": steady.multiplicity,
        "p/m": frac_str(steady.ratio),
    }
    ok = True
    if check_ratio:
        ratio = max_cycle_ratio(d, t).ratio
        ok = ratio == steady.ratio
        out["ratio"] = frac_str(ratio)
        out["ok"] = ok
    if cfg.json:
        _print_json(out)
    else:
        line = f"M={out['M']} p={out['p']} m={out['m']} p/m={out['p/m']}"
        if check_ratio:
            line += f" ratio={out['ratio']} {'OK' if ok else 'MISMATCH'}"
        print(line)
    return 0 if ok else 2


def cmd_sinkseq(cfg: RunConfig, orient: str | None, random_seed: int | None, optimal: bool, dot_dir: str | None) -> int:
    g = load_input(cfg.source).graph
    if orient:
        omega = parse_orientation_spec(g, orient)
    elif optimal:
        _, omega = chi_c_via_dynamics(g, cfg.orientation_cap)
    elif random_seed is not None:
        omega = random_acyclic_orientation(g, random.Random(random_seed))
    else:
        raise ParseError("sinkseq needs --orient, --random-seed or --optimal")
    seq = sink_sequence(omega, cfg.step_cap)
    if dot_dir:
        out = Path(dot_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, w in enumerate(seq.period_orientations()):
            idx = seq.transient + i
            (out / f"omega_{idx:04d}.dot").write_text(orientation_to_dot(w, f"omega_{idx}"), encoding="utf-8")
    res = {
        "M": seq.transient,
        "p": seq.period,
        "m": seq.multiplicity,
        "p/m": frac_str(seq.ratio),
        "pattern": list(seq.pattern),
        "orientation": format_orientation_spec(omega),
    }
    if cfg.json:
        _print_json(res)
    else:
        pattern = ",".join(str(x) for x in seq.pattern)
        print(f"M={res['M']} p={res['p']} m={res['m']} p/m={res['p/m']} pattern=<{pattern}>")
    return 0


def cmd_ratio(cfg: RunConfig) -> int:
    data = load_input(cfg.source)
    if data.marking is None:
        raise ParseError("ratio needs a .tmg input carrying a marking")
    res = max_cycle_ratio(data.digraph, data.marking)
    if cfg.json:
        _print_json({"ratio": frac_str(res.ratio), "witness_cycle": list(res.witness_cycle)})
    else:
        print(f"ratio = {frac_str(res.ratio)} witness = {' '.join(map(str, res.witness_cycle))}")
    return 0


def cmd_verify(cfg: RunConfig, coloring_path: str) -> int:
    data = load_input(cfg.source)
    col = parse_coloring_file(read_text(coloring_path))
    if isinstance(col, KdColoring):
        if data.weighted:
            raise DomainError("a (k,d)-coloring can only be checked against unit weights")
        valid = verify_kd_coloring(data.graph, col)
        what = f"({col.k},{col.d})-coloring"
    else:
        valid = verify_circular_coloring(data.digraph, col)
        what = f"circular {frac_str(col.perimeter)}-coloring"
    if cfg.json:
        _print_json({"valid": valid, "kind": what})
    else:
        print(f"{'valid' if valid else 'invalid'} {what}")
    return 0 if valid else 2


def cmd_catalog(cfg: RunConfig, fmt: str) -> int:
    try:
        g = parse_catalog_spec(cfg.source)
    except DomainError as exc:
        raise ParseError(str(exc)) from None
    _emit(graph_to_dot(g) if fmt == "dot" else format_ug(g), cfg.output)
    return 0


def cmd_convert(cfg: RunConfig, to: str, orient: str | None, weight: str, coloring: str | None) -> int:
    data = load_input(cfg.source)
    g = data.graph
    if to == "tmg":
        if orient is None:
            if data.marking is None:
                raise ParseError("convert --to tmg needs --orient")
            d, t = data.digraph, data.marking
        else:
            omega = parse_orientation_spec(g, orient)
            try:
                w = Fraction(weight)
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad weight {weight!r}") from None
            d = data.digraph if data.weighted else to_symmetric_digraph(g, w)
            t = marking_from_orientation(omega)
        text = format_tmg(d, t)
    elif to == "ug":
        text = format_ug(g)
    elif coloring:
        col = parse_coloring_file(read_text(coloring))
        text = coloring_to_dot(g, col)
    elif orient:
        text = orientation_to_dot(parse_orientation_spec(g, orient))
    else:
        text = graph_to_dot(g)
    _emit(text, cfg.output)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=None, help="RNG seed for commands that draw random choices")
    common.add_argument("--orientation-cap", type=int, default=DEFAULT_ORIENTATION_CAP)
    common.add_argument("--pulse-cap", type=int, default=None)
    common.add_argument("--step-cap", type=int, default=DEFAULT_STEP_CAP)
    common.add_argument("--alpha-t-cap", type=int, default=bnd.ALPHA_T_CAP)
    common.add_argument("--mis-cap", type=int, default=bnd.MIS_CAP)
    common.add_argument("-o", "--output", default=None)

    parser = _Parser(prog="circdyn", description="Circular chromatic numbers via colorings, cycle ratios and dynamics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("chi", parents=[common], help="compute chi_c")
    p.add_argument("input")
    p.add_argument("--method", choices=["kd", "minty", "dynamics", "all", "auto"], default="auto")

    p = sub.add_parser("bounds", parents=[common], help="lower bounds with hypothesis logs")
    p.add_argument("input")
    p.add_argument("--t", type=int, action="append", default=[], help="extra t for the alpha_t / alpha1-1 bounds")

    p = sub.add_parser("simulate", parents=[common], help="token game on a .tmg file")
    p.add_argument("input")
    p.add_argument("--check-ratio", action="store_true")
    p.add_argument("--trace", action="store_true", help="print one JSON record per pulse")

    p = sub.add_parser("sinkseq", parents=[common], help="sink-reversal sequence")
    p.add_argument("input")
    p.add_argument("--orient", default=None, help="comma-separated u>v for every edge")
    p.add_argument("--random-seed", type=int, default=None)
    p.add_argument("--optimal", action="store_true", help="start from a chi_c-optimal orientation")
    p.add_argument("--dot-dir", default=None)

    p = sub.add_parser("ratio", parents=[common], help="maximum cycle ratio of a .tmg file")
    p.add_argument("input")

    p = sub.add_parser("verify-coloring", parents=[common], help="check a .col or .kd coloring")
    p.add_argument("input")
    p.add_argument("coloring")

    p = sub.add_parser("catalog", parents=[common], help="write a named graph")
    p.add_argument("name", help="e.g. petersen, cycle:5, gn:2")
    p.add_argument("--format", choices=["ug", "dot"], default="ug")

    p = sub.add_parser("convert", parents=[common], help="convert between formats")
    p.add_argument("input")
    p.add_argument("--to", choices=["tmg", "ug", "dot"], default="tmg")
    p.add_argument("--orient", default=None)
    p.add_argument("--weight", default="1")
    p.add_argument("--coloring", default=None, help="label DOT nodes with this coloring")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            source=getattr(args, "input", None) or getattr(args, "name", None),
            method=getattr(args, "method", "auto"),
            orientation_cap=args.orientation_cap,
            pulse_cap=args.pulse_cap,
            step_cap=args.step_cap,
            alpha_t_cap=args.alpha_t_cap,
            mis_cap=args.mis_cap,
            json=args.json,
            trace=getattr(args, "trace", False),
            output=args.output,
            seed=args.seed,
        )
        if args.command == "chi":
            return cmd_chi(cfg)
        if args.command == "bounds":
            return cmd_bounds(cfg, args.t)
        if args.command == "simulate":
            return cmd_simulate(cfg, args.check_ratio)
        if args.command == "sinkseq":
            seed = args.random_seed if args.random_seed is not None else cfg.seed
            return cmd_sinkseq(cfg, args.orient, seed, args.optimal, args.dot_dir)
        if args.command == "ratio":
            return cmd_ratio(cfg)
        if args.command == "verify-coloring":
            return cmd_verify(cfg, args.coloring)
        if args.command == "catalog":
            return cmd_catalog(cfg, args.format)
        if args.command == "convert":
            return cmd_convert(cfg, args.to, args.orient, args.weight, args.coloring)
    except CircDynError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    parser.error(f"unknown command {args.command}")  # pragma: no cover
    return 1  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
