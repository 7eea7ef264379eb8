"""``cutsparse`` command-line front end.

Every subcommand prints a structured-text run report (to stdout, or to
``--report``) and writes its artifact to ``--out`` when given.  Exit codes:
2 usage, 3 parse error, 4 oracle size cap exceeded, 5 invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .certificate import weak_edges
from .corpus import full_corpus, small_corpus
from .errors import EstimationError, ParseError, SizeCapError
from .flow import approx_max_flow, approx_min_cut, max_flow, min_st_cut
from .graph import Graph, connected_components
from .io import format_ghct, format_labels, format_weight, parse_labels, read_graph, write_atomic
from .oracle import STRENGTH_CAP, all_cut_values, oracle_min_st_cut, oracle_strengths
from .sampling import MODES, SparsifyParams, compress, smooth
from .strength import StrengthLabels, estimation, exact_strengths, window_estimation

EXIT_USAGE, EXIT_PARSE, EXIT_SIZE_CAP, EXIT_INVARIANT = 2, 3, 4, 5


@dataclass
class RunReport:
    """Ordered key-value report; sections keep insertion order."""

    command: str
    input: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    verification: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(v.get("fail", 0) == 0 for v in self.verification.values())

    def render(self) -> str:
        lines = ["# cutsparse run report", f"version: {__version__}", f"command: {self.command}"]
        for name in ("input", "params", "outputs"):
            for key, value in getattr(self, name).items():
                lines.append(f"{name}.{key}: {_fmt(value)}")
        if self.verification:
            lines.append(f"verification.status: {'pass' if self.passed else 'fail'}")
            for prop, row in self.verification.items():
                status = "pass" if row["fail"] == 0 else "fail"
                lines.append(f"verification.{prop}: {status} checked={row['checked']} fail={row['fail']}")
                for note in row.get("notes", [])[:10]:
                    lines.append(f"verification.{prop}.note: {note}")
        lines.append(f"wall_time_s: {self.wall_time:.4f}")
        return "\n".join(lines) + "\n"


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format_weight(value) if math.isfinite(value) else str(value)
    if isinstance(value, (list, tuple)):
        return " ".join(_fmt(v) for v in value)
    return str(value)


def _load(args, report: RunReport) -> tuple[Graph, tuple[int, int] | None]:
    data = Path(args.graph).read_bytes()
    g, terminals = read_graph(args.graph)
    report.input.update(path=args.graph, sha256=hashlib.sha256(data).hexdigest(), n=g.n, m=g.m)
    return g, terminals


def _labels(args, g: Graph, report: RunReport) -> StrengthLabels:
    if getattr(args, "labels", None):
        labels = StrengthLabels(parse_labels(Path(args.labels).read_text(), g.m))
        method = "file"
    else:
        method = getattr(args, "method", "auto")
        if method == "auto":
            method = "estimation" if g.is_unweighted else "window"
        if method == "exact":
            labels = exact_strengths(g, args.oracle_cap)
        elif method == "estimation":
            labels = estimation(g, float(g.weights.min()) if g.m else 1.0)
        else:
            labels = window_estimation(g)
    report.params["labels"] = method
    if g.m:
        report.outputs.update(
            label_cost=float(labels.cost(g)),
            label_cost_per_vertex=float(labels.cost(g)) / max(1, g.n - 1),
            label_min=float(labels.values.min()),
            label_max=float(labels.values.max()),
        )
    return labels


def _params(args, n: int, report: RunReport) -> SparsifyParams | None:
    """``None`` means epsilon 0: run exactly."""
    report.params.update(epsilon=args.epsilon, d=args.d, seed=args.seed, mode=args.mode)
    if args.epsilon == 0:
        report.params["rho"] = "inf"
        return None
    params = SparsifyParams(args.epsilon, args.d, args.seed, args.mode, getattr(args, "integer_rounding", False))
    report.params["rho"] = params.rho(n) if n >= 2 else 0.0
    return params


def _terminals(args, g: Graph, terminals) -> tuple[int, int]:
    s = args.source - 1 if args.source is not None else (terminals[0] if terminals else None)
    t = args.sink - 1 if args.sink is not None else (terminals[1] if terminals else None)
    if s is None or t is None:
        raise _Usage("--source and --sink are required for this input")
    if not (0 <= s < g.n and 0 <= t < g.n) or s == t:
        raise _Usage(f"source/sink must be distinct ids in 1..{g.n}")
    return s, t


class _Usage(Exception):
    pass


def _artifact(args, text: str, report: RunReport):
    report.outputs["artifact_sha256"] = hashlib.sha256(text.encode()).hexdigest()
    if args.out:
        write_atomic(args.out, text)
        report.outputs["artifact"] = args.out


def cmd_strength(args, report: RunReport):
    g, _ = _load(args, report)
    labels = _labels(args, g, report)
    _artifact(args, format_labels(labels.values), report)


def cmd_sparsify(args, report: RunReport):
    g, _ = _load(args, report)
    params = _params(args, g.n, report)
    if params is None:
        out = g
    else:
        labels = _labels(args, g, report)
        comp = compress(g, labels, params)
        out = comp.graph
        report.outputs["expected_edges"] = comp.expected_edges()
    report.outputs.update(edges=out.m, total_weight=out.total_weight)
    _artifact(args, format_ghct(out), report)


def cmd_smooth(args, report: RunReport):
    g, _ = _load(args, report)
    c = g.m / max(1, g.n) if args.smooth_c == "auto" else float(args.smooth_c)
    if not c > 0:
        raise _Usage("--smooth-c must be positive or 'auto'")
    report.params["smooth_c"] = c
    labels = _labels(args, g, report)
    sm = smooth(g, labels, c)
    bound = g.m + c * labels.cost(g)
    report.outputs.update(edges=sm.graph.m, edge_bound=float(bound))
    _artifact(args, format_ghct(sm.graph), report)


def cmd_mincut(args, report: RunReport):
    g, terminals = _load(args, report)
    s, t = _terminals(args, g, terminals)
    report.params.update(source=s + 1, sink=t + 1)
    params = _params(args, g.n, report)
    if params is None:
        res = min_st_cut(g, s, t)
    else:
        res = approx_min_cut(g, s, t, params, _labels(args, g, report))
    side = sorted(res.cut.side)
    report.outputs.update(value=res.value, compressed_value=res.compressed_value, side_size=len(side))
    _artifact(args, "".join(f"s {x + 1}\n" for x in side), report)


def cmd_maxflow(args, report: RunReport):
    g, terminals = _load(args, report)
    s, t = _terminals(args, g, terminals)
    report.params.update(source=s + 1, sink=t + 1)
    params = _params(args, g.n, report)
    if params is None:
        flow = max_flow(g, s, t)
    else:
        flow = approx_max_flow(g, s, t, params, _labels(args, g, report))
    bad = flow.violations(g)
    report.outputs["value"] = flow.value
    report.verification["feasible"] = {"checked": 1, "fail": int(bool(bad)), "notes": bad}
    _artifact(args, "".join(f"f {i + 1} {format_weight(float(f))}\n" for i, f in enumerate(flow.flows)), report)


def verify_graph(g: Graph, cap: int = STRENGTH_CAP) -> dict[str, tuple[bool, str]]:
    """Oracle-backed property checks on one graph; each entry is ``(ok, detail)``."""
    out: dict[str, tuple[bool, str]] = {}
    if g.m == 0:
        return out
    k = oracle_strengths(g, cap)
    u = g.weights
    total = math.fsum(u / k)
    out["strength_sum"] = (total <= g.n - 1 + 1e-9, f"sum={total:.6g} n-1={g.n - 1}")
    _, comps = connected_components(g)
    if comps == 1:
        mc = float(all_cut_values(g, u / k).min())
        out["unit_min_cut"] = (abs(mc - 1) <= 1e-9, f"min cut={mc!r}")
    worst = max(math.fsum(u[k < kk]) - kk * (g.n - 1) for kk in (1, 2, 4, 8))
    out["k_weak_bound"] = (worst <= 1e-9, f"max excess={worst:.3g}")
    if g.is_unweighted:
        labels, limit = estimation(g), 4
    else:
        labels, limit = window_estimation(g), 12
    lv = labels.values
    out["label_soundness"] = (bool(np.all(lv <= k * (1 + 1e-9))), f"max ratio={float((lv / k).max()):.4g}")
    cost = float(labels.cost(g))
    out["label_cost"] = (cost <= limit * (g.n - 1) + 1e-9, f"cost/(n-1)={cost / max(1, g.n - 1):.4g} limit={limit}")
    missing = 0
    for kk in (1, 2, 4, 8):
        got = set(weak_edges(g, kk))
        missing += sum(1 for i in range(g.m) if k[i] < kk and i not in got)
    out["weak_edges_containment"] = (missing == 0, f"missing={missing}")
    s, t = 0, g.n - 1
    f = max_flow(g, s, t).value
    c = oracle_min_st_cut(g, s, t).value
    out["duality"] = (abs(f - c) <= 1e-9 * max(1.0, c), f"flow={f!r} cut={c!r}")
    return out


def cmd_verify(args, report: RunReport):
    cases = list(full_corpus() if args.corpus == "full" else small_corpus() if args.corpus == "small" else [])
    if args.graph:
        g, _ = _load(args, report)
        if g.n > args.oracle_cap:
            raise SizeCapError(f"verify needs n <= {args.oracle_cap} (--oracle-cap), got n={g.n}")
        cases.append((args.graph, g))
    report.params.update(corpus=args.corpus, oracle_cap=args.oracle_cap)
    report.outputs["graphs"] = len(cases)
    for name, g in cases:
        for prop, (ok, detail) in verify_graph(g, args.oracle_cap).items():
            row = report.verification.setdefault(prop, {"checked": 0, "fail": 0, "notes": []})
            row["checked"] += 1
            if not ok:
                row["fail"] += 1
                row["notes"].append(f"{name}: {detail}")
    if args.out:
        write_atomic(args.out, report.render())


COMMANDS = {
    "strength": cmd_strength,
    "sparsify": cmd_sparsify,
    "smooth": cmd_smooth,
    "mincut": cmd_mincut,
    "maxflow": cmd_maxflow,
    "verify": cmd_verify,
}


def _epsilon(text: str) -> float:
    x = float(text)
    if not (x == 0 or 0 < x < 1):
        raise argparse.ArgumentTypeError("epsilon must be 0 (exact) or lie in (0, 1)")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cutsparse", description="Cut sparsification by edge strength.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="artifact path (verify: report path)")
    common.add_argument("--report", help="write the run report here instead of stdout")
    common.add_argument("--oracle-cap", type=int, default=STRENGTH_CAP)

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--epsilon", type=_epsilon, default=0.5, help="accuracy; 0 runs exactly")
    sampling.add_argument("--d", type=float, default=1.0, help="failure exponent, probability n^-d")
    sampling.add_argument("--seed", type=int, default=0)
    sampling.add_argument("--mode", choices=MODES, default="simplified")
    sampling.add_argument("--integer-rounding", action="store_true")

    labelled = argparse.ArgumentParser(add_help=False)
    labelled.add_argument("--labels", help="strength labels file instead of estimating")
    labelled.add_argument("--method", choices=("auto", "estimation", "window", "exact"), default="auto")

    terminals = argparse.ArgumentParser(add_help=False)
    terminals.add_argument("--source", type=int, help="1-based source id")
    terminals.add_argument("--sink", type=int, help="1-based sink id")

    sub.add_parser("strength", parents=[common, labelled], help="estimate strength labels").add_argument("graph")
    sub.add_parser("sparsify", parents=[common, sampling, labelled], help="compress a graph").add_argument("graph")
    p = sub.add_parser("smooth", parents=[common, labelled], help="subdivide edges to a smooth graph")
    p.add_argument("graph")
    p.add_argument("--smooth-c", default="auto", help="smoothness c, or 'auto' for m/n")
    for name, text in (("mincut", "s-t minimum cut"), ("maxflow", "s-t maximum flow")):
        sub.add_parser(name, parents=[common, sampling, labelled, terminals], help=text).add_argument("graph")
    p = sub.add_parser("verify", parents=[common], help="oracle property suite")
    p.add_argument("graph", nargs="?")
    p.add_argument("--corpus", choices=("small", "full", "none"), default="small")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = RunReport(args.command)
    start = time.perf_counter()
    try:
        COMMANDS[args.command](args, report)
    except _Usage as exc:
        parser.error(str(exc))
    except ParseError as exc:
        print(f"cutsparse: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cutsparse: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeCapError as exc:
        print(f"cutsparse: size cap: {exc}", file=sys.stderr)
        return EXIT_SIZE_CAP
    except EstimationError as exc:
        print(f"cutsparse: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"cutsparse: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.wall_time = time.perf_counter() - start
    text = report.render()
    if args.report:
        write_atomic(args.report, text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
