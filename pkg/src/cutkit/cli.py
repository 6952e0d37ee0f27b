"""Command-line surface: ideal, polytope, compose, stat, and table1 reports.

Every command renders one report, as stable line-oriented text (lines
starting with ``#`` carry timings and may be filtered out by golden
tests) or as JSON validating against the schemas shipped under
``cutkit/schemas``.  Exit codes: 0 success, 1 usage or input error,
2 budget-exhausted partial result, 3 verification or expected-value
mismatch.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .binomials import Binomial
from .cliquesum import LIFT_BUDGET, SumContext, compose_tagged, verify_generates
from .cutmodel import VariableSet, all_partitions, exponent_matrix, print_binomial
from .engine import markov_basis, toric_groebner
from .graphs import (
    BudgetError,
    Graph,
    GraphError,
    graph_from_text,
    make_named,
    suspend,
)
from .orders import TermOrder
from .polytope import (
    cut_polytope,
    dimension,
    facets,
    is_compressed,
    is_smooth,
    normality_gaps,
    normalized_volume,
)
from .statmodels import (
    covariance_table,
    fourier,
    fourier_inverse,
    graph_of_splits,
    parse_split_system,
    split_model_matrix,
    verify_covariance,
    verify_split_model,
)

__all__ = ["RunConfig", "main"]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARTIAL = 2
EXIT_MISMATCH = 3

BUDGET_ENV = "CUTKIT_BUDGET"


@dataclass(frozen=True)
class RunConfig:
    """Validated flag set shared by all subcommands."""

    command: str
    fmt: str = "text"
    output: Optional[str] = None
    threads: int = 1
    pair_budget: Optional[int] = None
    lift_budget: int = LIFT_BUDGET
    max_height: Optional[int] = None
    timeout: Optional[float] = None

    def __post_init__(self) -> None:
        if self.fmt not in ("text", "json"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.threads < 1:
            raise ValueError("--threads must be positive")
        for name, budget in (
            ("--budget-pairs", self.pair_budget),
            ("--budget-lifts", self.lift_budget),
            ("--max-height", self.max_height),
        ):
            if budget is not None and budget < 1:
                raise ValueError(f"{name} must be positive")
        if self.timeout is not None and self.timeout <= 0:
            raise ValueError("--timeout must be positive")


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit 1 (2 means budget-partial)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


# ---------------------------------------------------------------------------
# shared helpers


def _resolve_graph(spec: str) -> tuple[Graph, str]:
    """A graph from a compact name, or from a file when ``spec`` is a path."""
    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            return graph_from_text(fh.read()), os.path.basename(spec)
    return make_named(spec), spec


def _parse_order(spec: str) -> TermOrder:
    if spec == "degrevlex":
        return TermOrder("degrevlex")
    if spec == "lex":
        return TermOrder("lex")
    if spec.startswith("weight:"):
        body = spec[len("weight:") :]
        try:
            weight = tuple(int(x) for x in body.split(","))
        except ValueError:
            raise ValueError(f"bad weight vector {body!r}") from None
        return TermOrder("weight", weight=weight)
    raise ValueError(
        f"unknown order {spec!r} (expected degrevlex, lex, or weight:<csv>)"
    )


def _graph_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def _binomial_json(b: Binomial, labels: Sequence[str]) -> dict:
    return {
        "lhs": [[labels[i], e] for i, e in enumerate(b.plus) if e],
        "rhs": [[labels[i], e] for i, e in enumerate(b.minus) if e],
    }


def _side_str(exps: Sequence[int], labels: Sequence[str]) -> str:
    parts = [
        labels[i] + (f"^{e}" if e > 1 else "")
        for i, e in enumerate(exps)
        if e
    ]
    return "*".join(parts) if parts else "1"


def _binomial_str(b: Binomial, labels: Sequence[str]) -> str:
    return f"{_side_str(b.plus, labels)} - {_side_str(b.minus, labels)}"


def _histogram(elements) -> dict[int, int]:
    hist: dict[int, int] = {}
    for b in elements:
        hist[b.degree()] = hist.get(b.degree(), 0) + 1
    return dict(sorted(hist.items()))


def _hist_json(hist: dict[int, int]) -> dict[str, int]:
    return {str(k): v for k, v in sorted(hist.items())}


def _hist_str(hist: dict[int, int]) -> str:
    return ",".join(f"{k}:{v}" for k, v in sorted(hist.items())) or "-"


def _edges_str(g: Graph) -> str:
    return ",".join(f"{a}-{b}" for a, b in g.edges)


def _codim(g: Graph) -> int:
    return (1 << (g.n - 1)) - 1 - g.m


def _apply_env_budget(cfg: RunConfig, explicit_pairs: bool) -> RunConfig:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return cfg
    try:
        value = int(raw)
        if value < 1:
            raise ValueError
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    if explicit_pairs and value != cfg.pair_budget:
        print(
            f"warning: {BUDGET_ENV}={value} overrides --budget-pairs",
            file=sys.stderr,
        )
    return RunConfig(
        command=cfg.command,
        fmt=cfg.fmt,
        output=cfg.output,
        threads=cfg.threads,
        pair_budget=value,
        lift_budget=min(cfg.lift_budget, value),
        max_height=cfg.max_height,
        timeout=cfg.timeout,
    )


class _Report:
    """Accumulates one report as both a JSON document and text lines."""

    def __init__(self, command: str) -> None:
        self.doc: dict = {"command": command}
        self.lines: list[str] = []

    def field(self, key: str, value, text: Optional[str] = None) -> None:
        self.doc[key] = value
        self.lines.append(text if text is not None else f"{key} {value}")

    def render(self, fmt: str, wall: float) -> str:
        if fmt == "json":
            self.doc["wallTime"] = round(wall, 3)
            return json.dumps(self.doc, indent=2, sort_keys=True) + "\n"
        return "\n".join(self.lines + [f"# wall {wall:.3f}s"]) + "\n"


def _bool_str(flag: bool) -> str:
    return "true" if flag else "false"


# ---------------------------------------------------------------------------
# ideal


def _cmd_ideal(cfg: RunConfig, args) -> tuple[int, _Report]:
    g, name = _resolve_graph(args.graph)
    rep = _Report("ideal")
    rep.field("graph", _graph_json(g), f"graph {name} n={g.n} m={g.m}")
    rep.field("action", args.action)
    A = exponent_matrix(g)
    vars_ = VariableSet.from_graph(g)
    rep.field("variables", A.ncols)
    rep.field("codim", _codim(g))
    code = EXIT_OK

    if args.action == "groebner":
        order = _parse_order(args.order)
        gb = toric_groebner(
            A, order=order, pair_budget=cfg.pair_budget, threads=cfg.threads
        )
        elements, certified = gb.elements, gb.certified_complete
        rep.field("order", args.order)
    else:
        mk = markov_basis(A, pair_budget=cfg.pair_budget, threads=cfg.threads)
        elements, certified = mk.elements, mk.certified_complete

    hist = _histogram(elements)
    mu = max(hist) if hist else 0
    rep.field("certifiedComplete", certified, f"certified {_bool_str(certified)}")
    rep.field("count", len(elements))
    rep.field("mu", mu)
    rep.doc["degreeHistogram"] = _hist_json(hist)
    for k, v in sorted(hist.items()):
        rep.lines.append(f"degree {k}: {v}")
    if args.action != "degrees":
        rep.doc["generators"] = [
            _binomial_json(b, vars_.q_names()) for b in elements
        ]
        for b in elements:
            rep.lines.append(print_binomial(b, vars_))
    if not certified:
        code = EXIT_PARTIAL
    return code, rep


# ---------------------------------------------------------------------------
# polytope


def _cmd_polytope(cfg: RunConfig, args) -> tuple[int, _Report]:
    g, name = _resolve_graph(args.graph)
    rep = _Report("polytope")
    rep.field("graph", _graph_json(g), f"graph {name} n={g.n} m={g.m}")
    rep.field("action", args.action)
    p = cut_polytope(g)
    if args.action == "dim":
        rep.field("dim", dimension(p))
    elif args.action == "volume":
        rep.field("volume", normalized_volume(p))
    elif args.action == "smooth":
        v = is_smooth(p)
        rep.field("smooth", v, f"smooth {_bool_str(v)}")
    elif args.action == "compressed":
        v = is_compressed(p)
        rep.field("compressed", v, f"compressed {_bool_str(v)}")
    elif args.action == "facets":
        hp = facets(p)
        rep.field("nFacets", len(hp.facets), f"nfacets {len(hp.facets)}")
        rep.doc["facets"] = [
            {"normal": list(f.normal), "offset": f.offset} for f in hp.facets
        ]
        for f in hp.facets:
            rep.lines.append(
                " ".join(str(a) for a in f.normal) + f" <= {f.offset}"
            )
    else:  # normality
        height = cfg.max_height
        if height is None:
            height = max(1, dimension(p) - 1)
        gaps = normality_gaps(exponent_matrix(g), max_height=height)
        rep.field("maxHeight", height, f"maxheight {height}")
        rep.field("nGaps", len(gaps), f"gaps {len(gaps)}")
        rep.field(
            "normalUpTo",
            not gaps,
            f"normal-up-to-{height} {_bool_str(not gaps)}",
        )
        rep.doc["gaps"] = [
            {"height": gp.height, "point": list(gp.point)} for gp in gaps
        ]
        for gp in gaps:
            coords = ",".join(str(x) for x in gp.point)
            rep.lines.append(f"gap height={gp.height} point={coords}")
    return EXIT_OK, rep


# ---------------------------------------------------------------------------
# compose


def _cmd_compose(cfg: RunConfig, args) -> tuple[int, _Report]:
    g1, name1 = _resolve_graph(args.graph1)
    g2, name2 = _resolve_graph(args.graph2)
    sep1 = tuple(int(x) for x in args.separator.split(","))
    sep2 = (
        tuple(int(x) for x in args.separator2.split(","))
        if args.separator2
        else None
    )
    ctx = SumContext.from_graphs(g1, g2, sep1, sep2)
    rep = _Report("compose")
    rep.field("graph1", _graph_json(g1), f"graph1 {name1} n={g1.n} m={g1.m}")
    rep.field("graph2", _graph_json(g2), f"graph2 {name2} n={g2.n} m={g2.m}")
    rep.field(
        "separator",
        list(ctx.separator),
        f"separator {','.join(str(v) for v in ctx.separator)}",
    )
    rep.field(
        "glued", _graph_json(ctx.g), f"glued n={ctx.g.n} m={ctx.g.m}"
    )

    factors = []
    for g in (g1, g2):
        mk = markov_basis(
            exponent_matrix(g), pair_budget=cfg.pair_budget, threads=cfg.threads
        )
        if not mk.certified_complete:
            rep.field("partial", True, "partial true")
            rep.field(
                "reason",
                "factor Markov basis budget exhausted",
                "reason factor Markov basis budget exhausted",
            )
            return EXIT_PARTIAL, rep
        factors.append(mk.elements)

    try:
        tagged = compose_tagged(
            ctx, factors[0], factors[1], budget=cfg.lift_budget
        )
    except BudgetError as exc:
        rep.field("partial", True, "partial true")
        rep.field("reason", str(exc), f"reason {exc}")
        return EXIT_PARTIAL, rep

    vars_glued = VariableSet.from_graph(ctx.g)
    ok = verify_generates([b for b, _ in tagged], ctx.g)
    rep.field("count", len(tagged))
    rep.field("verified", ok, f"verified {_bool_str(ok)}")
    rep.doc["elements"] = [
        {
            **_binomial_json(b, vars_glued.q_names()),
            "side": tag["side"],
            "ef": tag["ef"],
        }
        for b, tag in tagged
    ]
    for b, tag in tagged:
        rep.lines.append(
            f"side={tag['side']} {print_binomial(b, vars_glued)}"
        )
    return EXIT_OK if ok else EXIT_MISMATCH, rep


# ---------------------------------------------------------------------------
# stat


def _cmd_stat_suspend(cfg: RunConfig, args) -> tuple[int, _Report]:
    g, name = _resolve_graph(args.graph)
    rep = _Report("stat")
    rep.field("action", "suspend-check")
    rep.field("graph", _graph_json(g), f"graph {name} n={g.n} m={g.m}")
    hat = suspend(g)
    rep.field(
        "suspension", _graph_json(hat), f"suspension n={hat.n} m={hat.m}"
    )
    ok = verify_covariance(g, threads=cfg.threads)
    rep.field("verified", ok, f"verified {'PASS' if ok else 'FAIL'}")
    if g.n <= 4:
        table = covariance_table(g.n)
        rep.doc["table"] = [list(row) for row in table]
        for prob, part in table:
            rep.lines.append(f"{prob} -> {part}")
    return (EXIT_OK if ok else EXIT_MISMATCH), rep


def _cmd_stat_splits(cfg: RunConfig, args) -> tuple[int, _Report]:
    with open(args.file, "r", encoding="utf-8") as fh:
        sigma = parse_split_system(fh.read())
    rep = _Report("stat")
    rep.field("action", f"splits-{args.saction}")
    rep.field("n", sigma.n)
    rep.field("r", sigma.r)
    rep.field("cyclic", sigma.is_cyclic, f"cyclic {_bool_str(sigma.is_cyclic)}")
    rep.doc["splits"] = [s.label() for s in sigma.splits]
    for i, s in enumerate(sigma.splits, start=1):
        rep.lines.append(f"split {i}: {s.label()}")

    if args.saction == "verify":
        ok = verify_split_model(sigma)
        rep.field("verified", ok, f"verified {'PASS' if ok else 'FAIL'}")
        return (EXIT_OK if ok else EXIT_MISMATCH), rep

    if sigma.is_cyclic:
        g = graph_of_splits(sigma)
        rep.field(
            "graph", _graph_json(g), f"graph n={g.n} edges {_edges_str(g)}"
        )
    else:
        rep.field("graph", None, "graph none")
    if args.saction == "graph":
        return EXIT_OK, rep

    J = split_model_matrix(sigma)
    mk = markov_basis(J, pair_budget=cfg.pair_budget, threads=cfg.threads)
    hist = _histogram(mk.elements)
    rep.field(
        "certifiedComplete",
        mk.certified_complete,
        f"certified {_bool_str(mk.certified_complete)}",
    )
    rep.field("count", len(mk.elements))
    rep.field("mu", max(hist) if hist else 0)
    rep.doc["degreeHistogram"] = _hist_json(hist)
    for k, v in sorted(hist.items()):
        rep.lines.append(f"degree {k}: {v}")
    rep.doc["generators"] = [
        _binomial_json(b, J.col_labels) for b in mk.elements
    ]
    for b in mk.elements:
        rep.lines.append(_binomial_str(b, J.col_labels))
    return (EXIT_OK if mk.certified_complete else EXIT_PARTIAL), rep


def _fraction_of(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ValueError(
            f"vector entries must be integers or rational strings, got {x!r}"
        )
    return Fraction(x)


def _fraction_json(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _cmd_stat_fourier(cfg: RunConfig, args) -> tuple[int, _Report]:
    with open(args.file, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if isinstance(raw, dict) and "values" in raw:
        raw = raw["values"]
    if not isinstance(raw, list):
        raise ValueError("vector file must hold a JSON array of values")
    values = [_fraction_of(x) for x in raw]
    out = fourier_inverse(values) if args.inverse else fourier(values)
    rep = _Report("stat")
    rep.field("action", "fourier")
    rep.field("inverse", args.inverse, f"inverse {_bool_str(args.inverse)}")
    rep.field("length", len(out))
    rep.doc["values"] = [_fraction_json(x) for x in out]
    for x in out:
        rep.lines.append(str(_fraction_json(x)))
    return EXIT_OK, rep


# ---------------------------------------------------------------------------
# table1


# Expected columns for the named rows reproducible on a desk budget:
# generator counts in degrees 2/4/6/8/10, largest generator degree,
# codimension, degree (normalized volume), and normality.  The prism
# row is deliberately absent: the published row for it is a verbatim
# duplicate of its neighbour and both engines here compute
# {2: 84, 4: 44} with volume 1424 instead.
TABLE1_EXPECTED: dict[str, dict] = {
    "K3": {
        "spec": "K3",
        "vertices": 3,
        "degrees": {},
        "mu": 0,
        "codim": 0,
        "deg": 1,
        "normal": True,
    },
    "C4": {
        "spec": "C4",
        "vertices": 4,
        "degrees": {2: 3},
        "mu": 2,
        "codim": 3,
        "deg": 8,
        "normal": True,
    },
    "K4": {
        "spec": "K4",
        "vertices": 4,
        "degrees": {4: 1},
        "mu": 4,
        "codim": 1,
        "deg": 4,
        "normal": True,
    },
    "C5": {
        "spec": "C5",
        "vertices": 5,
        "degrees": {2: 30},
        "mu": 2,
        "codim": 10,
        "deg": 52,
        "normal": True,
    },
    "K2,3": {
        "spec": "K2,3",
        "vertices": 5,
        "degrees": {2: 19},
        "mu": 2,
        "codim": 9,
        "deg": 72,
        "normal": True,
    },
    "hat-C4": {
        "spec": "suspend(C4)",
        "vertices": 5,
        "degrees": {2: 8, 4: 8},
        "mu": 4,
        "codim": 7,
        "deg": 64,
        "normal": True,
    },
    "K5": {
        "spec": "K5",
        "vertices": 5,
        "degrees": {4: 20, 6: 40},
        "mu": 6,
        "codim": 5,
        "deg": 128,
        "normal": False,
    },
    "C6": {
        "spec": "C6",
        "vertices": 6,
        "degrees": {2: 195},
        "mu": 2,
        "codim": 25,
        "deg": 344,
        "normal": True,
    },
    "K2,4": {
        "spec": "K2,4",
        "vertices": 6,
        "degrees": {2: 111},
        "mu": 2,
        "codim": 23,
        "deg": 1152,
        "normal": True,
    },
    "K3,3": {
        "spec": "K3,3",
        "vertices": 6,
        "degrees": {2: 63, 4: 72},
        "mu": 4,
        "codim": 22,
        "deg": 3168,
        "normal": True,
    },
    "hat-C5": {
        "spec": "suspend(C5)",
        "vertices": 6,
        "degrees": {2: 80, 4: 40},
        "mu": 4,
        "codim": 21,
        "deg": 1232,
        "normal": True,
    },
    "K2,2,2": {
        "spec": "K2,2,2",
        "vertices": 6,
        "degrees": {2: 24, 4: 1096},
        "mu": 4,
        "codim": 19,
        "deg": 6144,
        "normal": True,
    },
}

_ROW_FIELDS = ("degrees", "mu", "codim", "deg", "normal")


def _compute_row(spec: str, cfg: RunConfig) -> dict:
    g = make_named(spec) if not os.path.exists(spec) else _resolve_graph(spec)[0]
    A = exponent_matrix(g)
    mk = markov_basis(A, pair_budget=cfg.pair_budget, threads=cfg.threads)
    hist = _histogram(mk.elements)
    p = cut_polytope(g)
    height = cfg.max_height
    if height is None:
        height = max(1, dimension(p) - 1)
    gaps = normality_gaps(A, max_height=height)
    return {
        "degrees": hist,
        "mu": max(hist) if hist else 0,
        "codim": _codim(g),
        "deg": normalized_volume(p),
        "normal": not gaps,
        "normalHeight": height,
        "certifiedComplete": mk.certified_complete,
    }


def _row_worker(spec: str, cfg: RunConfig, conn) -> None:  # pragma: no cover
    try:
        conn.send(("ok", _compute_row(spec, cfg)))
    except Exception as exc:  # noqa: BLE001 - reported upward as a row error
        conn.send(("error", f"{type(exc).__name__}: {exc}"))
    finally:
        conn.close()


def _run_row(spec: str, cfg: RunConfig) -> tuple[str, object]:
    if cfg.timeout is None:
        return "ok", _compute_row(spec, cfg)
    mp = multiprocessing.get_context("fork")
    parent, child = mp.Pipe(duplex=False)
    proc = mp.Process(target=_row_worker, args=(spec, cfg, child))
    proc.start()
    child.close()
    proc.join(cfg.timeout)
    if proc.is_alive():
        proc.terminate()
        proc.join()
        parent.close()
        return "timeout", None
    try:
        status, payload = parent.recv()
    except EOFError:
        status, payload = "error", "row worker died"
    parent.close()
    return status, payload


def _diff_row(computed: dict, expected: dict) -> list[str]:
    bad = []
    for field in _ROW_FIELDS:
        if computed[field] != expected[field]:
            bad.append(field)
    return bad


def _cmd_table1(cfg: RunConfig, args) -> tuple[int, _Report]:
    rep = _Report("table1")
    rep.field("maxVertices", args.max_vertices, f"maxvertices {args.max_vertices}")
    rows = []
    code = EXIT_OK
    counts = {"ok": 0, "mismatch": 0, "timeout": 0, "partial": 0, "error": 0, "computed": 0}

    jobs: list[tuple[str, str, Optional[dict]]] = [
        (name, exp["spec"], exp)
        for name, exp in TABLE1_EXPECTED.items()
        if exp["vertices"] <= args.max_vertices
    ]
    for path in args.graph_file or []:
        name, _, fpath = path.rpartition("=")
        if not name:
            name, fpath = os.path.basename(path), path
        jobs.append((name, fpath, None))

    for name, spec, expected in jobs:
        t0 = time.perf_counter()
        status, payload = _run_row(spec, cfg)
        seconds = round(time.perf_counter() - t0, 3)
        row: dict = {"name": name, "spec": spec, "seconds": seconds}
        if status == "timeout":
            row["status"] = "timeout"
        elif status == "error":
            row["status"] = "error"
            row["detail"] = payload
            code = max(code, EXIT_MISMATCH)
        else:
            computed = payload
            row["computed"] = {
                "degrees": _hist_json(computed["degrees"]),
                "mu": computed["mu"],
                "codim": computed["codim"],
                "deg": computed["deg"],
                "normal": computed["normal"],
                "normalHeight": computed["normalHeight"],
            }
            if not computed["certifiedComplete"]:
                row["status"] = "partial"
                code = max(code, EXIT_PARTIAL)
            elif expected is None:
                row["status"] = "computed"
            else:
                bad = _diff_row(computed, expected)
                if bad:
                    row["status"] = "mismatch"
                    row["mismatched"] = bad
                    row["expected"] = {
                        f: (_hist_json(expected[f]) if f == "degrees" else expected[f])
                        for f in bad
                    }
                    code = max(code, EXIT_MISMATCH)
                else:
                    row["status"] = "ok"
        counts[row["status"]] += 1
        rows.append(row)

        if row["status"] in ("ok", "computed", "partial"):
            c = row["computed"]
            rep.lines.append(
                f"row {name} status={row['status']} degrees={_hist_str(computed['degrees'])} "
                f"mu={c['mu']} codim={c['codim']} deg={c['deg']} "
                f"normal<={c['normalHeight']}={_bool_str(c['normal'])} # {seconds}s"
            )
        elif row["status"] == "mismatch":
            detail = " ".join(
                f"{f}=computed:{_hist_str(computed[f]) if f == 'degrees' else computed[f]}"
                f"/expected:{_hist_str(expected[f]) if f == 'degrees' else expected[f]}"
                for f in row["mismatched"]
            )
            rep.lines.append(f"row {name} status=mismatch {detail}")
        else:
            detail = f" detail={row.get('detail')}" if "detail" in row else ""
            rep.lines.append(f"row {name} status={row['status']}{detail}")

    rep.doc["rows"] = rows
    rep.doc["summary"] = counts
    rep.lines.append(
        "summary " + " ".join(f"{k}={v}" for k, v in counts.items())
    )
    return code, rep


# ---------------------------------------------------------------------------
# parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget-pairs", type=int, metavar="N")
    p.add_argument("--budget-lifts", type=int, default=LIFT_BUDGET, metavar="N")
    p.add_argument("--max-height", type=int, metavar="H")
    p.add_argument("--timeout", type=float, metavar="SECONDS")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cutkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ideal", help="generators of a graph's cut ideal")
    p.add_argument("graph", help="graph name (K4, C5, K2,3, suspend(C4), path4, prism, delete(K5, 1-5)) or edge-list file")
    p.add_argument("action", choices=["markov", "groebner", "degrees"])
    p.add_argument("--order", default="degrevlex", metavar="O")
    _add_common(p)

    p = sub.add_parser("polytope", help="cut polytope of a graph")
    p.add_argument("graph")
    p.add_argument(
        "action",
        choices=["dim", "facets", "volume", "smooth", "compressed", "normality"],
    )
    _add_common(p)

    p = sub.add_parser("compose", help="glue two cut ideals along a clique")
    p.add_argument("graph1", help="edge-list file or graph name")
    p.add_argument("graph2", help="edge-list file or graph name")
    p.add_argument("--separator", required=True, metavar="a,b,c")
    p.add_argument(
        "--separator2",
        metavar="a,b,c",
        help="separator labels in the second graph when they differ",
    )
    _add_common(p)

    p = sub.add_parser("stat", help="statistical-model bridges")
    ssub = p.add_subparsers(dest="saction_name", required=True)

    sp = ssub.add_parser("suspend-check", help="binary model vs suspension ideal")
    sp.add_argument("graph")
    _add_common(sp)

    sp = ssub.add_parser("splits", help="split-system model reports")
    sp.add_argument("file", help="split-system file, one 'C | D' per line")
    sp.add_argument("saction", choices=["graph", "verify", "ideal"])
    _add_common(sp)

    sp = ssub.add_parser("fourier", help="transform a probability vector file")
    sp.add_argument("file", help="JSON array (or {'values': [...]})")
    sp.add_argument("--inverse", action="store_true")
    _add_common(sp)

    p = sub.add_parser("table1", help="recompute embedded expected rows")
    p.add_argument("--max-vertices", type=int, default=5, metavar="N")
    p.add_argument(
        "--graph-file",
        action="append",
        metavar="[NAME=]PATH",
        help="extra computed-only row from an edge-list file",
    )
    _add_common(p)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    t0 = time.perf_counter()
    try:
        cfg = RunConfig(
            command=args.command,
            fmt=args.format,
            output=args.output,
            threads=args.threads,
            pair_budget=args.budget_pairs,
            lift_budget=args.budget_lifts,
            max_height=args.max_height,
            timeout=args.timeout,
        )
        cfg = _apply_env_budget(cfg, explicit_pairs=args.budget_pairs is not None)
        if args.command == "ideal":
            code, rep = _cmd_ideal(cfg, args)
        elif args.command == "polytope":
            code, rep = _cmd_polytope(cfg, args)
        elif args.command == "compose":
            code, rep = _cmd_compose(cfg, args)
        elif args.command == "stat":
            if args.saction_name == "suspend-check":
                code, rep = _cmd_stat_suspend(cfg, args)
            elif args.saction_name == "splits":
                code, rep = _cmd_stat_splits(cfg, args)
            else:
                code, rep = _cmd_stat_fourier(cfg, args)
        else:
            code, rep = _cmd_table1(cfg, args)
    except (GraphError, BudgetError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"cutkit: error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    text = rep.render(cfg.fmt, time.perf_counter() - t0)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
