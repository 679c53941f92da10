"""Command-line entry point: ``hodgerank <subcommand> ...``.

Every subcommand reads an interaction file (or a serialized complex written
by ``build``) and writes CSV, or JSON with ``--json``, to stdout or ``--out``.
Failures print a one-line JSON error record to stderr and exit nonzero.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import synth
from .baselines import FEATURE_SETS, build_features
from .complex import ComplexError, SimplicialComplex, from_text, to_text, underlying_graph
from .epr import EPR_COLUMNS, ConfigError, EprConfig, epr_all_edges
from .harness import (
    ExperimentSpec,
    InsufficientSupport,
    component_regressions,
    curve_to_csv,
    run_bridge_classification,
    run_tie_strength,
    tie_range_curve,
)
from .hodge import MODES, decompose
from .ingest import (
    FORMATS,
    InteractionLog,
    ParseError,
    filled_variant,
    parse_interactions,
    parse_nverts,
    tie_strength_labels,
)
from .linalg import SolverError
from .operators import boundary_operators, hodge_laplacian
from .structure import classify_edges

EXIT_CODES = {ParseError: 3, ComplexError: 3, ConfigError: 4, InsufficientSupport: 5, SolverError: 6}
SYNTH_FAMILIES = ("barbell", "cycle", "path", "bridge-suite", "random", "tie-corpus")


class CliError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for r in rows:
        buf.write(",".join(v if isinstance(v, str) else _fmt(v) if isinstance(v, float) else str(v) for v in r) + "\n")
    return buf.getvalue()


def _rows_to_json(header, rows) -> str:
    return json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n"


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_table(args, header, rows) -> None:
    _emit(args, _rows_to_json(header, rows) if args.json else _rows_to_csv(header, rows))


def _load(args) -> tuple[SimplicialComplex, InteractionLog | None]:
    if args.format == "complex":
        if args.window is not None:
            raise CliError("--window applies to pair-list input only")
        return from_text(Path(args.input).read_text(encoding="utf-8")), None
    if args.format == "nverts":
        if args.window is not None:
            raise CliError("--window applies to pair-list input only")
        log = parse_nverts(args.input)
    else:
        log = parse_interactions(args.input, args.format, window=args.window)
    c = log.complex(max_dim=args.max_dim)
    if getattr(args, "filled", False):
        c = filled_variant(log)
    return c, log


def _config(args) -> EprConfig:
    return EprConfig(beta=args.beta, tol=args.tol)


def _feature_sets(spec: str) -> tuple[str, ...]:
    sets = tuple(s.strip() for s in spec.split(",") if s.strip())
    unknown = [s for s in sets if s not in FEATURE_SETS]
    if not sets or unknown:
        raise CliError(f"unknown feature set(s) {unknown}; choose from {sorted(FEATURE_SETS)}")
    return sets


def cmd_build(args) -> None:
    c, _ = _load(args)
    summary = f"{c.summary()} density={c.density:.6g}"
    if args.json:
        d = {"nodes": c.n, "edges": c.e, "triangles": c.t, "density": c.density}
        d["simplices"] = [list(s) for s in c.simplices()]
        _emit(args, json.dumps(d, indent=2) + "\n")
        return
    body = to_text(c).split("\n", 1)[1]
    _emit(args, summary + "\n" + body)


def _read_flow(args, c: SimplicialComplex) -> np.ndarray:
    if args.flow is not None:
        try:
            x = np.array([float(v) for v in args.flow.split(",")])
        except ValueError as exc:
            raise CliError(f"--flow: {exc}") from None
        if len(x) != c.e:
            raise CliError(f"--flow has {len(x)} values for {c.e} edges")
        return x
    if args.flow_file is None:
        raise CliError("decompose needs --flow or --flow-file")
    x = np.zeros(c.e)
    for lineno, line in enumerate(Path(args.flow_file).read_text(encoding="utf-8").splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        toks = s.split()
        if len(toks) != 3:
            raise ParseError(f"{args.flow_file} line {lineno}: expected 'u v value'")
        try:
            u, v, val = int(toks[0]), int(toks[1]), float(toks[2])
            idx, sign = c.edge_id(u, v, external=True)
        except (ValueError, KeyError) as exc:
            raise ParseError(f"{args.flow_file} line {lineno}: {exc}") from None
        x[idx] += sign * val
    return x


def cmd_decompose(args) -> None:
    c, _ = _load(args)
    x = _read_flow(args, c)
    h = decompose(x, hodge_laplacian(boundary_operators(c)), mode=args.mode)
    rows = [
        [int(u), int(v), float(f), float(g), float(cu), float(hh)]
        for (u, v), f, g, cu, hh in zip(c.edge_labels().tolist(), x, h.gradient, h.curl, h.harmonic)
    ]
    rows.append(["norm", "", float(np.linalg.norm(x)), *h.norms])
    _emit_table(args, ["u", "v", "flow", "grad", "curl", "harm"], rows)


def cmd_epr(args) -> None:
    c, _ = _load(args)
    M = epr_all_edges(hodge_laplacian(boundary_operators(c)), _config(args), mode=args.mode, threads=args.threads)
    rows = [[int(u), int(v), *map(float, r)] for (u, v), r in zip(c.edge_labels().tolist(), M)]
    _emit_table(args, ["u", "v", *EPR_COLUMNS], rows)


def cmd_bridges(args) -> None:
    c, _ = _load(args)
    lab = classify_edges(underlying_graph(c))
    rows = [
        [int(u), int(v), str(k), -1 if math.isinf(r) else int(r)]
        for (u, v), k, r in zip(c.edge_labels().tolist(), lab.labels, lab.tie_range)
    ]
    _emit_table(args, ["u", "v", "label", "tie_range"], rows)


def cmd_features(args) -> None:
    c, _ = _load(args)
    table = build_features(c, _feature_sets(args.features), cfg=_config(args), mode=args.mode, alpha=args.alpha, threads=args.threads)
    if args.json:
        rows = [[int(u), int(v), *map(float, r)] for (u, v), r in zip(table.edges.tolist(), table.matrix())]
        _emit_table(args, ["u", "v", *table.names], rows)
    else:
        _emit(args, table.to_csv())


def cmd_experiment(args) -> None:
    c, log = _load(args)
    sets = _feature_sets(args.features)
    spec = ExperimentSpec(
        task=args.task, features=sets, folds=args.folds, seed=args.seed, balance=not args.no_balance
    )
    table = build_features(c, sets, cfg=_config(args), mode=args.mode, alpha=args.alpha, threads=args.threads)
    doc = {"complex": {"nodes": c.n, "edges": c.e, "triangles": c.t}}
    if args.task == "tie-strength":
        if args.labels:
            y = tie_strength_labels(log, c, "explicit-column", args.labels)
        elif log is None:
            raise CliError("tie-strength on a serialized complex needs --labels")
        else:
            y = tie_strength_labels(log, c, "log-frequency")
        result = run_tie_strength(table, y, spec)
        if all(k in table.columns for k in ("grad", "curl", "harm")):
            doc["components"] = component_regressions(table, y)
        if args.curve:
            ranges = classify_edges(underlying_graph(c)).tie_range
            Path(args.curve).write_text(curve_to_csv(tie_range_curve(result.predictions, y, ranges)), encoding="utf-8")
    else:
        result = run_bridge_classification(table, classify_edges(underlying_graph(c)), spec)
    doc.update(result.to_dict(spec))
    _emit(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def cmd_synth(args) -> None:
    fam = args.family
    if fam == "barbell":
        records = synth.barbell(args.size or 5)
    elif fam == "cycle":
        records = synth.cycle(args.size or 6)
    elif fam == "path":
        records = synth.path(args.size or 3)
    elif fam == "bridge-suite":
        records = synth.bridge_suite(args.seed, min_per_class=args.size or 300)
    elif fam == "random":
        c = synth.random_complex(args.size or 20, args.p, args.fill, args.seed)
        if c is None:
            raise CliError("random graph came out empty; raise -p")
        records = c.simplices()
    else:
        log = synth.tie_strength_corpus(args.seed, communities=args.size or 48)
        records = log.records
    buf = io.StringIO()
    synth.write_simplices(records, buf)
    _emit(args, buf.getvalue())


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="interaction file, or a complex written by 'build' with --format complex")
    common.add_argument("--format", default="simplex", choices=[*FORMATS, "nverts", "complex"])
    common.add_argument("--window", type=float, default=None, help="time window for timestamped pair lists")
    common.add_argument("--max-dim", type=int, default=2, choices=(1, 2))

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--out", default=None, help="write here instead of stdout")
    out.add_argument("--json", action="store_true")

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--beta", type=float, default=2.5)
    solver.add_argument("--tol", type=float, default=1e-10)
    solver.add_argument("--mode", default="weighted", choices=MODES)
    solver.add_argument("--threads", type=int, default=None, help="worker cap (default: HODGERANK_THREADS or all cores)")

    feats = argparse.ArgumentParser(add_help=False)
    feats.add_argument("--features", default="epr-components", help=f"comma-separated: {','.join(FEATURE_SETS)}")
    feats.add_argument("--alpha", type=float, default=0.85, help="node PageRank damping")
    feats.add_argument("--filled", action="store_true", help="fill every graph triangle (pairwise information only)")

    p = argparse.ArgumentParser(prog="hodgerank", description="Edge PageRank and Hodge tools for simplicial complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build", parents=[common, out], help="build a complex and print its summary")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("decompose", parents=[common, out], help="Hodge decomposition of an edge flow")
    s.add_argument("--flow", default=None, help="comma-separated values in edge order")
    s.add_argument("--flow-file", default=None, help="lines 'u v value'")
    s.add_argument("--mode", default="unnormalized", choices=MODES)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("epr", parents=[common, out, solver], help="Edge PageRank norms for every seed edge")
    s.set_defaults(func=cmd_epr)

    s = sub.add_parser("bridges", parents=[common, out], help="global/local bridge labels and tie range")
    s.set_defaults(func=cmd_bridges)

    s = sub.add_parser("features", parents=[common, out, solver, feats], help="per-edge feature table")
    s.set_defaults(func=cmd_features)

    s = sub.add_parser("experiment", parents=[common, out, solver, feats], help="cross-validated prediction task")
    s.add_argument("--task", default="tie-strength", choices=("tie-strength", "bridge-class"))
    s.add_argument("--labels", default=None, help="label file 'u v label' (tie-strength)")
    s.add_argument("--folds", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--no-balance", action="store_true")
    s.add_argument("--curve", default=None, help="write the tie-range curve CSV here")
    s.set_defaults(func=cmd_experiment)

    s = sub.add_parser("synth", parents=[out], help="seeded synthetic interaction files")
    s.add_argument("family", choices=SYNTH_FAMILIES)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--size", type=int, default=None, help="family size parameter")
    s.add_argument("-p", type=float, default=0.2, help="edge probability (random)")
    s.add_argument("--fill", type=float, default=0.5, help="triangle fill probability (random)")
    s.set_defaults(func=cmd_synth)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        args.func(args)
    except Exception as exc:
        code = next((v for k, v in EXIT_CODES.items() if isinstance(exc, k)), 1 if isinstance(exc, (CliError, ValueError, OSError)) else 70)
        record = {"error": type(exc).__name__, "message": str(exc), "command": args.command, "exit_code": code}
        sys.stderr.write(json.dumps(record) + "\n")
        return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
