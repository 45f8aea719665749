"""Command-line entry point: ``citegrowth <command> [options]``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__, estimation, report
from .generators import Model, ModelParams, generate
from .graph import load_edge_list, write_edge_list
from .harness import (
    BOUNDS_BURNED_HEADER,
    BOUNDS_DEGREE_HEADER,
    CORA_HEADER,
    SweepSpec,
    parse_grid,
    run_bounds_experiment,
    run_cora_experiment,
    run_sweep,
)
from .metrics import METRIC_NAMES, MetricsReport, compute_metrics

log = logging.getLogger("citegrowth")


def _emit(text: str, out: str | None) -> None:
    if out:
        report.write(out, text)
    else:
        sys.stdout.write(text)


def _metrics_text(rep: MetricsReport, provenance: dict, fmt_name: str) -> str:
    if fmt_name == "json":
        return report.json_text(rep.as_dict(), provenance)
    return report.csv_text(MetricsReport.header(), [rep.row()], provenance)


def cmd_generate(args) -> int:
    params = ModelParams(args.model, args.n, args.p, args.q, args.seed)
    g, genlog = generate(params)
    prov = {**params.to_config(), **{k: v for k, v in genlog.as_dict().items()}}
    if args.out:
        write_edge_list(g, args.out, prov)
    metrics = args.metrics.split(",") if args.metrics else ["mean_neighbor_degree", "mixing", "clustering"]
    rep = compute_metrics(g, metrics, seed=args.seed)
    sys.stdout.write(_metrics_text(rep, prov, args.format))
    return 0


def cmd_stats(args) -> int:
    g = load_edge_list(args.path)
    if args.largest_component:
        g = g.largest_component()
    metrics = args.metrics.split(",") if args.metrics else None
    k_min = None if args.k_min == "auto" else int(args.k_min)
    rep = compute_metrics(g, metrics, seed=args.seed, k_min=k_min)
    prov = {"source": args.path, "seed": args.seed, "k_min": args.k_min}
    _emit(_metrics_text(rep, prov, args.format), args.out)
    return 0


def cmd_sweep(args) -> int:
    spec = SweepSpec.from_config(args.config)
    if args.realizations is not None:
        spec = SweepSpec(spec.models, spec.p_grid, spec.q_grid, spec.n, args.realizations,
                         spec.base_seed, spec.metrics)
    result = run_sweep(spec, jobs=args.jobs)
    _emit(result.to_text(args.format), args.out)
    return 0


def cmd_bounds(args) -> int:
    table = run_bounds_experiment(
        parse_grid(args.p_grid), args.q, [int(x) for x in parse_grid(args.n_list)], args.realizations,
        q_grid=parse_grid(args.q_grid) if args.q_grid else (), p_fixed=args.p_fixed,
        base_seed=args.seed, jobs=args.jobs,
    )
    burned = report.render(BOUNDS_BURNED_HEADER, table.burned, table.provenance, args.format)
    degree = report.render(BOUNDS_DEGREE_HEADER, table.degree, table.provenance, args.format)
    if args.out:
        out = Path(args.out)
        ext = "json" if args.format == "json" else "csv"
        report.write(out / f"bounds_burned.{ext}", burned)
        report.write(out / f"bounds_degree.{ext}", degree)
    else:
        sys.stdout.write(burned + "\n" + degree)
    return 0


def cmd_fit(args) -> int:
    if args.model == "ff":
        p = estimation.estimate_p_ff(args.degree)
        payload = {"p_hat": p, "v_bar": estimation.expected_burned(p),
                   "k_pred": estimation.ff_expected_degree(p)}
        params = {"kind": "ff", "p": p}
    else:
        if args.q is None:
            raise ValueError("fit --model cit requires --q")
        fit = estimation.fit_cit(args.degree, args.q)
        payload = fit.as_dict()
        params = {"kind": "cit", "p": fit.p_hat, "q": args.q}
    if args.n:
        params["n"] = args.n
    params["seed"] = args.seed
    prov = {"degree": args.degree, "q": args.q, "model": args.model}
    if args.format == "json":
        text = report.json_text({"fit": payload, "params": params}, prov)
    else:
        text = report.csv_text(list(payload), [list(payload.values())], prov)
        text += "".join(f"# params.{k}={v}\n" for k, v in params.items())
    _emit(text, args.out)
    return 0


def cmd_cora(args) -> int:
    comp = run_cora_experiment(args.path, args.q, args.realizations, base_seed=args.seed,
                               ff_fit=args.ff_fit, bins=args.bins)
    if args.out:
        for path in comp.write(args.out, args.format):
            log.info("wrote %s", path)
    sys.stdout.write(report.render(CORA_HEADER, comp.rows, comp.provenance, args.format))
    for note in comp.notes:
        sys.stderr.write(f"note: {note}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="base random seed (default 0)")
    common.add_argument("--out", help="output file (or directory for bounds/cora)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for ensembles")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="citegrowth", description="Citation-dynamics network models and statistics.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="grow one network and print its statistics")
    p.add_argument("--model", type=Model.parse, required=True, help="ff, btf, cpy or cit")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, default=0.0)
    p.add_argument("--metrics", help=f"comma list from {','.join(METRIC_NAMES)}")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("stats", parents=[common], help="statistics of an edge-list file")
    p.add_argument("path")
    p.add_argument("--metrics", help=f"comma list from {','.join(METRIC_NAMES)}")
    p.add_argument("--k-min", default="auto", help="power-law tail start, or 'auto' (KS selection)")
    p.add_argument("--largest-component", action="store_true", help="restrict to the largest component first")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("sweep", parents=[common], help="ensemble sweep from a [sweep] config file")
    p.add_argument("config")
    p.add_argument("--realizations", type=int, help="override the config's realization count")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bounds", parents=[common], help="measured CIT ambassadors and degree against their bounds")
    p.add_argument("--p-grid", default="0.1,0.2,0.3,0.4")
    p.add_argument("--q", type=float, default=0.75)
    p.add_argument("--q-grid", default="0.3,0.5,0.7,0.9")
    p.add_argument("--p-fixed", type=float, default=0.3)
    p.add_argument("--n-list", default="1000")
    p.add_argument("--realizations", type=int, default=100)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("fit", parents=[common], help="burning probability matching a mean degree")
    p.add_argument("--degree", type=float, required=True)
    p.add_argument("--q", type=float)
    p.add_argument("--model", choices=("cit", "ff"), default="cit")
    p.add_argument("--n", type=int, help="network size to record in the params block")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("cora", parents=[common], help="fit and compare models against an edge-list network")
    p.add_argument("path")
    p.add_argument("--q", type=float, default=0.593)
    p.add_argument("--realizations", type=int, default=100)
    p.add_argument("--ff-fit", choices=("calibrated", "closed"), default="calibrated")
    p.add_argument("--bins", type=int, default=20)
    p.set_defaults(func=cmd_cora)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (OSError, ValueError, RuntimeError) as exc:
        sys.stderr.write(f"citegrowth {args.command}: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
