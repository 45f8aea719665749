"""Ensemble experiments: parameter sweeps, bound tightness, and the Cora comparison."""

from __future__ import annotations

import configparser
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import estimation, report
from .generators import GenerationError, Model, ModelParams, generate
from .graph import Graph, read_edge_list
from .metrics import (
    METRIC_NAMES,
    bin_by_degree,
    compute_metrics,
    degree_histogram,
    neighbor_degree_pairs,
)
from .rng import realization_seed

log = logging.getLogger(__name__)

LOG_FIELDS = ("burned_per_episode", "isolated_discards", "episodes")
SWEEP_METRICS = METRIC_NAMES + LOG_FIELDS
SWEEP_HEADER = ["model", "p", "q", "n", "metric", "mean", "std", "se", "realizations", "undefined", "failed"]


def parse_grid(text: str) -> list[float]:
    """``"0.1, 0.2"`` or an inclusive range ``"0.1:0.4:0.05"``."""
    text = text.strip()
    if ":" in text:
        start, stop, step = (float(x) for x in text.split(":"))
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 12) for i in range(count)]
    return [float(x) for x in text.replace(",", " ").split()]


@dataclass(frozen=True)
class SweepSpec:
    models: tuple[Model, ...]
    p_grid: tuple[float, ...]
    q_grid: tuple[float, ...]
    n: int
    realizations: int = 100
    base_seed: int = 0
    metrics: tuple[str, ...] = ("mean_degree", "mixing", "mean_distance", "clustering", "modularity")

    def __post_init__(self):
        object.__setattr__(self, "models", tuple(Model.parse(m) for m in self.models))
        if not self.models or not self.p_grid or not self.q_grid:
            raise ValueError("sweep grids must be non-empty")
        if self.realizations < 1:
            raise ValueError("realizations must be >= 1")
        unknown = set(self.metrics) - set(SWEEP_METRICS)
        if unknown:
            raise ValueError(f"unknown sweep metric(s): {sorted(unknown)}")

    @classmethod
    def from_config(cls, path) -> "SweepSpec":
        """Read the ``[sweep]`` section of an INI-style file.

        Keys: ``models``, ``p``, ``q``, ``n``, ``realizations``,
        ``base_seed``, ``metrics``. Grids take comma lists or
        ``start:stop:step`` ranges.
        """
        cp = configparser.ConfigParser()
        if not cp.read(path):
            raise FileNotFoundError(path)
        if "sweep" not in cp:
            raise ValueError(f"{path}: missing [sweep] section")
        sec = cp["sweep"]
        kwargs = dict(
            models=tuple(m.strip() for m in sec["models"].split(",") if m.strip()),
            p_grid=tuple(parse_grid(sec["p"])),
            q_grid=tuple(parse_grid(sec.get("q", "0"))),
            n=sec.getint("n"),
            realizations=sec.getint("realizations", 100),
            base_seed=sec.getint("base_seed", 0),
        )
        if "metrics" in sec:
            kwargs["metrics"] = tuple(m.strip() for m in sec["metrics"].split(",") if m.strip())
        return cls(**kwargs)

    def provenance(self) -> dict:
        return {
            "models": ",".join(m.value for m in self.models),
            "p": ",".join(map(repr, self.p_grid)),
            "q": ",".join(map(repr, self.q_grid)),
            "n": self.n,
            "realizations": self.realizations,
            "base_seed": self.base_seed,
            "metrics": ",".join(self.metrics),
        }

    def grid_points(self) -> list[tuple[Model, float, float | None]]:
        points = []
        for model in self.models:
            for p in self.p_grid:
                # FF has no linking probability
                for q in (None,) if model is Model.FF else self.q_grid:
                    points.append((model, p, q))
        return points


@dataclass
class SweepResult:
    rows: list[list] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)

    def lookup(self, model, p, q, metric) -> list:
        model = Model.parse(model)
        for row in self.rows:
            if row[0] == model.value and row[1] == p and (model is Model.FF or row[2] == q) and row[4] == metric:
                return row
        raise KeyError((model, p, q, metric))

    def mean(self, model, p, q, metric) -> float:
        return self.lookup(model, p, q, metric)[5]

    def to_text(self, fmt_name: str = "csv") -> str:
        return report.render(SWEEP_HEADER, self.rows, self.provenance, fmt_name)


def _realize(task) -> dict | str:
    """One realization; returns metric values or the generation error text."""
    model, n, p, q, seed, metrics = task
    try:
        g, genlog = generate(ModelParams(model, n, p, q or 0.0, seed))
    except GenerationError as exc:
        return str(exc)
    wanted = [m for m in metrics if m in METRIC_NAMES]
    values = compute_metrics(g, wanted, seed=seed).as_dict() if wanted else {}
    values.update({k: v for k, v in genlog.as_dict().items() if k in LOG_FIELDS})
    return {m: values.get(m) for m in metrics}


def _map(tasks: list, jobs: int) -> list:
    if jobs <= 1:
        return [_realize(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_realize, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))


def _summary(values: list[float]) -> tuple[float | None, float | None, float | None]:
    if not values:
        return None, None, None
    arr = np.asarray(values, dtype=float)
    std = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
    return float(arr.mean()), std, std / math.sqrt(len(arr))


def run_sweep(spec: SweepSpec, jobs: int = 1) -> SweepResult:
    """Generate ``spec.realizations`` networks per grid point and aggregate each metric.

    Realization ``r`` always uses seed ``realization_seed(base_seed, r)``,
    so results do not depend on scheduling. Undefined metric values are
    skipped and counted; generation failures are counted per grid point.
    """
    points = spec.grid_points()
    tasks = [
        (model, spec.n, p, q, realization_seed(spec.base_seed, r), spec.metrics)
        for model, p, q in points
        for r in range(spec.realizations)
    ]
    outcomes = _map(tasks, jobs)
    result = SweepResult(provenance=spec.provenance())
    for k, (model, p, q) in enumerate(points):
        chunk = outcomes[k * spec.realizations:(k + 1) * spec.realizations]
        ok = [o for o in chunk if isinstance(o, dict)]
        failed = len(chunk) - len(ok)
        if failed:
            msg = next(o for o in chunk if isinstance(o, str))
            result.errors.append(msg)
            log.warning("%s p=%s q=%s: %d realization(s) failed: %s", model.value, p, q, failed, msg)
        for metric in spec.metrics:
            vals = [o[metric] for o in ok if o[metric] is not None]
            mean, std, se = _summary(vals)
            result.rows.append([model.value, p, q, spec.n, metric, mean, std, se,
                                len(vals), len(ok) - len(vals), failed])
    return result


BOUNDS_BURNED_HEADER = ["p", "q", "n", "measured_burned", "se", "bound", "within_bound", "realizations"]
BOUNDS_DEGREE_HEADER = ["p", "q", "n", "measured_degree", "se", "bound", "within_bound", "realizations"]


@dataclass
class BoundsTable:
    burned: list[list]
    degree: list[list]
    provenance: dict

    def gap(self, kind: str, **key) -> list[tuple[int, float]]:
        """``(n, bound - measured)`` rows matching ``key`` (e.g. ``p=0.3``)."""
        rows = self.burned if kind == "burned" else self.degree
        cols = {"p": 0, "q": 1}
        return [(row[2], row[5] - row[3]) for row in rows if all(row[cols[k]] == v for k, v in key.items())]


def run_bounds_experiment(
    p_grid: Sequence[float],
    q: float,
    n_list: Sequence[int],
    realizations: int,
    q_grid: Sequence[float] = (),
    p_fixed: float = 0.3,
    base_seed: int = 0,
    jobs: int = 1,
) -> BoundsTable:
    """Measured CIT ambassadors per episode and mean degree against their closed-form bounds.

    Rows are flagged ``within_bound`` when the ensemble mean lies no more
    than two standard errors above the bound.
    """
    metrics = ("mean_degree", "burned_per_episode")
    burned_rows, degree_rows = [], []
    settings = [(p, q) for p in p_grid] + [(p_fixed, qq) for qq in q_grid]
    seen = set()
    for n in n_list:
        for p, qq in settings:
            if (p, qq, n) in seen:
                continue
            seen.add((p, qq, n))
            spec = SweepSpec((Model.CIT,), (p,), (qq,), n, realizations, base_seed, metrics)
            res = run_sweep(spec, jobs)
            v_mean, _, v_se = res.lookup(Model.CIT, p, qq, "burned_per_episode")[5:8]
            k_mean, _, k_se = res.lookup(Model.CIT, p, qq, "mean_degree")[5:8]
            if v_mean is None or k_mean is None:
                continue
            v_bound = estimation.expected_burned(p)
            k_bound = estimation.expected_degree(p, qq)
            burned_rows.append([p, qq, n, v_mean, v_se, v_bound, v_mean <= v_bound + 2 * v_se, realizations])
            degree_rows.append([p, qq, n, k_mean, k_se, k_bound, k_mean <= k_bound + 2 * k_se, realizations])
    prov = {
        "model": "cit", "p_grid": list(p_grid), "q": q, "q_grid": list(q_grid), "p_fixed": p_fixed,
        "n_list": list(n_list), "realizations": realizations, "base_seed": base_seed,
    }
    return BoundsTable(burned_rows, degree_rows, prov)


CORA_HEADER = ["model", "p", "q", "n", "m", "mean_degree", "mixing", "alpha", "realizations"]


@dataclass
class CoraComparison:
    rows: list[list]
    histograms: dict[str, dict[int, float]]
    curves: dict[str, list[tuple[float, float, int]]]
    fit: estimation.FitResult | None
    provenance: dict
    notes: list[str] = field(default_factory=list)

    def write(self, out_dir, fmt_name: str = "csv") -> list[Path]:
        out = Path(out_dir)
        ext = "json" if fmt_name == "json" else "csv"
        paths = [report.write(out / f"comparison.{ext}", report.render(CORA_HEADER, self.rows, self.provenance, fmt_name))]
        for name, hist in self.histograms.items():
            rows = [[k, c] for k, c in hist.items()]
            paths.append(report.write(out / f"degree_distribution_{name}.{ext}",
                                      report.render(["degree", "probability"], rows, self.provenance, fmt_name)))
        for name, bins in self.curves.items():
            paths.append(report.write(out / f"neighbor_degree_{name}.{ext}",
                                      report.render(["degree", "neighbor_degree", "count"], bins,
                                                    {**self.provenance, "binning": "equal-count"}, fmt_name)))
        return paths


def _ensemble(model: Model, n: int, p: float, q: float, realizations: int, base_seed: int, bins: int):
    ms, ks, rs, alphas = [], [], [], []
    hist: dict[int, int] = {}
    pairs = []
    for r in range(realizations):
        g, _ = generate(ModelParams(model, n, p, q, realization_seed(base_seed, r)))
        rep = compute_metrics(g, ("mixing", "alpha"))
        ms.append(g.m)
        ks.append(rep.mean_degree)
        if rep.mixing is not None:
            rs.append(rep.mixing)
        if rep.alpha is not None:
            alphas.append(rep.alpha)
        for k, c in degree_histogram(g).items():
            hist[k] = hist.get(k, 0) + c
        pairs.extend(neighbor_degree_pairs(g))
    total = sum(hist.values())
    row = [model.value, p, q if model is not Model.FF else None, n,
           _summary(ms)[0], _summary(ks)[0], _summary(rs)[0], _summary(alphas)[0], realizations]
    return row, {k: c / total for k, c in sorted(hist.items())}, bin_by_degree(pairs, bins)


def run_cora_experiment(
    edge_list_path,
    q: float,
    realizations: int = 100,
    base_seed: int = 0,
    ff_fit: str = "calibrated",
    bins: int = 20,
) -> CoraComparison:
    """Fit CIT and FF to an observed network's mean degree and compare matched ensembles.

    CIT's ``p`` comes from inverting the closed-form degree at the given
    ``q``. FF's ``p`` comes from ``ff_fit``: ``"calibrated"`` bisects on
    simulated FF degree at the data's size, ``"closed"`` uses the
    saturation-free formula ``k = 2 (1-p)/(1-2p)``.
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"q must lie in (0, 1), got {q}")
    if isinstance(edge_list_path, Graph):
        raw, source, dropped = edge_list_path, "<graph>", 0
    else:
        with open(edge_list_path) as fh:
            raw, dropped = read_edge_list(fh)
        source = str(edge_list_path)
    data = raw.largest_component()
    n = data.n
    rep = compute_metrics(data, ("mixing", "alpha"))
    rows = [["data", None, None, n, data.m, rep.mean_degree, rep.mixing, rep.alpha, None]]
    histograms = {"data": {k: c / n for k, c in degree_histogram(data).items()}}
    curves = {"data": bin_by_degree(neighbor_degree_pairs(data), bins)}
    prov = {"source": source, "q": q, "realizations": realizations, "base_seed": base_seed,
            "ff_fit": ff_fit, "n": n, "dropped_lines": dropped}
    notes: list[str] = []

    fit = None
    try:
        fit = estimation.fit_cit(rep.mean_degree, q)
    except (estimation.NoSolutionError, ValueError) as exc:
        notes.append(f"CIT fit failed: {exc}")
    if fit is not None:
        row, hist, curve = _ensemble(Model.CIT, n, fit.p_hat, q, realizations, base_seed, bins)
        rows.append(row)
        histograms["cit"], curves["cit"] = hist, curve
        prov["p_cit"] = fit.p_hat
        prov["read_fraction"] = fit.read_fraction

    try:
        if ff_fit == "closed":
            p_ff = estimation.estimate_p_ff(rep.mean_degree)
        elif ff_fit == "calibrated":
            p_ff = estimation.calibrate_p_ff(rep.mean_degree, n, seed=base_seed)
        else:
            raise ValueError(f"unknown ff_fit {ff_fit!r}")
    except (estimation.NoSolutionError, ValueError, GenerationError) as exc:
        notes.append(f"FF fit failed: {exc}")
        p_ff = None
    if p_ff is not None:
        row, hist, curve = _ensemble(Model.FF, n, p_ff, 0.0, realizations, base_seed, bins)
        rows.append(row)
        histograms["ff"], curves["ff"] = hist, curve
        prov["p_ff"] = p_ff
    for note in notes:
        log.warning(note)
    return CoraComparison(rows, histograms, curves, fit, prov, notes)
