"""Monte Carlo sweeps over system size and their summaries.

Every trial derives its seed from the master seed, the sweep label and the
trial position, so a record can be replayed in isolation and a sweep is
reproducible regardless of how many threads run it.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from math import log, nan, sqrt

import numpy as np

from .branching import component_statistics
from .disorder import DisorderSample, decompose, path_fixture, sample_disorder
from .errors import InvalidArgumentError, RstreError
from .sampling import first_repeat_times, no_repeat_prob_exact, repeat_probe, s_statistic
from .seeds import SeedStream
from .spanning import assemble_tree, default_max_steps, wilson_ust

MODES = ("diameter", "repeat", "component-stats", "oracle-verify")
SAMPLERS = ("auto", "wilson", "contracted-assembly")
FIXTURES = ("random", "single-component", "singletons")
DEFAULT_GRID = (4096, 8192, 16384, 32768, 65536)


def config_problems(v):
    """``[(field, message)]`` for every violated constraint in the field
    values ``v``."""
    out = []
    if v["mode"] not in MODES:
        out.append(("mode", f"must be one of {', '.join(MODES)}"))
    if not v["n_grid"]:
        out.append(("n_grid", "must not be empty"))
    elif any(b <= a for a, b in zip(v["n_grid"], v["n_grid"][1:])):
        out.append(("n_grid", "must be strictly increasing"))
    elif v["n_grid"][0] < 1:
        out.append(("n_grid", "entries must be at least 1"))
    if v["trials_per_n"] < 1:
        out.append(("trials_per_n", "must be at least 1"))
    if v["sampler"] not in SAMPLERS:
        out.append(("sampler", f"must be one of {', '.join(SAMPLERS)}"))
    if v["fixture"] not in FIXTURES:
        out.append(("fixture", f"must be one of {', '.join(FIXTURES)}"))
    if v["threads"] < 1:
        out.append(("threads", "must be at least 1"))
    if v["max_steps"] is not None and v["max_steps"] < 1:
        out.append(("max_steps", "must be positive"))
    if v["diameter_cap"] < 1:
        out.append(("diameter_cap", "must be positive"))
    if any(r < 0 for r in v["r_probes"]):
        out.append(("r_probes", "must be nonnegative"))
    if any(k < 0 for k in v["k_probes"]):
        out.append(("k_probes", "must be nonnegative"))
    if not 0 <= v["master_seed"] < 1 << 64:
        out.append(("master_seed", "must fit in 64 bits"))
    return out


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str = "diameter"
    n_grid: tuple = DEFAULT_GRID
    gamma: float = 5.0
    trials_per_n: int = 200
    master_seed: int = 0
    sampler: str = "auto"
    max_steps: int | None = None
    diameter_cap: int = 4096
    threads: int = 1
    r_probes: tuple = (0.5, 1.0)
    k_probes: tuple = ()
    j_max: int | None = None
    fixture: str = "random"

    def __post_init__(self):
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        object.__setattr__(self, "r_probes", tuple(float(r) for r in self.r_probes))
        object.__setattr__(self, "k_probes", tuple(int(k) for k in self.k_probes))
        problems = self.problems()
        if problems:
            name, message = problems[0]
            raise InvalidArgumentError(f"{name}: {message}")

    def problems(self):
        """``[(field, message)]`` for every violated constraint."""
        return config_problems({f.name: getattr(self, f.name) for f in fields(self)})

    def resolved_sampler(self) -> str:
        if self.sampler != "auto":
            return self.sampler
        return "contracted-assembly" if self.gamma > 0 else "wilson"

    def replace(self, **changes) -> "ExperimentConfig":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return ExperimentConfig(**values)


@dataclass
class ResultRecord:
    mode: str
    n: int
    gamma: float
    trial: int
    seed: int
    diameter: int | None = None
    c1_size: int | None = None
    max_excess: int | None = None
    max_comp_diam: int | None = None
    t_1: int | None = None
    s_n: float | None = None
    elapsed_ms: float | None = None
    partial_cover: bool = False
    capped: bool = False
    extras: dict = field(default_factory=dict)

    @property
    def flagged(self) -> bool:
        return self.partial_cover or self.capped

    def as_row(self) -> dict:
        row = asdict(self)
        row.update(row.pop("extras"))
        return row


BASE_FIELDS = tuple(f.name for f in fields(ResultRecord) if f.name != "extras")


def _probe_name(prefix, value):
    return f"p_no_repeat_{prefix}{value:g}"


def extra_fields(cfg: ExperimentConfig) -> tuple:
    if cfg.mode != "repeat":
        return ()
    return tuple(_probe_name("r", r) for r in cfg.r_probes) + tuple(
        _probe_name("k", k) for k in cfg.k_probes)


def trial_seed(cfg: ExperimentConfig, n: int, trial: int) -> int:
    return SeedStream(cfg.master_seed).child(f"{cfg.mode}/n={n}", trial)


def _disorder(cfg, n, seed) -> DisorderSample:
    if cfg.fixture == "single-component":
        return path_fixture([n], cfg.gamma)
    if cfg.fixture == "singletons":
        return DisorderSample.from_edges(n, [], cfg.gamma)
    return sample_disorder(n, cfg.gamma, SeedStream(seed).child("disorder"))


def _component_fields(rec, decomp):
    rec.c1_size = int(decomp.sizes[0])
    rec.max_excess = int(decomp.excess.max())
    if decomp.diameters is not None:
        rec.max_comp_diam = int(decomp.diameters.max())
        rec.capped = not bool(decomp.diameter_exact.all())


def run_trial(cfg: ExperimentConfig, n: int, trial: int, seed: int | None = None) -> ResultRecord:
    """One trial; ``seed`` replays a recorded trial seed directly."""
    if seed is None:
        seed = trial_seed(cfg, n, trial)
    start = time.perf_counter()
    rec = ResultRecord(cfg.mode, n, cfg.gamma, trial, seed)
    sample = _disorder(cfg, n, seed)
    streams = SeedStream(seed)
    if cfg.mode == "diameter":
        decomp = decompose(sample, diameter_cap=cfg.diameter_cap)
        _component_fields(rec, decomp)
        try:
            if cfg.resolved_sampler() == "wilson":
                steps = cfg.max_steps if cfg.max_steps is not None else default_max_steps(n)
                tree = wilson_ust(sample, streams.child("tree"), steps)
            else:
                tree = assemble_tree(sample, decomp, streams.child("tree"), cfg.max_steps)
            rec.diameter = tree.diameter()
        except RstreError:
            rec.partial_cover = True
    elif cfg.mode == "repeat":
        decomp = decompose(sample, compute_diameters=False)
        _component_fields(rec, decomp)
        rec.s_n = s_statistic(decomp)
        rec.t_1 = int(first_repeat_times(decomp, 1, streams.child("stream"))[0])
        for r in cfg.r_probes:
            rec.extras[_probe_name("r", r)] = repeat_probe(decomp, r)
        for k in cfg.k_probes:
            rec.extras[_probe_name("k", k)] = no_repeat_prob_exact(decomp.sizes, k)
    else:
        raise InvalidArgumentError(f"mode {cfg.mode!r} has no per-trial records")
    rec.elapsed_ms = (time.perf_counter() - start) * 1e3
    return rec


def _run(cfg: ExperimentConfig, mode: str):
    if cfg.mode != mode:
        raise InvalidArgumentError(f"config mode is {cfg.mode!r}, expected {mode!r}")
    jobs = [(n, t) for n in cfg.n_grid for t in range(cfg.trials_per_n)]
    if cfg.threads == 1:
        return [run_trial(cfg, n, t) for n, t in jobs]
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        # map yields in submission order, which fixes the record order
        return list(pool.map(lambda job: run_trial(cfg, *job), jobs))


def run_diameter_sweep(cfg: ExperimentConfig) -> list[ResultRecord]:
    """Tree diameters for every (n, trial) in grid order."""
    return _run(cfg, "diameter")


def run_repeat_sweep(cfg: ExperimentConfig) -> list[ResultRecord]:
    """First repeat times, s_n and exact no-repeat probabilities per trial."""
    return _run(cfg, "repeat")


COMPONENT_STATS_FIELDS = ("n", "trials", "j", "count", "probability", "stderr",
                          "scaled_probability", "cycle_free_fraction",
                          "same_component", "same_component_stderr")


def default_j_max(n: int) -> int:
    j = 1
    while (j + 1) ** 5 <= n:
        j += 1
    return j


def run_component_stats(cfg: ExperimentConfig) -> list[dict]:
    """One row per (n, j) with the size law of the first vertex's component."""
    rows = []
    for n in cfg.n_grid:
        j_max = cfg.j_max if cfg.j_max is not None else default_j_max(n)
        stats = component_statistics(n, cfg.trials_per_n, j_max, trial_seed(cfg, n, 0))
        for r in stats.rows:
            rows.append({
                "n": n, "trials": stats.trials, "j": r.j, "count": r.count,
                "probability": r.probability, "stderr": r.stderr,
                "scaled_probability": r.probability * r.j ** 1.5,
                "cycle_free_fraction": r.cycle_free_fraction,
                "same_component": stats.same_component,
                "same_component_stderr": stats.same_component_stderr,
            })
    return rows


# ---------------------------------------------------------------- summaries

def _usable(records, y_field):
    return [r for r in records if not r.flagged and getattr(r, y_field) is not None]


def grouped(records, x_field, y_field) -> dict:
    out = {}
    for r in _usable(records, y_field):
        out.setdefault(getattr(r, x_field), []).append(float(getattr(r, y_field)))
    return {x: np.array(v) for x, v in sorted(out.items())}


def fit_loglog(xs, ys):
    """OLS of log y on log x: ``(slope, intercept, stderr of slope)``; the
    stderr is NaN with only two points."""
    lx, ly = np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float))
    k = len(lx)
    if len(set(lx.tolist())) < 2:
        raise InvalidArgumentError("need at least 2 distinct x values")
    xm = lx.mean()
    sxx = float(np.sum((lx - xm) ** 2))
    slope = float(np.sum((lx - xm) * (ly - ly.mean())) / sxx)
    intercept = float(ly.mean() - slope * xm)
    if k <= 2:
        return slope, intercept, nan
    resid = ly - (intercept + slope * lx)
    return slope, intercept, float(sqrt(np.sum(resid ** 2) / (k - 2) / sxx))


def estimate_exponent(records, x_field="n", y_field="diameter"):
    """Slope of log(mean y) against log x over unflagged records."""
    groups = grouped(records, x_field, y_field)
    if len(groups) < 2:
        raise InvalidArgumentError("need at least 2 distinct grid points")
    xs = list(groups)
    return fit_loglog(xs, [groups[x].mean() for x in xs])


def median_ratio_spread(records, y_field, scale):
    """Medians of ``y / scale(n)`` per n and their max/min ratio."""
    groups = grouped(records, "n", y_field)
    meds = {n: float(np.median(v)) / scale(n) for n, v in groups.items()}
    vals = list(meds.values())
    return meds, max(vals) / min(vals)


def large_gamma_scale(n):
    return n ** (1 / 3) * log(n)


def small_gamma_scale(n):
    return sqrt(n)
