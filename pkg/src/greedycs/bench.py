"""Desk-scale benchmark harness.

Two experiments are reproduced end to end with M=100, N=256 defaults:

  recovery_sweep   exactly T-sparse Gaussian signals, success = relative
                   error within 1 percent, 100 trials per sparsity level;
  decay_sweep      signals with exponentially decaying coefficients in
                   random locations, mean reconstruction error per level
                   reported next to the optimal T-term error, 20 trials.

For every (T, trial) cell a fresh matrix, signal, and noise draw are
derived deterministically from the master seed alone, so adding or
removing an algorithm never changes any other algorithm's inputs, and
reruns are bit-identical regardless of worker count. Trials are
independent work items; a process pool may execute them in any order and
the records are sorted before aggregation or emission.

Algorithm failures (unstable widths, singular projections, divergence)
are recorded as failed trials carrying the zero-estimate relative error
of 1.0 rather than aborting the sweep.

Output files: records.csv and summary.csv hold the deterministic results;
wall-clock timings go to separate timings.csv / timing_summary.csv
sidecars so the result files stay byte-reproducible.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from multiprocessing import get_context
from pathlib import Path
from typing import Iterable

import numpy as np

from . import baselines, pursuit
from .errors import GreedycsError
from .io import emit_csv, fmt_float
from .model import (
    NO_NOISE,
    NoiseSpec,
    RNG_ALGORITHM,
    best_t_term,
    decay_tail_norm,
    gen_decaying_signal,
    gen_gaussian_matrix,
    gen_sparse_gaussian_signal,
    measure,
)

EXPERIMENTS = ("recovery_sweep", "decay_sweep", "rip_probe")
_EXPERIMENT_CODE = {name: i + 1 for i, name in enumerate(EXPERIMENTS)}

DEFAULT_T_VALUES = list(range(4, 53, 4))
DEFAULT_TRIALS = {"recovery_sweep": 100, "decay_sweep": 20}
DEFAULT_ALGORITHMS = "omp,komp(2),hybrid(0.2),cosamp(T),cosamp(2T),iht"
DEFAULT_MASTER_SEED = 42

# Reserved algorithm tag for rows imported from an external l1 solver; the
# harness never runs it, but the CSV schema accepts it.
EXTERNAL_L1_TAG = "l1_import"

# Tag of the oracle rows a decay sweep emits for reference.
OPTIMAL_TAG = "optimal"

RESULT_FIELDS = [
    "experiment", "algorithm", "t", "trial", "seed",
    "relative_error", "success", "iterations_run", "stop_reason",
]
TIMING_FIELDS = ["experiment", "algorithm", "t", "trial", "runtime"]
SUMMARY_FIELDS = [
    "algorithm", "t", "success_probability", "mean_relative_error", "trials",
]
TIMING_SUMMARY_FIELDS = ["algorithm", "t", "mean_runtime", "trials"]


@dataclass(frozen=True)
class AlgorithmSpec:
    """One benchmark algorithm plus its parameter.

    Spelled "omp", "komp(K)", "hybrid(alpha)", "cosamp(T)" / "cosamp(2T)",
    or "iht" in config files.
    """

    kind: str
    k: int = 1
    alpha: float = 0.0
    width_factor: int = 2

    @property
    def tag(self) -> str:
        if self.kind == "omp":
            return "omp"
        if self.kind == "komp":
            return f"komp{self.k}"
        if self.kind == "hybrid":
            return f"hybrid{self.alpha:g}"
        if self.kind == "cosamp":
            return f"cosamp_{'' if self.width_factor == 1 else self.width_factor}T"
        return "iht"

    @property
    def truncates(self) -> bool:
        """Whether the estimate may carry more than t nonzeros (so a decay
        sweep also reports its best t-term truncation)."""
        return self.kind in ("komp", "hybrid")

    def run(self, phi, y, t: int) -> pursuit.PursuitResult:
        if self.kind == "omp":
            return pursuit.omp(phi, y, t, keep_states=False)
        if self.kind == "komp":
            return pursuit.komp(phi, y, t, self.k, keep_states=False)
        if self.kind == "hybrid":
            return pursuit.hybrid_omp(phi, y, t, self.alpha, keep_states=False)
        if self.kind == "cosamp":
            cfg = baselines.BaselineConfig(
                algorithm="cosamp", width_factor=self.width_factor
            )
            return baselines.cosamp(phi, y, t, cfg, keep_states=False)
        return baselines.iht(phi, y, t, keep_states=False)


def parse_algorithm(text: str) -> AlgorithmSpec:
    text = text.strip()
    if text == "omp":
        return AlgorithmSpec(kind="omp")
    if text == "iht":
        return AlgorithmSpec(kind="iht")
    if text.startswith("komp(") and text.endswith(")"):
        return AlgorithmSpec(kind="komp", k=int(text[5:-1]))
    if text.startswith("hybrid(") and text.endswith(")"):
        return AlgorithmSpec(kind="hybrid", alpha=float(text[7:-1]))
    if text.startswith("cosamp(") and text.endswith(")"):
        inner = text[7:-1].strip()
        factor = 1 if inner == "T" else int(inner.removesuffix("T"))
        return AlgorithmSpec(kind="cosamp", width_factor=factor)
    raise ValueError(f"cannot parse algorithm {text!r}")


def parse_algorithms(text: str) -> list[AlgorithmSpec]:
    return [parse_algorithm(part) for part in text.split(",") if part.strip()]


def format_algorithm(spec: AlgorithmSpec) -> str:
    if spec.kind == "omp":
        return "omp"
    if spec.kind == "iht":
        return "iht"
    if spec.kind == "komp":
        return f"komp({spec.k})"
    if spec.kind == "hybrid":
        return f"hybrid({spec.alpha:g})"
    factor = "" if spec.width_factor == 1 else spec.width_factor
    return f"cosamp({factor}T)"


@dataclass
class ExperimentConfig:
    """Fully describes one benchmark run; everything downstream is a pure
    function of this record."""

    experiment: str
    m: int = 100
    n: int = 256
    t_values: list[int] = field(default_factory=lambda: list(DEFAULT_T_VALUES))
    trials: int | None = None
    algorithms: list[AlgorithmSpec] = field(
        default_factory=lambda: parse_algorithms(DEFAULT_ALGORITHMS)
    )
    noise: NoiseSpec = NO_NOISE
    master_seed: int = DEFAULT_MASTER_SEED
    success_tolerance: float = 0.01

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.trials is None:
            self.trials = DEFAULT_TRIALS.get(self.experiment, 100)
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if sorted(self.t_values) != list(self.t_values):
            raise ValueError("t_values must be sorted ascending")
        if any(t > self.m for t in self.t_values):
            raise ValueError("every sparsity level must be <= m")
        if not 0 < self.success_tolerance:
            raise ValueError("success_tolerance must be > 0")


@dataclass
class TrialRecord:
    """One algorithm run on one trial instance.

    The two trailing diagnostics mirror PursuitResult and never reach the
    CSVs; `runtime` is wall-clock seconds for the algorithm call alone and
    is emitted only to the timing sidecar files.
    """

    experiment: str
    algorithm: str
    t: int
    trial: int
    seed: int
    relative_error: float
    success: bool
    runtime: float = 0.0
    iterations_run: int = 0
    stop_reason: str = ""
    max_selected_correlation: float = 0.0
    max_residual_increase: float = float("-inf")


@dataclass
class SummaryRow:
    algorithm: str
    t: int
    success_probability: float
    mean_relative_error: float
    mean_runtime: float
    trials: int


def trial_seeds(
    master_seed: int, experiment: str, t: int, trial: int
) -> tuple[int, int, int]:
    """(matrix, signal, noise) seeds for one trial cell, derived from the
    master seed through a SeedSequence so cells never collide."""
    ss = np.random.SeedSequence(
        (master_seed, _EXPERIMENT_CODE[experiment], t, trial)
    )
    keys = ss.generate_state(3, dtype=np.uint64)
    return int(keys[0]), int(keys[1]), int(keys[2])


def _record(
    cfg: ExperimentConfig, spec_tag: str, t: int, trial: int, seed: int,
    x: np.ndarray, estimate: np.ndarray | None, runtime: float,
    iterations: int, reason: str,
    max_corr: float = 0.0, max_increase: float = float("-inf"),
) -> TrialRecord:
    xnorm = float(np.linalg.norm(x))
    if estimate is None:
        rel = 1.0  # zero-estimate error of a failed run
    else:
        rel = float(np.linalg.norm(x - estimate)) / xnorm
    return TrialRecord(
        experiment=cfg.experiment,
        algorithm=spec_tag,
        t=t,
        trial=trial,
        seed=seed,
        relative_error=rel,
        success=rel <= cfg.success_tolerance,
        runtime=runtime,
        iterations_run=iterations,
        stop_reason=reason,
        max_selected_correlation=max_corr,
        max_residual_increase=max_increase,
    )


def run_trial(cfg: ExperimentConfig, t: int, trial: int) -> list[TrialRecord]:
    """All configured algorithms on one freshly generated (phi, y) pair."""
    mseed, sseed, nseed = trial_seeds(cfg.master_seed, cfg.experiment, t, trial)
    phi = gen_gaussian_matrix(cfg.m, cfg.n, mseed)
    if cfg.experiment == "recovery_sweep":
        x, _ = gen_sparse_gaussian_signal(cfg.n, t, sseed)
    elif cfg.experiment == "decay_sweep":
        x = gen_decaying_signal(cfg.n, sseed)
    else:
        raise ValueError(f"experiment {cfg.experiment!r} is not trial-based")
    noise = cfg.noise if cfg.noise.kind == "none" else replace(cfg.noise, seed=nseed)
    y = measure(phi, x, noise)

    records = []
    for spec in cfg.algorithms:
        start = time.perf_counter()
        try:
            result = spec.run(phi, y, t)
            runtime = time.perf_counter() - start
            records.append(_record(
                cfg, spec.tag, t, trial, mseed, x, result.estimate,
                runtime, result.iterations_run, result.stop_reason or "",
                result.max_selected_correlation, result.max_residual_increase,
            ))
            if cfg.experiment == "decay_sweep" and spec.truncates:
                truncated = pursuit.truncate_result(result, t)
                records.append(_record(
                    cfg, spec.tag + "_trunc", t, trial, mseed, x, truncated,
                    runtime, result.iterations_run, result.stop_reason or "",
                ))
        except GreedycsError as exc:
            runtime = time.perf_counter() - start
            reason = f"error:{type(exc).__name__}"
            records.append(_record(
                cfg, spec.tag, t, trial, mseed, x, None, runtime, 0, reason,
            ))
            if cfg.experiment == "decay_sweep" and spec.truncates:
                records.append(_record(
                    cfg, spec.tag + "_trunc", t, trial, mseed, x, None,
                    runtime, 0, reason,
                ))
    if cfg.experiment == "decay_sweep":
        records.append(_record(
            cfg, OPTIMAL_TAG, t, trial, mseed, x, best_t_term(x, t),
            0.0, 0, "",
        ))
    return records


def _work_item(args) -> list[TrialRecord]:
    cfg, t, trial = args
    return run_trial(cfg, t, trial)


def _run_sweep(cfg: ExperimentConfig, workers: int = 1) -> tuple[
    list[TrialRecord], list[SummaryRow]
]:
    items = [(cfg, t, trial) for t in cfg.t_values for trial in range(cfg.trials)]
    if workers <= 1:
        batches = map(_work_item, items)
    else:
        with ProcessPoolExecutor(
            max_workers=workers, mp_context=get_context("spawn")
        ) as pool:
            batches = list(pool.map(_work_item, items, chunksize=8))
    records = [rec for batch in batches for rec in batch]
    records.sort(key=lambda r: (r.experiment, r.algorithm, r.t, r.trial))
    return records, summarize(records)


def run_recovery_sweep(cfg: ExperimentConfig, workers: int = 1):
    """Exact-recovery probability sweep over the configured sparsity grid."""
    if cfg.experiment != "recovery_sweep":
        raise ValueError("config is not a recovery_sweep")
    return _run_sweep(cfg, workers)


def run_decay_sweep(cfg: ExperimentConfig, workers: int = 1):
    """Reconstruction-error sweep on compressible (decaying) signals; also
    emits best-t-term truncations of the wide estimates and oracle rows
    under the tag 'optimal'."""
    if cfg.experiment != "decay_sweep":
        raise ValueError("config is not a decay_sweep")
    return _run_sweep(cfg, workers)


def summarize(records: Iterable[TrialRecord]) -> list[SummaryRow]:
    """Aggregate per (algorithm, t); a pure fold over the records."""
    groups: dict[tuple[str, int], list[TrialRecord]] = {}
    for rec in records:
        groups.setdefault((rec.algorithm, rec.t), []).append(rec)
    rows = []
    for (algorithm, t), group in sorted(groups.items()):
        count = len(group)
        rows.append(SummaryRow(
            algorithm=algorithm,
            t=t,
            success_probability=sum(r.success for r in group) / count,
            mean_relative_error=sum(r.relative_error for r in group) / count,
            mean_runtime=sum(r.runtime for r in group) / count,
            trials=count,
        ))
    return rows


def optimal_reference(n: int, t_values: list[int]) -> dict[int, float]:
    """Exact optimal t-term error of the decaying signal family, absolute."""
    return {t: decay_tail_norm(n, t) for t in t_values}


def format_config(cfg: ExperimentConfig) -> str:
    lines = [
        "# resolved benchmark configuration",
        f"experiment = {cfg.experiment}",
        f"m = {cfg.m}",
        f"n = {cfg.n}",
        "t_values = " + ",".join(str(t) for t in cfg.t_values),
        f"trials = {cfg.trials}",
        "algorithms = " + ",".join(format_algorithm(s) for s in cfg.algorithms),
        f"noise_kind = {cfg.noise.kind}",
        f"noise_sigma = {fmt_float(cfg.noise.sigma)}",
        f"noise_seed = {cfg.noise.seed}",
        f"master_seed = {cfg.master_seed}",
        f"success_tolerance = {fmt_float(cfg.success_tolerance)}",
        f"# rng = {RNG_ALGORITHM}",
        f"# numpy = {np.__version__}",
    ]
    return "\n".join(lines) + "\n"


def parse_config(path) -> ExperimentConfig:
    """Read a flat key = value config file (comments start with '#')."""
    values: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"bad config line {raw!r}")
        key, _, val = line.partition("=")
        values[key.strip()] = val.strip()

    def take(key, conv, default):
        return conv(values[key]) if key in values else default

    experiment = values.get("experiment")
    if experiment is None:
        raise ValueError("config must set 'experiment'")
    noise_kind = values.get("noise_kind", "none")
    noise = NoiseSpec(
        kind=noise_kind,
        sigma=take("noise_sigma", float, 0.0),
        seed=take("noise_seed", int, 0),
    )
    return ExperimentConfig(
        experiment=experiment,
        m=take("m", int, 100),
        n=take("n", int, 256),
        t_values=take(
            "t_values",
            lambda s: [int(v) for v in s.split(",")],
            list(DEFAULT_T_VALUES),
        ),
        trials=take("trials", int, None),
        algorithms=take(
            "algorithms", parse_algorithms, parse_algorithms(DEFAULT_ALGORITHMS)
        ),
        noise=noise,
        master_seed=take("master_seed", int, DEFAULT_MASTER_SEED),
        success_tolerance=take("success_tolerance", float, 0.01),
    )


def write_run_outputs(
    out_dir, cfg: ExperimentConfig,
    records: list[TrialRecord], summaries: list[SummaryRow],
) -> dict[str, Path]:
    """Persist one run: deterministic results, timing sidecars, and the
    resolved configuration."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "records": out / "records.csv",
        "timings": out / "timings.csv",
        "summary": out / "summary.csv",
        "timing_summary": out / "timing_summary.csv",
        "config": out / "config_resolved.txt",
    }
    emit_csv(records, paths["records"], fields=RESULT_FIELDS)
    emit_csv(records, paths["timings"], fields=TIMING_FIELDS)
    emit_csv(summaries, paths["summary"], fields=SUMMARY_FIELDS)
    emit_csv(summaries, paths["timing_summary"], fields=TIMING_SUMMARY_FIELDS)
    paths["config"].write_text(format_config(cfg))
    return paths
