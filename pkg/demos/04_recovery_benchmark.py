"""Reduced version of the exact-recovery benchmark (fewer trials than the
default 100 so it finishes in about a minute).

Every algorithm sees identical problem instances at each (T, trial) cell.
The printed table is the probability of reconstructing a T-sparse signal
within 1 percent relative error; the full records, summaries, timing
sidecars, and an SVG land in demos/output/recovery/.
"""

from pathlib import Path

from greedycs import ExperimentConfig, emit_plot, run_recovery_sweep, write_run_outputs

OUT = Path(__file__).parent / "output" / "recovery"

cfg = ExperimentConfig(
    experiment="recovery_sweep",
    t_values=list(range(4, 53, 8)),
    trials=25,
)
print(f"running {len(cfg.t_values)} sparsity levels x {cfg.trials} trials "
      f"x {len(cfg.algorithms)} algorithms ...")
records, summaries = run_recovery_sweep(cfg)
paths = write_run_outputs(OUT, cfg, records, summaries)

tags = sorted({s.algorithm for s in summaries})
by = {(s.algorithm, s.t): s for s in summaries}
print("\nexact-recovery probability:")
print("T    " + "".join(f"{tag:>11}" for tag in tags))
for t in cfg.t_values:
    print(f"{t:<5}" + "".join(
        f"{by[(tag, t)].success_probability:>11.2f}" for tag in tags
    ))

svg = OUT / "success_probability.svg"
emit_plot(summaries, "success_probability", svg)
print(f"\nwrote {paths['records']}")
print(f"wrote {svg}")
print("\nthe wide-selection pursuits hold on past plain OMP's transition, "
      "while the hybrid taper hits its measurement-budget guard at T=32.")
