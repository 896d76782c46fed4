#!/usr/bin/env python3
"""Run a small benchmark matrix, write the CSVs, and render the figures.

Same pipeline as `treebump bench` plus `plots/render.py`, kept small enough
to finish in well under a minute. Outputs land in demos/out/.
"""

import subprocess
import sys
from pathlib import Path

import treebump as tb
from treebump.bench import write_rows, write_summary

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

cfg = tb.ExperimentConfig(sizes=(100, 400, 1600), samples_per_size=10,
                          master_seed=42, measure_time=True)
print("running the matrix:", cfg.sizes, "x", cfg.samples_per_size, "samples ...", flush=True)
rows = tb.run_experiment(cfg)
rows += tb.limited_bump_comparison(cfg, limit=100)
rows.sort(key=tb.ExperimentRow.sort_key)

csv_path = out_dir / "results.csv"
write_rows(rows, csv_path)
summary = tb.summarize(rows)
write_summary(summary, out_dir / "results.summary.csv")
print(f"wrote {len(rows)} rows to {csv_path}", flush=True)

print("\nmean cost before -> after per builder at n=1600:")
for rec in summary:
    if rec["n"] == 1600 and rec["builder"] in ("simple", "splay", "treap", "wb"):
        print(f"  {rec['builder']:7s} {rec['cost_before_mean']:7.3f} -> "
              f"{rec['cost_after_mean']:.3f}")

render = Path(__file__).resolve().parent.parent / "plots" / "render.py"
sys.stdout.flush()
res = subprocess.run([sys.executable, str(render), "--csv", str(csv_path),
                      "--out", str(out_dir / "figs")], text=True)
sys.exit(res.returncode)
