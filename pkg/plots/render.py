#!/usr/bin/env python3
"""Render benchmark CSVs into figures, one image per figure tag.

Reads the row schema produced by the bench harness and draws:

  baseline     mean cost before optimization per builder vs tree size
  unbalanced   mean cost after optimization per builder vs tree size
  comparative  cost ratios to the exact optimum (optimized builders, plus
               the weight-balanced baseline) vs tree size
  bumps        mean and max bumps per node for treaps vs tree size
  bump_limit   optimized treap cost with and without a bump budget

Tree size is log-scaled on the x axis; legends are ordered worst to best
by the series mean at the largest size. The CSV is never modified and the
output depends only on its contents.

Usage: render.py --csv results.csv --out figs/ [--format svg|png]
"""

import argparse
import csv
import sys
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "treebump-figures"
import matplotlib.pyplot as plt

EXPECTED_HEADER = ["figure_tag", "builder", "n", "sample", "seed",
                   "cost_before", "cost_after", "bumps", "optimal_cost", "wall_ms"]
KNOWN_TAGS = ("baseline", "unbalanced", "comparative", "bumps", "bump_limit")


class ParseError(Exception):
    pass


def load_rows(path):
    """Parse the CSV; any malformed field fails loudly with its line number."""
    rows = []
    with open(path, "r", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != EXPECTED_HEADER:
            raise ParseError(f"{path}: unexpected header {reader.fieldnames}")
        for rec in reader:
            line = reader.line_num
            if None in rec.values() or None in rec:
                raise ParseError(f"{path}: line {line}: wrong number of fields")
            try:
                rows.append({
                    "figure_tag": rec["figure_tag"],
                    "builder": rec["builder"],
                    "n": int(rec["n"]),
                    "cost_before": float(rec["cost_before"]),
                    "cost_after": float(rec["cost_after"]),
                    "bumps": int(rec["bumps"]),
                    "optimal_cost": float(rec["optimal_cost"]) if rec["optimal_cost"] else None,
                })
            except ValueError as err:
                raise ParseError(f"{path}: line {line}: {err}") from None
    return rows


def group_stats(rows, value):
    """builder -> sorted [(n, mean, min, max)] for a per-row value function."""
    buckets = defaultdict(list)
    for r in rows:
        v = value(r)
        if v is not None:
            buckets[(r["builder"], r["n"])].append(v)
    series = defaultdict(list)
    for (builder, n), vals in sorted(buckets.items()):
        series[builder].append((n, sum(vals) / len(vals), min(vals), max(vals)))
    return dict(series)


def figure_series(tag, rows):
    """Labelled (x, mean, lo, hi) series for one figure tag."""
    if tag == "baseline":
        return group_stats(rows, lambda r: r["cost_before"])
    if tag == "unbalanced" or tag == "bump_limit":
        return group_stats(rows, lambda r: r["cost_after"])
    if tag == "comparative":
        after = group_stats(rows, lambda r: r["cost_after"])
        optimal = group_stats(rows, lambda r: r["optimal_cost"])
        wb_before = group_stats([r for r in rows if r["builder"] == "wb"],
                                lambda r: r["cost_before"])
        out = {}
        for builder, points in after.items():
            opt = {n: m for n, m, _, _ in optimal[builder]}
            out[builder] = [(n, m / opt[n], lo / opt[n], hi / opt[n])
                            for n, m, lo, hi in points]
        if "wb" in wb_before:
            opt = {n: m for n, m, _, _ in optimal["wb"]}
            out["wb baseline"] = [(n, m / opt[n], lo / opt[n], hi / opt[n])
                                  for n, m, lo, hi in wb_before["wb"]]
        return out
    if tag == "bumps":
        per_node = group_stats(rows, lambda r: r["bumps"] / r["n"])
        out = {}
        for builder, points in per_node.items():
            out[f"{builder} mean"] = [(n, m, m, m) for n, m, _, _ in points]
            out[f"{builder} max"] = [(n, hi, hi, hi) for n, _, _, hi in points]
        return out
    raise ValueError(tag)


Y_LABEL = {
    "baseline": "mean lookup cost",
    "unbalanced": "mean lookup cost after optimization",
    "comparative": "cost relative to optimal",
    "bumps": "bumps per node",
    "bump_limit": "mean lookup cost after optimization",
}


def render_figure(tag, series, out_path):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    largest_n = max(n for points in series.values() for n, _, _, _ in points)
    worst_first = sorted(
        series.items(),
        key=lambda item: -max(m for n, m, _, _ in item[1] if n == largest_n))
    for label, points in worst_first:
        xs = [p[0] for p in points]
        means = [p[1] for p in points]
        los = [p[2] for p in points]
        his = [p[3] for p in points]
        ax.plot(xs, means, marker="o", label=label)
        if any(h > l for l, h in zip(los, his)):
            ax.fill_between(xs, los, his, alpha=0.15)
    ax.set_xscale("log")
    ax.set_xlabel("tree size (log scale)")
    ax.set_ylabel(Y_LABEL[tag])
    ax.set_title(tag.replace("_", " "))
    ax.legend()
    fig.tight_layout()
    if out_path.suffix == ".svg":
        fig.savefig(out_path, metadata={"Date": None})
    else:
        fig.savefig(out_path)
    plt.close(fig)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--csv", required=True, help="bench results CSV")
    parser.add_argument("--out", required=True, help="output directory for images")
    parser.add_argument("--format", choices=("svg", "png"), default="svg")
    args = parser.parse_args(argv)

    try:
        rows = load_rows(args.csv)
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2

    by_tag = defaultdict(list)
    for r in rows:
        by_tag[r["figure_tag"]].append(r)
    for tag in sorted(set(by_tag) - set(KNOWN_TAGS)):
        print(f"warning: skipping unknown figure tag {tag!r}", file=sys.stderr)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for tag in KNOWN_TAGS:
        if tag not in by_tag:
            continue
        out_path = out_dir / f"{tag}.{args.format}"
        render_figure(tag, figure_series(tag, by_tag[tag]), out_path)
        written.append(out_path)
        print(out_path)

    if not written:
        print("error: no known figure tags in the CSV, nothing rendered", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
