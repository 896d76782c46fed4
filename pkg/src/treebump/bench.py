"""Seeded benchmark matrix: build trees, optimize them, emit CSV rows.

Per-sample seeds derive from (master_seed, size, sample), so any subset of
the matrix reproduces identical rows and the worker count never changes the
output. Rows are tagged by the figure they feed and sorted before writing.
"""

from __future__ import annotations

import csv
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import builders as _builders
from . import oracle
from .optimal import optimal_cost_only
from .optimizer import OptimizerConfig, optimize
from .weights import zipf_profile

DESK_SIZES = (100, 1_000, 10_000, 100_000)
DESK_SAMPLES = 50
DESK_OPTIMAL_CAP = 10_000

CSV_HEADER = ("figure_tag", "builder", "n", "sample", "seed",
              "cost_before", "cost_after", "bumps", "optimal_cost", "wall_ms")

# which figure each measurement feeds; rows are duplicated across tags so a
# CSV slice per tag is self-contained
TAG_BASELINE = "baseline"
TAG_UNBALANCED = "unbalanced"
TAG_COMPARATIVE = "comparative"
TAG_BUMPS = "bumps"
TAG_BUMP_LIMIT = "bump_limit"

AUDIT_EVERY = 100  # 1-in-100 rows get their cost_after re-derived from scratch


@dataclass
class ExperimentConfig:
    sizes: tuple[int, ...] = DESK_SIZES
    samples_per_size: int = DESK_SAMPLES
    builders: tuple[str, ...] = ("simple", "treap", "wb", "splay")
    include_optimal: bool = True
    alpha: float = 1.0
    master_seed: int = 42
    max_bumps: Optional[int] = None
    optimal_cap: int = DESK_OPTIMAL_CAP
    threads: int = 1
    measure_time: bool = True

    def __post_init__(self):
        self.sizes = tuple(int(s) for s in self.sizes)
        self.builders = tuple(self.builders)
        if not self.sizes or any(s < 1 for s in self.sizes):
            raise ValueError("sizes must be positive")
        if list(self.sizes) != sorted(self.sizes):
            raise ValueError("sizes must be ascending")
        if self.samples_per_size < 1:
            raise ValueError("samples_per_size must be >= 1")
        unknown = [b for b in self.builders if b not in _builders.BUILDERS]
        if unknown:
            raise ValueError(f"unknown builders: {unknown}")
        if self.master_seed < 0:
            raise ValueError("master_seed must be non-negative")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass
class ExperimentRow:
    figure_tag: str
    builder: str
    n: int
    sample: int
    seed: int
    cost_before: float
    cost_after: float
    bumps: int
    optimal_cost: Optional[float]
    wall_ms: float

    def sort_key(self):
        return (self.figure_tag, self.builder, self.n, self.sample)


def sample_seeds(master_seed: int, n: int, sample: int) -> tuple[int, int]:
    """(profile_seed, build_seed); stable across processes and platforms."""
    state = np.random.SeedSequence([master_seed, n, sample]).generate_state(2, np.uint64)
    return int(state[0]), int(state[1])


def _measure_one(kind, profile, build_seed, max_bumps, measure_time):
    t0 = time.perf_counter()
    t = _builders.build(kind, profile, build_seed)
    report = optimize(t, OptimizerConfig(max_bumps=max_bumps))
    wall_ms = (time.perf_counter() - t0) * 1e3 if measure_time else 0.0
    return t, report, wall_ms


def _run_sample(cfg: ExperimentConfig, n: int, sample: int) -> list[ExperimentRow]:
    profile_seed, build_seed = sample_seeds(cfg.master_seed, n, sample)
    profile = zipf_profile(n, cfg.alpha, profile_seed)
    optimal_cost = None
    if cfg.include_optimal and n <= cfg.optimal_cap:
        optimal_cost = optimal_cost_only(profile, cap=cfg.optimal_cap)

    out = []
    for kind in cfg.builders:
        t, report, wall_ms = _measure_one(kind, profile, build_seed, cfg.max_bumps, cfg.measure_time)
        if profile_seed % AUDIT_EVERY == 0:
            audited = oracle.recompute_cost(t)
            if abs(audited - report.cost_after) > 1e-9:
                raise AssertionError(
                    f"audit failed for {kind} n={n} sample={sample}: "
                    f"reported {report.cost_after}, recomputed {audited}"
                )
        if optimal_cost is not None and report.cost_after < optimal_cost * (1.0 - 1e-9):
            raise AssertionError(
                f"{kind} n={n} sample={sample} beat the optimal cost: "
                f"{report.cost_after} < {optimal_cost}"
            )
        core = ExperimentRow(
            figure_tag="",
            builder=kind,
            n=n,
            sample=sample,
            seed=profile_seed,
            cost_before=report.cost_before,
            cost_after=report.cost_after,
            bumps=report.bumps_performed,
            optimal_cost=optimal_cost,
            wall_ms=wall_ms,
        )
        out.append(replace(core, figure_tag=TAG_BASELINE))
        out.append(replace(core, figure_tag=TAG_UNBALANCED))
        if optimal_cost is not None:
            out.append(replace(core, figure_tag=TAG_COMPARATIVE))
        if kind == "treap":
            out.append(replace(core, figure_tag=TAG_BUMPS))
    return out


def _run_tasks(cfg: ExperimentConfig, worker) -> list[ExperimentRow]:
    tasks = [(n, sample) for n in cfg.sizes for sample in range(cfg.samples_per_size)]
    if cfg.threads == 1:
        chunks = [worker(n, sample) for n, sample in tasks]
    else:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            chunks = list(pool.map(lambda args: worker(*args), tasks))
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=ExperimentRow.sort_key)
    return rows


def run_experiment(cfg: ExperimentConfig) -> list[ExperimentRow]:
    """Full matrix over (size, sample, builder); rows sorted and audit-checked."""
    return _run_tasks(cfg, lambda n, sample: _run_sample(cfg, n, sample))


def limited_bump_comparison(cfg: ExperimentConfig, limit: int = 1000) -> list[ExperimentRow]:
    """Treap optimization with and without a bump budget, tagged for the limit figure."""
    if "treap" not in cfg.builders:
        raise ValueError("limited_bump_comparison needs the treap builder in the config")

    def worker(n: int, sample: int) -> list[ExperimentRow]:
        profile_seed, build_seed = sample_seeds(cfg.master_seed, n, sample)
        profile = zipf_profile(n, cfg.alpha, profile_seed)
        optimal_cost = None
        if cfg.include_optimal and n <= cfg.optimal_cap:
            optimal_cost = optimal_cost_only(profile, cap=cfg.optimal_cap)
        rows = []
        for label, budget in (("treap", None), ("treap_capped", limit)):
            t0 = time.perf_counter()
            t = _builders.build_treap(profile)
            report = optimize(t, OptimizerConfig(max_bumps=budget))
            wall_ms = (time.perf_counter() - t0) * 1e3 if cfg.measure_time else 0.0
            rows.append(ExperimentRow(
                figure_tag=TAG_BUMP_LIMIT,
                builder=label,
                n=n,
                sample=sample,
                seed=profile_seed,
                cost_before=report.cost_before,
                cost_after=report.cost_after,
                bumps=report.bumps_performed,
                optimal_cost=optimal_cost,
                wall_ms=wall_ms,
            ))
        return rows

    return _run_tasks(cfg, worker)


def summarize(rows) -> list[dict]:
    """Per (builder, n) statistics over unique samples, for the summary CSV."""
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to summarize")
    unique = {}
    for row in rows:
        unique.setdefault((row.builder, row.n, row.sample), row)
    groups: dict[tuple[str, int], list[ExperimentRow]] = {}
    for (builder, n, _), row in sorted(unique.items()):
        groups.setdefault((builder, n), []).append(row)

    out = []
    for (builder, n), members in sorted(groups.items()):
        before = [r.cost_before for r in members]
        after = [r.cost_after for r in members]
        ratio = [r.bumps / r.n for r in members]
        out.append({
            "builder": builder,
            "n": n,
            "samples": len(members),
            "cost_before_mean": sum(before) / len(before),
            "cost_before_min": min(before),
            "cost_before_max": max(before),
            "cost_after_mean": sum(after) / len(after),
            "cost_after_min": min(after),
            "cost_after_max": max(after),
            "bumps_per_node_mean": sum(ratio) / len(ratio),
            "bumps_per_node_min": min(ratio),
            "bumps_per_node_max": max(ratio),
        })
    return out


def write_rows(rows, path) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow([
                r.figure_tag, r.builder, r.n, r.sample, r.seed,
                repr(r.cost_before), repr(r.cost_after), r.bumps,
                "" if r.optimal_cost is None else repr(r.optimal_cost),
                repr(r.wall_ms),
            ])


def read_rows(path) -> list[ExperimentRow]:
    rows = []
    with open(path, "r", newline="", encoding="ascii") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != list(CSV_HEADER):
            raise ValueError(f"unexpected CSV header: {reader.fieldnames}")
        for rec in reader:
            rows.append(ExperimentRow(
                figure_tag=rec["figure_tag"],
                builder=rec["builder"],
                n=int(rec["n"]),
                sample=int(rec["sample"]),
                seed=int(rec["seed"]),
                cost_before=float(rec["cost_before"]),
                cost_after=float(rec["cost_after"]),
                bumps=int(rec["bumps"]),
                optimal_cost=float(rec["optimal_cost"]) if rec["optimal_cost"] else None,
                wall_ms=float(rec["wall_ms"]),
            ))
    return rows


def write_summary(summary_rows: list[dict], path) -> None:
    if not summary_rows:
        raise ValueError("no summary rows to write")
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(summary_rows[0].keys()))
        writer.writeheader()
        for rec in summary_rows:
            writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in rec.items()})
