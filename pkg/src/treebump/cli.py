"""Command line front end: optimize a dumped tree, run the benchmark matrix,
or cross-check a small instance against the brute-force oracle."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench as _bench
from . import builders as _builders
from . import oracle as _oracle
from .optimal import optimal_cost_only
from .optimizer import OptimizerConfig, optimize
from .tree import load_tree
from .weights import load_profile, zipf_profile


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _parse_name_list(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def read_config_file(path) -> dict[str, str]:
    """key=value lines; '#' starts a comment; later keys win."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _cmd_optimize(args) -> int:
    t = load_tree(args.input)
    cfg = OptimizerConfig(epsilon=args.epsilon, max_bumps=args.max_bumps)
    report = optimize(t, cfg)
    t.save(args.output)
    print(f"{report.bumps_performed},{report.cost_before!r},"
          f"{report.cost_after!r},{report.terminated.value}")
    return 0


_BOOLS = {"1": True, "true": True, "yes": True, "0": False, "false": False, "no": False}


def _cmd_bench(args) -> int:
    file_cfg = read_config_file(args.config) if args.config else {}

    def pick(flag, key, fallback, convert):
        if flag is not None:
            return flag
        if key in file_cfg:
            return convert(file_cfg[key])
        return fallback

    builder_names = pick(args.builders, "builders", ("simple", "treap", "wb", "splay", "optimal"),
                         _parse_name_list)
    include_optimal = "optimal" in builder_names
    builder_names = tuple(b for b in builder_names if b != "optimal")

    timing = not args.no_timing
    if args.no_timing is False and "timing" in file_cfg:
        timing = _BOOLS[file_cfg["timing"].lower()]

    cfg = _bench.ExperimentConfig(
        sizes=pick(args.sizes, "sizes", _bench.DESK_SIZES, _parse_int_list),
        samples_per_size=pick(args.samples, "samples", _bench.DESK_SAMPLES, int),
        builders=builder_names,
        include_optimal=include_optimal,
        alpha=pick(args.alpha, "alpha", 1.0, float),
        master_seed=pick(args.seed, "seed", 42, int),
        max_bumps=pick(args.max_bumps, "max_bumps", None, int),
        optimal_cap=pick(args.optimal_cap, "optimal_cap", _bench.DESK_OPTIMAL_CAP, int),
        threads=pick(args.threads, "threads", 1, int),
        measure_time=timing,
    )
    out = pick(args.out, "out", None, str)
    if out is None:
        print("bench: --out is required (flag or config file)", file=sys.stderr)
        return 2

    rows = _bench.run_experiment(cfg)
    if args.limit_comparison:
        rows += _bench.limited_bump_comparison(cfg)
        rows.sort(key=_bench.ExperimentRow.sort_key)
    _bench.write_rows(rows, out)

    summary_path = args.summary or str(Path(out).with_suffix("")) + ".summary.csv"
    _bench.write_summary(_bench.summarize(rows), summary_path)
    print(f"wrote {len(rows)} rows to {out}; summary in {summary_path}")
    return 0


def _cmd_oracle(args) -> int:
    if args.profile:
        profile = load_profile(args.profile)
    else:
        profile = zipf_profile(args.n, args.alpha, args.seed)
    best, count = _oracle.exhaustive_optimal(profile)
    print(f"exhaustive_optimal {best!r} shapes={count}")
    print(f"dp_optimal {optimal_cost_only(profile)!r}")
    for kind in ("simple", "treap", "wb", "splay"):
        t = _builders.build(kind, profile, args.seed)
        print(f"{kind} {t.cost()!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treebump")
    sub = parser.add_subparsers(dest="command", required=True)

    p_opt = sub.add_parser("optimize", help="hill-climb a dumped tree and dump the result")
    p_opt.add_argument("--input", required=True, help="tree dump to read")
    p_opt.add_argument("--output", required=True, help="where to write the optimized dump")
    p_opt.add_argument("--max-bumps", type=int, default=None)
    p_opt.add_argument("--epsilon", type=float, default=1e-12)
    p_opt.set_defaults(fn=_cmd_optimize)

    p_bench = sub.add_parser("bench", help="run the seeded experiment matrix to CSV")
    p_bench.add_argument("--sizes", type=_parse_int_list, default=None)
    p_bench.add_argument("--samples", type=int, default=None)
    p_bench.add_argument("--alpha", type=float, default=None)
    p_bench.add_argument("--seed", type=int, default=None)
    p_bench.add_argument("--out", default=None)
    p_bench.add_argument("--optimal-cap", type=int, default=None)
    p_bench.add_argument("--max-bumps", type=int, default=None)
    p_bench.add_argument("--builders", type=_parse_name_list, default=None,
                         help="comma list from: simple,treap,wb,splay,optimal")
    p_bench.add_argument("--threads", type=int, default=None)
    p_bench.add_argument("--no-timing", action="store_true",
                         help="write wall_ms as 0.0 so repeated runs are byte-identical")
    p_bench.add_argument("--summary", default=None, help="summary CSV path")
    p_bench.add_argument("--config", default=None, help="key=value config file; flags override")
    p_bench.add_argument("--limit-comparison", action="store_true",
                         help="also run treaps with a 1000-bump budget")
    p_bench.set_defaults(fn=_cmd_bench)

    p_oracle = sub.add_parser("oracle", help="compare builders and DP against brute force")
    p_oracle.add_argument("--n", type=int, default=8)
    p_oracle.add_argument("--seed", type=int, default=0)
    p_oracle.add_argument("--alpha", type=float, default=1.0)
    p_oracle.add_argument("--profile", default=None, help="load a profile dump instead of generating")
    p_oracle.set_defaults(fn=_cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
