import subprocess
import sys

import pytest

from treebump import build_treap, load_tree, zipf_profile
from treebump.cli import main


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "treebump", *args],
                          capture_output=True, text=True)


def test_optimize_roundtrip(tmp_path, capsys):
    prof = zipf_profile(64, 1.0, 5)
    t = build_treap(prof)
    baseline = t.cost()
    src = tmp_path / "in.txt"
    dst = tmp_path / "out.txt"
    t.save(src)

    assert main(["optimize", "--input", str(src), "--output", str(dst)]) == 0
    line = capsys.readouterr().out.strip()
    bumps, before, after, terminated = line.split(",")
    assert int(bumps) > 0
    assert float(before) == pytest.approx(baseline, abs=1e-12)
    assert float(after) < float(before)
    assert terminated == "quiescent"

    back = load_tree(dst)
    back.validate()
    assert back.cost() == pytest.approx(float(after), abs=1e-9)


def test_optimize_respects_budget(tmp_path, capsys):
    t = build_treap(zipf_profile(128, 1.0, 6))
    src = tmp_path / "in.txt"
    t.save(src)
    assert main(["optimize", "--input", str(src), "--output",
                 str(tmp_path / "o.txt"), "--max-bumps", "2"]) == 0
    bumps, _, _, terminated = capsys.readouterr().out.strip().split(",")
    assert bumps == "2" and terminated == "budget_exhausted"


def test_optimize_missing_input(tmp_path, capsys):
    assert main(["optimize", "--input", str(tmp_path / "nope.txt"),
                 "--output", str(tmp_path / "o.txt")]) == 2
    assert "error:" in capsys.readouterr().err


def test_oracle_output(capsys):
    assert main(["oracle", "--n", "7", "--seed", "3"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    values = {}
    for line in lines:
        name, rest = line.split(" ", 1)
        values[name] = float(rest.split()[0])
    assert set(values) == {"exhaustive_optimal", "dp_optimal", "simple", "treap", "wb", "splay"}
    assert values["dp_optimal"] == values["exhaustive_optimal"]
    for kind in ("simple", "treap", "wb", "splay"):
        assert values[kind] >= values["exhaustive_optimal"] - 1e-12


def test_oracle_rejects_large_n(capsys):
    assert main(["oracle", "--n", "13", "--seed", "1"]) == 2
    assert "12" in capsys.readouterr().err


def test_bench_cli_writes_csv_and_summary(tmp_path):
    out = tmp_path / "results.csv"
    res = run_cli("bench", "--sizes", "16,32", "--samples", "2", "--seed", "9",
                  "--out", str(out), "--no-timing")
    assert res.returncode == 0, res.stderr
    lines = out.read_text().splitlines()
    assert lines[0].startswith("figure_tag,builder,n,sample,seed")
    assert len(lines) > 1
    assert (tmp_path / "results.summary.csv").exists()


def test_bench_cli_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "bench.cfg"
    cfg.write_text(
        "# desk config\n"
        "sizes = 16,32\n"
        "samples = 2\n"
        "seed = 9\n"
        "timing = false\n"
        f"out = {tmp_path / 'a.csv'}\n"
    )
    assert main(["bench", "--config", str(cfg)]) == 0
    capsys.readouterr()
    # flag overrides the config file's sizes
    assert main(["bench", "--config", str(cfg), "--sizes", "16",
                 "--out", str(tmp_path / "b.csv")]) == 0
    capsys.readouterr()
    a = (tmp_path / "a.csv").read_text()
    b = (tmp_path / "b.csv").read_text()
    assert ",32," in a and ",32," not in b


def test_bench_cli_requires_out(capsys):
    assert main(["bench", "--sizes", "16", "--samples", "1"]) == 2
    assert "--out" in capsys.readouterr().err


def test_bench_cli_builder_subset(tmp_path):
    out = tmp_path / "r.csv"
    assert main(["bench", "--sizes", "16", "--samples", "1", "--seed", "1",
                 "--builders", "treap,wb", "--out", str(out), "--no-timing"]) == 0
    body = out.read_text()
    assert "treap" in body and "wb" in body
    assert "splay" not in body and "simple" not in body
    # no 'optimal' in the builder list -> no comparative rows
    assert "comparative" not in body


def test_bench_cli_limit_comparison(tmp_path):
    out = tmp_path / "r.csv"
    assert main(["bench", "--sizes", "16", "--samples", "1", "--seed", "1",
                 "--out", str(out), "--no-timing", "--limit-comparison"]) == 0
    assert "bump_limit" in out.read_text()
