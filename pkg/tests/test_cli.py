import json
from pathlib import Path

import pytest

from formaltrip.cli import main


def run_cli(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def dataset_dir(tmp_path):
    out = tmp_path / "ds"
    code = run_cli(
        "generate", "--grammar", "prop", "--depth", "6", "--branching", "20",
        "--sample-count", "4", "--batches", "2", "--seed", "11",
        "--output-dir", out,
    )
    assert code == 0
    return out


def test_generate_writes_batches_and_manifest(dataset_dir):
    names = sorted(p.name for p in dataset_dir.iterdir())
    assert names == [
        "prop_operator_total_batch0.jsonl",
        "prop_operator_total_batch1.jsonl",
        "prop_operator_total_manifest.json",
    ]
    manifest = json.loads((dataset_dir / "prop_operator_total_manifest.json").read_text())
    assert manifest["total"] > 0


def test_generate_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run_cli(
            "generate", "--grammar", "regex", "--depth", "4", "--branching", "10",
            "--sample-count", "3", "--batches", "2", "--alphabet-size", "1",
            "--seed", "5", "--output-dir", out,
        ) == 0
    for name in ("regex_cfg_depth_batch0.jsonl", "regex_cfg_depth_batch1.jsonl"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_custom_grammar_file(tmp_path):
    rules = tmp_path / "toy.cfg"
    rules.write_text("S -> ( S ∧ S )\nS -> v\n")
    out = tmp_path / "ds"
    code = run_cli(
        "generate", "--grammar", rules, "--depth", "4", "--branching", "10",
        "--sample-count", "2", "--batches", "1", "--seed", "3", "--output-dir", out,
    )
    assert code == 0
    # grammar id comes from the file stem; placeholder v resolves to propositions
    rows = (out / "toy_operator_total_batch0.jsonl").read_text().splitlines()
    assert rows and all('"formalism": "toy"' not in r for r in rows)


def test_run_report_verify_loop(dataset_dir, tmp_path, capsys):
    run_dir = tmp_path / "run"
    code = run_cli(
        "run", "--provider", "perfect-oracle",
        "--dataset", dataset_dir / "prop_operator_total_batch0.jsonl",
        dataset_dir / "prop_operator_total_batch1.jsonl",
        "--output-dir", run_dir,
    )
    assert code == 0
    results = sorted(run_dir.glob("results_*.jsonl"))
    assert len(results) == 2

    code = run_cli(
        "report", "--results", *results, "--output-dir", run_dir,
    )
    assert code == 0
    summary = json.loads((run_dir / "summary.json").read_text())
    assert summary["compliance"] == 1.0
    assert summary["accuracy"] == 1.0
    assert (run_dir / "summary_categories.csv").read_text().startswith(
        "metric_value,samples,compliance,accuracy,unknown_rate"
    )


def test_resume_completes_missing_records(dataset_dir, tmp_path):
    run_dir = tmp_path / "run"
    batch = dataset_dir / "prop_operator_total_batch0.jsonl"
    assert run_cli("run", "--provider", "perfect-oracle", "--dataset", batch,
                   "--output-dir", run_dir) == 0
    result = next(run_dir.glob("results_*.jsonl"))
    full = result.read_text().splitlines()
    # truncate to simulate an interrupt, then resume
    result.write_text("\n".join(full[: 1 + len(full) // 2]) + "\n")
    assert run_cli("run", "--provider", "perfect-oracle", "--dataset", batch,
                   "--resume", "--output-dir", run_dir) == 0
    resumed = result.read_text().splitlines()
    assert len(resumed) == len(full)
    ids = [json.loads(r)["record_id"] for r in resumed[1:]]
    assert len(ids) == len(set(ids))


def test_judge_subcommand(dataset_dir, tmp_path):
    run_dir = tmp_path / "run"
    batch = dataset_dir / "prop_operator_total_batch0.jsonl"
    assert run_cli("run", "--provider", "perfect-oracle", "--dataset", batch,
                   "--output-dir", run_dir) == 0
    result = next(run_dir.glob("results_*.jsonl"))
    assert run_cli("judge", "--provider", "perfect-oracle", "--results", result,
                   "--balance", "--output-dir", run_dir) == 0
    judge_file = next(run_dir.glob("judge_*.jsonl"))
    rows = [json.loads(r) for r in judge_file.read_text().splitlines()[1:]]
    assert rows
    # balanced positives are textually distinct pairs with equivalent truth
    positives = [r for r in rows if r["pair_id"].endswith("#pos")]
    for row in positives:
        assert row["formula1"] != row["formula2"]
        assert row["ground_truth"] == "equivalent"
    assert run_cli("report", "--results", result, "--judge-results", judge_file,
                   "--output-dir", run_dir) == 0
    summary = json.loads((run_dir / "summary.json").read_text())
    assert summary["judge"]["f1"] == 1.0


@pytest.mark.parametrize(
    "formalism,left,right,expected",
    [
        ("prop", "¬(p1 ∧ p2)", "¬p1 ∨ ¬p2", 0),
        ("regex", "1*11*", "1*1*1*", 1),
        ("fol", "∀x. pred1(x)", "∀x. pred1(x)", 0),
    ],
)
def test_verify_exit_codes(formalism, left, right, expected):
    assert run_cli("verify", formalism, left, right) == expected


def test_report_on_missing_files_fails(tmp_path):
    assert run_cli("report", "--results", tmp_path / "nope*.jsonl") == 3


def test_generate_rejects_bad_params(tmp_path):
    assert run_cli(
        "generate", "--grammar", "prop", "--depth", "0", "--output-dir", tmp_path
    ) == 3


def test_report_rebucket_by_flag(tmp_path):
    ds = tmp_path / "ds"
    assert run_cli(
        "generate", "--grammar", "regex", "--depth", "5", "--branching", "20",
        "--sample-count", "4", "--batches", "1", "--seed", "9", "--output-dir", ds,
    ) == 0
    run_dir = tmp_path / "run"
    assert run_cli(
        "run", "--provider", "perfect-oracle",
        "--dataset", ds / "regex_cfg_depth_batch0.jsonl", "--output-dir", run_dir,
    ) == 0
    result = next(run_dir.glob("results_*.jsonl"))
    assert run_cli(
        "report", "--results", result, "--by", "dfa_density", "--output-dir", run_dir
    ) == 0
    summary = json.loads((run_dir / "summary.json").read_text())
    assert summary["category_metric"] == "dfa_density"
    # density buckets land on tenths
    for value in summary["categories"]:
        assert float(value) == round(float(value), 1)
    assert run_cli(
        "report", "--results", result, "--by", "operator_total", "--output-dir", run_dir
    ) == 0
    summary2 = json.loads((run_dir / "summary.json").read_text())
    assert summary2["category_metric"] == "operator_total"


def test_verify_unknown_exit_code(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({
        "budgets": {"max_clauses": 1, "max_seconds": 0.05, "max_model_domain": 1}
    }))
    code = run_cli(
        "verify", "fol",
        "∀x. (pred1(x) ∧ pred2(x))", "(∀x. pred1(x)) ∧ (∀y. pred2(y))",
        "--config", config,
    )
    assert code == 2


def test_verify_reads_files(tmp_path):
    left = tmp_path / "left.txt"
    right = tmp_path / "right.txt"
    left.write_text("¬(p1 ∧ p2)\n")
    right.write_text("¬p1 ∨ ¬p2\n")
    assert run_cli("verify", "prop", f"@{left}", f"@{right}") == 0
