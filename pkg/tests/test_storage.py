from formaltrip.grammar import PROP, GenerationConfig, VocabularyConfig, generate_dataset
from formaltrip.pipeline import Provider, ProviderConfig, load_template_set, run_round_trips
from formaltrip.pipeline.runner import JudgeRecord
from formaltrip import storage


def make_dataset():
    return generate_dataset(
        PROP,
        VocabularyConfig(),
        GenerationConfig(depth=6, branching=20, sample_count=4, batches=2, seed=11),
    )


def test_dataset_round_trips_through_files(tmp_path):
    records, manifest = make_dataset()
    paths = storage.write_dataset(records, manifest, tmp_path)
    batch_files = [p for p in paths if p.suffix == ".jsonl"]
    assert [p.name for p in batch_files] == [
        "prop_operator_total_batch0.jsonl",
        "prop_operator_total_batch1.jsonl",
    ]
    loaded = [r for p in batch_files for r in storage.read_dataset(p)]
    by_id = {r.id: r for r in loaded}
    assert len(by_id) == len(records)
    for original in records:
        clone = by_id[original.id]
        assert clone.expression.ast == original.expression.ast
        assert clone.category_value == original.category_value
        assert clone.vocabulary == original.vocabulary


def test_manifest_contents(tmp_path):
    records, manifest = make_dataset()
    paths = storage.write_dataset(records, manifest, tmp_path)
    manifest_path = paths[-1]
    import json

    data = json.loads(manifest_path.read_text())
    assert data["grammar_id"] == "prop"
    assert data["total"] == len(records)
    assert sum(c["sampled"] for c in data["categories"].values()) == len(records)


def test_result_file_round_trip(tmp_path):
    records, _ = make_dataset()
    provider = Provider(ProviderConfig(kind="perfect_oracle"))
    results = run_round_trips(records[:5], provider, load_template_set("prop", 0))
    header = storage.result_header("perfect-oracle", {"x": 1}, None, True)
    path = tmp_path / "results.jsonl"
    with storage.ResultWriter(path, header) as writer:
        for r in results:
            writer.write(storage.round_trip_to_json(r))
    loaded_header, loaded = storage.read_results(path)
    assert loaded_header["model"] == "perfect-oracle"
    assert loaded_header["started_at"] is None
    assert [r.record_id for r in loaded] == [r.record_id for r in results]
    assert loaded[0].verdict_status == "equivalent"


def test_judge_file_round_trip(tmp_path):
    header = storage.result_header("m", {}, None, True)
    rec = JudgeRecord(
        pair_id="a", formalism="prop", formula1="p1", formula2="p1",
        ground_truth="equivalent", answer="yes", reply="[Answer] yes",
    )
    path = tmp_path / "judge.jsonl"
    with storage.ResultWriter(path, header) as writer:
        writer.write(storage.judge_to_json(rec))
    _, loaded = storage.read_judge_results(path)
    assert loaded == [rec]


def test_resume_skips_existing_ids(tmp_path):
    header = storage.result_header("m", {"k": 1}, None, True)
    path = tmp_path / "results.jsonl"
    records, _ = make_dataset()
    provider = Provider(ProviderConfig(kind="perfect_oracle"))
    results = run_round_trips(records[:4], provider, load_template_set("prop", 0))
    with storage.ResultWriter(path, header) as writer:
        for r in results[:2]:
            writer.write(storage.round_trip_to_json(r))
    with storage.ResultWriter(path, header, resume=True) as writer:
        assert writer.existing_ids == {results[0].record_id, results[1].record_id}
        for r in results[2:]:
            writer.write(storage.round_trip_to_json(r))
    _, loaded = storage.read_results(path)
    assert [r.record_id for r in loaded] == [r.record_id for r in results]


def test_resume_rejects_changed_config(tmp_path):
    path = tmp_path / "results.jsonl"
    with storage.ResultWriter(path, storage.result_header("m", {"k": 1}, None, True)):
        pass
    import pytest

    with pytest.raises(ValueError):
        storage.ResultWriter(path, storage.result_header("m", {"k": 2}, None, True), resume=True)


def test_config_hash_changes_only_with_semantics():
    a = storage.config_hash({"provider": {"kind": "x"}, "shots": 0})
    b = storage.config_hash({"provider": {"kind": "x"}, "shots": 0})
    c = storage.config_hash({"provider": {"kind": "x"}, "shots": 2})
    assert a == b != c


def test_dumps_is_stable():
    assert storage.dumps({"b": 1, "a": [1, 2]}) == '{"a": [1,2],"b": 1}'
