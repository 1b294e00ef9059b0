import json

import pytest

from formaltrip.grammar import (
    FOL,
    PROP,
    REGEX,
    GenerationConfig,
    VocabularyConfig,
    generate_dataset,
)
from formaltrip.pipeline import (
    Provider,
    ProviderConfig,
    load_template,
    load_template_set,
    parse_judge_answer,
    prompt_hash,
    render_prompt,
    round_trip,
    run_round_trips,
)
from formaltrip.pipeline.runner import judge
from formaltrip.pipeline.templates import interpret_context, compile_context


def dataset(grammar=PROP, vocab=None, **kwargs):
    config = dict(depth=6, branching=20, sample_count=4, batches=2, seed=11)
    config.update(kwargs)
    if grammar.id == "regex":
        config.setdefault("metric", "cfg_depth")
    records, _ = generate_dataset(grammar, vocab or VocabularyConfig(), GenerationConfig(**config))
    return records


def oracle():
    return Provider(ProviderConfig(kind="perfect_oracle"))


def test_round_trip_verdict_equivalent():
    records = dataset()
    templates = load_template_set("prop", 0)
    out = round_trip(records[0], oracle(), templates)
    assert out.compliant
    assert out.verdict_status == "equivalent"
    assert out.prompt_ids == ["prop/interpret/0shot", "prop/compile/0shot"]
    assert out.timings["interpret_seconds"] == 0.0  # deterministic provider


def test_round_trip_is_context_isolated():
    captured = []

    class SpyProvider(Provider):
        def complete(self, prompt):
            captured.append(prompt)
            return super().complete(prompt)

    records = dataset()
    record = next(r for r in records if r.category_value >= 2)
    templates = load_template_set("prop", 0)
    spy = SpyProvider(ProviderConfig(kind="perfect_oracle"))
    round_trip(record, spy, templates)
    interpret_prompt, compile_prompt = captured
    assert record.expression.canonical_text in interpret_prompt
    # the compile request carries neither the interpret prompt nor the source text
    assert record.expression.canonical_text not in compile_prompt
    assert "[TASK]\nYour task is to convert" not in compile_prompt


def test_perfect_oracle_on_all_formalisms():
    for grammar, formalism in ((PROP, "prop"), (FOL, "fol"), (REGEX, "regex")):
        records = dataset(grammar)
        templates = load_template_set(formalism, 0)
        results = run_round_trips(records[:30], oracle(), templates)
        assert all(r.verdict_status == "equivalent" for r in results)
        assert all(r.compliant for r in results)


def test_noncompliant_reply_short_circuits():
    records = dataset()
    templates = load_template_set("prop", 0)
    provider = oracle()
    interpret_prompt = render_prompt(
        templates.interpret, interpret_context(records[0].expression)
    )
    description = provider.complete(interpret_prompt).text
    compile_prompt = render_prompt(templates.compile, compile_context(description))
    fixtures = [
        {"prompt_sha256": prompt_hash(interpret_prompt), "reply": description},
        {"prompt_sha256": prompt_hash(compile_prompt), "reply": "I cannot help with that."},
    ]
    import tempfile, pathlib

    with tempfile.TemporaryDirectory() as td:
        path = pathlib.Path(td) / "fx.jsonl"
        path.write_text("\n".join(json.dumps(f) for f in fixtures) + "\n")
        replay = Provider(
            ProviderConfig(kind="scripted_replay", fixtures_path=str(path))
        )
        out = round_trip(records[0], replay, templates)
    assert not out.compliant
    assert out.verdict_status is None
    assert out.noncompliant_reason


def test_transport_error_recorded_not_raised():
    records = dataset()
    templates = load_template_set("prop", 0)
    replay = Provider(ProviderConfig(kind="scripted_replay", fixtures_path=""))
    out = round_trip(records[0], replay, templates)
    assert out.errored
    assert out.verdict_status is None


def test_concurrent_results_keep_dataset_order():
    records = dataset()
    templates = load_template_set("prop", 0)
    sequential = run_round_trips(records, oracle(), templates, width=1)
    concurrent = run_round_trips(records, oracle(), templates, width=8)
    assert [r.record_id for r in sequential] == [r.record_id for r in concurrent]


def test_skip_ids_resume_semantics():
    records = dataset()
    templates = load_template_set("prop", 0)
    done = {records[0].id, records[2].id}
    results = run_round_trips(records, oracle(), templates, skip_ids=done)
    assert {r.record_id for r in results} == {r.id for r in records} - done


@pytest.mark.parametrize(
    "reply,expected",
    [
        ("reasoning...\n[Answer] yes", "yes"),
        ("...[Answer]: No.", "no"),
        ("[answer]  YES indeed", "yes"),
        ("first [Answer] yes then [Answer] no", "no"),
        ("no marker at all", "unparseable"),
        ("[Answer] maybe", "unparseable"),
    ],
)
def test_judge_answer_parsing(reply, expected):
    assert parse_judge_answer(reply) == expected


def test_judge_with_oracle_matches_ground_truth():
    template = load_template("prop", "judge_cot")
    rec = judge(
        "pair-1", "prop", "¬(p1 ∧ p2)", "¬p1 ∨ ¬p2", "equivalent", oracle(), template
    )
    assert rec.answer == "yes"
    rec2 = judge(
        "pair-2", "prop", "p1 ∧ p2", "p1 ∨ p2", "not_equivalent", oracle(), template
    )
    assert rec2.answer == "no"


def test_few_shot_round_trip_with_oracle():
    for grammar, formalism in ((PROP, "prop"), (FOL, "fol"), (REGEX, "regex")):
        records = dataset(grammar)
        templates = load_template_set(formalism, 2)
        results = run_round_trips(records[:10], oracle(), templates)
        assert all(r.verdict_status == "equivalent" for r in results)
        assert results[0].prompt_ids == [
            f"{formalism}/interpret/2shot",
            f"{formalism}/compile/2shot",
        ]
