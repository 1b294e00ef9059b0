"""The FS -> NL -> FS round trip and the LLM-as-judge query.

Interpretation and compilation are two independent single-turn requests
with no shared conversation state; the only channel between them is the
natural-language description itself. Verification happens locally with
the matching built-in verifier.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..grammar.dataset import DatasetRecord
from ..syntax import FormalExpression, NonCompliant, extract_formal
from ..verify import ProverBudget, verify_pair
from ..verify.fol import FiniteModel
from ..verify.verdict import EquivalenceVerdict, Status
from .providers import Provider, ProviderError, TransportError
from .templates import (
    TemplateSet,
    compile_context,
    interpret_context,
    judge_context,
    render_prompt,
)


@dataclass
class RoundTripRecord:
    record_id: str
    formalism: str
    grammar_id: str
    batch_index: int
    category_metric: str
    category_value: int | float
    expression: str  # source canonical text
    model: str
    cfg_depth: int = 0
    alphabet: list[str] | None = None
    prompt_ids: list[str] = field(default_factory=list)
    interpretation: str = ""
    raw_reply: str = ""
    parsed: str | None = None
    noncompliant_reason: str | None = None
    verdict_status: str | None = None
    verdict_witness: object = None
    verdict_reason: str | None = None
    error: str | None = None
    timings: dict = field(default_factory=dict)
    tokens: dict = field(default_factory=dict)

    @property
    def compliant(self) -> bool:
        return self.parsed is not None

    @property
    def errored(self) -> bool:
        return self.error is not None


@dataclass
class JudgeRecord:
    pair_id: str
    formalism: str
    formula1: str
    formula2: str
    ground_truth: str  # equivalent | not_equivalent
    answer: str = "unparseable"  # yes | no | unparseable
    reply: str = ""
    error: str | None = None


def witness_payload(verdict: EquivalenceVerdict):
    w = verdict.witness
    if isinstance(w, FiniteModel):
        return {
            "domain_size": w.domain_size,
            "constants": dict(w.constants),
            "predicates": {k: sorted(map(list, v)) for k, v in w.predicates.items()},
        }
    return w


def round_trip(
    record: DatasetRecord,
    provider: Provider,
    templates: TemplateSet,
    budget: ProverBudget | None = None,
) -> RoundTripRecord:
    out = RoundTripRecord(
        record_id=record.id,
        formalism=record.formalism,
        grammar_id=record.grammar_id,
        batch_index=record.batch_index,
        category_metric=record.category_metric,
        category_value=record.category_value,
        expression=record.expression.canonical_text,
        model=provider.config.model,
        cfg_depth=record.cfg_depth,
        alphabet=sorted(record.vocabulary.get("alphabet", ()))
        if record.formalism == "regex"
        else None,
        prompt_ids=[templates.interpret.id, templates.compile.id],
    )
    deterministic = provider.config.deterministic
    try:
        interpret_prompt = render_prompt(templates.interpret, interpret_context(record.expression))
        t0 = time.monotonic()
        interpretation = provider.complete(interpret_prompt)
        out.interpretation = interpretation.text
        out.timings["interpret_seconds"] = 0.0 if deterministic else round(time.monotonic() - t0, 6)
        if interpretation.prompt_tokens is not None:
            out.tokens["interpret_prompt"] = interpretation.prompt_tokens
            out.tokens["interpret_completion"] = interpretation.completion_tokens

        compile_prompt = render_prompt(templates.compile, compile_context(out.interpretation))
        t0 = time.monotonic()
        reply = provider.complete(compile_prompt)
        out.raw_reply = reply.text
        out.timings["compile_seconds"] = 0.0 if deterministic else round(time.monotonic() - t0, 6)
        if reply.prompt_tokens is not None:
            out.tokens["compile_prompt"] = reply.prompt_tokens
            out.tokens["compile_completion"] = reply.completion_tokens
    except (ProviderError, ValueError) as e:
        out.error = f"{type(e).__name__}: {e}"
        return out

    alphabet = _record_alphabet(record)
    extracted = extract_formal(out.raw_reply, record.formalism, alphabet)
    if isinstance(extracted, NonCompliant):
        out.noncompliant_reason = extracted.reason
        return out
    out.parsed = extracted.canonical_text

    t0 = time.monotonic()
    verdict = verify_pair(
        record.formalism,
        record.expression.ast,
        extracted.ast,
        budget=budget,
        alphabet=alphabet or (),
    )
    out.timings["verify_seconds"] = 0.0 if deterministic else round(time.monotonic() - t0, 6)
    out.verdict_status = verdict.status.value
    out.verdict_witness = witness_payload(verdict)
    out.verdict_reason = verdict.reason
    return out


def _record_alphabet(record: DatasetRecord):
    if record.formalism != "regex":
        return None
    return set(record.vocabulary.get("alphabet", ()))


def parse_judge_answer(reply: str) -> str:
    """Last yes/no after the final [Answer] marker, case-insensitive."""
    import re

    markers = list(re.finditer(r"\[answer\]", reply, re.IGNORECASE))
    if not markers:
        return "unparseable"
    tail = reply[markers[-1].end():]
    m = re.search(r"\b(yes|no)\b", tail, re.IGNORECASE)
    return m.group(1).lower() if m else "unparseable"


def judge(
    pair_id: str,
    formalism: str,
    formula1: str,
    formula2: str,
    ground_truth: str,
    provider: Provider,
    template,
) -> JudgeRecord:
    out = JudgeRecord(
        pair_id=pair_id,
        formalism=formalism,
        formula1=formula1,
        formula2=formula2,
        ground_truth=ground_truth,
    )
    try:
        prompt = render_prompt(template, judge_context(formula1, formula2))
        reply = provider.complete(prompt)
    except (ProviderError, ValueError) as e:
        out.error = f"{type(e).__name__}: {e}"
        return out
    out.reply = reply.text
    out.answer = parse_judge_answer(reply.text)
    return out


def run_round_trips(
    records: list[DatasetRecord],
    provider: Provider,
    templates: TemplateSet,
    budget: ProverBudget | None = None,
    width: int = 1,
    skip_ids: set[str] | None = None,
    on_record=None,
) -> list[RoundTripRecord]:
    """Execute round trips, emitting results in dataset order.

    With width > 1 completions run concurrently but results are still
    delivered (and written by on_record) in submission order.
    """
    todo = [r for r in records if not skip_ids or r.id not in skip_ids]
    results: list[RoundTripRecord] = []
    if width <= 1:
        for record in todo:
            result = round_trip(record, provider, templates, budget)
            results.append(result)
            if on_record:
                on_record(result)
        return results
    with ThreadPoolExecutor(max_workers=width) as pool:
        futures = [
            pool.submit(round_trip, record, provider, templates, budget)
            for record in todo
        ]
        for future in futures:
            result = future.result()
            results.append(result)
            if on_record:
                on_record(result)
    return results
