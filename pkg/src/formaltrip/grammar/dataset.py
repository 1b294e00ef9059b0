"""Balanced dataset assembly: categorize leaves, sample per category,
instantiate, and split round-robin into batches.

Operator counts and derivation depth are computable on raw leaves, so
those metrics group before instantiation (sampling then instantiating
only what is kept). Automaton metrics exist only after symbols are drawn,
so the dfa_* metrics instantiate every leaf first and group afterwards.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from ..syntax import FormalExpression, complexity
from ..verify.regex import compile_regex, dfa_metrics
from .cfg import GrammarSpec, infer_formalism
from .derive import DerivationNode, GenerationConfig, grow_tree
from .vocab import RealizedVocabulary, VocabularyConfig, instantiate, realize_vocabulary

logger = logging.getLogger(__name__)

PRE_INSTANTIATION_METRICS = (
    "operator_total",
    "and_count",
    "or_count",
    "not_count",
    "cfg_depth",
)
DFA_METRICS = ("dfa_nodes", "dfa_edges", "dfa_density")
ALL_METRICS = PRE_INSTANTIATION_METRICS + DFA_METRICS


@dataclass
class DatasetRecord:
    id: str
    formalism: str
    grammar_id: str
    batch_index: int
    category_metric: str
    category_value: int | float
    expression: FormalExpression
    cfg_depth: int
    vocabulary: dict
    seed: int


@dataclass
class DatasetManifest:
    grammar_id: str
    metric: str
    seed: int
    batches: int
    total: int
    categories: dict  # value -> {"available": n, "sampled": m}
    warnings: list[str] = field(default_factory=list)
    config: dict = field(default_factory=dict)


def leaf_metric_value(leaf: DerivationNode, metric: str) -> int:
    if metric == "cfg_depth":
        return leaf.depth
    counts = {"and_count": "∧", "or_count": "∨", "not_count": "¬"}
    if metric in counts:
        return sum(1 for s in leaf.sentential_form if s == counts[metric])
    if metric == "operator_total":
        # logic counts connectives; the regex grammar's only operator is star
        return sum(1 for s in leaf.sentential_form if s in ("∧", "∨", "¬", "*"))
    raise ValueError(f"metric {metric!r} is not leaf-computable")


def expression_metric_value(
    expr: FormalExpression, metric: str, cfg_depth: int, alphabet
) -> int | float:
    if metric == "cfg_depth":
        return cfg_depth
    if metric in DFA_METRICS:
        m = dfa_metrics(compile_regex(expr.ast, alphabet))
        return {
            "dfa_nodes": m.node_count,
            "dfa_edges": m.edge_count,
            "dfa_density": m.density,
        }[metric]
    profile = complexity(expr, cfg_depth=cfg_depth)
    return profile.value(metric)


def generate_dataset(
    grammar: GrammarSpec,
    vocab_config: VocabularyConfig,
    gen_config: GenerationConfig,
) -> tuple[list[DatasetRecord], DatasetManifest]:
    if gen_config.metric not in ALL_METRICS:
        raise ValueError(f"unknown categorization metric {gen_config.metric!r}")
    formalism = infer_formalism(grammar)
    if gen_config.metric in DFA_METRICS and formalism != "regex":
        raise ValueError("dfa metrics apply to the regex formalism only")

    rng = random.Random(gen_config.seed)
    realized = realize_vocabulary(vocab_config, rng)
    metric = gen_config.metric
    quota = gen_config.sample_count

    # per-category uniform reservoirs over the leaf stream: same distribution
    # as grouping every leaf and then sampling, but memory stays bounded at
    # quota items per category even for deep, wide walks
    reservoirs: dict = {}
    available: dict = {}

    if metric in PRE_INSTANTIATION_METRICS:
        def on_leaf(leaf: DerivationNode):
            value = leaf_metric_value(leaf, metric)
            _reservoir_add(reservoirs, available, value, leaf, quota, rng)
    else:
        def on_leaf(leaf: DerivationNode):
            expr = instantiate(leaf, realized, vocab_config, rng, formalism)
            value = expression_metric_value(expr, metric, leaf.depth, realized.alphabet)
            _reservoir_add(reservoirs, available, value, (expr, leaf.depth), quota, rng)

    grow_tree(grammar, gen_config, rng, on_leaf=on_leaf)

    picked: list[tuple[int | float, FormalExpression, int]] = []
    categories: dict = {}
    warnings: list[str] = []
    for value in sorted(reservoirs):
        chosen = reservoirs[value]
        take = len(chosen)
        if take < quota:
            msg = (
                f"category {metric}={value}: only {take} of "
                f"{quota} requested samples available"
            )
            warnings.append(msg)
            logger.warning(msg)
        categories[value] = {"available": available[value], "sampled": take}
        for item in chosen:
            if metric in PRE_INSTANTIATION_METRICS:
                expr = instantiate(item, realized, vocab_config, rng, formalism)
                recomputed = expression_metric_value(
                    expr, metric, item.depth, realized.alphabet
                )
                if recomputed != value:
                    raise AssertionError(
                        f"metric drifted during instantiation: {value} -> {recomputed}"
                    )
                picked.append((value, expr, item.depth))
            else:
                expr, depth = item
                picked.append((value, expr, depth))

    records: list[DatasetRecord] = []
    snapshot = realized.snapshot()
    for i, (value, expr, depth) in enumerate(picked):
        records.append(
            DatasetRecord(
                id=f"{grammar.id}-{metric}-{_slug(value)}-{i:05d}",
                formalism=formalism,
                grammar_id=grammar.id,
                batch_index=i % gen_config.batches,
                category_metric=metric,
                category_value=value,
                expression=expr,
                cfg_depth=depth,
                vocabulary=snapshot,
                seed=gen_config.seed,
            )
        )
    manifest = DatasetManifest(
        grammar_id=grammar.id,
        metric=metric,
        seed=gen_config.seed,
        batches=gen_config.batches,
        total=len(records),
        categories=categories,
        warnings=warnings,
        config={
            "depth": gen_config.depth,
            "branching": gen_config.branching,
            "sample_count": gen_config.sample_count,
            "vocabulary": snapshot,
        },
    )
    return records, manifest


def _slug(value) -> str:
    return str(value).replace(".", "_")
