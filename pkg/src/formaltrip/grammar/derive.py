"""Random-walk derivation of a grammar's sentence tree.

Each level samples up to `branching` frontier nodes uniformly without
replacement and gives each up to `branching` children. A child rewrites
every nonterminal occurrence of its parent's sentential form once, each
with an independently drawn applicable rule (choices drawn left to
right); when a node's rewrite-combination space is no larger than the
branching factor it is enumerated exhaustively instead of sampled.
Terminal children are collected as leaves across all levels.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .cfg import GrammarSpec


class EmptyFrontier(RuntimeError):
    """The grammar produced no terminal string within the depth bound."""


@dataclass
class GenerationConfig:
    depth: int = 40
    branching: int = 200
    sample_count: int = 50
    metric: str = "operator_total"
    batches: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.depth < 1 or self.branching < 1 or self.sample_count < 1:
            raise ValueError("depth, branching, and sample_count must be >= 1")
        if self.batches < 1:
            raise ValueError("batches must be >= 1")


@dataclass
class DerivationNode:
    sentential_form: tuple[str, ...]
    depth: int
    applied_rules: tuple[int, ...] | None = None
    parent: "DerivationNode | None" = field(default=None, repr=False)

    def is_terminal(self, grammar: GrammarSpec) -> bool:
        return not any(sym in grammar.nonterminals for sym in self.sentential_form)

    @property
    def text(self) -> str:
        return " ".join(self.sentential_form)


def grow_tree(
    grammar: GrammarSpec, config: GenerationConfig, rng: random.Random, on_leaf=None
) -> list[DerivationNode] | None:
    """Walk the derivation tree, collecting terminal nodes.

    Returns the leaf list, or None when `on_leaf` is given: large walks
    stream each terminal node into the callback instead of accumulating
    them (memory stays bounded by one level's frontier).
    """
    root = DerivationNode((grammar.start,), 0)
    level: list[DerivationNode] = [root]
    leaves: list[DerivationNode] | None = [] if on_leaf is None else None
    reached = 0
    for _ in range(config.depth):
        if not level:
            break
        sampled = _sample_nodes(level, config.branching, rng)
        next_level: list[DerivationNode] = []
        for node in sampled:
            for child in _expand(node, grammar, config.branching, rng):
                if child.is_terminal(grammar):
                    reached += 1
                    if leaves is not None:
                        leaves.append(child)
                    else:
                        on_leaf(child)
                else:
                    next_level.append(child)
        level = next_level
    if not reached:
        raise EmptyFrontier(
            f"grammar {grammar.id!r} yields no terminal string within depth {config.depth}"
        )
    return leaves


def _sample_nodes(level, n: int, rng: random.Random):
    if len(level) <= n:
        return list(level)
    return rng.sample(level, n)


def _expand(
    node: DerivationNode, grammar: GrammarSpec, n: int, rng: random.Random
) -> list[DerivationNode]:
    form = node.sentential_form
    positions = [i for i, sym in enumerate(form) if sym in grammar.nonterminals]
    if not positions:
        return []
    options = [grammar.rules_for(form[i]) for i in positions]
    total = 1
    for opts in options:
        total *= len(opts)
        if total > n:
            break
    children = []
    if total <= n:
        combos = itertools.product(*options)
    else:
        combos = (
            tuple(rng.choice(opts) for opts in options) for _ in range(n)
        )
    for combo in combos:
        new_form: list[str] = []
        cursor = 0
        for pos, (_, rhs) in zip(positions, combo):
            new_form.extend(form[cursor:pos])
            new_form.extend(rhs)
            cursor = pos + 1
        new_form.extend(form[cursor:])
        children.append(
            DerivationNode(
                tuple(new_form),
                node.depth + 1,
                applied_rules=tuple(ri for ri, _ in combo),
                parent=node,
            )
        )
    return children
