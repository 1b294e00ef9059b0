"""AST node types for the three formalisms.

All nodes are frozen dataclasses so structural equality and hashing come
for free; children are stored as tuples. Logic connectives (Not/And/Or)
are shared between propositional and first-order matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

FORALL = "forall"
EXISTS = "exists"

PROP = "prop"
FOL = "fol"
REGEX = "regex"

FORMALISMS = (PROP, FOL, REGEX)


# ---------------------------------------------------------------------------
# logic nodes (shared by prop and fol)

@dataclass(frozen=True)
class Proposition:
    name: str


@dataclass(frozen=True)
class Atom:
    predicate: str
    terms: tuple["Term", ...]


@dataclass(frozen=True)
class Constant:
    name: str


@dataclass(frozen=True)
class Variable:
    name: str


Term = Constant | Variable


@dataclass(frozen=True)
class Not:
    child: "LogicNode"


@dataclass(frozen=True)
class And:
    children: tuple["LogicNode", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("And requires at least 2 children")


@dataclass(frozen=True)
class Or:
    children: tuple["LogicNode", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("Or requires at least 2 children")


@dataclass(frozen=True)
class Quantified:
    """A quantifier block appearing inside a matrix (non-prenex input)."""

    kind: str  # FORALL | EXISTS
    variables: tuple[str, ...]
    body: "LogicNode"


LogicNode = Proposition | Atom | Not | And | Or | Quantified

PropFormula = LogicNode  # Proposition leaves, no Atom/Quantified


@dataclass(frozen=True)
class FolFormula:
    """Quantifier prefix plus matrix.

    Machine-generated formulas are prenex (empty of Quantified nodes in the
    matrix); parsed LLM output may nest quantifiers, tracked by `prenex`.
    """

    prefix: tuple[tuple[str, tuple[str, ...]], ...]
    matrix: LogicNode

    @property
    def prenex(self) -> bool:
        return not _has_quantifier(self.matrix)

    @staticmethod
    def from_matrix(matrix: LogicNode) -> "FolFormula":
        """Hoist a leading Quantified chain into the prefix."""
        prefix: list[tuple[str, tuple[str, ...]]] = []
        while isinstance(matrix, Quantified):
            prefix.append((matrix.kind, matrix.variables))
            matrix = matrix.body
        return FolFormula(prefix=tuple(prefix), matrix=matrix)


def _has_quantifier(node: LogicNode) -> bool:
    if isinstance(node, Quantified):
        return True
    if isinstance(node, Not):
        return _has_quantifier(node.child)
    if isinstance(node, (And, Or)):
        return any(_has_quantifier(c) for c in node.children)
    return False


# ---------------------------------------------------------------------------
# regex nodes

@dataclass(frozen=True)
class Literal:
    symbol: str


@dataclass(frozen=True)
class Concat:
    children: tuple["RegexAst", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("Concat requires at least 2 children")


@dataclass(frozen=True)
class Star:
    child: "RegexAst"


RegexAst = Literal | Concat | Star


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FormalExpression:
    """An expression in one of the three formalisms with its canonical text.

    canonical_text is the fixed point of print-then-parse: reparsing it
    yields a structurally identical AST.
    """

    formalism: str
    ast: PropFormula | FolFormula | RegexAst
    canonical_text: str


@dataclass
class ComplexityProfile:
    """Operator counts plus optional derivation/automaton measures."""

    operator_total: int = 0
    and_count: int = 0
    or_count: int = 0
    not_count: int = 0
    cfg_depth: int | None = None
    dfa_nodes: int | None = None
    dfa_edges: int | None = None
    dfa_density: float | None = None

    def value(self, metric: str) -> int | float:
        v = getattr(self, metric)
        if v is None:
            raise ValueError(f"metric {metric!r} not available on this profile")
        return v


def flatten_and(children) -> And:
    return And(tuple(_splice(children, And)))


def flatten_or(children) -> Or:
    return Or(tuple(_splice(children, Or)))


def _splice(children, cls):
    out = []
    for c in children:
        if isinstance(c, cls):
            out.extend(_splice(c.children, cls))
        else:
            out.append(c)
    return out
