"""ASTs, parsers, printers, complexity measures, and LLM-output extraction."""

from .complexity import complexity
from .extract import NonCompliant, extract_formal
from .nodes import (
    EXISTS,
    FOL,
    FORALL,
    FORMALISMS,
    PROP,
    REGEX,
    And,
    Atom,
    ComplexityProfile,
    Concat,
    Constant,
    FolFormula,
    FormalExpression,
    Literal,
    LogicNode,
    Not,
    Or,
    PropFormula,
    Proposition,
    Quantified,
    RegexAst,
    Star,
    Variable,
    flatten_and,
    flatten_or,
)
from .parse import ArityError, ParseError, parse_fol, parse_prop, parse_regex
from .printer import canonical_text, make_expression, print_canonical
from .simplify import simplify_expression

__all__ = [
    "EXISTS", "FOL", "FORALL", "FORMALISMS", "PROP", "REGEX",
    "And", "ArityError", "Atom", "ComplexityProfile", "Concat", "Constant",
    "FolFormula", "FormalExpression", "Literal", "LogicNode", "NonCompliant",
    "Not", "Or", "ParseError", "PropFormula", "Proposition", "Quantified",
    "RegexAst", "Star", "Variable", "canonical_text", "complexity",
    "extract_formal", "flatten_and", "flatten_or", "make_expression",
    "parse_expression", "parse_fol", "parse_prop", "parse_regex",
    "print_canonical", "simplify_expression",
]


def parse_expression(formalism: str, text: str, alphabet=None) -> FormalExpression:
    """Parse canonical or user text in the given formalism."""
    if formalism == PROP:
        return make_expression(PROP, parse_prop(text))
    if formalism == FOL:
        return make_expression(FOL, parse_fol(text))
    if formalism == REGEX:
        return make_expression(REGEX, parse_regex(text, alphabet))
    raise ValueError(f"unknown formalism {formalism!r}")
