"""Equivalence verifiers for the three formalisms plus the shared verdict."""

from .fol import (
    FiniteModel,
    ProverBudget,
    clausify,
    equivalent_fol,
    eval_in_model,
    find_countermodel,
    resolution_refute,
    universal_closure,
)
from .prop import Assignment, MissingVariable, equivalent_prop, eval_prop
from .regex import (
    AlphabetMismatch,
    CanonicalDfa,
    Dfa,
    DfaMetrics,
    Nfa,
    compile_regex,
    determinize_minimize,
    dfa_metrics,
    equivalent_regex,
    export_edge_list,
    nfa_accepts,
    to_nfa,
)
from .verdict import EquivalenceVerdict, Status, equivalent, not_equivalent, unknown

__all__ = [
    "AlphabetMismatch", "Assignment", "CanonicalDfa", "Dfa", "DfaMetrics",
    "EquivalenceVerdict", "FiniteModel", "MissingVariable", "Nfa",
    "ProverBudget", "Status", "clausify", "compile_regex",
    "determinize_minimize", "dfa_metrics", "equivalent", "equivalent_fol",
    "equivalent_prop", "equivalent_regex", "eval_in_model", "eval_prop",
    "export_edge_list", "find_countermodel", "nfa_accepts", "not_equivalent",
    "resolution_refute", "to_nfa", "universal_closure", "unknown",
]


def verify_pair(formalism: str, left, right, budget: ProverBudget | None = None,
                alphabet=()) -> EquivalenceVerdict:
    """Dispatch to the matching verifier for two parsed ASTs."""
    if formalism == "prop":
        return equivalent_prop(left, right)
    if formalism == "fol":
        return equivalent_fol(left, right, budget)
    if formalism == "regex":
        return equivalent_regex(left, right, alphabet)
    raise ValueError(f"unknown formalism {formalism!r}")
