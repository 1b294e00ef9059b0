"""Recover a formal expression from free-form LLM output.

Replies commonly explain first and put the formula at the end, possibly in
a code fence or after a colon. Candidate lines are scanned bottom-up; each
line is tried whole, then its word windows longest-first, guarded so that
plain prose never misparses as a bare one-token "formula".
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .nodes import FormalExpression
from .parse import ParseError, parse_fol, parse_prop, parse_regex
from .printer import make_expression


@dataclass(frozen=True)
class NonCompliant:
    """No formal expression could be recovered; carries the parse error."""

    reason: str


_FENCE = re.compile(r"^\s*```[\w-]*\s*$")
_LATEX_MAP = {
    r"\land": "∧", r"\wedge": "∧", r"\lor": "∨", r"\vee": "∨",
    r"\neg": "¬", r"\lnot": "¬", r"\forall": "∀", r"\exists": "∃",
    r"\ast": "*", r"\cdot": "",
}
# typographic lookalikes seen in model output
_GLYPH_MAP = {"∗": "*", "⋆": "*", " ": " "}

_WINDOW_SCAN_LIMIT = 60  # words; longer lines fall back to suffix/prefix scan


def _clean(text: str) -> str:
    for src, dst in _LATEX_MAP.items():
        text = text.replace(src, dst)
    for src, dst in _GLYPH_MAP.items():
        text = text.replace(src, dst)
    return text.replace("$", " ").replace("`", " ")


def _parse(formalism: str, text: str, alphabet):
    if formalism == "prop":
        return parse_prop(text)
    if formalism == "fol":
        return parse_fol(text)
    if formalism == "regex":
        return parse_regex(text, alphabet)
    raise ValueError(f"unknown formalism {formalism!r}")


def extract_formal(
    text: str, formalism: str, alphabet: set[str] | None = None
) -> FormalExpression | NonCompliant:
    """Parse an LLM reply into a FormalExpression, or report non-compliance."""
    cleaned = _clean(text)
    first_error: ParseError | None = None

    whole = cleaned.strip()
    try:
        return make_expression(formalism, _parse(formalism, whole, alphabet))
    except ParseError as e:
        first_error = e

    lines = [ln for ln in cleaned.splitlines() if ln.strip() and not _FENCE.match(ln)]
    for line in reversed(lines):
        for candidate in _candidates(line):
            try:
                ast = _parse(formalism, candidate, alphabet)
            except ParseError:
                continue
            if _formula_like(candidate, formalism):
                return make_expression(formalism, ast)
    reason = str(first_error) if first_error else "no parseable candidate"
    return NonCompliant(reason)


def _candidates(line: str):
    seen = set()
    for cand in _raw_candidates(line.strip()):
        cand = cand.strip().rstrip(".").strip()
        if cand and cand not in seen:
            seen.add(cand)
            yield cand


def _raw_candidates(line: str):
    yield line
    if ":" in line:
        yield line.rsplit(":", 1)[1]
    words = line.split()
    n = len(words)
    if n <= _WINDOW_SCAN_LIMIT:
        # all word windows, longest first
        for length in range(n - 1, 0, -1):
            for i in range(0, n - length + 1):
                yield " ".join(words[i : i + length])
    else:
        for i in range(1, n):
            yield " ".join(words[i:])
        for j in range(n - 1, 0, -1):
            yield " ".join(words[:j])


_STRUCTURE = re.compile(
    r"[¬∧∨∀∃~&|()*!]|\b(?:not|and|or|all|exists|forall)\b", re.IGNORECASE
)
_MACHINE_ATOM = re.compile(r"^(?:p\d+|pred\d+.*|x\d+)$")


def _formula_like(candidate: str, formalism: str) -> bool:
    """Guard for candidates below whole-reply level: prose words are not formulas."""
    candidate = candidate.strip()
    if formalism == "regex":
        # a lone alphabetic character inside prose is too weak a signal
        return len(candidate) > 1 or candidate.isdigit()
    if _STRUCTURE.search(candidate):
        return True
    # a bare atom is only accepted when it looks machine-generated (p7, pred3(...))
    return bool(_MACHINE_ATOM.match(candidate))
