"""Tokenizers and recursive-descent parsers for the three formalisms.

Parsing normalizes layout only: redundant parentheses are dropped and
directly nested And/Or chains are flattened to n-ary nodes. No semantic
rewriting happens here (double negations survive, star-of-star survives);
equivalence is the verifiers' job.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .nodes import (
    EXISTS,
    FORALL,
    And,
    Atom,
    Concat,
    Constant,
    FolFormula,
    Literal,
    LogicNode,
    Not,
    Or,
    Proposition,
    Quantified,
    RegexAst,
    Star,
    Variable,
    flatten_and,
    flatten_or,
)


class ParseError(Exception):
    """Syntax error with the offending position and what was expected."""

    def __init__(self, message: str, position: int = 0, expected: str = ""):
        super().__init__(message)
        self.position = position
        self.expected = expected


class ArityError(ParseError):
    """A predicate used with two different arities in one formula."""

    def __init__(self, predicate: str, seen: int, expected: int, position: int = 0):
        super().__init__(
            f"predicate {predicate!r} used with arity {seen}, expected {expected}",
            position,
        )
        self.predicate = predicate
        self.seen = seen
        self.expected = expected


# ---------------------------------------------------------------------------
# shared logic tokenizer

NOT_WORDS = {"¬", "~", "!", "not", "NOT", "Not"}
AND_WORDS = {"∧", "&", "&&", "and", "AND", "And", "/\\"}
OR_WORDS = {"∨", "|", "||", "or", "OR", "Or", "\\/"}
FORALL_WORDS = {"∀", "forall", "all", "ALL", "All", "Forall", "FORALL"}
EXISTS_WORDS = {"∃", "exists", "EXISTS", "Exists", "exist"}

_REJECTED = {"→", "↔", "⇒", "⇔", "=>", "<=>", "=", "≠", "!=", "+", "?"}

_LOGIC_TOKEN = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>¬|∧|∨|∀|∃|&&|\|\||<=>|=>|!=|/\\|\\/|[~!&|().,=≠→↔⇒⇔+?*])"
    r"|(?P<bad>\S))"
)


@dataclass
class _Tok:
    kind: str  # 'ident' | 'op'
    text: str
    pos: int


def _tokenize_logic(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    while i < len(text):
        m = _LOGIC_TOKEN.match(text, i)
        if not m or m.end() == i:
            break
        if m.group("bad"):
            raise ParseError(f"unexpected character {m.group('bad')!r}", m.start("bad"))
        if m.group("ident"):
            toks.append(_Tok("ident", m.group("ident"), m.start("ident")))
        else:
            op = m.group("op")
            if op in _REJECTED:
                raise ParseError(f"operator {op!r} is not part of the grammar", m.start("op"))
            toks.append(_Tok("op", op, m.start("op")))
        i = m.end()
    return toks


class _Cursor:
    def __init__(self, toks: list[_Tok], length: int):
        self.toks = toks
        self.i = 0
        self.length = length

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self) -> _Tok:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input", self.length, "expression")
        self.i += 1
        return t

    def expect_op(self, text: str):
        t = self.peek()
        if t is None or t.kind != "op" or t.text != text:
            pos = t.pos if t else self.length
            raise ParseError(f"expected {text!r}", pos, text)
        self.i += 1

    def at_end(self) -> bool:
        return self.i >= len(self.toks)


def _word_class(tok: _Tok) -> str | None:
    """Map a token to its operator class, treating alias words as operators."""
    if tok.text in NOT_WORDS:
        return "not"
    if tok.text in AND_WORDS:
        return "and"
    if tok.text in OR_WORDS:
        return "or"
    if tok.text in FORALL_WORDS:
        return "forall"
    if tok.text in EXISTS_WORDS:
        return "exists"
    return None


# ---------------------------------------------------------------------------
# propositional logic

def parse_prop(text: str) -> LogicNode:
    """Parse a propositional formula; ASCII aliases are accepted."""
    if not text.strip():
        raise ParseError("empty input", 0, "formula")
    toks = _tokenize_logic(text)
    cur = _Cursor(toks, len(text))
    node = _parse_or(cur, fol=False, scopes=[])
    if not cur.at_end():
        t = cur.peek()
        raise ParseError(f"trailing input {t.text!r}", t.pos, "end of input")
    return node


def _parse_or(cur: _Cursor, fol: bool, scopes: list[set[str]]) -> LogicNode:
    parts = [_parse_and(cur, fol, scopes)]
    while (t := cur.peek()) is not None and _word_class(t) == "or":
        cur.next()
        parts.append(_parse_and(cur, fol, scopes))
    return flatten_or(parts) if len(parts) > 1 else parts[0]


def _parse_and(cur: _Cursor, fol: bool, scopes: list[set[str]]) -> LogicNode:
    parts = [_parse_unary(cur, fol, scopes)]
    while (t := cur.peek()) is not None and _word_class(t) == "and":
        cur.next()
        parts.append(_parse_unary(cur, fol, scopes))
    return flatten_and(parts) if len(parts) > 1 else parts[0]


def _parse_unary(cur: _Cursor, fol: bool, scopes: list[set[str]]) -> LogicNode:
    t = cur.peek()
    if t is None:
        raise ParseError("unexpected end of input", cur.length, "formula")
    cls = _word_class(t)
    if cls == "not":
        cur.next()
        return Not(_parse_unary(cur, fol, scopes))
    if fol and cls in (FORALL, EXISTS):
        return _parse_quantified(cur, scopes)
    return _parse_atom(cur, fol, scopes)


def _parse_quantified(cur: _Cursor, scopes: list[set[str]]) -> LogicNode:
    t = cur.next()
    kind = FORALL if _word_class(t) == FORALL else EXISTS
    variables: list[str] = []
    while (nxt := cur.peek()) is not None:
        if nxt.kind != "ident" or _word_class(nxt) is not None:
            break
        # once at least one variable is read, an identifier followed by '('
        # starts the matrix (a predicate application), e.g. "∀x1 pred3(p5, x1)"
        after = cur.toks[cur.i + 1] if cur.i + 1 < len(cur.toks) else None
        if after is not None and after.kind == "op" and after.text == "(" and variables:
            break
        variables.append(nxt.text)
        cur.next()
    if (nxt := cur.peek()) is not None and nxt.kind == "op" and nxt.text == ".":
        cur.next()
    if not variables:
        raise ParseError("quantifier binds no variables", t.pos, "variable list")
    scopes.append(set(variables))
    # maximal scope: the body is the rest of the current subformula
    body = _parse_or(cur, fol=True, scopes=scopes)
    scopes.pop()
    return Quantified(kind, tuple(variables), body)


def _parse_atom(cur: _Cursor, fol: bool, scopes: list[set[str]]) -> LogicNode:
    t = cur.next()
    if t.kind == "op" and t.text == "(":
        node = _parse_or(cur, fol, scopes)
        cur.expect_op(")")
        return node
    if t.kind == "ident":
        if fol:
            return _parse_predicate(cur, t, scopes)
        return Proposition(t.text)
    raise ParseError(f"unexpected {t.text!r}", t.pos, "atom")


def _parse_predicate(cur: _Cursor, name_tok: _Tok, scopes: list[set[str]]) -> Atom:
    terms: list[Constant | Variable] = []
    nxt = cur.peek()
    if nxt is not None and nxt.kind == "op" and nxt.text == "(":
        cur.next()
        while True:
            arg = cur.next()
            if arg.kind != "ident":
                raise ParseError(f"expected term, got {arg.text!r}", arg.pos, "term")
            terms.append(_classify_term(arg.text, scopes))
            sep = cur.next()
            if sep.kind == "op" and sep.text == ")":
                break
            if not (sep.kind == "op" and sep.text == ","):
                raise ParseError(f"expected ',' or ')', got {sep.text!r}", sep.pos, ", or )")
    return Atom(name_tok.text, tuple(terms))


def _classify_term(name: str, scopes: list[set[str]]) -> Constant | Variable:
    # bound by an enclosing quantifier => variable; anything else is a constant
    for scope in scopes:
        if name in scope:
            return Variable(name)
    return Constant(name)


# ---------------------------------------------------------------------------
# first-order logic

def parse_fol(text: str) -> FolFormula:
    """Parse a first-order formula into prefix + matrix form.

    Leading quantifiers are hoisted into the prefix; nested quantifiers are
    kept in the matrix and clear the prenex flag. Terms bound by an
    enclosing quantifier are variables, all others constants.
    """
    if not text.strip():
        raise ParseError("empty input", 0, "formula")
    toks = _tokenize_logic(text)
    cur = _Cursor(toks, len(text))
    node = _parse_or(cur, fol=True, scopes=[])
    if not cur.at_end():
        t = cur.peek()
        raise ParseError(f"trailing input {t.text!r}", t.pos, "end of input")
    formula = FolFormula.from_matrix(node)
    _check_arities(formula.matrix, {})
    return formula


def _check_arities(node: LogicNode, seen: dict[str, int]):
    if isinstance(node, Atom):
        arity = len(node.terms)
        if node.predicate in seen and seen[node.predicate] != arity:
            raise ArityError(node.predicate, arity, seen[node.predicate])
        seen[node.predicate] = arity
    elif isinstance(node, Not):
        _check_arities(node.child, seen)
    elif isinstance(node, (And, Or)):
        for c in node.children:
            _check_arities(c, seen)
    elif isinstance(node, Quantified):
        _check_arities(node.body, seen)


# ---------------------------------------------------------------------------
# regular expressions

DIGIT_ALPHABET = frozenset("0123456789")


def parse_regex(text: str, alphabet: set[str] | None = None) -> RegexAst:
    """Parse a regex built from literals, concatenation, and Kleene star.

    Star binds tighter than concatenation; parentheses group. Only ASCII
    '*' is a star. Literals outside the alphabet are rejected; the default
    alphabet is the digits, matching the generated dataset families.
    """
    if not text.strip():
        raise ParseError("empty input", 0, "regex")
    if alphabet is None:
        alphabet = DIGIT_ALPHABET
    stripped = text.strip()
    node, i = _parse_regex_concat(stripped, 0, alphabet)
    if i != len(stripped):
        raise ParseError(f"trailing input {stripped[i]!r}", i, "end of input")
    return node


def _parse_regex_concat(s: str, i: int, alphabet) -> tuple[RegexAst, int]:
    parts: list[RegexAst] = []
    while i < len(s):
        ch = s[i]
        if ch == ")":
            break
        if ch == "(":
            inner, j = _parse_regex_concat(s, i + 1, alphabet)
            if j >= len(s) or s[j] != ")":
                raise ParseError("unbalanced parenthesis", i, ")")
            i = j + 1
            node = inner
        elif ch == "*":
            raise ParseError("star needs a preceding expression", i, "literal or group")
        elif ch.isspace():
            i += 1
            continue
        else:
            if ch in _REJECTED or ch in "¬∧∨∀∃":
                raise ParseError(f"operator {ch!r} is not part of the grammar", i)
            if ch not in alphabet:
                raise ParseError(f"symbol {ch!r} outside the alphabet", i, "alphabet symbol")
            node = Literal(ch)
            i += 1
        while i < len(s) and s[i] == "*":
            node = Star(node)
            i += 1
        parts.append(node)
    if not parts:
        raise ParseError("empty group", i, "regex")
    if len(parts) == 1:
        return parts[0], i
    flat: list[RegexAst] = []
    for p in parts:
        if isinstance(p, Concat):
            flat.extend(p.children)
        else:
            flat.append(p)
    return Concat(tuple(flat)), i
