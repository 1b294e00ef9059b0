"""Regex equivalence via canonical minimal DFAs.

Pipeline: Thompson construction -> subset construction -> completion with
a dead state -> partition-refinement minimization -> breadth-first
renumbering (symbols in ascending order). Minimal DFAs are unique up to
isomorphism, so canonical forms are equal exactly when the languages are.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..syntax.nodes import Concat, Literal, RegexAst, Star
from .verdict import EquivalenceVerdict, equivalent, not_equivalent


class AlphabetMismatch(ValueError):
    pass


@dataclass
class Nfa:
    n_states: int
    alphabet: tuple[str, ...]
    transitions: set[tuple[int, str | None, int]]  # None label = epsilon
    start: int
    accepting: frozenset[int]


@dataclass(frozen=True)
class Dfa:
    """Complete DFA: the transition function is total over the alphabet."""

    n_states: int
    alphabet: tuple[str, ...]
    transitions: tuple[tuple[int, ...], ...]  # [state][symbol_index] -> state
    start: int
    accepting: frozenset[int]

    def accepts(self, word: str) -> bool:
        index = {sym: i for i, sym in enumerate(self.alphabet)}
        state = self.start
        for ch in word:
            state = self.transitions[state][index[ch]]
        return state in self.accepting


CanonicalDfa = Dfa  # produced by determinize_minimize: minimal, BFS-numbered


@dataclass
class DfaMetrics:
    node_count: int
    edge_count: int
    density: float  # |E| / (|V| * (|V|-1)), rounded to the nearest tenth; 0.0 if |V|=1


# ---------------------------------------------------------------------------
# Thompson construction

def to_nfa(regex: RegexAst, alphabet) -> Nfa:
    alphabet = tuple(sorted(set(alphabet)))
    builder = _NfaBuilder(alphabet)
    start, accept = builder.build(regex)
    return Nfa(
        n_states=builder.count,
        alphabet=alphabet,
        transitions=builder.transitions,
        start=start,
        accepting=frozenset({accept}),
    )


class _NfaBuilder:
    def __init__(self, alphabet):
        self.alphabet = set(alphabet)
        self.count = 0
        self.transitions: set[tuple[int, str | None, int]] = set()

    def fresh(self) -> int:
        self.count += 1
        return self.count - 1

    def build(self, node: RegexAst) -> tuple[int, int]:
        if isinstance(node, Literal):
            if node.symbol not in self.alphabet:
                raise AlphabetMismatch(f"literal {node.symbol!r} outside alphabet")
            a, b = self.fresh(), self.fresh()
            self.transitions.add((a, node.symbol, b))
            return a, b
        if isinstance(node, Concat):
            first_start, prev_accept = self.build(node.children[0])
            for child in node.children[1:]:
                s, a = self.build(child)
                self.transitions.add((prev_accept, None, s))
                prev_accept = a
            return first_start, prev_accept
        if isinstance(node, Star):
            inner_start, inner_accept = self.build(node.child)
            a, b = self.fresh(), self.fresh()
            self.transitions.add((a, None, inner_start))
            self.transitions.add((a, None, b))
            self.transitions.add((inner_accept, None, inner_start))
            self.transitions.add((inner_accept, None, b))
            return a, b
        raise TypeError(f"not a regex node: {node!r}")


def nfa_accepts(nfa: Nfa, word: str) -> bool:
    eps: dict[int, list[int]] = {}
    step: dict[tuple[int, str], list[int]] = {}
    for src, label, dst in nfa.transitions:
        if label is None:
            eps.setdefault(src, []).append(dst)
        else:
            step.setdefault((src, label), []).append(dst)

    def closure(states: set[int]) -> set[int]:
        stack = list(states)
        out = set(states)
        while stack:
            s = stack.pop()
            for t in eps.get(s, ()):
                if t not in out:
                    out.add(t)
                    stack.append(t)
        return out

    current = closure({nfa.start})
    for ch in word:
        nxt: set[int] = set()
        for s in current:
            nxt.update(step.get((s, ch), ()))
        current = closure(nxt)
        if not current:
            return False
    return bool(current & nfa.accepting)


# ---------------------------------------------------------------------------
# determinization, completion, minimization, canonical numbering

def determinize_minimize(nfa: Nfa) -> CanonicalDfa:
    dfa = _determinize(nfa)
    dfa = _minimize(dfa)
    return _bfs_renumber(dfa)


def _determinize(nfa: Nfa) -> Dfa:
    eps: dict[int, list[int]] = {}
    step: dict[tuple[int, str], set[int]] = {}
    for src, label, dst in nfa.transitions:
        if label is None:
            eps.setdefault(src, []).append(dst)
        else:
            step.setdefault((src, label), set()).add(dst)

    def closure(states: frozenset[int]) -> frozenset[int]:
        stack = list(states)
        out = set(states)
        while stack:
            s = stack.pop()
            for t in eps.get(s, ()):
                if t not in out:
                    out.add(t)
                    stack.append(t)
        return frozenset(out)

    start = closure(frozenset({nfa.start}))
    index: dict[frozenset[int], int] = {start: 0}
    order = [start]
    rows: list[list[int]] = []
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        row = []
        for sym in nfa.alphabet:
            nxt: set[int] = set()
            for s in subset:
                nxt.update(step.get((s, sym), ()))
            target = closure(frozenset(nxt))
            if target not in index:
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            row.append(index[target])
        rows.append(row)
    # the empty subset, if reachable, already acts as the dead state
    accepting = frozenset(
        i for i, subset in enumerate(order) if subset & nfa.accepting
    )
    return Dfa(
        n_states=len(order),
        alphabet=nfa.alphabet,
        transitions=tuple(tuple(r) for r in rows),
        start=index[start],
        accepting=accepting,
    )


def _minimize(dfa: Dfa) -> Dfa:
    # only states reachable from the start participate
    reachable = _reachable(dfa)
    # Moore-style partition refinement starting from accepting/rejecting
    block: dict[int, int] = {
        s: (0 if s in dfa.accepting else 1) for s in reachable
    }
    n_symbols = len(dfa.alphabet)
    while True:
        signatures: dict[tuple, list[int]] = {}
        for s in reachable:
            sig = (block[s],) + tuple(
                block[dfa.transitions[s][a]] for a in range(n_symbols)
            )
            signatures.setdefault(sig, []).append(s)
        if len(signatures) == len(set(block.values())):
            break
        for new_id, members in enumerate(signatures.values()):
            for s in members:
                block[s] = new_id
    ids = sorted(set(block.values()))
    remap = {old: new for new, old in enumerate(ids)}
    representatives: dict[int, int] = {}
    for s in reachable:
        representatives.setdefault(remap[block[s]], s)
    rows = []
    for new_id in range(len(ids)):
        rep = representatives[new_id]
        rows.append(
            tuple(remap[block[dfa.transitions[rep][a]]] for a in range(n_symbols))
        )
    return Dfa(
        n_states=len(ids),
        alphabet=dfa.alphabet,
        transitions=tuple(rows),
        start=remap[block[dfa.start]],
        accepting=frozenset(
            remap[block[s]] for s in reachable if s in dfa.accepting
        ),
    )


def _reachable(dfa: Dfa) -> list[int]:
    seen = {dfa.start}
    queue = deque([dfa.start])
    while queue:
        s = queue.popleft()
        for t in dfa.transitions[s]:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return sorted(seen)


def _bfs_renumber(dfa: Dfa) -> Dfa:
    order: dict[int, int] = {dfa.start: 0}
    queue = deque([dfa.start])
    while queue:
        s = queue.popleft()
        for a in range(len(dfa.alphabet)):
            t = dfa.transitions[s][a]
            if t not in order:
                order[t] = len(order)
                queue.append(t)
    rows: list[tuple[int, ...]] = [()] * len(order)
    for old, new in order.items():
        rows[new] = tuple(order[t] for t in dfa.transitions[old])
    return Dfa(
        n_states=len(order),
        alphabet=dfa.alphabet,
        transitions=tuple(rows),
        start=0,
        accepting=frozenset(order[s] for s in dfa.accepting if s in order),
    )


def compile_regex(regex: RegexAst, alphabet) -> CanonicalDfa:
    return determinize_minimize(to_nfa(regex, alphabet))


# ---------------------------------------------------------------------------
# equivalence and metrics

def regex_symbols(node: RegexAst) -> set[str]:
    if isinstance(node, Literal):
        return {node.symbol}
    if isinstance(node, Star):
        return regex_symbols(node.child)
    if isinstance(node, Concat):
        out: set[str] = set()
        for c in node.children:
            out |= regex_symbols(c)
        return out
    raise TypeError(f"not a regex node: {node!r}")


def equivalent_regex(r1: RegexAst, r2: RegexAst, alphabet=()) -> EquivalenceVerdict:
    """Compare canonical DFAs; on mismatch return a shortest distinguishing word."""
    if r1 == r2:
        return equivalent()
    sigma = set(alphabet) | regex_symbols(r1) | regex_symbols(r2)
    d1 = compile_regex(r1, sigma)
    d2 = compile_regex(r2, sigma)
    if d1 == d2:
        return equivalent()
    witness = _shortest_difference(d1, d2)
    return not_equivalent(witness=witness)


def _shortest_difference(d1: Dfa, d2: Dfa) -> str:
    """BFS over the product automaton for the shortest distinguishing string."""
    start = (d1.start, d2.start)
    parents: dict[tuple[int, int], tuple[tuple[int, int], str] | None] = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        s1, s2 = pair
        if (s1 in d1.accepting) != (s2 in d2.accepting):
            word = []
            cursor = pair
            while parents[cursor] is not None:
                cursor, sym = parents[cursor]
                word.append(sym)
            return "".join(reversed(word))
        for a, sym in enumerate(d1.alphabet):
            nxt = (d1.transitions[s1][a], d2.transitions[s2][a])
            if nxt not in parents:
                parents[nxt] = (pair, sym)
                queue.append(nxt)
    raise AssertionError("DFAs differ structurally but no distinguishing word found")


def dfa_metrics(dfa: CanonicalDfa) -> DfaMetrics:
    edges = {
        (s, dfa.transitions[s][a])
        for s in range(dfa.n_states)
        for a in range(len(dfa.alphabet))
    }
    v = dfa.n_states
    e = len(edges)
    density = 0.0 if v == 1 else round(e / (v * (v - 1)), 1)
    return DfaMetrics(node_count=v, edge_count=e, density=density)


def export_edge_list(dfa: Dfa) -> str:
    """Plain-text debugging dump: headers plus `state symbol state` lines."""
    lines = [
        "start: " + str(dfa.start),
        "accept: " + " ".join(str(s) for s in sorted(dfa.accepting)),
    ]
    for s in range(dfa.n_states):
        for a, sym in enumerate(dfa.alphabet):
            lines.append(f"{s} {sym} {dfa.transitions[s][a]}")
    return "\n".join(lines) + "\n"
