"""Forbidden systems: canonical systems, satisfaction, and uniqueness."""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx

from .words import (
    ALPHABET,
    PeriodicWord,
    cyclic_windows,
    is_factor,
    least_rotation,
    parse_word,
    primitive_root,
)

DEFINES = "defines"
NO_WORD = "no_word"
MULTIPLE_WORDS = "multiple_words"


class BudgetExceeded(RuntimeError):
    pass


def sort_key(w: str) -> tuple[int, str]:
    return (len(w), w)


def sorted_system(V: Iterable[str]) -> list[str]:
    return sorted(set(V), key=sort_key)


def dumps_system(V: Iterable[str]) -> str:
    return json.dumps(sorted_system(V))


def loads_system(text: str) -> frozenset[str]:
    data = json.loads(text)
    if not isinstance(data, list) or not all(isinstance(w, str) for w in data):
        raise ValueError("forbidden system must be a JSON array of strings")
    return frozenset(parse_word(w) for w in data)


def satisfies(w: str, V: Iterable[str]) -> bool:
    """True iff no word of ``V`` occurs in ``w``."""
    return not any(v in w for v in V)


def canonical_system(W: PeriodicWord, max_length: int | None = None) -> frozenset[str]:
    """The minimal forbidden words of ``W``.

    Every minimal forbidden word of length >= 2 has the shape ``x m y`` with
    ``x m`` and ``m y`` factors and ``x m y`` not, so it suffices to scan the
    factors ``m``.  Lengths are scanned up to ``max_length`` (default
    ``|u| + 1``); pass something larger to confirm nothing longer turns up.
    """
    d = len(W.period)
    if max_length is None:
        max_length = d + 1
    out = {x for x in ALPHABET if x not in W.period and max_length >= 1}
    windows = [cyclic_windows(W, k) for k in range(max_length + 1)]
    for k in range(0, max_length - 1):
        longer, longest = windows[k + 1], windows[k + 2]
        for m in windows[k]:
            for x in ALPHABET:
                if x + m not in longer:
                    continue
                for y in ALPHABET:
                    if m + y in longer and x + m + y not in longest:
                        out.add(x + m + y)
    return frozenset(out)


def is_antichain(V: Iterable[str]) -> bool:
    V = list(V)
    return not any(p != q and p in q for p in V for q in V)


@dataclass(frozen=True)
class DefinitionResult:
    outcome: str
    word: PeriodicWord | None = None
    witnesses: tuple[PeriodicWord, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "word": self.word.period if self.word else None,
            "witnesses": [w.period for w in self.witnesses],
        }


def _canonical_periodic(label: str) -> PeriodicWord:
    return PeriodicWord(least_rotation(primitive_root(label)))


def satisfying_words(V: frozenset[str], length: int, limit: int = 1 << 20) -> list[str]:
    """All words of the given length that avoid ``V``, grown letter by letter."""
    layer = [""] if "" not in V else []
    for _ in range(length):
        nxt = []
        for w in layer:
            for x in ALPHABET:
                wx = w + x
                if not any(wx.endswith(v) for v in V):
                    nxt.append(wx)
        if len(nxt) > limit:
            raise BudgetExceeded(f"more than {limit} words avoid the system at length {len(nxt[0])}")
        layer = nxt
    return layer


def transfer_graph(V: Iterable[str]) -> dict[str, list[str]]:
    """Order ``m-1`` transfer graph of ``V``; ``m`` is the longest forbidden word.

    Vertices are the avoiding words of length ``m-1``; ``p -> q`` whenever
    ``p + q[-1]`` avoids ``V`` and ``q`` is its suffix.  For ``m == 1`` the
    single vertex is the empty word and loops are keyed by letter, so the
    successor list may repeat ``""``.
    """
    V = frozenset(V)
    m = max((len(v) for v in V), default=1)
    m = max(m, 1)
    succ: dict[str, list[str]] = {}
    for p in satisfying_words(V, m - 1):
        succ[p] = []
        for x in ALPHABET:
            px = p + x
            if not any(px.endswith(v) for v in V):
                succ[p].append(px[1:])
    return succ


def trim(succ: dict[str, list[str]], order: Iterable[str] | None = None) -> set[str]:
    """Vertices lying on bi-infinite paths (drop in/out-degree 0 to a fixed point)."""
    indeg = {v: 0 for v in succ}
    pred: dict[str, list[str]] = {v: [] for v in succ}
    for p, qs in succ.items():
        for q in qs:
            indeg[q] += 1
            pred[q].append(p)
    outdeg = {v: len(qs) for v, qs in succ.items()}
    alive = set(succ)
    queue = deque(v for v in (order if order is not None else succ) if indeg[v] == 0 or outdeg[v] == 0)
    while queue:
        v = queue.popleft()
        if v not in alive:
            continue
        alive.discard(v)
        for q in succ[v]:
            if q in alive:
                indeg[q] -= 1
                if indeg[q] == 0:
                    queue.append(q)
        for p in pred[v]:
            if p in alive:
                outdeg[p] -= 1
                if outdeg[p] == 0:
                    queue.append(p)
    return alive


def _cycle_label(cycle: list[str]) -> str:
    return "".join(v[-1] for v in cycle)


def defines(V: Iterable[str]) -> DefinitionResult:
    """Decide whether exactly one bi-infinite word (up to shift) avoids ``V``."""
    V = frozenset(V)
    if "" in V:
        return DefinitionResult(NO_WORD)
    succ = transfer_graph(V)
    alive = trim(succ)
    if not alive:
        return DefinitionResult(NO_WORD)
    core = {v: [q for q in succ[v] if q in alive] for v in alive}

    if "" in core:  # order-0 graph: one vertex, a loop per allowed letter
        letters = [x for x in ALPHABET if x not in V]
        if len(letters) == 1:
            return DefinitionResult(DEFINES, _canonical_periodic(letters[0]))
        return DefinitionResult(MULTIPLE_WORDS, witnesses=tuple(PeriodicWord(x) for x in letters))

    if all(len(qs) == 1 for qs in core.values()):
        start = next(iter(sorted(core)))
        cycle = [start]
        v = core[start][0]
        while v != start:
            cycle.append(v)
            v = core[v][0]
        if len(cycle) == len(core):
            label = _cycle_label(cycle[1:] + cycle[:1])
            return DefinitionResult(DEFINES, _canonical_periodic(label))

    g = nx.DiGraph()
    g.add_nodes_from(core)
    g.add_edges_from((p, q) for p, qs in core.items() for q in qs)
    witnesses: list[PeriodicWord] = []
    for cyc in nx.simple_cycles(g):
        w = _canonical_periodic(_cycle_label(cyc))
        if w not in witnesses:
            witnesses.append(w)
        if len(witnesses) == 2:
            break
    return DefinitionResult(MULTIPLE_WORDS, witnesses=tuple(sorted(witnesses, key=lambda w: sort_key(w.period))))


def verify_prop_2_4(W: PeriodicWord, max_len: int) -> bool:
    """Check that a word of length <= ``max_len`` avoids ``C(W)`` iff it occurs in ``W``.

    Both predicates are closed under taking prefixes, so a subtree where both
    fail can be skipped without changing the verdict.
    """
    C = canonical_system(W)
    stack = [""]
    while stack:
        v = stack.pop()
        ok = satisfies(v, C)
        if ok != is_factor(W, v):
            return False
        if ok and len(v) < max_len:
            stack.extend(v + x for x in ALPHABET)
    return True


def check_minimality_tiny(W: PeriodicWord, max_len: int, budget: int = 1 << 14) -> bool:
    """True iff no system smaller than ``C(W)`` over words of length <= ``max_len`` defines ``W``.

    Systems containing a factor of ``W`` cannot define it and are skipped;
    the budget applies to the remaining candidate subsets.
    """
    size = len(canonical_system(W))
    pool = [
        "".join(t)
        for k in range(1, max_len + 1)
        for t in itertools.product(ALPHABET, repeat=k)
        if not is_factor(W, "".join(t))
    ]
    total = sum(math.comb(len(pool), s) for s in range(size))
    if total > budget:
        raise BudgetExceeded(f"budget exceeded: {total} candidate systems > {budget}")
    target = W.normalized()
    for s in range(size):
        for subset in itertools.combinations(pool, s):
            res = defines(subset)
            if res.outcome == DEFINES and res.word == target:
                return False
    return True
