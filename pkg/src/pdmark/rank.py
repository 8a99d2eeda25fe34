"""Ranks (shortest distance to a final configuration) on pushdown graphs.

Three views of the same quantity live here:

* :func:`level_sets` materializes the backward fixpoint ``W_0 ⊆ W_1 ⊆ ...``
  explicitly, one predecessor layer at a time.
* :func:`rank_of` answers "least ``i`` with ``c ∈ W_i``" on a symbolic copy of
  the same fixpoint, each ``W_i`` held as a layered P-automaton, after a
  :func:`prestar` membership check rules out rank ``∞``.
* :func:`rank_via_saturation` runs a min-plus weighted pre* saturation and
  reads the rank off the cheapest accepting run.

Ranks are ``int`` or :data:`INF` (``math.inf``).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .fragment import Edge, Fragment, MarkedFragment, dumps
from .pda import Config, InputContractError, Pda, TransitionRule, iter_predecessors

INF = math.inf

# Auxiliary accepting state of every P-automaton built here.
ACCEPT = "⊤"


def format_rank(r: float) -> int | str:
    return "inf" if r == INF else int(r)


# -- explicit level sets -------------------------------------------------------

@dataclass(frozen=True)
class LevelSets:
    levels: tuple[frozenset[Config], ...]

    def rank(self, c: Config) -> float:
        """Rank of ``c`` if it shows up in the computed prefix, else INF."""
        for i, level in enumerate(self.levels):
            if c in level:
                return i
        return INF

    def to_dict(self) -> list[list[str]]:
        return [[str(c) for c in sorted(level)] for level in self.levels]


def level_sets(pda: Pda, n: int) -> LevelSets:
    """``W_0 .. W_n`` computed by backward predecessor closure from the finals."""
    if n < 0:
        raise InputContractError("n must be non-negative")
    current = frozenset(pda.final_configs)
    levels = [current]
    fresh = current
    bound = len(pda.table)
    for _ in range(n):
        added = set()
        for c in fresh:
            preds = iter_predecessors(pda, c)
            assert len(preds) <= bound, "predecessor set larger than the rule set"
            added.update(p for _, p in preds if p not in current)
        fresh = frozenset(added)
        current = current | fresh
        levels.append(current)
    return LevelSets(tuple(levels))


# -- unweighted pre* -------------------------------------------------------------

@dataclass(frozen=True)
class PAutomaton:
    """Finite automaton over stack words; configuration ``(q, σ)`` is accepted
    when reading ``σ`` from state ``q`` can end in an accepting state."""

    states: frozenset[str]
    alphabet: frozenset[str]
    transitions: frozenset[tuple[str, str, str]]
    accepting: frozenset[str]

    def to_dict(self) -> dict:
        return {
            "states": sorted(self.states),
            "transitions": [{"from": p, "symbol": g, "to": s}
                            for p, g, s in sorted(self.transitions)],
            "accepting": sorted(self.accepting),
        }


def target_automaton(pda: Pda) -> PAutomaton:
    """The P-automaton accepting exactly the final configurations."""
    return PAutomaton(
        states=frozenset(pda.states | {ACCEPT}),
        alphabet=pda.stack_alphabet,
        transitions=frozenset((q, pda.bottom, ACCEPT) for q in pda.finals),
        accepting=frozenset({ACCEPT}),
    )


def prestar(pda: Pda, rule_order: Sequence[TransitionRule] | None = None) -> PAutomaton:
    """Saturate the target automaton into one accepting every finite-rank config.

    For each rule ``(q, γ) -a-> (q', u)`` and every state ``s`` reachable from
    ``q'`` reading ``u``, add ``q -γ-> s``; repeat until nothing changes.
    ``rule_order`` only changes the order of rule application.
    """
    if ACCEPT in pda.states:
        raise InputContractError(f"state name {ACCEPT!r} is reserved")
    rules = list(pda.table.values() if rule_order is None else rule_order)
    init = target_automaton(pda)
    trans = set(init.transitions)
    out: dict[tuple[str, str], set[str]] = {}
    for p, g, s in trans:
        out.setdefault((p, g), set()).add(s)

    def read(state: str, word: tuple[str, ...]) -> set[str]:
        current = {state}
        for sym in word:
            current = {t for s in current for t in out.get((s, sym), ())}
            if not current:
                break
        return current

    changed = True
    while changed:
        changed = False
        for rule in rules:
            for s in read(rule.next_state, rule.push):
                t = (rule.state, rule.top, s)
                if t not in trans:
                    trans.add(t)
                    out.setdefault((rule.state, rule.top), set()).add(s)
                    changed = True
    return PAutomaton(init.states, init.alphabet, frozenset(trans), init.accepting)


def accepts(pa: PAutomaton, c: Config) -> bool:
    if c.state not in pa.states:
        raise InputContractError(f"{c}: state {c.state!r} unknown to the automaton")
    for sym in c.stack:
        if sym not in pa.alphabet:
            raise InputContractError(f"{c}: symbol {sym!r} outside the automaton alphabet")
    out: dict[tuple[str, str], list[str]] = {}
    for p, g, s in pa.transitions:
        out.setdefault((p, g), []).append(s)
    current = {c.state}
    for sym in c.stack:
        current = {t for s in current for t in out.get((s, sym), ())}
    return bool(current & pa.accepting)


# -- symbolic level sets ---------------------------------------------------------

class _LevelAutomaton:
    """``W_i`` for all computed ``i`` as one layered P-automaton.

    State ``(q, j)`` accepts the stacks ``σ`` with ``(q, σ) ∈ pre(W_{j-1})``
    (the finals for ``j = 0``), so ``(q, σ) ∈ W_i`` iff some ``(q, j)`` with
    ``j <= i`` accepts ``σ``.
    Level ``j+1`` holds ``pre(W_j)``: for a rule ``(q, γ) -> (q', u)`` it gets
    ``(q, j+1) -γ-> s`` for each ``s`` reached by reading ``u`` from any
    ``(q', i)``, ``i <= j``.
    """

    def __init__(self, pda: Pda):
        self.pda = pda
        self.rules = sorted(pda.table.values())
        self.levels = 0
        self.out: dict[tuple[object, str], set[object]] = {}
        self.rev: dict[tuple[str, object], set[object]] = {}
        self._accepting_cache: dict[tuple[str, ...], frozenset] = {}
        for q in pda.finals:
            self._add((q, 0), pda.bottom, ACCEPT)

    def _add(self, p, sym, s) -> None:
        self.out.setdefault((p, sym), set()).add(s)
        self.rev.setdefault((sym, s), set()).add(p)

    def extend(self) -> None:
        j = self.levels
        new = []
        for rule in self.rules:
            current = {(rule.next_state, i) for i in range(j + 1)}
            for sym in rule.push:
                current = {t for s in current for t in self.out.get((s, sym), ())}
                if not current:
                    break
            new.extend(((rule.state, j + 1), rule.top, s) for s in current)
        for t in new:
            self._add(*t)
        self.levels = j + 1
        self._accepting_cache.clear()

    def accepting_states(self, stack: tuple[str, ...]) -> frozenset:
        """All automaton states from which ``stack`` is accepted."""
        cached = self._accepting_cache.get(stack)
        if cached is not None:
            return cached
        if not stack:
            result = frozenset({ACCEPT})
        else:
            below = self.accepting_states(stack[1:])
            sym = stack[0]
            result = frozenset(p for s in below for p in self.rev.get((sym, s), ()))
        self._accepting_cache[stack] = result
        return result

    def first_level(self, c: Config) -> int | None:
        levels = [s[1] for s in self.accepting_states(c.stack)
                  if s != ACCEPT and s[0] == c.state]
        return min(levels) if levels else None


# -- weighted pre* (min-plus) ----------------------------------------------------

class _WeightedSaturation:
    """Pre* saturation where each transition ``p -γ-> s`` carries the least
    number of steps taking ``(p, γ·rest)`` to ``(s, rest)`` (or, for
    ``s = ACCEPT``, to a final configuration).  Transitions are settled in
    increasing weight order; a combined weight is always larger than its
    parts, so the first settled weight is the least one."""

    def __init__(self, pda: Pda):
        self.pda = pda
        weight: dict[tuple[str, str, str], int] = {}
        settled: dict[tuple[str, str, str], int] = {}
        out: dict[tuple[str, str], dict[str, int]] = {}
        heap: list[tuple[int, tuple[str, str, str]]] = []

        def relax(t, w):
            if w < weight.get(t, INF):
                weight[t] = w
                heapq.heappush(heap, (w, t))

        by_first: dict[tuple[str, str], list[TransitionRule]] = {}
        by_second: dict[str, list[TransitionRule]] = {}
        for rule in pda.table.values():
            if not rule.push:
                relax((rule.state, rule.top, rule.next_state), 1)
                continue
            by_first.setdefault((rule.next_state, rule.push[0]), []).append(rule)
            if len(rule.push) == 2:
                by_second.setdefault(rule.push[1], []).append(rule)
        for q in pda.finals:
            relax((q, pda.bottom, ACCEPT), 0)

        while heap:
            w, t = heapq.heappop(heap)
            if t in settled:
                continue
            settled[t] = w
            p, g, s = t
            out.setdefault((p, g), {})[s] = w
            for rule in by_first.get((p, g), ()):
                if len(rule.push) == 1:
                    relax((rule.state, rule.top, s), 1 + w)
                else:
                    for s2, w2 in out.get((s, rule.push[1]), {}).items():
                        relax((rule.state, rule.top, s2), 1 + w + w2)
            for rule in by_second.get(g, ()):
                # settled already holds t, covering t in both positions
                w1 = settled.get((rule.next_state, rule.push[0], p))
                if w1 is not None:
                    relax((rule.state, rule.top, s), 1 + w1 + w)

        self.weights = settled
        by_sym: dict[str, list[tuple[str, str, int]]] = {}
        for (p, g, s), w in settled.items():
            by_sym.setdefault(g, []).append((p, s, w))
        self.by_sym = by_sym
        self._cache: dict[tuple[str, ...], dict[str, float]] = {}

    def cost_vector(self, stack: tuple[str, ...]) -> dict[str, float]:
        """state -> least run weight accepting ``stack`` from that state."""
        cached = self._cache.get(stack)
        if cached is not None:
            return cached
        if not stack:
            result = {ACCEPT: 0}
        else:
            below = self.cost_vector(stack[1:])
            result = {}
            for p, s, w in self.by_sym.get(stack[0], ()):
                rest = below.get(s)
                if rest is not None:
                    total = w + rest
                    if total < result.get(p, INF):
                        result[p] = total
        if len(self._cache) > 1_000_000:
            self._cache.clear()
        self._cache[stack] = result
        return result

    def distance(self, c: Config) -> float:
        return self.cost_vector(c.stack).get(c.state, INF)


class Ranker:
    """Per-automaton cache bundling the rank engines."""

    def __init__(self, pda: Pda):
        self.pda = pda
        self._prestar: PAutomaton | None = None
        self._prestar_out: dict[tuple[str, str], list[str]] | None = None
        self._levels: _LevelAutomaton | None = None
        self._weighted: _WeightedSaturation | None = None

    @property
    def prestar(self) -> PAutomaton:
        if self._prestar is None:
            self._prestar = prestar(self.pda)
            out: dict[tuple[str, str], list[str]] = {}
            for p, g, s in self._prestar.transitions:
                out.setdefault((p, g), []).append(s)
            self._prestar_out = out
        return self._prestar

    def in_w(self, c: Config) -> bool:
        pa = self.prestar
        current = {c.state}
        for sym in c.stack:
            current = {t for s in current for t in self._prestar_out.get((s, sym), ())}
        return bool(current & pa.accepting)

    def rank(self, c: Config) -> float:
        """Least ``i`` with ``c ∈ W_i`` (symbolic level sets), INF outside W."""
        if not self.in_w(c):
            return INF
        if self._levels is None:
            self._levels = _LevelAutomaton(self.pda)
        la = self._levels
        while True:
            found = la.first_level(c)
            if found is not None:
                return found
            la.extend()

    def distance(self, c: Config) -> float:
        """Shortest distance to a final configuration (weighted saturation)."""
        if self._weighted is None:
            self._weighted = _WeightedSaturation(self.pda)
        return self._weighted.distance(c)


@lru_cache(maxsize=32)
def ranker(pda: Pda) -> Ranker:
    return Ranker(pda)


def rank_of(pda: Pda, c: Config) -> float:
    return ranker(pda).rank(pda.check_config(c))


def rank_via_saturation(pda: Pda, c: Config) -> float:
    return ranker(pda).distance(pda.check_config(c))


def rank_table(pda: Pda, configs: Iterable[Config]) -> dict[Config, float]:
    r = ranker(pda)
    return {c: r.distance(pda.check_config(c)) for c in configs}


def encode_rank_table(table: dict[Config, float]) -> str:
    return dumps({str(c): format_rank(r) for c, r in sorted(table.items())})


def encode_pautomaton(pa: PAutomaton) -> str:
    return dumps(pa.to_dict())


# -- canonical marking -----------------------------------------------------------

def rank_decreasing_edges(pda: Pda, fragment: Fragment) -> dict[Config, list[Edge]]:
    """vertex -> its out-edges that strictly decrease the global rank."""
    r = ranker(pda)
    ranks: dict[Config, float] = {}

    def rk(c: Config) -> float:
        v = ranks.get(c)
        if v is None:
            v = ranks[c] = r.distance(c)
        return v

    out: dict[Config, list[Edge]] = {}
    for e in fragment.edges:
        if rk(e.target) < rk(e.source):
            out.setdefault(e.source, []).append(e)
    return out


def mark_fragment(pda: Pda, fragment: Fragment) -> MarkedFragment:
    """Mark exactly the edges of ``fragment`` along which the rank drops.

    Ranks are those of the full graph, so truncating the fragment never
    changes a mark.
    """
    if isinstance(fragment, MarkedFragment):
        fragment = fragment.fragment
    decreasing = rank_decreasing_edges(pda, fragment)
    return MarkedFragment(fragment, frozenset(e for es in decreasing.values() for e in es))
