"""Checking and sampling well-formed markings of a fragment.

A well-formed marking keeps every edge of the configuration graph, may mark
only edges along which the rank drops, and leaves every configuration of
finite positive rank at least one marked out-edge.  Conditions are numbered:

1. every rank-decreasing edge is present (marked or plain);
2. every other edge is present, plain;
3. no plain edge outside the graph;
4. no marked edge that is not rank-decreasing;
5. finite positive rank implies a marked out-edge.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import NamedTuple

from .fragment import Edge, Fragment, MarkedFragment, dumps
from .pda import Config, Pda, iter_successors
from .rank import INF, rank_decreasing_edges, ranker


class MarkingViolation(NamedTuple):
    condition: int
    subject: str
    detail: str


@dataclass(frozen=True)
class MarkingVerdict:
    violations: tuple[MarkingViolation, ...] = ()
    skipped_frontier: frozenset[Config] = field(default_factory=frozenset)

    @property
    def ok(self) -> bool:
        return not self.violations

    def conditions(self) -> set[int]:
        return {v.condition for v in self.violations}

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [{"condition": v.condition, "subject": v.subject, "detail": v.detail}
                           for v in self.violations],
            "skipped_frontier": [str(c) for c in sorted(self.skipped_frontier)],
        }

    def encode(self) -> str:
        return dumps(self.to_dict())


def check_well_formed(pda: Pda, candidate: MarkedFragment) -> MarkingVerdict:
    """Judge every non-frontier vertex of ``candidate`` against conditions 1-5."""
    r = ranker(pda)
    fragment = candidate.fragment
    violations: list[MarkingViolation] = []
    skipped = set()
    for v in fragment.vertices:
        if v in fragment.frontier:
            skipped.add(v)
            continue
        rv = r.distance(v)
        graph = {Edge(v, a, w): r.distance(w) < rv for a, w in iter_successors(pda, v)}
        present = candidate.out_edges(v)
        for e in present:
            if e not in graph:
                cond = 4 if candidate.is_marked(e) else 3
                violations.append(MarkingViolation(cond, str(e), "edge not in the configuration graph"))
            elif candidate.is_marked(e) and not graph[e]:
                violations.append(MarkingViolation(4, str(e), "marked edge does not decrease the rank"))
        present_set = set(present)
        for e, decreasing in sorted(graph.items()):
            if e not in present_set:
                violations.append(MarkingViolation(
                    1 if decreasing else 2, str(e), "graph edge missing from the marking"))
        if 0 < rv < INF and not any(candidate.is_marked(e) for e in present):
            violations.append(MarkingViolation(
                5, str(v), f"rank {int(rv)} vertex has no marked out-edge"))
    return MarkingVerdict(tuple(violations), frozenset(skipped))


def _coin(seed: int, e: Edge) -> bool:
    key = (seed % 2**64).to_bytes(8, "little")
    return hashlib.blake2b(str(e).encode(), key=key, digest_size=1).digest()[0] & 1 == 1


def sample_well_formed(pda: Pda, fragment: Fragment, seed: int,
                       canonical: MarkedFragment | None = None) -> MarkedFragment:
    """A random well-formed marking of ``fragment``.

    Each rank-decreasing edge is marked on a fair coin keyed by ``(seed, edge)``,
    so the same seed marks an edge identically in every fragment that holds
    it.  A vertex left without a marked out-edge gets its least
    rank-decreasing edge marked.  ``canonical`` may pass a precomputed
    :func:`~pdmark.rank.mark_fragment` result for the same fragment.
    """
    if isinstance(fragment, MarkedFragment):
        fragment = fragment.fragment
    if canonical is None:
        decreasing = rank_decreasing_edges(pda, fragment)
    else:
        decreasing = {}
        for e in sorted(canonical.marked):
            decreasing.setdefault(e.source, []).append(e)
    marked = set()
    for v, edges in decreasing.items():
        chosen = [e for e in edges if _coin(seed, e)]
        marked.update(chosen or [min(edges)])
    return MarkedFragment(fragment, frozenset(marked))
