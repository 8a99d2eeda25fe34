import random

import pytest

from pdmark.fragment import Bounds, Edge, Fragment, MarkedFragment, explore
from pdmark.marking import check_well_formed, sample_well_formed
from pdmark.pda import config
from pdmark.rank import INF, mark_fragment, rank_of


@pytest.fixture(scope="module")
def canon(ex1, ex1_frag5):
    return mark_fragment(ex1, ex1_frag5)


def test_canonical_is_well_formed(ex1, canon):
    verdict = check_well_formed(ex1, canon)
    assert verdict.ok and verdict.violations == ()
    assert verdict.skipped_frontier == canon.frontier


def test_demoting_all_choices_breaks_condition5(ex1, canon):
    v = config("q_♯")
    marked = frozenset(e for e in canon.marked if e.source != v)
    verdict = check_well_formed(ex1, MarkedFragment(canon.fragment, marked))
    assert verdict.conditions() == {5}
    assert verdict.violations[0].subject == str(v)


def test_promoting_an_ascent_breaks_condition4(ex1, canon):
    e = Edge(config("q_in"), "a", config("q_in", "a"))
    verdict = check_well_formed(ex1, MarkedFragment(canon.fragment, canon.marked | {e}))
    assert verdict.conditions() == {4}


def _drop_edge(m, e):
    f = m.fragment
    edges = tuple(x for x in f.edges if x != e)
    return MarkedFragment(Fragment(f.roots, f.bounds, f.vertices, edges, f.frontier),
                          m.marked - {e})


def test_missing_edges(ex1, canon):
    decreasing = Edge(config("q_♯", "a"), "a", config("q_♯"))
    plain = Edge(config("q_in"), "a", config("q_in", "a"))
    assert 1 in check_well_formed(ex1, _drop_edge(canon, decreasing)).conditions()
    assert check_well_formed(ex1, _drop_edge(canon, plain)).conditions() == {2}


def test_foreign_edge(ex1, canon):
    f = canon.fragment
    bogus = Edge(config("q_in"), "a", config("q_fin"))
    extra = Fragment(f.roots, f.bounds, f.vertices, tuple(sorted(f.edges + (bogus,))), f.frontier)
    assert check_well_formed(ex1, MarkedFragment(extra, canon.marked)).conditions() == {3}
    assert check_well_formed(ex1, MarkedFragment(extra, canon.marked | {bogus})).conditions() == {4}


def test_sampling_is_deterministic(gadget, gadget_frag):
    a = sample_well_formed(gadget, gadget_frag, 1)
    assert a == sample_well_formed(gadget, gadget_frag, 1)
    assert any(sample_well_formed(gadget, gadget_frag, s).marked != a.marked for s in range(2, 6))


def test_hundred_samples_pass(gadget, gadget_frag):
    canon = mark_fragment(gadget, gadget_frag)
    for seed in range(1, 101):
        m = sample_well_formed(gadget, gadget_frag, seed, canonical=canon)
        assert m.marked <= canon.marked
        assert check_well_formed(gadget, m).ok, seed


def test_vacuous_when_nothing_is_ranked(dead):
    f = explore(dead, [config("q_dead")], Bounds(3, 2))
    assert all(rank_of(dead, v) in (0, INF) for v in f.vertices)
    m = sample_well_formed(dead, f, 5)
    assert m.marked == frozenset() and check_well_formed(dead, m).ok


def test_sub_marking_characterization(gadget, gadget_frag):
    canon = mark_fragment(gadget, gadget_frag)
    plain = sorted(set(gadget_frag.edges) - canon.marked)
    decreasing = sorted(canon.marked)
    rng = random.Random(11)
    for _ in range(60):
        chosen = {e for e in decreasing if rng.random() < 0.7}
        if rng.random() < 0.3:
            chosen.add(rng.choice(plain))
        m = MarkedFragment(gadget_frag, frozenset(chosen))
        covered = all(any(e in chosen for e in gadget_frag.out_edges[v])
                      for v in gadget_frag.vertices
                      if v not in gadget_frag.frontier and 0 < rank_of(gadget, v) < INF)
        assert check_well_formed(gadget, m).ok == (chosen <= canon.marked and covered)


def test_verdict_encoding(ex1, canon):
    text = check_well_formed(ex1, canon).encode()
    assert '"ok": true' in text and text.endswith("\n")
