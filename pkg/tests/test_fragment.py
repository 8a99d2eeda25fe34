import json

import pytest

from pdmark.fragment import (Bounds, Edge, Fragment, MarkedFragment, SCHEMA_VERSION,
                             check_fragment, decode_fragment, encode_fragment, explore,
                             export_dot)
from pdmark.pda import FormatError, InputContractError, config, successors
from pdmark.rank import mark_fragment


def test_small_exploration(ex1):
    f = explore(ex1, [config("q_in")], Bounds(2, 2))
    vs = f.vertex_set
    assert {config("q_in", "a"), config("q_♯"), config("q_fin")} <= vs
    assert config("q_in", "a", "a") in f.frontier
    assert check_fragment(ex1, f) == []


def test_depth_zero(ex1):
    root = config("q_in", "b")
    f = explore(ex1, [root], Bounds(0, 3))
    assert f.vertices == (root,) and f.edges == () and f.frontier == {root}


def test_final_root_has_three_loops(ex1):
    f = explore(ex1, [config("q_fin")], Bounds(1, 0))
    assert f.vertices == (config("q_fin"),)
    assert [e.letter for e in f.edges] == ["a", "b", "♯"]
    assert all(e.source == e.target for e in f.edges)


def test_height_bound_makes_frontier(ex1):
    f = explore(ex1, [config("q_in")], Bounds(10, 1))
    assert config("q_in", "a") in f.frontier
    assert all(v.height <= 1 for v in f.vertices)


def test_bad_bounds_and_roots(ex1):
    with pytest.raises(InputContractError):
        explore(ex1, [config("q_in")], Bounds(-1, 2))
    with pytest.raises(InputContractError):
        explore(ex1, [config("q_in", "a", "a")], Bounds(2, 1))
    with pytest.raises(InputContractError):
        explore(ex1, [config("nowhere")], Bounds(2, 1))


@pytest.mark.parametrize("name", ["ex1", "dead", "gadget"])
def test_depth_monotonicity(request, name):
    pda = request.getfixturevalue(name)
    root = pda.initial_config
    prev = set()
    for d in range(5):
        vs = explore(pda, [root], Bounds(d, 3)).vertex_set
        assert prev <= vs
        prev = vs


@pytest.mark.parametrize("name", ["ex1", "dead", "gadget"])
def test_frontier_soundness(request, name):
    pda = request.getfixturevalue(name)
    f = explore(pda, [pda.initial_config], Bounds(4, 3))
    for v in f.vertices:
        if v not in f.frontier:
            have = {(e.letter, e.target) for e in f.out_edges[v]}
            assert have == set(successors(pda, v))
            assert all(t in f.vertex_set for _, t in have)


def test_check_fragment_spots_damage(ex1):
    f = explore(ex1, [config("q_in")], Bounds(3, 2))
    broken = Fragment(f.roots, f.bounds, f.vertices, f.edges[1:], f.frontier)
    assert any("not fully expanded" in p for p in check_fragment(ex1, broken))


def test_encoding_is_deterministic(ex1):
    a = encode_fragment(explore(ex1, [config("q_in")], Bounds(3, 2)))
    b = encode_fragment(explore(ex1, [config("q_in")], Bounds(3, 2)))
    assert a == b and a.endswith("\n")
    assert json.loads(a)["schema_version"] == SCHEMA_VERSION


def test_depth_zero_encoding_has_empty_edges(ex1):
    obj = json.loads(encode_fragment(explore(ex1, [config("q_in")], Bounds(0, 0))))
    assert obj["edges"] == [] and obj["kind"] == "fragment"


def test_roundtrip(ex1):
    f = explore(ex1, [config("q_in")], Bounds(3, 3))
    assert decode_fragment(encode_fragment(f)) == f


def test_marked_roundtrip(ex1, ex1_frag5):
    m = mark_fragment(ex1, ex1_frag5)
    back = decode_fragment(encode_fragment(m))
    assert isinstance(back, MarkedFragment)
    assert back.marked == m.marked and back.fragment == m.fragment


def _payload(ex1):
    return json.loads(encode_fragment(mark_fragment(
        ex1, explore(ex1, [config("q_in")], Bounds(2, 2)))))


def test_undeclared_edge_endpoint(ex1):
    obj = _payload(ex1)
    obj["edges"][0]["to"] = "q_in:b,b,b,_"
    with pytest.raises(FormatError, match=r"edges\[0\]\.to"):
        decode_fragment(json.dumps(obj))


def test_bad_marking_flag(ex1):
    obj = _payload(ex1)
    obj["edges"][1]["marked"] = "yes"
    with pytest.raises(FormatError, match=r"edges\[1\]\.marked"):
        decode_fragment(json.dumps(obj))


@pytest.mark.parametrize("text", ["", "[]", '{"kind": "tree"}', '{"bounds": {"depth": -1}}'])
def test_garbage_payloads(text):
    with pytest.raises(FormatError):
        decode_fragment(text)


def test_dot_marks_bold(ex1, ex1_frag5):
    dot = export_dot(mark_fragment(ex1, ex1_frag5))
    assert '"q_♯:a,_" -> "q_♯:_" [label="_a", style=bold];' in dot
    assert dot == export_dot(mark_fragment(ex1, ex1_frag5))


def test_dot_plain_has_no_bold(ex1, ex1_frag5):
    dot = export_dot(ex1_frag5)
    assert "bold" not in dot and dot.startswith("digraph G {")


def test_edge_text():
    e = Edge(config("q"), "a", config("r", "x"))
    assert str(e) == "q:_ -a-> r:x,_"
