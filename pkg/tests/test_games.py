import json

import pytest

from oracles import strategy_wins
from pdmark.fragment import Bounds, explore
from pdmark.games import (ADAM, EVE, GameFragment, attractor, encode_game, game_from_dict,
                          game_to_dict)
from pdmark.pda import FormatError, InputContractError, config
from pdmark.rank import rank_of


def owners(pda, default=EVE, **special):
    out = {q: default for q in pda.states}
    out.update(special)
    return out


def test_single_player_levels_are_ranks(ex1, ex1_frag5):
    att = attractor(GameFragment(ex1_frag5, owners(ex1)), ex1.finals)
    for v in ex1_frag5.vertices:
        if v not in ex1_frag5.frontier:
            assert att.levels.get(v) == rank_of(ex1, v), v


def test_adam_escapes_to_the_dead_state(dead):
    f = explore(dead, [config("q_in")], Bounds(4, 2))
    att = attractor(GameFragment(f, owners(dead, q_in=ADAM)), dead.finals)
    assert config("q_in") not in att.winning
    assert config("q_♯") in att.winning
    eve = attractor(GameFragment(f, owners(dead)), dead.finals)
    assert eve.levels[config("q_in")] == 2


def test_empty_targets(ex1, ex1_frag5):
    att = attractor(GameFragment(ex1_frag5, owners(ex1, ADAM), frozenset()))
    assert att.winning == frozenset() and att.strategy == {}


@pytest.mark.parametrize("special", [{}, {"q_♯": ADAM}, {"q_in": ADAM}, {"q_dead": ADAM}])
def test_strategy_playout(dead, special):
    f = explore(dead, [config("q_in")], Bounds(4, 2))
    owner = owners(dead, **special)
    game = GameFragment(f, owner)
    att = attractor(game, dead.finals)
    targets = game.target_set(dead.finals)
    for v in att.winning:
        assert strategy_wins(f, owner, att.strategy, targets, v, att.levels[v])
        if owner[v.state] == EVE and v not in targets:
            assert att.levels[att.strategy[v].target] == att.levels[v] - 1


def test_dead_ends_lose(gadget):
    f = explore(gadget, [config("q_fin", "222")], Bounds(2, 1))
    att = attractor(GameFragment(f, owners(gadget, ADAM)), gadget.finals)
    assert config("q_fin", "222") not in att.winning


def test_monotone_in_the_fragment(dead):
    owner = owners(dead, **{"q_♯": ADAM})
    small = explore(dead, [config("q_in")], Bounds(3, 2))
    big = explore(dead, [config("q_in")], Bounds(5, 3))
    w_small = attractor(GameFragment(small, owner), dead.finals).winning
    w_big = attractor(GameFragment(big, owner), dead.finals).winning
    inner = {v for v in small.vertices if v not in small.frontier}
    assert w_small & inner <= w_big


def test_owner_checks(ex1, ex1_frag5):
    with pytest.raises(InputContractError):
        attractor(GameFragment(ex1_frag5, {"q_in": EVE}), ex1.finals)
    with pytest.raises(InputContractError):
        attractor(GameFragment(ex1_frag5, owners(ex1, "bob")), ex1.finals)


def test_game_json(ex1):
    f = explore(ex1, [config("q_in")], Bounds(2, 1))
    game = GameFragment(f, owners(ex1, **{"q_♯": ADAM}), frozenset({config("q_fin")}))
    text = encode_game(game)
    back = game_from_dict(json.loads(text))
    assert back == game and encode_game(back) == text
    doc = game_to_dict(game)
    doc["owner"]["q_in"] = "carol"
    with pytest.raises(FormatError, match="owner.q_in"):
        game_from_dict(doc)
