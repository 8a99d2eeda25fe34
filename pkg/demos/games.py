"""
From ranks to reachability games
================================

Give every state to one player and the attractor is just the level-set
construction again.  Hand some states to an opponent and the winning region
shrinks.
"""

from pdmark import Bounds, builtin_pda, config, explore, rank_of
from pdmark.games import ADAM, EVE, GameFragment, attractor

pda = builtin_pda("example1-dead")
fragment = explore(pda, [config("q_in")], Bounds(4, 2))

solo = attractor(GameFragment(fragment, {q: EVE for q in pda.states}), pda.finals)
inner = [v for v in fragment.vertices if v not in fragment.frontier]
print("single player, levels equal ranks:",
      all(solo.levels.get(v, float("inf")) == rank_of(pda, v) for v in inner))

# Adam at q_in can always run off to the dead state.
owner = {q: ADAM if q == "q_in" else EVE for q in pda.states}
duel = attractor(GameFragment(fragment, owner), pda.finals)
print("q_in:_ winning for Eve?", config("q_in") in duel.winning)
for v, e in sorted(duel.strategy.items())[:5]:
    print(f"  at {v} play {e.letter} -> {e.target}")
