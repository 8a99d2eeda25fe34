"""Two-player reachability games on finite fragments.

Eve wins a play that reaches a target.  The attractor is computed inside
the fragment only: frontier vertices never join it, so a winning answer is
sound for the infinite game while a losing one may just mean the fragment
is too small.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fragment import Edge, Fragment, dumps, fragment_from_dict, fragment_to_dict
from .pda import Config, FormatError, InputContractError, parse_config

EVE = "eve"
ADAM = "adam"


@dataclass(frozen=True)
class GameFragment:
    fragment: Fragment
    owner: dict[str, str]
    targets: frozenset[Config] | None = None

    def target_set(self, finals: frozenset[str] | None = None) -> frozenset[Config]:
        if self.targets is not None:
            return self.targets
        finals = finals or frozenset()
        return frozenset(v for v in self.fragment.vertices
                         if v.state in finals and len(v.stack) == 1)


@dataclass(frozen=True)
class Attractor:
    winning: frozenset[Config]
    levels: dict[Config, int]
    strategy: dict[Config, Edge] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "winning": [str(c) for c in sorted(self.winning)],
            "levels": {str(c): k for c, k in sorted(self.levels.items())},
            "strategy": [{"from": str(e.source), "label": e.letter, "to": str(e.target)}
                         for _, e in sorted(self.strategy.items())],
        }


def attractor(game: GameFragment, finals: frozenset[str] | None = None) -> Attractor:
    """Eve's attractor to the targets, with levels and a positional strategy.

    ``finals`` supplies the final states when ``game.targets`` is None.
    Vertices without out-edges (including frontier ones) only win as targets.
    """
    fragment = game.fragment
    for v in fragment.vertices:
        if v.state not in game.owner:
            raise InputContractError(f"state {v.state!r} has no owner")
        if game.owner[v.state] not in (EVE, ADAM):
            raise InputContractError(f"owner of {v.state!r} must be 'eve' or 'adam'")
    levels = {t: 0 for t in game.target_set(finals) if t in fragment.vertex_set}
    strategy: dict[Config, Edge] = {}
    candidates = [v for v in fragment.vertices
                  if v not in levels and v not in fragment.frontier and fragment.out_edges[v]]
    k = 0
    while True:
        entering = []
        for v in candidates:
            out = fragment.out_edges[v]
            if game.owner[v.state] == EVE:
                good = [e for e in out if levels.get(e.target, k + 1) <= k]
                if good:
                    entering.append(v)
                    strategy[v] = min(good, key=lambda e: (levels[e.target], e.letter, e.target))
            elif all(levels.get(e.target, k + 1) <= k for e in out):
                entering.append(v)
        if not entering:
            break
        k += 1
        for v in entering:
            levels[v] = k
        done = set(entering)
        candidates = [v for v in candidates if v not in done]
    return Attractor(frozenset(levels), levels, strategy)


def game_from_dict(obj: object) -> GameFragment:
    if not isinstance(obj, dict):
        raise FormatError("expected an object", "$")
    fragment = fragment_from_dict(obj)
    if not isinstance(fragment, Fragment):
        fragment = fragment.fragment
    owner = obj.get("owner")
    if not isinstance(owner, dict):
        raise FormatError("expected an object", "owner")
    for state, who in owner.items():
        if who not in (EVE, ADAM):
            raise FormatError("expected 'eve' or 'adam'", f"owner.{state}")
    targets = None
    if "targets" in obj:
        raw = obj["targets"]
        if not isinstance(raw, list):
            raise FormatError("expected an array", "targets")
        try:
            targets = frozenset(parse_config(t) for t in raw)
        except (InputContractError, AttributeError) as exc:
            raise FormatError(str(exc), "targets") from None
    return GameFragment(fragment, dict(owner), targets)


def game_to_dict(game: GameFragment) -> dict:
    out = fragment_to_dict(game.fragment)
    out["owner"] = dict(sorted(game.owner.items()))
    if game.targets is not None:
        out["targets"] = [str(t) for t in sorted(game.targets)]
    return out


def encode_game(game: GameFragment) -> str:
    return dumps(game_to_dict(game))
