"""The counter-encoding pushdown automaton and its marking-based zero tests.

Stack symbols are triples ``(c1, c2, 2)`` with ``c1, c2 ∈ {1, 2, 3}``, named
by their digits (``"312"``).  The componentwise sums ``(k1, k2, k3)`` of a
stack encode the counters ``(k1 - k3, k2 - k3)``.

States and letters::

    q_push        push(c1,c2,2) pushes a symbol, sw1/sw2/sw3 switch to pop mode
    p<i>w<w>      pop at speed i: a symbol costs its i-th component in ticks t
    q_fin         reached by t from p<i>w0 on an empty stack; loops on t

From ``(q_push, σ)`` the rank is ``2 + min(k1, k2, k3)`` and the switch edge
to ``p_i`` is rank-decreasing exactly when ``k_i`` is minimal, which is what
the zero tests read.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product
from typing import NamedTuple

from .fragment import Bounds, Fragment, MarkedFragment, explore
from .pda import BOTTOM, Config, InputContractError, Pda, TransitionRule
from .rank import ranker

PUSH_STATE = "q_push"
FINAL_STATE = "q_fin"
TICK = "t"
SYMBOLS = tuple((c1, c2, 2) for c1, c2 in product((1, 2, 3), repeat=2))


class Triple(NamedTuple):
    k1: int
    k2: int
    k3: int


class CounterPair(NamedTuple):
    c1: int
    c2: int


def symbol_name(sym: tuple[int, int, int]) -> str:
    return "".join(map(str, sym))


def push_name(sym: tuple[int, int, int]) -> str:
    return "push({},{},{})".format(*sym)


def switch_name(i: int) -> str:
    return f"sw{i}"


def pop_state(i: int, wait: int = 0) -> str:
    return f"p{i}w{wait}"


_SYMBOL_OF = {symbol_name(s): s for s in SYMBOLS}


@lru_cache(maxsize=None)
def build_gadget() -> Pda:
    states = {PUSH_STATE, FINAL_STATE} | {pop_state(i, w) for i in (1, 2, 3) for w in (0, 1, 2)}
    names = [symbol_name(s) for s in SYMBOLS]
    tops = names + [BOTTOM]
    letters = [push_name(s) for s in SYMBOLS] + [switch_name(i) for i in (1, 2, 3)] + [TICK]
    rules = []
    for top in tops:
        for s in SYMBOLS:
            rules.append(TransitionRule(PUSH_STATE, top, push_name(s), PUSH_STATE,
                                        (symbol_name(s), top)))
        for i in (1, 2, 3):
            rules.append(TransitionRule(PUSH_STATE, top, switch_name(i), pop_state(i), (top,)))
    for i in (1, 2, 3):
        for s in SYMBOLS:
            name = symbol_name(s)
            if s[i - 1] == 1:
                rules.append(TransitionRule(pop_state(i), name, TICK, pop_state(i), ()))
            else:
                rules.append(TransitionRule(pop_state(i), name, TICK,
                                            pop_state(i, s[i - 1] - 1), (name,)))
            rules.append(TransitionRule(pop_state(i, 1), name, TICK, pop_state(i), ()))
            rules.append(TransitionRule(pop_state(i, 2), name, TICK, pop_state(i, 1), (name,)))
        rules.append(TransitionRule(pop_state(i), BOTTOM, TICK, FINAL_STATE, (BOTTOM,)))
    rules.append(TransitionRule(FINAL_STATE, BOTTOM, TICK, FINAL_STATE, (BOTTOM,)))
    return Pda(
        states=frozenset(states),
        input_alphabet=frozenset(letters),
        stack_alphabet=frozenset(tops),
        initial=PUSH_STATE,
        finals=frozenset({FINAL_STATE}),
        rules=tuple(rules),
        name="gadget",
    )


def triple_of(c: Config) -> Triple:
    k = [0, 0, 0]
    for name in c.stack[:-1]:
        sym = _SYMBOL_OF.get(name)
        if sym is None:
            raise InputContractError(f"{c}: {name!r} is not a gadget stack symbol")
        k[0] += sym[0]
        k[1] += sym[1]
        k[2] += sym[2]
    if c.stack[-1:] != (BOTTOM,):
        raise InputContractError(f"{c}: stack must end with {BOTTOM!r}")
    return Triple(*k)


def counters_of(c: Config) -> CounterPair:
    k1, k2, k3 = triple_of(c)
    return CounterPair(k1 - k3, k2 - k3)


def even_counters_of(c: Config) -> CounterPair:
    """Counters of an even configuration, where each unit costs two pushes."""
    k = triple_of(c)
    if any(x % 2 for x in k):
        raise InputContractError(f"{c}: triple {tuple(k)} is not all even")
    return CounterPair((k.k1 - k.k3) // 2, (k.k2 - k.k3) // 2)


def push_letter(iota1: int, iota2: int) -> str:
    if iota1 not in (-1, 0, 1) or iota2 not in (-1, 0, 1):
        raise InputContractError("counter deltas must be in {-1, 0, 1}")
    return push_name((2 + iota1, 2 + iota2, 2))


def zero_oracle(c: Config, which: int) -> bool:
    """Ground truth by arithmetic: ``k_which == k3``."""
    k = triple_of(c)
    return k[which - 1] == k.k3


# -- zero tests ----------------------------------------------------------------

def _symbol_of_letter(letter: str) -> tuple[int, int, int]:
    return tuple(int(x) for x in letter[len("push("):-1].split(","))


def _check_args(pda: Pda, c: Config, which: int) -> None:
    if pda is not build_gadget() and pda != build_gadget():
        raise InputContractError("zero tests need the gadget automaton")
    pda.check_config(c)
    if c.state != PUSH_STATE:
        raise InputContractError(f"{c}: zero tests start in {PUSH_STATE}")
    if which not in (1, 2):
        raise InputContractError(f"which must be 1 or 2, got {which!r}")


def _push(c: Config, letter: str) -> Config:
    name = symbol_name(_symbol_of_letter(letter))
    return Config(c.state, (name,) + c.stack)


def ascent_letter(which: int) -> str:
    """Counter-neutral push raising the component that is *not* compared."""
    return push_name((2, 3, 2)) if which == 1 else push_name((3, 2, 2))


def probe_letters(which: int) -> tuple[str, str]:
    """(probe after only sw_which is marked, probe after only sw3 is marked)."""
    if which == 1:
        return push_name((3, 3, 2)), push_name((1, 3, 2))
    return push_name((3, 3, 2)), push_name((3, 1, 2))


def _ascent_gap(c: Config, which: int) -> int:
    k = triple_of(c)
    other = k[2 - which]  # k2 for which=1, k1 for which=2
    return max(0, k[which - 1] - other, k.k3 - other)


def zero_test_canonical(pda: Pda, c: Config, which: int) -> bool:
    """``k_which == k3`` read off the canonical marking.

    Pushes the ascent symbol ``m`` times, ``m`` from 0 up to the gap plus one,
    and succeeds as soon as both switch edges to ``p_which`` and ``p_3`` are
    marked.  The triple is only used to bound ``m``.
    """
    _check_args(pda, c, which)
    r = ranker(pda)
    letter = ascent_letter(which)
    for _ in range(_ascent_gap(c, which) + 2):
        here = r.distance(c)
        marked = {i for i in (1, 2, 3)
                  if r.distance(Config(pop_state(i), c.stack)) < here}
        if {which, 3} <= marked:
            return True
        c = _push(c, letter)
    return False


def robust_pairs(c: Config, which: int) -> int:
    return math.ceil(_ascent_gap(c, which) / 2) + 1


def zero_test_region(c: Config, which: int) -> list[Config]:
    """Configurations whose out-edges :func:`zero_test_robust` inspects."""
    region = []
    letter = ascent_letter(which)
    probes = probe_letters(which)
    for _ in range(robust_pairs(c, which) + 1):
        region.append(c)
        region.extend(_push(c, p) for p in probes)
        mid = _push(c, letter)
        region.append(mid)
        c = _push(mid, letter)
    return region[:-1]


def region_fragment(pda: Pda, c: Config, which: int | tuple[int, ...] = (1, 2)) -> Fragment:
    """A fragment in which every configuration of the zero-test region is expanded."""
    whiches = (which,) if isinstance(which, int) else which
    roots = {x for w in whiches for x in zero_test_region(c, w)}
    height = max(x.height for x in roots) + 1
    return explore(pda, roots, Bounds(1, height))


def _marked_switches(marking: MarkedFragment, c: Config) -> set[int]:
    if not marking.fragment.is_expanded(c):
        raise InputContractError(f"marking does not cover {c}")
    out = set()
    for e in marking.out_edges(c):
        if e.letter.startswith("sw") and marking.is_marked(e):
            out.add(int(e.letter[2:]))
    return out


def _follow(marking: MarkedFragment, c: Config, letter: str) -> Config:
    if not marking.fragment.is_expanded(c):
        raise InputContractError(f"marking does not cover {c}")
    for e in marking.out_edges(c):
        if e.letter == letter:
            return e.target
    raise InputContractError(f"{c} has no {letter} edge in the marking")


def zero_test_robust(pda: Pda, marking: MarkedFragment, c: Config, which: int) -> bool:
    """``k_which == k3`` at an even configuration, under any well-formed marking.

    Climbs by pairs of ascent pushes and succeeds at the first visited
    configuration where either both switches to ``p_which`` and ``p_3`` are
    marked, or only one is and the matching probe push marks the other.
    With all components even each success pins ``k_which == k3``.
    """
    _check_args(pda, c, which)
    if any(x % 2 for x in triple_of(c)):
        raise InputContractError(f"{c}: robust zero test needs an even configuration")
    letter = ascent_letter(which)
    probe_which, probe_third = probe_letters(which)
    pairs = robust_pairs(c, which)
    for m in range(pairs + 1):
        marked = _marked_switches(marking, c)
        if which in marked and 3 in marked:
            return True
        if which in marked:
            if 3 in _marked_switches(marking, _follow(marking, c, probe_which)):
                return True
        elif 3 in marked:
            if which in _marked_switches(marking, _follow(marking, c, probe_third)):
                return True
        if m < pairs:
            c = _follow(marking, _follow(marking, c, letter), letter)
    return False
