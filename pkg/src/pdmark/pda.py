"""Deterministic real-time pushdown automata and their configuration graphs.

Stacks are tuples of symbol names, top first, with the bottom symbol ``_``
materialized as the last element.  A configuration ``(q, ("a", "b", "_"))``
is written ``q:a,b,_`` in text.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

BOTTOM = "_"


class InputContractError(ValueError):
    """An argument violates the documented contract of an operation."""


class FormatError(ValueError):
    """A serialized payload does not follow its schema.

    ``path`` locates the offending field, e.g. ``edges[3].to``.
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class Config(NamedTuple):
    state: str
    stack: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.state}:{','.join(self.stack)}"

    @property
    def height(self) -> int:
        """Number of non-bottom symbols."""
        return len(self.stack) - 1

    @property
    def top(self) -> str:
        return self.stack[0]


class TransitionRule(NamedTuple):
    state: str
    top: str
    input: str
    next_state: str
    push: tuple[str, ...]


class Violation(NamedTuple):
    kind: str
    subject: str
    detail: str


def parse_config(text: str) -> Config:
    """Parse ``state:sym,...,_`` into a Config (structure only, no PDA)."""
    state, sep, stack_text = text.strip().rpartition(":")
    if not sep or not state:
        raise InputContractError(f"bad configuration {text!r}: expected 'state:sym,...,_'")
    stack = tuple(stack_text.split(","))
    if any(not s for s in stack):
        raise InputContractError(f"bad configuration {text!r}: empty stack symbol")
    if stack[-1] != BOTTOM or BOTTOM in stack[:-1]:
        raise InputContractError(
            f"bad configuration {text!r}: stack must end with a single '{BOTTOM}'")
    return Config(state, stack)


def config(state: str, *symbols: str) -> Config:
    """Shorthand: ``config("q", "a", "b")`` is ``q:a,b,_``."""
    return Config(state, tuple(symbols) + (BOTTOM,))


@dataclass(frozen=True, eq=True)
class Pda:
    """The tuple (states, input alphabet, stack alphabet, bottom, initial, finals, rules).

    Construction never fails; call :func:`validate` to check the invariants.
    """

    states: frozenset[str]
    input_alphabet: frozenset[str]
    stack_alphabet: frozenset[str]
    initial: str
    finals: frozenset[str]
    rules: tuple[TransitionRule, ...]
    bottom: str = BOTTOM
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        # canonical rule order; duplicates are kept so validate() can report them
        object.__setattr__(self, "rules", tuple(sorted(self.rules)))

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.states, self.input_alphabet, self.stack_alphabet,
                     self.initial, self.finals, self.rules, self.bottom))

    @cached_property
    def table(self) -> dict[tuple[str, str, str], TransitionRule]:
        """(state, top, letter) -> rule; the first rule wins on duplicates."""
        table: dict[tuple[str, str, str], TransitionRule] = {}
        for rule in self.rules:
            table.setdefault((rule.state, rule.top, rule.input), rule)
        return table

    @cached_property
    def rules_by_source(self) -> dict[tuple[str, str], tuple[TransitionRule, ...]]:
        index: dict[tuple[str, str], list[TransitionRule]] = {}
        for rule in self.table.values():
            index.setdefault((rule.state, rule.top), []).append(rule)
        return {k: tuple(sorted(v, key=lambda r: r.input)) for k, v in index.items()}

    @cached_property
    def rules_by_target(self) -> dict[str, tuple[TransitionRule, ...]]:
        index: dict[str, list[TransitionRule]] = {}
        for rule in self.table.values():
            index.setdefault(rule.next_state, []).append(rule)
        return {k: tuple(v) for k, v in index.items()}

    @property
    def final_configs(self) -> list[Config]:
        return [Config(q, (self.bottom,)) for q in sorted(self.finals)]

    @property
    def initial_config(self) -> Config:
        return Config(self.initial, (self.bottom,))

    def is_final(self, c: Config) -> bool:
        return c.state in self.finals and len(c.stack) == 1

    def check_config(self, c: Config) -> Config:
        if not isinstance(c, tuple) or len(c) != 2:
            raise InputContractError(f"not a configuration: {c!r}")
        c = Config(c[0], tuple(c[1]))
        if c.state not in self.states:
            raise InputContractError(f"{c}: unknown state {c.state!r}")
        if not c.stack or c.stack[-1] != self.bottom or self.bottom in c.stack[:-1]:
            raise InputContractError(f"{c}: stack must end with exactly one '{self.bottom}'")
        for sym in c.stack:
            if sym not in self.stack_alphabet:
                raise InputContractError(f"{c}: unknown stack symbol {sym!r}")
        return c


def _name_problem(name: object, forbidden: str) -> str | None:
    if not isinstance(name, str) or not name:
        return "must be a non-empty string"
    if any(ch.isspace() for ch in name):
        return "contains whitespace"
    bad = [ch for ch in forbidden if ch in name]
    if bad:
        return f"contains {bad[0]!r}"
    return None


def validate(pda: Pda) -> list[Violation]:
    """Return every invariant violation of ``pda`` (empty list when valid)."""
    out: list[Violation] = []
    for letter in sorted(pda.input_alphabet):
        # commas are allowed in letters: gadget letters are spelled push(3,1,2)
        problem = _name_problem(letter, ":")
        if problem:
            out.append(Violation("bad-letter", repr(letter), problem))
    for sym in sorted(pda.stack_alphabet):
        problem = _name_problem(sym, ",:")
        if problem:
            out.append(Violation("bad-symbol", repr(sym), problem))
    if pda.bottom not in pda.stack_alphabet:
        out.append(Violation("missing-bottom", pda.bottom, "bottom symbol not in stack alphabet"))
    if pda.initial not in pda.states:
        out.append(Violation("unknown-state", "initial", f"{pda.initial!r} is not a state"))
    for q in sorted(pda.finals - pda.states):
        out.append(Violation("unknown-state", "finals", f"{q!r} is not a state"))

    seen: dict[tuple[str, str, str], int] = {}
    for i, rule in enumerate(pda.rules):
        subject = f"rules[{i}] {rule.state},{rule.top},{rule.input}"
        for fname, value in (("state", rule.state), ("next_state", rule.next_state)):
            if value not in pda.states:
                out.append(Violation("unknown-state", subject, f"{fname} {value!r} undeclared"))
        if rule.input not in pda.input_alphabet:
            out.append(Violation("unknown-letter", subject, f"input {rule.input!r} undeclared"))
        for sym in (rule.top, *rule.push):
            if sym not in pda.stack_alphabet:
                out.append(Violation("unknown-symbol", subject, f"symbol {sym!r} undeclared"))
        if len(rule.push) > 2:
            out.append(Violation("push-too-long", subject, f"pushes {len(rule.push)} symbols"))
        if rule.top == pda.bottom:
            if not rule.push or rule.push[-1] != pda.bottom:
                out.append(Violation("bottom-removed", subject, "bottom symbol must be kept"))
            elif pda.bottom in rule.push[:-1]:
                out.append(Violation("bottom-pushed", subject, "bottom symbol pushed twice"))
        elif pda.bottom in rule.push:
            out.append(Violation("bottom-pushed", subject, "bottom symbol pushed above the bottom"))
        key = (rule.state, rule.top, rule.input)
        if key in seen:
            out.append(Violation("nondeterministic", subject,
                                 f"duplicates rules[{seen[key]}] on the same key"))
        else:
            seen[key] = i
    return out


def _apply(rule: TransitionRule, c: Config) -> Config:
    return Config(rule.next_state, rule.push + c.stack[1:])


def step(pda: Pda, c: Config, letter: str) -> Config | None:
    """The unique ``letter``-successor of ``c``, or None when undefined."""
    c = pda.check_config(c)
    rule = pda.table.get((c.state, c.stack[0], letter))
    return None if rule is None else _apply(rule, c)


def iter_successors(pda: Pda, c: Config) -> list[tuple[str, Config]]:
    """Unchecked successor enumeration, sorted by letter."""
    return [(r.input, _apply(r, c)) for r in pda.rules_by_source.get((c.state, c.stack[0]), ())]


def successors(pda: Pda, c: Config) -> list[tuple[str, Config]]:
    return iter_successors(pda, pda.check_config(c))


def iter_predecessors(pda: Pda, c: Config) -> list[tuple[str, Config]]:
    out = []
    for rule in pda.rules_by_target.get(c.state, ()):
        n = len(rule.push)
        if c.stack[:n] != rule.push:
            continue
        rest = c.stack[n:]
        if rule.top == pda.bottom:
            if rest:
                continue
        elif not rest:
            continue
        out.append((rule.input, Config(rule.state, (rule.top,) + rest)))
    out.sort(key=lambda p: (p[1], p[0]))
    return out


def predecessors(pda: Pda, c: Config) -> list[tuple[str, Config]]:
    """All ``(a, c0)`` with ``step(pda, c0, a) == c``, in canonical order."""
    return iter_predecessors(pda, pda.check_config(c))


def all_configs(pda: Pda, max_height: int, states: Iterable[str] | None = None) -> list[Config]:
    """Every configuration with at most ``max_height`` non-bottom symbols."""
    symbols = sorted(pda.stack_alphabet - {pda.bottom})
    stacks: list[tuple[str, ...]] = [(pda.bottom,)]
    layer = stacks
    for _ in range(max_height):
        layer = [(s,) + st for st in layer for s in symbols]
        stacks.extend(layer)
    qs = sorted(pda.states if states is None else states)
    return sorted(Config(q, st) for q in qs for st in stacks)


# -- builtins -----------------------------------------------------------------

SHARP = "♯"


def _example1_rules() -> list[TransitionRule]:
    rules = []
    tops = ("a", "b", BOTTOM)
    for g in tops:
        for x in ("a", "b"):
            push = (x, g)
            rules.append(TransitionRule("q_in", g, x, "q_in", push))
        rules.append(TransitionRule("q_in", g, SHARP, "q_♯", (g,)))
    for g in ("a", "b"):
        for x in ("a", "b"):
            rules.append(TransitionRule("q_♯", g, x, "q_♯", () if g == x else (x, g)))
        rules.append(TransitionRule("q_♯", g, SHARP, "q_♯", (g,)))
    for x in ("a", "b", SHARP):
        rules.append(TransitionRule("q_♯", BOTTOM, x, "q_fin", (BOTTOM,)))
        rules.append(TransitionRule("q_fin", BOTTOM, x, "q_fin", (BOTTOM,)))
    return rules


def _example1() -> Pda:
    return Pda(
        states=frozenset({"q_in", "q_♯", "q_fin"}),
        input_alphabet=frozenset({"a", "b", SHARP}),
        stack_alphabet=frozenset({"a", "b", BOTTOM}),
        initial="q_in",
        finals=frozenset({"q_fin"}),
        rules=tuple(_example1_rules()),
        name="example1",
    )


def _example1_dead() -> Pda:
    letters = ("a", "b", SHARP, "d")
    rules = _example1_rules()
    for g in ("a", "b", BOTTOM):
        rules.append(TransitionRule("q_in", g, "d", "q_dead", (g,)))
        for x in letters:
            rules.append(TransitionRule("q_dead", g, x, "q_dead", (g,)))
    return Pda(
        states=frozenset({"q_in", "q_♯", "q_fin", "q_dead"}),
        input_alphabet=frozenset(letters),
        stack_alphabet=frozenset({"a", "b", BOTTOM}),
        initial="q_in",
        finals=frozenset({"q_fin"}),
        rules=tuple(rules),
        name="example1-dead",
    )


_BUILTINS = {"example1": _example1, "example1-dead": _example1_dead}


def builtin_pda(name: str) -> Pda:
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise LookupError(f"unknown builtin PDA {name!r}; known: {sorted(_BUILTINS)}") from None


# -- JSON ---------------------------------------------------------------------

def pda_to_dict(pda: Pda) -> dict:
    out = {
        "states": sorted(pda.states),
        "input_alphabet": sorted(pda.input_alphabet),
        "stack_alphabet": sorted(pda.stack_alphabet),
        "initial": pda.initial,
        "finals": sorted(pda.finals),
        "rules": [
            {"state": r.state, "top": r.top, "input": r.input, "next": r.next_state,
             "push": list(r.push)}
            for r in sorted(pda.rules)
        ],
    }
    if pda.name:
        out["name"] = pda.name
    return out


def encode_pda(pda: Pda) -> str:
    return json.dumps(pda_to_dict(pda), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _str_list(obj: dict, key: str, path: str = "") -> list[str]:
    value = obj.get(key)
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise FormatError("expected an array of strings", f"{path}{key}")
    return value


def pda_from_dict(obj: object) -> Pda:
    if not isinstance(obj, dict):
        raise FormatError("expected an object", "$")
    states = _str_list(obj, "states")
    letters = _str_list(obj, "input_alphabet")
    symbols = _str_list(obj, "stack_alphabet")
    if BOTTOM not in symbols:
        raise FormatError(f"must include {BOTTOM!r}", "stack_alphabet")
    if not isinstance(obj.get("initial"), str):
        raise FormatError("expected a string", "initial")
    finals = _str_list(obj, "finals")
    raw_rules = obj.get("rules")
    if not isinstance(raw_rules, list):
        raise FormatError("expected an array", "rules")
    rules = []
    for i, r in enumerate(raw_rules):
        path = f"rules[{i}]."
        if not isinstance(r, dict):
            raise FormatError("expected an object", f"rules[{i}]")
        for key in ("state", "top", "input", "next"):
            if not isinstance(r.get(key), str):
                raise FormatError("expected a string", path + key)
        push = _str_list(r, "push", path)
        if len(push) > 2:
            raise FormatError("at most two symbols", path + "push")
        rules.append(TransitionRule(r["state"], r["top"], r["input"], r["next"], tuple(push)))
    name = obj.get("name", "")
    return Pda(frozenset(states), frozenset(letters), frozenset(symbols), obj["initial"],
               frozenset(finals), tuple(rules), BOTTOM, name if isinstance(name, str) else "")


def decode_pda(text: str) -> Pda:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}", "$") from exc
    return pda_from_dict(obj)
