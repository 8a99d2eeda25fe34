"""Two-counter machines, run directly or through a marked gadget graph.

Counters range over the integers.  Running "via marking" keeps a gadget
configuration whose halved counters track the machine's counters: every
increment or decrement is two identical pushes, so the configuration stays
even, and every zero test is answered by :func:`~pdmark.gadget.zero_test_robust`
from the marked edges alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

from .fragment import dumps
from .gadget import (build_gadget, even_counters_of, push_letter, region_fragment,
                     zero_test_robust)
from .marking import sample_well_formed
from .pda import Config, FormatError, InputContractError, Pda, step
from .rank import mark_fragment

DEFAULT_HEIGHT_CEILING = 64


class ResourceLimitError(RuntimeError):
    """A bounded resource (stack-height ceiling) was exhausted."""


@dataclass(frozen=True)
class Inc:
    counter: int
    next: str


@dataclass(frozen=True)
class Dec:
    counter: int
    next: str


@dataclass(frozen=True)
class IfZero:
    counter: int
    then: str
    else_: str


@dataclass(frozen=True)
class Halt:
    pass


Instruction = Union[Inc, Dec, IfZero, Halt]


@dataclass(frozen=True)
class CounterMachine:
    program: dict[str, Instruction]
    initial: str

    @property
    def states(self) -> list[str]:
        return sorted(self.program)

    def problems(self) -> list[str]:
        out = []
        if self.initial not in self.program:
            out.append(f"initial state {self.initial!r} undeclared")
        for s, ins in sorted(self.program.items()):
            if isinstance(ins, (Inc, Dec, IfZero)) and ins.counter not in (1, 2):
                out.append(f"{s}: counter must be 1 or 2")
            if isinstance(ins, (Inc, Dec)):
                targets = [ins.next]
            elif isinstance(ins, IfZero):
                targets = [ins.then, ins.else_]
            elif isinstance(ins, Halt):
                targets = []
            else:
                out.append(f"{s}: unknown instruction {ins!r}")
                continue
            out.extend(f"{s}: target {t!r} undeclared" for t in targets if t not in self.program)
        return out


@dataclass(frozen=True)
class Halted:
    steps: int


@dataclass(frozen=True)
class StillRunning:
    fuel: int


@dataclass(frozen=True)
class RunVerdict:
    outcome: Halted | StillRunning
    trace: tuple[tuple[str, tuple[int, int]], ...] = field(default=(), compare=False)

    @property
    def halted(self) -> bool:
        return isinstance(self.outcome, Halted)

    def to_dict(self) -> dict:
        if self.halted:
            return {"outcome": "halted", "steps": self.outcome.steps}
        return {"outcome": "running", "fuel": self.outcome.fuel}


@dataclass(frozen=True)
class Canonical:
    def __str__(self) -> str:
        return "canonical"


@dataclass(frozen=True)
class Sampled:
    seed: int

    def __str__(self) -> str:
        return f"sampled:{self.seed}"


def _checked(machine: CounterMachine, fuel: int) -> None:
    problems = machine.problems()
    if problems:
        raise InputContractError("invalid machine: " + "; ".join(problems))
    if fuel < 1:
        raise InputContractError("fuel must be positive")


def run_direct(machine: CounterMachine, fuel: int) -> RunVerdict:
    """Run from ``(initial, (0, 0))`` for at most ``fuel`` instructions."""
    _checked(machine, fuel)
    state, counters, steps = machine.initial, [0, 0], 0
    trace = []
    while True:
        trace.append((state, tuple(counters)))
        ins = machine.program[state]
        if isinstance(ins, Halt):
            return RunVerdict(Halted(steps), tuple(trace))
        if steps == fuel:
            return RunVerdict(StillRunning(fuel), tuple(trace))
        if isinstance(ins, Inc):
            counters[ins.counter - 1] += 1
            state = ins.next
        elif isinstance(ins, Dec):
            counters[ins.counter - 1] -= 1
            state = ins.next
        else:
            state = ins.then if counters[ins.counter - 1] == 0 else ins.else_
        steps += 1


def run_via_marking(machine: CounterMachine, pda: Pda, mode: Canonical | Sampled,
                    fuel: int, height_ceiling: int = DEFAULT_HEIGHT_CEILING) -> RunVerdict:
    """Simulate ``machine`` on the gadget, branching on marking-based zero tests.

    ``height_ceiling`` caps the stack height of the region a zero test may
    need; exceeding it raises :class:`ResourceLimitError`.
    """
    _checked(machine, fuel)
    if pda is not build_gadget() and pda != build_gadget():
        raise InputContractError("run_via_marking needs the gadget automaton")
    state, steps = machine.initial, 0
    current = pda.initial_config
    trace = []
    while True:
        trace.append((state, tuple(even_counters_of(current))))
        ins = machine.program[state]
        if isinstance(ins, Halt):
            return RunVerdict(Halted(steps), tuple(trace))
        if steps == fuel:
            return RunVerdict(StillRunning(fuel), tuple(trace))
        if isinstance(ins, (Inc, Dec)):
            delta = 1 if isinstance(ins, Inc) else -1
            letter = push_letter(delta, 0) if ins.counter == 1 else push_letter(0, delta)
            current = step(pda, step(pda, current, letter), letter)
            state = ins.next
        else:
            state = ins.then if _zero(pda, mode, current, ins.counter, height_ceiling) else ins.else_
        steps += 1


def _zero(pda: Pda, mode: Canonical | Sampled, c: Config, which: int, ceiling: int) -> bool:
    fragment = region_fragment(pda, c, which)
    if fragment.bounds.max_stack_height > ceiling:
        raise ResourceLimitError(
            f"zero test at {c} needs stack height {fragment.bounds.max_stack_height} "
            f"> ceiling {ceiling}")
    if isinstance(mode, Sampled):
        marking = sample_well_formed(pda, fragment, mode.seed)
    else:
        marking = mark_fragment(pda, fragment)
    return zero_test_robust(pda, marking, c, which)


@dataclass(frozen=True)
class CompareReport:
    direct: RunVerdict
    via: tuple[tuple[str, RunVerdict], ...]

    @property
    def agree(self) -> bool:
        return all(v.outcome == self.direct.outcome for _, v in self.via)

    def to_dict(self) -> dict:
        return {
            "direct": self.direct.to_dict(),
            "via": [{"mode": m, "verdict": v.to_dict()} for m, v in self.via],
            "agree": self.agree,
        }


def compare(machine: CounterMachine, fuel: int, seeds: list[int] = (),
            height_ceiling: int = DEFAULT_HEIGHT_CEILING) -> CompareReport:
    pda = build_gadget()
    direct = run_direct(machine, fuel)
    modes = [Canonical()] + [Sampled(s) for s in seeds]
    via = tuple((str(m), run_via_marking(machine, pda, m, fuel, height_ceiling)) for m in modes)
    return CompareReport(direct, via)


# -- JSON ----------------------------------------------------------------------

def machine_to_dict(machine: CounterMachine) -> dict:
    program = {}
    for s, ins in machine.program.items():
        if isinstance(ins, Halt):
            program[s] = {"op": "halt"}
        elif isinstance(ins, IfZero):
            program[s] = {"op": "ifzero", "counter": ins.counter, "then": ins.then,
                          "else": ins.else_}
        else:
            program[s] = {"op": "inc" if isinstance(ins, Inc) else "dec",
                          "counter": ins.counter, "next": ins.next}
    return {"states": machine.states, "initial": machine.initial, "program": program}


def encode_machine(machine: CounterMachine) -> str:
    return dumps(machine_to_dict(machine))


def machine_from_dict(obj: object) -> CounterMachine:
    if not isinstance(obj, dict):
        raise FormatError("expected an object", "$")
    prog = obj.get("program")
    if not isinstance(prog, dict):
        raise FormatError("expected an object", "program")
    initial = obj.get("initial")
    if not isinstance(initial, str):
        raise FormatError("expected a string", "initial")
    program: dict[str, Instruction] = {}
    for s, item in prog.items():
        path = f"program.{s}"
        if not isinstance(item, dict):
            raise FormatError("expected an object", path)
        op = item.get("op")

        def field_(key, kind=str):
            value = item.get(key)
            if not isinstance(value, kind) or isinstance(value, bool):
                raise FormatError(f"expected {kind.__name__}", f"{path}.{key}")
            return value

        if op == "halt":
            program[s] = Halt()
        elif op in ("inc", "dec"):
            cls = Inc if op == "inc" else Dec
            program[s] = cls(field_("counter", int), field_("next"))
        elif op == "ifzero":
            program[s] = IfZero(field_("counter", int), field_("then"), field_("else"))
        else:
            raise FormatError(f"unknown op {op!r}", f"{path}.op")
    states = obj.get("states")
    if states is not None:
        if not isinstance(states, list) or set(states) != set(program):
            raise FormatError("must list exactly the program's states", "states")
    return CounterMachine(program, initial)


def decode_machine(text: str) -> CounterMachine:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}", "$") from exc
    return machine_from_dict(obj)
