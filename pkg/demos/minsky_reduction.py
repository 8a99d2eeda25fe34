"""
Running a counter machine through markings
==========================================

A two-counter machine is simulated twice: once with plain integers, once on
the gadget, where each increment or decrement is a pair of pushes and each
zero test is answered from marked edges only.  The two runs agree.
"""

from pdmark.gadget import build_gadget
from pdmark.minsky import (Canonical, CounterMachine, Dec, Halt, IfZero, Inc, Sampled,
                           compare, run_direct, run_via_marking)

# Load 2 into counter 1, then move it over to counter 2 one unit at a time.
machine = CounterMachine({
    "s0": Inc(1, "s1"), "s1": Inc(1, "s2"),
    "s2": IfZero(1, "done", "s3"),
    "s3": Dec(1, "s4"), "s4": Inc(2, "s2"),
    "done": Halt(),
}, "s0")

direct = run_direct(machine, 50)
print("direct:", direct.to_dict())
for state, counters in direct.trace:
    print(f"  {state:5} {counters}")

via = run_via_marking(machine, build_gadget(), Sampled(7), 50)
print("via a sampled marking:", via.to_dict(), "same trace:", via.trace == direct.trace)
print("canonical:", run_via_marking(machine, build_gadget(), Canonical(), 50).to_dict())

print("compare:", compare(machine, 50, seeds=[1, 7, 13]).to_dict()["agree"])
