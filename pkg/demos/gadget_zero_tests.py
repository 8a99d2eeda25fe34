"""
Reading counters off a marking
==============================

The gadget automaton stores a triple (k1, k2, k3) as column sums of its stack
symbols.  Two integer counters live in the differences k1 - k3 and k2 - k3.
Shortest paths to the final state reveal which component is smallest, and a
few well-chosen pushes turn that into a test for "counter is zero".
"""

from pdmark.gadget import (PUSH_STATE, build_gadget, counters_of, region_fragment,
                           triple_of, zero_oracle, zero_test_canonical, zero_test_robust)
from pdmark import config, mark_fragment, sample_well_formed

gadget = build_gadget()
print(len(gadget.states), "states,", len(gadget.rules), "rules")

for stack in [("222",), ("212",), ("312",), ("312", "132")]:
    c = config(PUSH_STATE, *stack)
    print(c, "triple", tuple(triple_of(c)), "counters", tuple(counters_of(c)),
          "zero(1):", zero_test_canonical(gadget, c, 1),
          "zero(2):", zero_test_canonical(gadget, c, 2))

# On even configurations the test survives any well-formed marking,
# not just the canonical one.
c = config(PUSH_STATE, "312", "312")
fragment = region_fragment(gadget, c, 1)
canon = mark_fragment(gadget, fragment)
answers = {zero_test_robust(gadget, sample_well_formed(gadget, fragment, s, canonical=canon), c, 1)
           for s in range(1, 51)}
print(c, "robust answers over 50 markings:", answers, "oracle:", zero_oracle(c, 1))
