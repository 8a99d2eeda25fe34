"""
Shortest-path markings
======================

Marking an edge means "this edge lies on a shortest path to a final
configuration".  The canonical marking marks all such edges; a well-formed
marking may drop some, as long as every vertex of finite positive rank keeps
at least one.
"""

from pdmark import (Bounds, MarkedFragment, builtin_pda, check_well_formed, config, explore,
                    export_dot, mark_fragment, sample_well_formed)

pda = builtin_pda("example1")
fragment = explore(pda, [config("q_in")], Bounds(5, 3))
print(len(fragment.vertices), "vertices,", len(fragment.edges), "edges,",
      len(fragment.frontier), "on the frontier")

canonical = mark_fragment(pda, fragment)
print("canonical marking keeps", len(canonical.marked), "edges; ok =",
      check_well_formed(pda, canonical).ok)

# Seeded samples keep a random subset, repaired so no vertex is stranded.
for seed in (1, 2, 3):
    m = sample_well_formed(pda, fragment, seed)
    print(f"seed {seed}: {len(m.marked)} marked, ok = {check_well_formed(pda, m).ok}")

# Mark an edge that climbs away from the target and the checker objects.
bad_edge = next(e for e in fragment.edges if e.source == config("q_in") and e.letter == "a")
verdict = check_well_formed(pda, MarkedFragment(fragment, canonical.marked | {bad_edge}))
for v in verdict.violations:
    print("condition", v.condition, "-", v.subject, "-", v.detail)

# Marked edges render bold in Graphviz.
print(next(line for line in export_dot(canonical).splitlines() if "bold" in line))
