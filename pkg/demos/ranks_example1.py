"""
Ranks on a small pushdown graph
===============================

The builtin ``example1`` automaton copies a/b letters onto its stack, then
after a sharp pops matching letters.  Its only final configuration is
``q_fin:_``.  We compute ranks three ways and watch them agree.
"""

from pdmark import builtin_pda, config, level_sets, rank_of, rank_via_saturation
from pdmark.pda import all_configs

pda = builtin_pda("example1")

# The first level sets, grown backwards from the final configuration.
for i, level in enumerate(level_sets(pda, 3).levels):
    print(f"W_{i}:", ", ".join(str(c) for c in sorted(level)))

# A rank is the index of the first level set holding the configuration.
for c in [config("q_fin"), config("q_♯"), config("q_in"), config("q_in", "a", "b")]:
    print(c, "has rank", rank_of(pda, c))

# The weighted saturation engine never enumerates level sets at all.
same = all(rank_of(pda, c) == rank_via_saturation(pda, c) for c in all_configs(pda, 4))
print("engines agree on every config of height <= 4:", same)
