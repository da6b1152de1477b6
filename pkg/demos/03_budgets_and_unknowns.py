"""
Partial results under a budget
==============================

When exploration stops early, every answer that is still printed as '0' or
'1' is guaranteed; the rest are '.'.  Raising the budget only replaces
dots, never flips a definite answer.
"""

from pndead import Budget, analyze, build_net
from pndead.tristate import to_text

###############################################################################
# A counter-like pipeline: tokens travel down a line of stages, and a
# producer with a structurally dead input is attached at the end.

stages = [f"s{i}" for i in range(12)]
places = stages + ["spare", "out"]
transitions = [f"step{i}" for i in range(11)] + ["flush"]
arcs = []
for i in range(11):
    arcs += [(stages[i], f"step{i}"), (f"step{i}", stages[i + 1])]
arcs += [("spare", "flush"), ("flush", "out")]
net = build_net(places, transitions, arcs, {"s0": 2})

full = analyze(net, "explicit")
print(f"full exploration: {full.states_visited} markings")

###############################################################################
# ``spare`` and ``out`` are proven dead by the structural pass even with
# a budget of one state.

for states in (1, 4, 16, 64, full.states_visited):
    r = analyze(net, "explicit", Budget(max_states=states))
    print(f"max_states={states:>3}  places {to_text(r.dead_places)}  "
          f"transitions {to_text(r.dead_transitions)}  complete={r.complete}")
