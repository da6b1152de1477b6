"""
Dead places and dead transitions
================================

A small mutual-exclusion net with a deliberately broken branch: the
``repair`` transition needs a token that nothing ever produces.
"""

from pndead import analyze, build_net, is_quasi_live
from pndead.codec import vector_text
from pndead.tristate import to_text

###############################################################################
# Two processes share one lock.  ``fault`` is an unmarked place with no
# producer, so ``repair`` (which consumes from it) can never fire and its
# output place ``fixed`` is never marked.

places = ["idle1", "crit1", "idle2", "crit2", "lock", "fault", "fixed"]
transitions = ["enter1", "leave1", "enter2", "leave2", "repair"]
arcs = [
    ("idle1", "enter1"), ("lock", "enter1"), ("enter1", "crit1"),
    ("crit1", "leave1"), ("leave1", "idle1"), ("leave1", "lock"),
    ("idle2", "enter2"), ("lock", "enter2"), ("enter2", "crit2"),
    ("crit2", "leave2"), ("leave2", "idle2"), ("leave2", "lock"),
    ("fault", "repair"), ("repair", "fixed"),
]
net = build_net(places, transitions, arcs, {"idle1": 1, "idle2": 1, "lock": 1})

report = analyze(net)
print("engine used:       ", report.engine)
print("reachable markings:", report.states_visited)

###############################################################################
# One character per place / transition in declaration order:
# '1' dead, '0' not dead, '.' unknown.

print("dead places:       ", to_text(report.dead_places))
print("dead transitions:  ", to_text(report.dead_transitions))
for pid, code in zip(places, report.dead_places):
    if code == 1:
        print("  dead place:", pid)

###############################################################################
# The net is quasi-live exactly when no transition is dead.

print("quasi-live:        ", is_quasi_live(report).name)

###############################################################################
# The written vector format compresses runs longer than three.

print("file contents:     ", vector_text([0] * 40 + [1] * 3).strip())
