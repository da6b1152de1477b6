"""
The concurrent-places half-matrix
=================================

Dining philosophers: each philosopher thinks, picks up both forks at once,
eats, and puts them back.  Two neighbours can never eat together.
"""

import numpy as np

from pndead import analyze, build_net
from pndead.codec import matrix_text
from pndead.tristate import to_text


def philosophers(n):
    places, transitions, arcs, init = [], [], [], {}
    for i in range(n):
        places += [f"think{i}", f"eat{i}", f"fork{i}"]
        init[f"think{i}"] = init[f"fork{i}"] = 1
    for i in range(n):
        left, right = f"fork{i}", f"fork{(i + 1) % n}"
        transitions += [f"take{i}", f"put{i}"]
        arcs += [(f"think{i}", f"take{i}"), (left, f"take{i}"), (right, f"take{i}"),
                 (f"take{i}", f"eat{i}"),
                 (f"eat{i}", f"put{i}"), (f"put{i}", f"think{i}"),
                 (f"put{i}", left), (f"put{i}", right)]
    return build_net(places, transitions, arcs, init)


net = philosophers(5)
report = analyze(net)
print(f"{net.n_places} places, {report.states_visited} reachable markings, engine {report.engine}")

###############################################################################
# Row i lists the concurrency of place i with places 1..i.

for pid, row in zip(net.place_ids, report.concurrent_rows()):
    print(f"{pid:>7} {to_text(row)}")

###############################################################################
# Neighbouring philosophers never eat at the same time.

e0, e1, e2 = (net.place_index(f"eat{i}") for i in range(3))
print("eat0 || eat1:", report.concurrent_cell(e0, e1).name)
print("eat0 || eat2:", report.concurrent_cell(e0, e2).name)

###############################################################################
# Compression pays off on larger nets, where rows are long and uniform.

big = philosophers(30)
big_report = analyze(big, "bdd")
packed = matrix_text(big_report.concurrent)
plain = sum(len(r) + 1 for r in big_report.concurrent_rows())
print(f"{big.n_places} places: {plain} bytes uncompressed, {len(packed)} compressed "
      f"(x{plain / len(packed):.1f})")
print("concurrent pairs:", int(np.count_nonzero(big_report.concurrent == 1)))
