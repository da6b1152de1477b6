"""
Symbolic reachability with the built-in BDD package
===================================================

For ordinary 1-safe nets one boolean variable per place suffices.  The
reachable set is a single BDD, and every dead/concurrent question becomes
an emptiness check on a conjunction.
"""

import itertools

from pndead.bdd import BddStore, query_r, symbolic_reach
from pndead.net import build_net

###############################################################################
# Independent token rings multiply the state count while the BDD stays small.

def rings(k, size):
    places, transitions, arcs, init = [], [], [], {}
    for r in range(k):
        ring = [f"r{r}_{i}" for i in range(size)]
        places += ring
        init[ring[0]] = 1
        for i in range(size):
            t = f"t{r}_{i}"
            transitions.append(t)
            arcs += [(ring[i], t), (t, ring[(i + 1) % size])]
    return build_net(places, transitions, arcs, init)


net = rings(6, 5)
store = BddStore(net.n_places)
result = symbolic_reach(store, net)
print(f"{net.n_places} places, {result.count()} reachable markings, "
      f"{len(store)} BDD nodes, {result.iterations} image steps")

###############################################################################
# Queries: places of the same ring exclude each other, different rings do not.

a, b, c = (net.place_index(p) for p in ("r0_0", "r0_1", "r1_3"))
print("r0_0 with r0_1:", query_r(store, result, [a, b]).name)
print("r0_0 with r1_3:", query_r(store, result, [a, c]).name)

###############################################################################
# Variable order matters for node counts; compare declaration order with
# its reverse on a net whose places are declared interleaved.

inter = build_net(
    [f"{side}{i}" for i, side in itertools.product(range(6), "ab")],
    [f"t{i}" for i in range(6)],
    [arc for i in range(6) for arc in ((f"a{i}", f"t{i}"), (f"t{i}", f"b{i}"))],
    {f"a{i}": 1 for i in range(6)},
)
for reverse in (False, True):
    s = BddStore(inter.n_places, reverse=reverse)
    r = symbolic_reach(s, inter)
    print(f"reverse={reverse}: {r.count()} markings, {len(s)} nodes")
