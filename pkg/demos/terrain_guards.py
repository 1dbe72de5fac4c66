"""Guard a random terrain: build a net, then a weight-doubling cover.

Run: python demos/terrain_guards.py [seed]
"""

import sys

from geonet.config_core import WeightedFamily, make_rng
from geonet.cover import exact_cover, greedy_cover, validate_cover
from geonet.instances import random_terrain
from geonet.terrain import guard_cover

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 1
rng = make_rng(seed)
ter = random_terrain(rng, n=12, m=16, height=6)
print(f"chain of {len(ter.chain.vertices)} vertices, {len(ter.guards)} candidate guards")

fam = WeightedFamily(ter.guards)
diagram = ter.left.ownership_diagram(fam.indices)
owners = [iv.owner for iv in diagram if iv.owner is not None]
print(f"left ownership sequence has {len(owners)} entries (bound {2 * len(fam) - 1})")

T = ter.net(fam, 4, rng)
print(f"1/4-net: {len(T)} guards, verified: {ter.verify_net(fam, T, 4) is None}")

res = guard_cover(ter, rng)
print(f"weight-doubling cover: {res.size} guards after {res.iterations} net rounds (guess c' = {res.guessed_c})")
print("covers the whole chain:", validate_cover(ter.cover_instance(), res.chosen)[0])

finite = ter.cover_instance(finite=True)
print(f"greedy {greedy_cover(finite).size}, optimum {exact_cover(finite).size}")
