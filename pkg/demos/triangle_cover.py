"""Fat triangles: complement trapezoids, a net and a cover.

Run: python demos/triangle_cover.py [seed]
"""

import sys

from geonet.config_core import WeightedFamily, make_rng
from geonet.cover import CoverInstance, exact_cover, greedy_cover
from geonet.instances import random_fat_triangles, random_points_in_triangles
from geonet.nets import verify_net
from geonet.triangles2d import TriangleSystem, triangle_cover, triangle_net

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 1
rng = make_rng(seed)
tris = random_fat_triangles(rng, 16)
system = TriangleSystem(tris)
fam = WeightedFamily(system.triangles)

for k in (1, 4, 16):
    print(f"|H| = {k:2d}: {len(system.decompose(range(k)))} complement trapezoids")

T = triangle_net(fam, 8, rng, system=system)
print(f"1/8-net: {len(T)} triangles, verified: {verify_net(system, fam, T, 8, strict=True) is None}")

pts = random_points_in_triangles(rng, tris, 40)
res = triangle_cover(pts, tris, rng)
inst = CoverInstance(fam, lambda p, i: tris[i].contains(p), points=pts)
print(f"cover of {len(pts)} points: bg {res.size}, greedy {greedy_cover(inst).size}, optimum {exact_cover(inst).size}")
