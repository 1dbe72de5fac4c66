"""Unit cubes: grid clusters, boundary rectangles and a cover of random points.

Run: python demos/cube_clusters.py [seed]
"""

import sys

from geonet.boxes3d import ClusterSystem, cluster_boundary_rects, cube_cover, grid_assign, unit_cube_net, verify_cube_net
from geonet.config_core import WeightedFamily, make_rng
from geonet.cover import CoverInstance, exact_cover
from geonet.instances import random_cubes, random_points_in

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 1
rng = make_rng(seed)
cubes = random_cubes(rng, 18, extent=2)
fam = WeightedFamily(cubes)

for cl in grid_assign(fam)[:5]:
    rects = cluster_boundary_rects(cubes, cl.members)
    print(f"cluster at {tuple(str(x) for x in cl.grid_point)}: {len(cl.members)} cubes, {len(rects)} boundary rectangles")

T = unit_cube_net(fam, 4, rng)
print(f"1/4-net: {len(T)} of {len(cubes)} cubes, verified: {verify_cube_net(fam, T, 4) is None}")

pts = random_points_in(rng, cubes, 40)
res = cube_cover(pts, cubes, rng)
inst = CoverInstance(fam, lambda q, i: cubes[i].contains(q), points=pts)
print(f"cover of {len(pts)} points: {res.size} cubes, optimum {exact_cover(inst).size}")
