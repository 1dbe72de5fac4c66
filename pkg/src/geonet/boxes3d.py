"""Unit cubes in 3-space: grid clusters, boundary rectangles and cone regions.

Every unit cube strictly contains a point of the half-integer grid.  The
cubes assigned to one grid point ``p`` form a cluster whose union is
star-shaped from ``p``; its boundary is cut into axis-parallel rectangles
and each rectangle ``tau`` spans the cone region of points ``q`` for which
the segment ``qp`` crosses ``tau``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .config_core import (
    Configuration,
    ConfigurationSystem,
    WeightedFamily,
    split_rng,
    to_rational,
)
from .cover import CoverInstance, CoverResult, bg_cover
from .nets import likely_net, two_level_net, verify_net

D_CONST = 125


@dataclass(frozen=True)
class UnitCube:
    """Closed cube ``[x, x+1] x [y, y+1] x [z, z+1]``."""

    min_corner: tuple

    def __post_init__(self):
        if len(self.min_corner) != 3:
            raise ValueError("unit cube needs a 3D corner")
        object.__setattr__(self, "min_corner", tuple(to_rational(x) for x in self.min_corner))

    @property
    def lo(self) -> tuple:
        return self.min_corner

    @property
    def hi(self) -> tuple:
        return tuple(x + 1 for x in self.min_corner)

    def contains(self, q) -> bool:
        return all(a <= x <= a + 1 for a, x in zip(self.min_corner, q))

    def contains_interior(self, q) -> bool:
        return all(a < x < a + 1 for a, x in zip(self.min_corner, q))


@dataclass(frozen=True)
class Cluster:
    grid_point: tuple
    members: tuple


def grid_point_of(cube: UnitCube) -> tuple:
    """Lexicographically smallest half-integer point strictly inside ``cube``."""
    return tuple(Fraction(math.floor(2 * a) + 1, 2) for a in cube.min_corner)


def grid_assign(cubes: WeightedFamily) -> list:
    """Group cube indices by their assigned grid point (sorted by point)."""
    groups: dict = {}
    for i in cubes.indices:
        groups.setdefault(grid_point_of(cubes.objects[i]), []).append(i)
    return [Cluster(p, tuple(groups[p])) for p in sorted(groups)]


@dataclass(frozen=True)
class Rect:
    """Axis-parallel rectangle on the face plane ``x_axis = h`` of cube ``owner``.

    ``side`` is +1 when the outward normal points to increasing ``axis``.
    ``(u0, u1)`` and ``(v0, v1)`` range over the two other axes in order.
    """

    owner: int
    axis: int
    side: int
    h: Fraction
    u0: Fraction
    u1: Fraction
    v0: Fraction
    v1: Fraction

    @property
    def other_axes(self) -> tuple:
        return tuple(a for a in range(3) if a != self.axis)

    @property
    def area(self) -> Fraction:
        return (self.u1 - self.u0) * (self.v1 - self.v0)


def _subtract(piece: tuple, cut: tuple) -> list:
    a0, a1, b0, b1 = piece
    c0, c1, d0, d1 = cut
    if c0 >= a1 or c1 <= a0 or d0 >= b1 or d1 <= b0:
        return [piece]
    out = []
    if a0 < c0:
        out.append((a0, c0, b0, b1))
    if c1 < a1:
        out.append((c1, a1, b0, b1))
    m0, m1 = max(a0, c0), min(a1, c1)
    if b0 < d0:
        out.append((m0, m1, b0, d0))
    if d1 < b1:
        out.append((m0, m1, d1, b1))
    return out


def _face_covers(C: int, D: int, lo: Fraction, hi: Fraction, h: Fraction, side: int) -> bool:
    """Does cube ``D`` (extent ``[lo, hi]`` on the face axis) hide face plane ``h`` of ``C``?"""
    if side > 0:
        return lo <= h < hi or (hi == h and D < C)
    return lo < h <= hi or (lo == h and D < C)


def _face_rects(cubes: Sequence[UnitCube], C: int, axis: int, side: int, others: Sequence[int]) -> list:
    cube = cubes[C]
    u, v = (a for a in range(3) if a != axis)
    h = cube.hi[axis] if side > 0 else cube.lo[axis]
    face = (cube.lo[u], cube.hi[u], cube.lo[v], cube.hi[v])
    covers = []
    for D in others:
        if D == C:
            continue
        dc = cubes[D]
        if not _face_covers(C, D, dc.lo[axis], dc.hi[axis], h, side):
            continue
        r = (max(face[0], dc.lo[u]), min(face[1], dc.hi[u]), max(face[2], dc.lo[v]), min(face[3], dc.hi[v]))
        if r[0] < r[1] and r[2] < r[3]:
            covers.append((D, r))
    pieces = [face]
    for _, r in covers:
        pieces = [q for p in pieces for q in _subtract(p, r)]
        if not pieces:
            return []
    # canonical form: slabs in u, merged v-intervals, then maximal runs
    cuts = sorted({x for p in pieces for x in (p[0], p[1])})
    runs: dict = {}
    done = []
    for a, b in zip(cuts, cuts[1:]):
        spans = sorted((p[2], p[3]) for p in pieces if p[0] <= a and p[1] >= b)
        merged = []
        for lo, hi in spans:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        new_runs = {}
        for lo, hi in merged:
            top = None
            if hi < face[3]:
                top = min(D for D, r in covers if r[2] == hi and r[0] <= a and r[1] >= b)
            bot = None
            if lo > face[2]:
                bot = min(D for D, r in covers if r[3] == lo and r[0] <= a and r[1] >= b)
            key = (lo, hi, top, bot)
            run = runs.pop(key, None)
            if run is not None and run[1] == a:
                run[1] = b
            else:
                if run is not None:
                    done.append(run)
                run = [a, b, lo, hi, top, bot]
            new_runs[key] = run
        done.extend(runs.values())
        runs = new_runs
    done.extend(runs.values())
    out = []
    for ua, ub, lo, hi, top, bot in sorted(done, key=lambda t: (t[0], t[2])):
        d = {C}
        for x in (top, bot):
            if x is not None:
                d.add(x)
        for w, edge in ((ua, face[0]), (ub, face[1])):
            if w == edge:
                continue
            walls = [D for D, r in covers if (r[0] == w or r[1] == w) and r[2] <= hi and r[3] >= lo]
            if walls:
                d.add(min(walls))
        out.append((Rect(C, axis, side, h, ua, ub, lo, hi), frozenset(d)))
    return out


def cluster_boundary_rects(cubes: Sequence[UnitCube], S: Iterable[int]) -> list:
    """Rectangles of the union boundary of ``S`` with their defining sets.

    ``cubes`` is the full object list and ``S`` a nonempty set of indices of
    cubes sharing an interior point.  Coplanar overlapping faces are kept by
    the lower index only, so the rectangles are interior-disjoint.
    """
    S = sorted(set(S))
    out = []
    for C in S:
        for axis in range(3):
            for side in (-1, 1):
                out.extend(_face_rects(cubes, C, axis, side, S))
    return out


@dataclass(frozen=True)
class ConeRegion:
    """Points beyond ``rect`` on rays from ``apex`` through ``rect``.

    ``half_spaces`` holds ``(normal, offset, strict)`` with the meaning
    ``normal . q > offset`` (strict) or ``>= offset``.  The far plane is
    always strict.  By default the side planes are strict too (the segment
    to the apex crosses the open rectangle); ``closed=True`` admits rays
    through the rectangle's edges.
    """

    apex: tuple
    rect: Rect
    half_spaces: tuple = field(compare=False, repr=False)

    def contains(self, q, closed: bool = False) -> bool:
        for nrm, off, strict in self.half_spaces:
            s = nrm[0] * q[0] + nrm[1] * q[1] + nrm[2] * q[2]
            if s < off or ((strict or not closed) and s == off):
                return False
        return True


class DegenerateConeError(ValueError):
    pass


def cone_region(p, rect: Rect) -> ConeRegion:
    p = tuple(to_rational(x) for x in p)
    k, sg = rect.axis, rect.side
    s = rect.h - p[k]
    if s == 0 or (s > 0) != (sg > 0):
        raise DegenerateConeError("apex must lie strictly inside the face's cube side")
    a = abs(s)
    u, v = rect.other_axes
    hs = []

    far = [Fraction(0)] * 3
    far[k] = Fraction(sg)
    hs.append((tuple(far), sg * rect.h, True))
    for ax, lo, hi in ((u, rect.u0, rect.u1), (v, rect.v0, rect.v1)):
        # a (q_ax - p_ax) - sg (lo - p_ax)(q_k - p_k) >= 0
        n = [Fraction(0)] * 3
        n[ax] += a
        n[k] += -sg * (lo - p[ax])
        hs.append((tuple(n), a * p[ax] - sg * (lo - p[ax]) * p[k], False))
        n = [Fraction(0)] * 3
        n[ax] += -a
        n[k] += sg * (hi - p[ax])
        hs.append((tuple(n), -a * p[ax] + sg * (hi - p[ax]) * p[k], False))
    return ConeRegion(p, rect, tuple(hs))


def cube_conflicts_cone(cube: UnitCube, region: ConeRegion) -> bool:
    """Exact test: does the closed cube meet the cone region with closed sides?

    Along the face axis a point of the region is ``p + lam (u - p)`` with
    ``u`` on the rectangle and ``lam > 1``; each cube slab constrains
    ``lam`` to an interval, so the test is a 1D interval intersection.
    """
    rect, p = region.rect, region.apex
    k, sg = rect.axis, rect.side
    a = abs(rect.h - p[k])
    lo_k, hi_k = cube.lo[k], cube.hi[k]
    l1, l2 = sg * (lo_k - p[k]) / a, sg * (hi_k - p[k]) / a
    L, U = min(l1, l2), max(l1, l2)
    if U <= 1:
        return False
    u, v = rect.other_axes
    for ax, r0, r1 in ((u, rect.u0, rect.u1), (v, rect.v0, rect.v1)):
        c0, c1 = cube.lo[ax], cube.hi[ax]
        # p + lam (r0 - p) <= c1  and  p + lam (r1 - p) >= c0
        for alpha, beta in ((r0 - p[ax], c1 - p[ax]), (p[ax] - r1, p[ax] - c0)):
            if alpha > 0:
                U = min(U, beta / alpha)
            elif alpha < 0:
                L = max(L, beta / alpha)
            elif beta < 0:
                return False
    return U > 1 and L <= U


class ClusterSystem(ConfigurationSystem):
    """Cone regions of one cluster's boundary rectangles, ``b = 6``."""

    b = 6

    def __init__(self, cubes: Sequence[UnitCube], apex):
        self.cubes = tuple(cubes)
        self.apex = tuple(to_rational(x) for x in apex)
        self.system_id = "cubes@" + ",".join(str(x) for x in self.apex)

    def zero_regions(self, H: Iterable[int]) -> list:
        H = sorted(set(H))
        if not H:
            return [Configuration(None, frozenset(), self.system_id)]
        return [
            Configuration(cone_region(self.apex, rect), d, self.system_id)
            for rect, d in cluster_boundary_rects(self.cubes, H)
        ]

    def conflicts(self, cfg: Configuration, i: int) -> bool:
        if i in cfg.defining_set:
            return False
        if cfg.region is None:
            return True
        return cube_conflicts_cone(self.cubes[i], cfg.region)

    def locate(self, point, H: Iterable[int]) -> Optional[Configuration]:
        H = list(H)
        q = tuple(to_rational(x) for x in point)
        if any(self.cubes[i].contains(q) for i in H):
            return None
        hits = [c for c in self.zero_regions(H) if c.region is None or c.region.contains(q, closed=True)]
        return hits[0] if hits else None


def _cluster_parameter(w_p: int, W: int, r: Fraction, d: int) -> Optional[Fraction]:
    if w_p * d * r < W:
        return None
    return min(Fraction(d) * r * w_p / W, Fraction(w_p))


def unit_cube_net(
    cubes: WeightedFamily,
    r,
    rng: random.Random,
    d: int = D_CONST,
    method: str = "two-level",
    stats: Optional[dict] = None,
    **kw,
) -> frozenset:
    """Union of per-cluster nets for clusters of weight at least ``W/(d r)``.

    Cluster ``p`` gets parameter ``r_p = d r w_p / W`` (at most ``w_p``)
    and its own RNG stream derived from the grid point.
    """
    r = Fraction(r)
    W = cubes.total_weight
    if r < 1 or r > W:
        raise ValueError(f"r={r} outside [1, W={W}]")
    net = set()
    used = []
    for cl in grid_assign(cubes):
        sub = cubes.restrict(cl.members)
        r_p = _cluster_parameter(sub.total_weight, W, r, d)
        if r_p is None:
            continue
        system = ClusterSystem(cubes.objects, cl.grid_point)
        stream = split_rng(rng, system.system_id)
        if method == "likely":
            part = likely_net(system, sub, r_p, stream, **kw)
        else:
            part = two_level_net(system, sub, r_p, stream, **kw)
        net |= part
        used.append((cl.grid_point, r_p, len(part)))
    if stats is not None:
        stats["clusters"] = used
    return frozenset(net)


def verify_cube_net(cubes: WeightedFamily, T: Iterable[int], r, d: int = D_CONST) -> Optional[tuple]:
    """Per-cluster strict check of a :func:`unit_cube_net` output.

    Returns None, or ``(grid_point, witness configuration)``.
    """
    T = set(T)
    r = Fraction(r)
    W = cubes.total_weight
    for cl in grid_assign(cubes):
        sub = cubes.restrict(cl.members)
        r_p = _cluster_parameter(sub.total_weight, W, r, d)
        if r_p is None:
            continue
        system = ClusterSystem(cubes.objects, cl.grid_point)
        bad = verify_net(system, sub, T & set(cl.members), r_p, strict=True)
        if bad is not None:
            return cl.grid_point, bad
    return None


def cube_cover(points: Sequence, cubes: Sequence[UnitCube], rng: random.Random, **kw) -> CoverResult:
    """Weight-doubling cover of ``points`` by unit cubes."""
    pts = [tuple(to_rational(x) for x in p) for p in points]
    family = WeightedFamily(tuple(cubes))
    inst = CoverInstance(family, lambda q, i: family.objects[i].contains(q), points=pts)
    return bg_cover(inst, unit_cube_net, rng, **kw)
