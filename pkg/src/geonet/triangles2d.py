"""Covering points by triangles: vertical decomposition of the complement.

The regions of the triangle configuration system are the trapezoids of the
vertical decomposition of ``frame minus union(H)``.  Input must be in
general position (checked by :func:`check_general_position`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .config_core import Configuration, ConfigurationSystem, WeightedFamily, to_rational
from .cover import CoverInstance, CoverResult, bg_cover
from .nets import two_level_net

FRAME_BOTTOM = -1
FRAME_TOP = -2


class GeneralPositionError(ValueError):
    """Input violates the general-position assumption; ``kind`` names how."""

    def __init__(self, kind: str, detail: str = ""):
        super().__init__(f"{kind}: {detail}" if detail else kind)
        self.kind = kind


def orient(a, b, c) -> Fraction:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def orient_sign(a, b, c) -> int:
    """Sign of :func:`orient`, screened in floats and exact near zero."""
    ax, ay, bx, by, cx, cy = float(a[0]), float(a[1]), float(b[0]), float(b[1]), float(c[0]), float(c[1])
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    # generous bound on rounding of inputs, differences and products
    M = max(abs(ax), abs(ay), abs(bx), abs(by), abs(cx), abs(cy))
    if abs(det) > 1e-12 * M * M:
        return 1 if det > 0 else -1
    o = orient(a, b, c)
    return (o > 0) - (o < 0)


@dataclass(frozen=True)
class Triangle:
    """A closed, non-degenerate, counter-clockwise triangle."""

    vertices: tuple

    def __init__(self, a, b, c):
        pts = [(to_rational(p[0]), to_rational(p[1])) for p in (a, b, c)]
        o = orient(*pts)
        if o == 0:
            raise ValueError("degenerate triangle")
        if o < 0:
            pts[1], pts[2] = pts[2], pts[1]
        object.__setattr__(self, "vertices", tuple(pts))

    def contains(self, q) -> bool:
        a, b, c = self.vertices
        return orient_sign(a, b, q) >= 0 and orient_sign(b, c, q) >= 0 and orient_sign(c, a, q) >= 0

    def contains_interior(self, q) -> bool:
        a, b, c = self.vertices
        return orient_sign(a, b, q) > 0 and orient_sign(b, c, q) > 0 and orient_sign(c, a, q) > 0

    @property
    def bbox(self) -> tuple:
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        return (min(xs), max(xs), min(ys), max(ys))

    def edges(self) -> list:
        a, b, c = self.vertices
        return [(a, b), (b, c), (c, a)]


@dataclass(frozen=True)
class Edge:
    """Triangle edge stored left to right; ``line`` is ``y = m x + c``."""

    left: tuple
    right: tuple
    tri: int
    k: int
    line: tuple = field(init=False, compare=False, repr=False)
    approx: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        m = (self.right[1] - self.left[1]) / (self.right[0] - self.left[0])
        c = self.left[1] - m * self.left[0]
        object.__setattr__(self, "line", (m, c))
        object.__setattr__(self, "approx", (float(m), float(c)))

    def y_at(self, x: Fraction) -> Fraction:
        m, c = self.line
        return m * x + c


def _edges_of(triangles: Sequence[Triangle], H: Iterable[int]) -> list:
    out = []
    for t in H:
        for k, (p, q) in enumerate(triangles[t].edges()):
            if p[0] > q[0]:
                p, q = q, p
            out.append(Edge(p, q, t, k))
    return out


def _crossing(e: Edge, f: Edge) -> Optional[tuple]:
    """Proper crossing point of two segments, if any."""
    a, b, c, d = e.left, e.right, f.left, f.right
    if orient_sign(a, b, c) * orient_sign(a, b, d) < 0 and orient_sign(c, d, a) * orient_sign(c, d, b) < 0:
        d1, d2 = orient(a, b, c), orient(a, b, d)
        t = d1 / (d1 - d2)
        return (c[0] + t * (d[0] - c[0]), c[1] + t * (d[1] - c[1]))
    return None


def _on_segment(p, a, b) -> bool:
    return orient_sign(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _boxes_overlap(e: Edge, f: Edge) -> bool:
    if e.right[0] < f.left[0] or f.right[0] < e.left[0]:
        return False
    ey = sorted((e.left[1], e.right[1]))
    fy = sorted((f.left[1], f.right[1]))
    return not (ey[1] < fy[0] or fy[1] < ey[0])


def check_general_position(triangles: Sequence[Triangle]) -> None:
    """Raise :class:`GeneralPositionError` naming the first violation found."""
    seen = {}
    for i, t in enumerate(triangles):
        for v in t.vertices:
            if v in seen and seen[v] != i:
                raise GeneralPositionError("shared vertex", f"{v} in triangles {seen[v]} and {i}")
            seen[v] = i
    edges = _edges_of(triangles, range(len(triangles)))
    xs = {}
    for v, i in seen.items():
        if v[0] in xs:
            raise GeneralPositionError("duplicate x-coordinate", f"x={v[0]}")
        xs[v[0]] = v
    edges.sort(key=lambda e: e.left[0])
    for a in range(len(edges)):
        e = edges[a]
        for b in range(a + 1, len(edges)):
            f = edges[b]
            if f.left[0] > e.right[0]:
                break
            if e.tri == f.tri or not _boxes_overlap(e, f):
                continue
            if orient_sign(e.left, e.right, f.left) == 0 and orient_sign(e.left, e.right, f.right) == 0:
                raise GeneralPositionError("collinear overlapping edges", f"triangles {e.tri} and {f.tri}")
            for p, (s, t) in ((f.left, (e.left, e.right)), (f.right, (e.left, e.right)), (e.left, (f.left, f.right)), (e.right, (f.left, f.right))):
                if _on_segment(p, s, t):
                    raise GeneralPositionError("vertex on edge", f"{p}")
            c = _crossing(e, f)
            if c is not None:
                if c[0] in xs:
                    raise GeneralPositionError("duplicate x-coordinate", f"x={c[0]}")
                xs[c[0]] = c


@dataclass(frozen=True)
class Trapezoid:
    """Vertical trapezoid ``xl <= x <= xr`` between two boundary segments.

    ``bottom``/``top`` are edge keys ``(tri, k)`` or the frame sentinels;
    ``bottom_line``/``top_line`` give the boundary as ``y = m x + c``.
    """

    xl: Fraction
    xr: Fraction
    bottom: tuple
    top: tuple
    bottom_line: tuple
    top_line: tuple

    def y_bottom(self, x: Fraction) -> Fraction:
        return self.bottom_line[0] * x + self.bottom_line[1]

    def y_top(self, x: Fraction) -> Fraction:
        return self.top_line[0] * x + self.top_line[1]

    def corners(self) -> list:
        """Counter-clockwise polygon, duplicate corners removed."""
        pts = [
            (self.xl, self.y_bottom(self.xl)),
            (self.xr, self.y_bottom(self.xr)),
            (self.xr, self.y_top(self.xr)),
            (self.xl, self.y_top(self.xl)),
        ]
        out = []
        for p in pts:
            if not out or out[-1] != p:
                out.append(p)
        if len(out) > 1 and out[0] == out[-1]:
            out.pop()
        return out

    def contains(self, q) -> bool:
        x, y = q
        return self.xl <= x <= self.xr and self.y_bottom(x) <= y <= self.y_top(x)

    def contains_interior(self, q) -> bool:
        x, y = q
        return self.xl < x < self.xr and self.y_bottom(x) < y < self.y_top(x)

    @property
    def bbox(self) -> tuple:
        ys = [p[1] for p in self.corners()]
        return (self.xl, self.xr, min(ys), max(ys))


@dataclass(frozen=True)
class TrapDecomp:
    frame: tuple
    trapezoids: tuple
    defining: tuple

    def __len__(self) -> int:
        return len(self.trapezoids)


def _sorted_exact(active: list, mid: Fraction) -> list:
    """Edges sorted by height at ``mid``.

    Sorted on floats first; neighbours whose float gap is within a generous
    rounding bound are compared exactly and fixed by insertion.
    """
    fm = float(mid)
    ys = []
    for e in active:
        m, c = e.approx
        y = m * fm + c
        ys.append((y, 1e-9 * (abs(m * fm) + abs(c) + 1.0), e))
    ys.sort(key=lambda t: t[0])
    out = [t[2] for t in ys]
    for i in range(1, len(ys)):
        if ys[i][0] - ys[i - 1][0] > ys[i][1] + ys[i - 1][1]:
            continue
        j = i
        while j > 0 and out[j - 1].y_at(mid) > out[j].y_at(mid):
            out[j - 1], out[j] = out[j], out[j - 1]
            j -= 1
    return out


def all_crossings(triangles: Sequence[Triangle], H: Iterable[int]) -> list:
    """``(x, t1, t2)`` for every proper crossing of edges of distinct triangles."""
    by_left = sorted(_edges_of(triangles, H), key=lambda e: e.left[0])
    out = []
    for a in range(len(by_left)):
        e = by_left[a]
        for b in range(a + 1, len(by_left)):
            f = by_left[b]
            if f.left[0] >= e.right[0]:
                break
            if e.tri == f.tri or not _boxes_overlap(e, f):
                continue
            c = _crossing(e, f)
            if c is not None:
                out.append((c[0], e.tri, f.tri))
    return out


def complement_trapezoids(
    triangles: Sequence[Triangle],
    H: Iterable[int],
    frame: tuple,
    crossings: Optional[list] = None,
) -> TrapDecomp:
    """Vertical decomposition of ``frame`` minus the union of ``H``.

    ``frame`` is ``(x0, x1, y0, y1)`` and must contain every triangle of
    ``H`` in its interior.  Slabs between consecutive arrangement-vertex
    x-coordinates are cut into pieces between consecutive edges; pieces
    outside every triangle with the same bottom and top edge in adjacent
    slabs are joined.  ``crossings`` may be a precomputed
    :func:`all_crossings` list over a superset of ``H``.
    """
    x0, x1, y0, y1 = frame
    H = sorted(set(H))
    edges = _edges_of(triangles, H)
    vertex_tris: dict = {}
    for t in H:
        for v in triangles[t].vertices:
            if not (x0 < v[0] < x1 and y0 < v[1] < y1):
                raise ValueError("frame must strictly contain the triangles")
            vertex_tris.setdefault(v[0], set()).add(t)
    by_left = sorted(edges, key=lambda e: e.left[0])
    if crossings is None:
        crossings = all_crossings(triangles, H)
        members = None
    else:
        members = set(H)
    for x, t1, t2 in crossings:
        if members is None or (t1 in members and t2 in members):
            vertex_tris.setdefault(x, set()).update((t1, t2))
    crit = sorted(set(vertex_tris) | {x0, x1})
    bottom_frame = (Fraction(0), y0)
    top_frame = (Fraction(0), y1)

    runs: dict = {}
    done = []
    ptr = 0
    active: list = []
    for s in range(len(crit) - 1):
        a, b = crit[s], crit[s + 1]
        while ptr < len(by_left) and by_left[ptr].left[0] <= a:
            active.append(by_left[ptr])
            ptr += 1
        active = [e for e in active if e.right[0] > a]
        mid = (a + b) / 2
        order = _sorted_exact(active, mid)
        inside: dict = {}
        depth = 0
        lower = (FRAME_BOTTOM, bottom_frame)
        pieces = []
        for e in order:
            if depth == 0:
                pieces.append((lower, ((e.tri, e.k), e.line)))
            if inside.get(e.tri):
                inside[e.tri] = False
                depth -= 1
            else:
                inside[e.tri] = True
                depth += 1
            lower = ((e.tri, e.k), e.line)
        if depth == 0:
            pieces.append((lower, (FRAME_TOP, top_frame)))
        new_runs = {}
        for lo, hi in pieces:
            key = (lo[0], hi[0])
            if key in runs:
                run = runs.pop(key)
                run[1] = b
            else:
                run = [a, b, lo, hi]
            new_runs[key] = run
        done.extend(runs.values())
        runs = new_runs
    done.extend(runs.values())

    traps = []
    for xl, xr, lo, hi in done:
        traps.append(Trapezoid(xl, xr, lo[0], hi[0], lo[1], hi[1]))
    traps.sort(key=lambda t: (t.xl, t.y_bottom((t.xl + t.xr) / 2)))
    defining = []
    for t in traps:
        d = set()
        for key in (t.bottom, t.top):
            if isinstance(key, tuple):
                d.add(key[0])
        for x in (t.xl, t.xr):
            d |= vertex_tris.get(x, set())
        defining.append(frozenset(d))
    return TrapDecomp(frame, tuple(traps), tuple(defining))


def _separated(P: list, Q: list) -> bool:
    """Some edge line of ccw polygon ``P`` has all of ``Q`` on its closed outer side."""
    n = len(P)
    for i in range(n):
        a, b = P[i], P[(i + 1) % n]
        if all(orient_sign(a, b, q) <= 0 for q in Q):
            return True
    return False


def triangle_conflicts_trap(tri: Triangle, trap: Trapezoid) -> bool:
    """True iff the triangle and trapezoid overlap in a set of positive area."""
    tx0, tx1, ty0, ty1 = tri.bbox
    if tx1 <= trap.xl or tx0 >= trap.xr:
        return False
    bx0, bx1, by0, by1 = trap.bbox
    if ty1 <= by0 or ty0 >= by1:
        return False
    P = list(tri.vertices)
    Q = trap.corners()
    if len(Q) < 3:
        return False
    return not (_separated(P, Q) or _separated(Q, P))


def frame_for(triangles: Sequence[Triangle], points: Sequence = ()) -> tuple:
    """Bounding box of triangles and points grown by 1 on each side."""
    xs = [v[0] for t in triangles for v in t.vertices] + [to_rational(p[0]) for p in points]
    ys = [v[1] for t in triangles for v in t.vertices] + [to_rational(p[1]) for p in points]
    return (min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1)


class TriangleSystem(ConfigurationSystem):
    """Trapezoids of the complement as regions, ``b = 4``."""

    b = 4
    system_id = "triangles"

    def __init__(self, triangles: Sequence[Triangle], frame: Optional[tuple] = None, validate: bool = True):
        self.triangles = tuple(triangles)
        if validate:
            check_general_position(self.triangles)
        self.frame = frame or frame_for(self.triangles)
        self._bboxes = [t.bbox for t in self.triangles]
        self._crossings = all_crossings(self.triangles, range(len(self.triangles)))

    def decompose(self, H: Iterable[int]) -> TrapDecomp:
        return complement_trapezoids(self.triangles, H, self.frame, self._crossings)

    def zero_regions(self, H: Iterable[int]) -> list:
        dec = self.decompose(H)
        return [Configuration(t, d, self.system_id) for t, d in zip(dec.trapezoids, dec.defining)]

    def conflicts(self, cfg: Configuration, i: int) -> bool:
        if i in cfg.defining_set:
            return False
        return triangle_conflicts_trap(self.triangles[i], cfg.region)

    def conflict_set(self, cfg: Configuration, indices: Iterable[int]) -> list:
        trap = cfg.region
        xl, xr, yb, yt = trap.bbox
        out = []
        boxes = self._bboxes
        tris = self.triangles
        for i in indices:
            bx = boxes[i]
            if bx[1] <= xl or bx[0] >= xr or bx[3] <= yb or bx[2] >= yt:
                continue
            if i not in cfg.defining_set and triangle_conflicts_trap(tris[i], trap):
                out.append(i)
        return out

    def locate(self, point, H: Iterable[int]) -> Optional[Configuration]:
        H = list(H)
        q = (to_rational(point[0]), to_rational(point[1]))
        if any(self.triangles[i].contains(q) for i in H):
            return None
        for cfg in self.zero_regions(H):
            if cfg.region.contains(q):
                return cfg
        raise ValueError("point outside the frame")

    def depth(self, point, family: WeightedFamily) -> int:
        return sum(w for i, w in family.weights.items() if self.triangles[i].contains(point))


def triangle_net(family: WeightedFamily, r, rng: random.Random, system: Optional[TriangleSystem] = None, **kw) -> frozenset:
    """Two-level ``1/r``-net over the trapezoid configuration system."""
    system = system or TriangleSystem(family.objects)
    r = min(Fraction(r), Fraction(family.total_weight))
    return two_level_net(system, family, r, rng, **kw)


def triangle_cover(points: Sequence, triangles: Sequence[Triangle], rng: random.Random, **kw) -> CoverResult:
    """Weight-doubling cover of ``points`` by a subset of ``triangles``."""
    pts = [(to_rational(p[0]), to_rational(p[1])) for p in points]
    system = TriangleSystem(triangles, frame_for(triangles, pts))
    family = WeightedFamily(system.triangles)
    inst = CoverInstance(family, lambda p, i: system.triangles[i].contains(p), points=pts)

    def net_fn(fam, r, rng_):
        return triangle_net(fam, r, rng_, system=system)

    return bg_cover(inst, net_fn, rng, **kw)
