"""Guarding an x-monotone polygonal chain from guards placed on it.

Visibility is split into "from the left" and "from the right".  For the
left side each guard ``g`` has a profile ``yhat_g(x)``: the lowest ``y``
with ``(x, y)`` visible from ``g``, for ``x >= x(g)``.  The lower envelope
of the profiles, with ties going to the guard of smaller ``x``, is the
ownership diagram; its intervals are the canonical regions of the guarding
configuration system.  The right side is the left side of the mirrored
chain ``x -> -x``.
"""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .config_core import Configuration, ConfigurationSystem, WeightedFamily, to_rational
from .cover import CoverInstance, CoverResult, bg_cover
from .nets import likely_net, two_level_net, verify_net

Point = tuple  # (Fraction, Fraction)
Line = tuple  # (slope, intercept): y = slope * x + intercept


class ChainError(ValueError):
    pass


def _line_through(p: Point, q: Point) -> Line:
    m = (q[1] - p[1]) / (q[0] - p[0])
    return (m, p[1] - m * p[0])


def _at(line: Line, x: Fraction) -> Fraction:
    return line[0] * x + line[1]


class Chain:
    """Piecewise-linear terrain ``P`` with strictly increasing x."""

    def __init__(self, vertices: Iterable[Sequence]):
        pts = tuple((to_rational(x), to_rational(y)) for x, y in vertices)
        if len(pts) < 2:
            raise ChainError("chain needs at least 2 vertices")
        for a, b in zip(pts, pts[1:]):
            if not a[0] < b[0]:
                raise ChainError("non-monotone chain")
        self.vertices = pts
        self.xs = [p[0] for p in pts]
        self.ys = [p[1] for p in pts]
        self.edge_lines = [_line_through(a, b) for a, b in zip(pts, pts[1:])]

    @property
    def x_first(self) -> Fraction:
        return self.xs[0]

    @property
    def x_last(self) -> Fraction:
        return self.xs[-1]

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, Chain) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def edge_index(self, x: Fraction) -> int:
        i = bisect.bisect_right(self.xs, x) - 1
        return min(max(i, 0), len(self.xs) - 2)

    def height(self, x) -> Fraction:
        x = Fraction(x)
        if not self.x_first <= x <= self.x_last:
            raise ValueError(f"x={x} outside the chain")
        return _at(self.edge_lines[self.edge_index(x)], x)

    def on_chain(self, p: Point) -> bool:
        return self.x_first <= p[0] <= self.x_last and self.height(p[0]) == p[1]

    def mirrored(self) -> "Chain":
        return Chain([(-x, y) for x, y in reversed(self.vertices)])


def sees(chain: Chain, g: Point, p: Point) -> bool:
    """True iff segment ``gp`` stays on or above the chain."""
    gx, gy = g
    px, py = p
    if py < chain.height(px):
        return False
    if px == gx:
        return py >= gy
    lo, hi = (gx, px) if gx < px else (px, gx)
    xs, ys = chain.xs, chain.ys
    dx = px - gx
    start = bisect.bisect_right(xs, lo)
    for k in range(start, len(xs)):
        vx = xs[k]
        if vx >= hi:
            break
        # segment height at vx compared without dividing
        if dx > 0:
            if gy * dx + (py - gy) * (vx - gx) < ys[k] * dx:
                return False
        elif gy * dx + (py - gy) * (vx - gx) > ys[k] * dx:
            return False
    return True


FLOAT_TOL = 1e-9


@dataclass(frozen=True)
class VisibilityProfile:
    """``yhat_g`` on ``[x(g), x_last]`` as linear pieces between ``xs``.

    ``kinds[i]`` is ``"chain"`` where the profile runs along the terrain and
    ``"shadow"`` where it follows the ray through the current blocker.
    """

    owner: Point
    side: str
    xs: tuple
    lines: tuple
    kinds: tuple
    approx: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "approx", (
            [float(x) for x in self.xs],
            [(float(m), float(c)) for m, c in self.lines],
        ))

    @property
    def start(self) -> Fraction:
        return self.xs[0]

    def fvalue(self, x: float) -> tuple:
        """Float :meth:`value` and a generous bound on its rounding error."""
        fxs, fl = self.approx
        if not fl:
            y = float(self.owner[1])
            return y, FLOAT_TOL * (1.0 + abs(y))
        i = min(max(bisect.bisect_right(fxs, x) - 1, 0), len(fl) - 1)
        m, c = fl[i]
        y = m * x + c
        err = FLOAT_TOL * (1.0 + abs(m * x) + abs(c))
        # x may round to the wrong side of a breakpoint; cover both pieces
        for j in (i - 1, i + 1):
            if 0 <= j < len(fl) and abs(x - fxs[max(i, j)]) <= FLOAT_TOL * (1.0 + abs(x)):
                mj, cj = fl[j]
                err += abs(mj * x + cj - y) + FLOAT_TOL * (1.0 + abs(mj * x) + abs(cj))
        return y, err

    # float() is monotone, so a float bisect is off only across ties
    # and a couple of exact comparisons settle it

    def bisect_right(self, x: Fraction) -> int:
        xs = self.xs
        i = bisect.bisect_right(self.approx[0], float(x))
        while i > 0 and xs[i - 1] > x:
            i -= 1
        return i

    def bisect_left(self, x: Fraction) -> int:
        xs = self.xs
        i = bisect.bisect_left(self.approx[0], float(x))
        while i < len(xs) and xs[i] < x:
            i += 1
        return i

    def value(self, x: Fraction) -> Optional[Fraction]:
        if x < self.xs[0] or x > self.xs[-1]:
            return None
        if not self.lines:
            return self.owner[1]
        i = min(self.bisect_right(x) - 1, len(self.lines) - 1)
        return _at(self.lines[i], x)

    def piece_left_of(self, x: Fraction) -> int:
        return self.bisect_left(x) - 1

    def piece_right_of(self, x: Fraction) -> int:
        return self.bisect_right(x) - 1

    def sees_from_side(self, x: Fraction, y: Fraction) -> bool:
        v = self.value(x)
        return v is not None and y >= v


def left_profile(chain: Chain, g: Point, side: str = "left") -> VisibilityProfile:
    """Scan right of ``g`` keeping the steepest blocker seen so far."""
    gx, gy = g
    xs, ys = chain.xs, chain.ys
    last = len(xs) - 1
    if gx == xs[-1]:
        return VisibilityProfile(g, side, (gx,), (), ())
    j0 = bisect.bisect_right(xs, gx)
    pieces = [(gx, xs[j0], chain.edge_lines[j0 - 1])]
    slope = None
    for i in range(j0, last):
        s = (ys[i] - gy) / (xs[i] - gx)
        if slope is None or s > slope:
            slope = s
        shadow = (slope, gy - slope * gx)
        edge = chain.edge_lines[i]
        x0, x1 = xs[i], xs[i + 1]
        end = _at(shadow, x1)
        if end >= ys[i + 1]:
            pieces.append((x0, x1, shadow))
        elif _at(shadow, x0) == ys[i]:
            pieces.append((x0, x1, edge))
        else:
            cross = (shadow[1] - edge[1]) / (edge[0] - shadow[0])
            pieces.append((x0, cross, shadow))
            pieces.append((cross, x1, edge))
    out_x = [pieces[0][0]]
    out_l = []
    for x0, x1, line in pieces:
        if out_l and out_l[-1] == line:
            out_x[-1] = x1
        else:
            out_l.append(line)
            out_x.append(x1)
    kinds = []
    for k, line in enumerate(out_l):
        runs = _along_chain(chain, out_x[k], out_x[k + 1], line)
        full = len(runs) == 1 and runs[0] == (out_x[k], out_x[k + 1])
        kinds.append("chain" if full else "shadow")
    return VisibilityProfile(g, side, tuple(out_x), tuple(out_l), tuple(kinds))


def _along_chain(chain: Chain, x0: Fraction, x1: Fraction, line: Line) -> list:
    """Maximal parts of ``[x0, x1]`` where ``line`` coincides with the chain."""
    out = []
    e = chain.edge_index(x0)
    while True:
        a = max(x0, chain.xs[e])
        b = min(x1, chain.xs[e + 1])
        if chain.edge_lines[e] == line:
            out.append((a, b))
        else:
            for t in (a, b):
                if _at(line, t) == _at(chain.edge_lines[e], t):
                    out.append((t, t))
        if b >= x1 or e + 2 >= len(chain.xs):
            break
        e += 1
    return _merge_intervals(out)


def visible_chain_intervals(chain: Chain, profile: VisibilityProfile) -> list:
    """Closed x-intervals of the chain the profile's guard sees (its side only)."""
    xs = profile.xs
    if not profile.lines:
        return [(xs[0], xs[0])]
    out = []
    for k, line in enumerate(profile.lines):
        out.extend(_along_chain(chain, xs[k], xs[k + 1], line))
    return _merge_intervals(out)


def _merge_intervals(intervals: list) -> list:
    intervals = sorted(intervals)
    merged = []
    for lo, hi in intervals:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return merged


# ---------------------------------------------------------------------------
# Lower envelopes / ownership diagrams
# ---------------------------------------------------------------------------


@dataclass
class _Envelope:
    """Owners on the atoms ``xs[0], (xs[0], xs[1]), xs[1], ...``."""

    xs: list
    pt_owner: list
    pt_val: list
    seg_owner: list
    seg_line: list


@dataclass(frozen=True)
class OwnerInterval:
    lo: Fraction
    lo_closed: bool
    hi: Fraction
    hi_closed: bool
    owner: Optional[int]

    def contains(self, x: Fraction) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True


@dataclass(frozen=True)
class GuardRegion:
    """Interval ``I`` owned by ``owner`` plus its neighbours in the diagram.

    ``left``/``right`` are ``(present, owner)``: ``present`` is False at the
    ends of the chain; ``owner`` None stands for NULL.
    """

    interval: OwnerInterval
    left: tuple
    right: tuple

    @property
    def owner(self) -> Optional[int]:
        return self.interval.owner


class GuardingSide(ConfigurationSystem):
    """One-sided (left) guarding configuration system, ``b = 3``.

    ``chain`` and ``guards`` are in this side's coordinates; the right side
    is built from the mirrored chain by :class:`Terrain`.
    """

    b = 3

    def __init__(self, chain: Chain, guards: Sequence[Point], side: str = "left"):
        self.chain = chain
        self.guards = tuple(guards)
        self.side = side
        self.system_id = f"terrain-{side}"
        self._profiles: dict = {}
        for g in self.guards:
            if not chain.on_chain(g):
                raise ChainError(f"guard {g} is not on the chain")
        if len(set(self.guards)) != len(self.guards):
            raise ChainError("duplicate guard positions; merge them into one weighted guard")
        self.keys = [g[0] for g in self.guards]

    # profiles ---------------------------------------------------------------
    def profile(self, i: int) -> VisibilityProfile:
        prof = self._profiles.get(i)
        if prof is None:
            prof = left_profile(self.chain, self.guards[i], self.side)
            self._profiles[i] = prof
        return prof

    def sees_side(self, i: int, point: Point) -> bool:
        x, y = point
        return self.profile(i).sees_from_side(x, y) and y >= self.chain.height(x)

    def depth(self, point: Point, family: WeightedFamily) -> int:
        return sum(w for i, w in family.weights.items() if self.sees_side(i, point))

    # envelopes --------------------------------------------------------------
    def _single(self, i: int) -> _Envelope:
        prof = self.profile(i)
        x0 = self.chain.x_first
        xs, po, pv, so, sl = [], [], [], [], []
        if prof.start > x0:
            xs.append(x0)
            po.append(None)
            pv.append(None)
            so.append(None)
            sl.append(None)
        for k, t in enumerate(prof.xs):
            xs.append(t)
            po.append(i)
            pv.append(prof.value(t))
            if k < len(prof.lines):
                so.append(i)
                sl.append(prof.lines[k])
        return _Envelope(xs, po, pv, so, sl)

    def _better(self, o1, v1, o2, v2):
        if o1 is None:
            return o2, v2
        if o2 is None:
            return o1, v1
        if v1 < v2:
            return o1, v1
        if v2 < v1:
            return o2, v2
        return (o1, v1) if self.keys[o1] < self.keys[o2] else (o2, v2)

    def _merge(self, A: _Envelope, B: _Envelope) -> _Envelope:
        X = sorted(set(A.xs) | set(B.xs))
        # insert crossings of the two envelopes' lines
        full = []
        ia = ib = 0
        for k in range(len(X) - 1):
            u, v = X[k], X[k + 1]
            while A.xs[ia + 1] <= u:
                ia += 1
            while B.xs[ib + 1] <= u:
                ib += 1
            full.append(u)
            la, lb = A.seg_line[ia], B.seg_line[ib]
            if la is not None and lb is not None and la[0] != lb[0]:
                c = (lb[1] - la[1]) / (la[0] - lb[0])
                if u < c < v:
                    full.append(c)
        full.append(X[-1])

        xs, po, pv, so, sl = [], [], [], [], []
        ia = ib = 0
        na, nb = len(A.xs), len(B.xs)
        for k, t in enumerate(full):
            while ia + 1 < na and A.xs[ia + 1] <= t:
                ia += 1
            while ib + 1 < nb and B.xs[ib + 1] <= t:
                ib += 1
            oa, va = self._point_of(A, ia, t)
            ob, vb = self._point_of(B, ib, t)
            o, val = self._better(oa, va, ob, vb)
            xs.append(t)
            po.append(o)
            pv.append(val)
            if k + 1 < len(full):
                mid = (t + full[k + 1]) / 2
                la, lb = A.seg_line[ia], B.seg_line[ib]
                oa = A.seg_owner[ia]
                ob = B.seg_owner[ib]
                wa = _at(la, mid) if la is not None else None
                wb = _at(lb, mid) if lb is not None else None
                o, _ = self._better(oa, wa, ob, wb)
                so.append(o)
                sl.append(la if o == oa and o is not None else (lb if o is not None else None))
        return self._simplify(_Envelope(xs, po, pv, so, sl))

    @staticmethod
    def _point_of(E: _Envelope, i: int, t: Fraction):
        if E.xs[i] == t:
            return E.pt_owner[i], E.pt_val[i]
        o = E.seg_owner[i]
        if o is None:
            return None, None
        return o, _at(E.seg_line[i], t)

    @staticmethod
    def _simplify(E: _Envelope) -> _Envelope:
        xs, po, pv, so, sl = [E.xs[0]], [E.pt_owner[0]], [E.pt_val[0]], [], []
        for k in range(1, len(E.xs)):
            seg_o, seg_l = E.seg_owner[k - 1], E.seg_line[k - 1]
            if (
                so
                and so[-1] == seg_o
                and sl[-1] == seg_l
                and po[-1] == seg_o
            ):
                # drop breakpoint xs[-1]: same owner and line on both sides
                xs.pop()
                po.pop()
                pv.pop()
                so.pop()
                sl.pop()
            so.append(seg_o)
            sl.append(seg_l)
            xs.append(E.xs[k])
            po.append(E.pt_owner[k])
            pv.append(E.pt_val[k])
        return _Envelope(xs, po, pv, so, sl)

    def envelope(self, H: Iterable[int]) -> _Envelope:
        H = sorted(set(H))
        if not H:
            return _Envelope([self.chain.x_first, self.chain.x_last], [None, None], [None, None], [None], [None])
        envs = [self._single(i) for i in H]
        while len(envs) > 1:
            nxt = [self._merge(envs[k], envs[k + 1]) for k in range(0, len(envs) - 1, 2)]
            if len(envs) % 2:
                nxt.append(envs[-1])
            envs = nxt
        return envs[0]

    def ownership_diagram(self, H: Iterable[int]) -> list:
        """Maximal intervals of constant owner, left to right."""
        E = self.envelope(H)
        atoms = []
        for k, t in enumerate(E.xs):
            atoms.append((t, True, t, True, E.pt_owner[k]))
            if k < len(E.seg_owner):
                atoms.append((t, False, E.xs[k + 1], False, E.seg_owner[k]))
        out = []
        for lo, lc, hi, hc, o in atoms:
            if out and out[-1][4] == o:
                plo, plc, _, _, _ = out[-1]
                out[-1] = (plo, plc, hi, hc, o)
            else:
                out.append((lo, lc, hi, hc, o))
        return [OwnerInterval(*a) for a in out]

    def owner_at(self, x: Fraction, H: Iterable[int]) -> Optional[int]:
        """Pointwise owner by direct minimisation (test oracle)."""
        best, bv = None, None
        for i in sorted(set(H)):
            v = self.profile(i).value(x)
            if v is None:
                continue
            best, bv = self._better(best, bv, i, v)
        return best

    # configuration system ------------------------------------------------------
    def _configs(self, diagram: list) -> list:
        out = []
        for j, iv in enumerate(diagram):
            left = (True, diagram[j - 1].owner) if j > 0 else (False, None)
            right = (True, diagram[j + 1].owner) if j + 1 < len(diagram) else (False, None)
            region = GuardRegion(iv, left, right)
            defining = {iv.owner, left[1], right[1]} - {None}
            out.append(Configuration(region, frozenset(defining), self.system_id))
        return out

    def zero_regions(self, H: Iterable[int]) -> list:
        return self._configs(self.ownership_diagram(H))

    def locate(self, point: Point, H: Iterable[int]) -> Optional[Configuration]:
        x, y = point
        H = list(H)
        for cfg in self.zero_regions(H):
            iv = cfg.region.interval
            if iv.contains(x):
                return cfg if self.region_contains(cfg, point) else None
        raise ValueError("x outside the chain")

    def region_contains(self, cfg: Configuration, point: Point) -> bool:
        x, y = point
        iv = cfg.region.interval
        if not iv.contains(x) or y < self.chain.height(x):
            return False
        if iv.owner is None:
            return True
        return y < self.profile(iv.owner).value(x)

    def conflicts(self, cfg: Configuration, d: int) -> bool:
        if d in cfg.defining_set:
            return False
        reg: GuardRegion = cfg.region
        iv = reg.interval
        gd = self.keys[d]
        if gd > iv.hi:
            return False
        b = iv.owner
        if b is None:
            if gd < iv.hi or (gd == iv.hi and iv.hi_closed):
                return True
        elif self._beats_on(d, b, iv):
            return True
        if reg.left[0] and self._beats_adjacent(d, reg.left[1], iv.lo, iv.lo_closed, -1):
            return True
        if reg.right[0] and self._beats_adjacent(d, reg.right[1], iv.hi, iv.hi_closed, +1):
            return True
        return False

    def _beats_on(self, d: int, b: int, iv: OwnerInterval) -> bool:
        """Does ``d`` take some ``x`` of ``iv`` away from ``b``?"""
        gd = self.keys[d]
        lo, lo_c = (gd, True) if gd > iv.lo else (iv.lo, iv.lo_closed)
        hi, hi_c = iv.hi, iv.hi_closed
        if lo > hi or (lo == hi and not (lo_c and hi_c)):
            return False
        pd, pb = self.profile(d), self.profile(b)
        tie = gd < self.keys[b]
        if lo == hi:
            f = pd.value(lo) - pb.value(lo)
            return f < 0 or (f == 0 and tie)
        cuts = [(prof.bisect_right(lo), prof.bisect_left(hi)) for prof in (pd, pb)]
        # float screen over the breakpoints in any order; exact values only
        # when some difference is near zero
        fts = [float(lo), float(hi)]
        for prof, (a, z) in zip((pd, pb), cuts):
            fts += prof.approx[0][a:z]
        clear = True
        for t in fts:
            (u, eu), (w, ew) = pd.fvalue(t), pb.fvalue(t)
            if u - w < -(eu + ew):
                return True
            clear = clear and u - w > eu + ew
        if clear:
            return False
        ts = {lo, hi}
        for prof, (a, z) in zip((pd, pb), cuts):
            ts.update(prof.xs[a:z])
        ts = sorted(ts)
        f = [pd.value(t) - pb.value(t) for t in ts]
        if any(v < 0 for v in f):
            return True
        if not tie:
            return False
        last = len(ts) - 1
        for k, v in enumerate(f):
            if v == 0:
                if 0 < k < last or (k == 0 and lo_c) or (k == last and hi_c):
                    return True
                if k < last and f[k + 1] == 0:
                    return True
        return False

    def _beats_adjacent(self, d: int, a: Optional[int], x: Fraction, closed: bool, direction: int) -> bool:
        """Does ``d`` beat neighbour ``a`` on the atom next to ``x``?

        ``direction`` -1 looks left of the interval's ``lo``, +1 right of
        its ``hi``.  A closed endpoint means the neighbour atom is the open
        piece beyond ``x``; an open endpoint means it is the point ``x``.
        """
        gd = self.keys[d]
        on_point = not closed
        if on_point or direction > 0:
            defined = gd <= x
        else:
            defined = gd < x
        if not defined:
            return False
        if a is None:
            return True
        pd, pa = self.profile(d), self.profile(a)
        fx = float(x)
        (u, eu), (w, ew) = pd.fvalue(fx), pa.fvalue(fx)
        if abs(u - w) > eu + ew:
            return u < w
        vd, va = pd.value(x), pa.value(x)
        if vd != va:
            return vd < va
        if not on_point:
            if direction < 0:
                sd = pd.lines[pd.piece_left_of(x)][0]
                sa = pa.lines[pa.piece_left_of(x)][0]
                if sd != sa:
                    return sd > sa
            else:
                sd = pd.lines[pd.piece_right_of(x)][0]
                sa = pa.lines[pa.piece_right_of(x)][0]
                if sd != sa:
                    return sd < sa
        return gd < self.keys[a]


def is_ds2_sequence(seq: Sequence) -> bool:
    """No equal neighbours and no alternation ``a..b..a..b``."""
    if any(u == v for u, v in zip(seq, seq[1:])):
        return False
    symbols = sorted(set(seq))
    for a in symbols:
        for b in symbols:
            if a == b:
                continue
            state = 0
            want = (a, b, a, b)
            for s in seq:
                if s == want[state]:
                    state += 1
                    if state == 4:
                        return False
    return True


class Terrain:
    """A chain with guards on it and both one-sided guarding systems."""

    def __init__(self, chain: Chain, guards: Sequence[Point]):
        self.chain = chain
        self.guards = tuple((to_rational(x), to_rational(y)) for x, y in guards)
        for g in self.guards:
            if not chain.on_chain(g):
                raise ChainError(f"guard not on chain: {g}")
        self.left = GuardingSide(chain, self.guards, "left")
        mirror = chain.mirrored()
        self.right = GuardingSide(mirror, [(-x, y) for x, y in self.guards], "right")
        self._visible: dict = {}

    def __len__(self) -> int:
        return len(self.guards)

    def sees(self, i: int, p: Point) -> bool:
        return sees(self.chain, self.guards[i], p)

    def visible_intervals(self, i: int) -> list:
        """Closed x-intervals of the chain seen by guard ``i`` from either side."""
        vis = self._visible.get(i)
        if vis is None:
            left = visible_chain_intervals(self.chain, self.left.profile(i))
            right = visible_chain_intervals(self.right.chain, self.right.profile(i))
            vis = _merge_intervals(left + [(-hi, -lo) for lo, hi in right])
            self._visible[i] = vis
        return vis

    def unseen_witness(self, chosen: Iterable[int]) -> Optional[Point]:
        """Leftmost unseen chain point, or midpoint of the leftmost gap."""
        intervals = []
        for i in chosen:
            intervals.extend(self.visible_intervals(i))
        merged = _merge_intervals(intervals)
        x0, x1 = self.chain.x_first, self.chain.x_last
        if not merged or merged[0][0] > x0:
            x = x0
        elif len(merged) > 1:
            x = (merged[0][1] + merged[1][0]) / 2
        elif merged[0][1] < x1:
            x = (merged[0][1] + x1) / 2
        else:
            return None
        return (x, self.chain.height(x))

    def chain_demand(self) -> list:
        """Finite chain points whose coverage is equivalent to seeing the chain.

        Endpoints of all visible intervals plus midpoints between
        consecutive ones: every guard's coverage is constant on each piece.
        """
        ts = {self.chain.x_first, self.chain.x_last}
        for i in range(len(self.guards)):
            for lo, hi in self.visible_intervals(i):
                ts.add(lo)
                ts.add(hi)
        ts = sorted(ts)
        xs = []
        for a, b in zip(ts, ts[1:]):
            xs.append(a)
            xs.append((a + b) / 2)
        xs.append(ts[-1])
        return [(x, self.chain.height(x)) for x in xs]

    def cover_instance(self, family: Optional[WeightedFamily] = None, finite: bool = False) -> CoverInstance:
        family = family or WeightedFamily(self.guards)
        if finite:
            return CoverInstance(family, lambda p, i: self.sees(i, p), points=self.chain_demand())
        return CoverInstance(family, lambda p, i: self.sees(i, p), witness_finder=self.unseen_witness)

    def net(self, family: WeightedFamily, r, rng: random.Random, method: str = "two-level", **kw) -> frozenset:
        """``1/r``-net: union of ``1/(2r)``-nets of both one-sided systems.

        A point of depth ``>= W/r`` is seen by weight ``>= W/(2r)`` from one
        side, so the net of that side covers it.
        """
        r2 = min(Fraction(2) * Fraction(r), Fraction(family.total_weight))
        build = likely_net if method == "likely" else two_level_net
        left = build(self.left, family, r2, rng, **kw)
        right = build(self.right, family, r2, rng, **kw)
        return left | right

    def verify_net(self, family: WeightedFamily, T: Iterable[int], r) -> Optional[Configuration]:
        """Strict check of both sides at ``2r``; None or a heavy configuration."""
        r2 = min(Fraction(2) * Fraction(r), Fraction(family.total_weight))
        T = sorted(set(T))
        for side in (self.left, self.right):
            bad = verify_net(side, family, T, r2, strict=True)
            if bad is not None:
                return bad
        return None


def merge_guards(points: Sequence[Point], weights: Optional[Sequence[int]] = None) -> tuple:
    """Collapse guards at the same position; weights add up."""
    weights = list(weights) if weights is not None else [1] * len(points)
    order: dict = {}
    for p, w in zip(points, weights):
        order[p] = order.get(p, 0) + w
    pts = list(order)
    return pts, [order[p] for p in pts]


def guard_cover(terrain: Terrain, rng: random.Random, **kw) -> CoverResult:
    """Weight-doubling guard cover; coverage is checked on the chain itself."""
    inst = terrain.cover_instance()
    return bg_cover(inst, terrain.net, rng, **kw)
