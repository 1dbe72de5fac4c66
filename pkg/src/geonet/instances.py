"""Seeded random instance generators for tests, benchmarks and demos.

Coordinates are dyadic or small-denominator rationals so that the numpy
probe oracles in the test-suite can evaluate them exactly after scaling.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .boxes3d import UnitCube
from .terrain import Chain, Terrain
from .triangles2d import Triangle, GeneralPositionError, check_general_position


def random_terrain(rng: random.Random, n: int = 20, m: int = 10, height: int = 10) -> Terrain:
    """Chain over x = 0..n-1 with integer heights; guards on vertices and edges."""
    ys = [rng.randint(0, height) for _ in range(n)]
    chain = Chain([(x, y) for x, y in enumerate(ys)])
    slots = [(Fraction(x), Fraction(y)) for x, y in enumerate(ys)]
    for x in range(n - 1):
        for t in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            gx = x + t
            slots.append((gx, chain.height(gx)))
    m = min(m, len(slots))
    guards = rng.sample(slots, m)
    guards.sort()
    return Terrain(chain, guards)


DYADIC = 64


def _dyadic(rng: random.Random, lo: Fraction, hi: Fraction, den: int = DYADIC) -> Fraction:
    """Uniform multiple of 1/den strictly inside (lo, hi)."""
    a = int(lo * den) + 1
    b = -int(-hi * den) - 1
    return Fraction(rng.randint(a, b), den)


def random_cluster(rng: random.Random, n: int, apex=(Fraction(1, 2),) * 3) -> list:
    """``n`` unit cubes all containing ``apex`` in their interiors."""
    cubes = []
    for _ in range(n):
        corner = tuple(_dyadic(rng, a - 1, a) for a in apex)
        cubes.append(UnitCube(corner))
    return cubes


def random_cubes(rng: random.Random, n: int, extent: int = 3) -> list:
    """Unit cubes with dyadic min corners in ``[0, extent]^3``."""
    return [
        UnitCube(tuple(Fraction(rng.randint(0, extent * DYADIC), DYADIC) for _ in range(3)))
        for _ in range(n)
    ]


def random_points_in(rng: random.Random, cubes: list, m: int) -> list:
    """Demand points, each inside a random cube (odd multiples of 1/128)."""
    pts = []
    for _ in range(m):
        c = rng.choice(cubes)
        pts.append(tuple(x + Fraction(2 * rng.randint(0, DYADIC - 1) + 1, 2 * DYADIC) for x in c.min_corner))
    return pts


def random_fat_triangles(
    rng: random.Random,
    n: int,
    centers: int = 3,
    spread: int = 15_000,
    size: int = 60_000,
    scale: int = 1_000_000,
    max_tries: int = 200,
) -> list:
    """Roughly equilateral triangles around a few centres, in general position.

    Integer coordinates; regenerates until :func:`check_general_position`
    accepts the set.
    """
    for _ in range(max_tries):
        cs = [(rng.randint(size, scale - size), rng.randint(size, scale - size)) for _ in range(centers)]
        tris = []
        for _ in range(n):
            cx, cy = rng.choice(cs)
            cx += rng.randint(-spread, spread)
            cy += rng.randint(-spread, spread)
            s = rng.randint(size // 2, size)
            jit = size // 20
            pts = []
            for k in range(3):
                # jittered equilateral corners
                ang = (0.0, 2.0944, 4.18879)[k] + rng.uniform(-0.3, 0.3)
                pts.append((cx + round(s * math.cos(ang)) + rng.randint(-jit, jit), cy + round(s * math.sin(ang)) + rng.randint(-jit, jit)))
            try:
                tris.append(Triangle(*pts))
            except ValueError:
                break
        if len(tris) < n:
            continue
        try:
            check_general_position(tris)
        except GeneralPositionError:
            continue
        return tris
    raise RuntimeError("could not generate triangles in general position")


def random_points_in_triangles(rng: random.Random, tris: list, m: int) -> list:
    """Demand points inside random triangles (half-integer coordinates)."""
    pts = []
    while len(pts) < m:
        t = rng.choice(tris)
        xs = [p[0] for p in t.vertices]
        ys = [p[1] for p in t.vertices]
        q = (Fraction(2 * rng.randint(int(min(xs)), int(max(xs))) + 1, 2), Fraction(2 * rng.randint(int(min(ys)), int(max(ys))) + 1, 2))
        if t.contains(q):
            pts.append(q)
    return pts
