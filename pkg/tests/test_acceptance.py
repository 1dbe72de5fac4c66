"""Acceptance suite: ten property checks at their stated tolerances.

Each check prints one ``PASS``/``FAIL`` line.  Run with pytest (the lines
are repeated in the terminal summary) or directly as a script.
"""

from __future__ import annotations

import itertools
import math
import os
import random
import statistics
import subprocess
import sys
import time
from fractions import Fraction as F

import numpy as np

sys.path.insert(0, os.path.dirname(__file__))
import oracles  # noqa: E402

from geonet.boxes3d import ClusterSystem, UnitCube, cluster_boundary_rects, cone_region, cube_cover, grid_assign, unit_cube_net, verify_cube_net
from geonet.cli import Instance, print_instance
from geonet.config_core import WeightedFamily
from geonet.cover import CoverInstance, bg_cover, exact_cover, greedy_cover, validate_cover
from geonet.instances import random_cluster, random_cubes, random_fat_triangles, random_points_in, random_points_in_triangles, random_terrain
from geonet.nets import NetConstructionError, likely_net, two_level_net, verify_net
from geonet.terrain import left_profile, sees
from geonet.triangles2d import TriangleSystem, triangle_cover

REPORT: list = []
PROBES = 10_000
SEEDS = 30


def record(k: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
    REPORT.append(line)
    print(line, flush=True)


# -- 1 -------------------------------------------------------------------


def _probe_tris(rng, tris):
    return random_points_in_triangles(rng, tris, PROBES)


def _cube_probes(rng, cubes):
    return random_points_in(rng, cubes, PROBES)


def _terrain_probes(rng, ter):
    last = ter.chain.x_last
    out = []
    for _ in range(PROBES):
        x = F(rng.randint(0, int(last) * 1000), 1000)
        out.append((x, ter.chain.height(x) + F(rng.randint(0, 8), 4)))
    return out


def _soundness(member, T, W, r):
    depth = member.sum(axis=1)
    deep = depth * r >= W
    cols = sorted(T)
    covered = member[deep][:, cols].any(axis=1) if cols else np.zeros(int(deep.sum()), dtype=bool)
    return int(deep.sum()), int((~covered).sum())


def criterion_1():
    start = time.perf_counter()
    rs = (4, 8, 16)
    stats = {}
    fails = 0
    for geo in ("triangles", "terrain", "cubes"):
        deep_total = viol = bad_verify = 0
        sizes = []
        for seed in range(SEEDS):
            rng = random.Random(1000 + seed)
            if geo == "triangles":
                tris = random_fat_triangles(rng, 100)
                system = TriangleSystem(tris, validate=False)
                fam = WeightedFamily(system.triangles)
                member = oracles.triangle_membership(tris, _probe_tris(rng, tris))
            elif geo == "terrain":
                ter = random_terrain(rng, n=50, m=100, height=3)
                fam = WeightedFamily(ter.guards)
                member = oracles.terrain_visibility(ter.chain.vertices, ter.guards, _terrain_probes(rng, ter))
            else:
                cubes = random_cubes(rng, 100, extent=1)
                fam = WeightedFamily(cubes)
                member = oracles.cube_membership(cubes, _cube_probes(rng, cubes))
            for r in rs:
                if geo == "triangles":
                    T = two_level_net(system, fam, r, rng)
                    ok = verify_net(system, fam, T, r, strict=True) is None
                elif geo == "terrain":
                    T = ter.net(fam, r, rng)
                    ok = ter.verify_net(fam, T, r) is None
                else:
                    T = unit_cube_net(fam, r, rng)
                    ok = verify_cube_net(fam, T, r) is None
                d, v = _soundness(member, T, fam.total_weight, r)
                deep_total += d
                viol += v
                bad_verify += not ok
                sizes.append(len(T))
        stats[geo] = (deep_total, viol, bad_verify, statistics.mean(sizes))
        fails += viol + bad_verify
    elapsed = time.perf_counter() - start
    ok = fails == 0 and elapsed < 300
    detail = "; ".join(f"{g}: {d} deep probes, {v} uncovered, {b} verify failures, mean |T| {m:.1f}" for g, (d, v, b, m) in stats.items())
    record(1, ok, f"{detail}; {elapsed:.0f} s")
    return ok


# -- 2 -------------------------------------------------------------------


def _likely_trials(make, r, trials):
    first = 0
    worst = 0
    failures = 0
    for system, fam, rng in make(trials):
        st = {}
        try:
            likely_net(system, fam, r, rng, stats=st)
        except NetConstructionError:
            failures += 1
            continue
        first += st["attempts"] == 1
        worst = max(worst, st["attempts"])
    return first, worst, failures


def criterion_2():
    def cubes(trials):
        rng = random.Random(2)
        for _ in range(trials):
            c = random_cluster(rng, 100)
            yield ClusterSystem(c, (F(1, 2),) * 3), WeightedFamily(c), rng

    def triangles(trials):
        rng = random.Random(3)
        for _ in range(trials // 10):
            tris = random_fat_triangles(rng, 100)
            system = TriangleSystem(tris, validate=False)
            fam = WeightedFamily(system.triangles)
            for _ in range(10):
                yield system, fam, rng

    def terrain(trials):
        rng = random.Random(4)
        for _ in range(trials // 10):
            ter = random_terrain(rng, n=50, m=100, height=3)
            fam = WeightedFamily(ter.guards)
            for k in range(10):
                yield (ter.left if k % 2 == 0 else ter.right), fam, rng

    parts = []
    ok = True
    for name, make, r in (("cubes", cubes, 5), ("triangles", triangles, 4), ("terrain", terrain, 4)):
        first, worst, failures = _likely_trials(make, r, 100)
        ok &= first >= 80 and failures == 0
        parts.append(f"{name} r={r}: {first}/100 first-sample, max {worst} attempts, {failures} budget failures")
    record(2, ok, "; ".join(parts))
    return ok


# -- 3 -------------------------------------------------------------------


def _has_abab(seq) -> bool:
    pos: dict = {}
    for i, s in enumerate(seq):
        pos.setdefault(s, []).append(i)
    for a, b in itertools.combinations(pos, 2):
        merged = sorted([(i, a) for i in pos[a]] + [(i, b) for i in pos[b]])
        alternations = 1 + sum(1 for u, v in zip(merged, merged[1:]) if u[1] != v[1])
        if alternations >= 4:
            return True
    return False


def criterion_3():
    start = time.perf_counter()
    rng = random.Random(5)
    bad = 0
    longest = 0.0
    for _ in range(200):
        m = rng.randint(1, 50)
        ter = random_terrain(rng, n=rng.randint(4, 30), m=m, height=rng.choice((3, 10, 30)))
        r = len(ter.guards)
        for side in (ter.left, ter.right):
            diagram = side.ownership_diagram(range(r))
            owners = [iv.owner for iv in diagram if iv.owner is not None]
            if len(owners) > 2 * r - 1 or len(diagram) > 2 * r:
                bad += 1
            if any(a == b for a, b in zip(owners, owners[1:])) or _has_abab(owners):
                bad += 1
            longest = max(longest, len(owners) / (2 * r - 1))
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 30
    record(3, ok, f"200 terrains, {bad} violations, max length/(2r-1) = {longest:.2f}, {elapsed:.1f} s")
    return ok


# -- 4 -------------------------------------------------------------------


def criterion_4():
    rng = random.Random(6)
    tuples = counter = 0
    for t in range(50):
        # spread the remaining quota over the remaining terrains
        per = -(-(PROBES - tuples) // (50 - t))
        ter = random_terrain(rng, n=rng.randint(6, 30), m=rng.randint(3, 30), height=rng.choice((3, 10)))
        gs = ter.guards
        side = ter.left
        made = []
        tries = 0
        while len(made) < per and tries < 50 * per:
            tries += 1
            H = sorted(rng.sample(range(len(gs)), rng.randint(2, len(gs))))
            cands = [iv for iv in side.ownership_diagram(H) if iv.owner is not None]
            iv = rng.choice(cands)
            a = iv.owner
            if iv.lo == iv.hi:
                x = iv.lo
            else:
                x = iv.lo + (iv.hi - iv.lo) * F(rng.randint(1, 999), 1000)
            bs = [b for b in H if gs[a][0] < gs[b][0] < x]
            if not bs or x >= ter.chain.x_last:
                continue
            b = rng.choice(bs)
            xp = x + (ter.chain.x_last - x) * F(rng.randint(1, 1000), 1000)
            yp = left_profile(ter.chain, gs[b]).value(xp) + F(rng.randint(0, 20), 8)
            made.append((a, b, (xp, yp)))
        pts = [p for _, _, p in made]
        vis = oracles.terrain_visibility(ter.chain.vertices, gs, pts)
        for j, (a, b, p) in enumerate(made):
            assert vis[j, b], "premise: b sees p'"
            tuples += 1
            counter += not vis[j, a]
    ok = counter == 0 and tuples >= PROBES
    record(4, ok, f"{tuples} tuples over 50 terrains, {counter} counterexamples")
    return ok


# -- 5 and 6 ---------------------------------------------------------------


def _cover_cases():
    rng = random.Random(7)
    cases = []
    for _ in range(50):
        cubes = random_cubes(rng, rng.randint(3, 20), extent=2)
        pts = random_points_in(rng, cubes, rng.randint(1, 60))
        fam = WeightedFamily(cubes)
        inst = CoverInstance(fam, lambda q, i, fam=fam: fam.objects[i].contains(q), points=pts)
        cases.append(("cubes", inst, lambda g, pts=pts, cubes=cubes: cube_cover(pts, cubes, g)))
    for _ in range(50):
        tris = random_fat_triangles(rng, rng.randint(3, 20))
        pts = random_points_in_triangles(rng, tris, rng.randint(1, 60))
        fam = WeightedFamily(tris)
        inst = CoverInstance(fam, lambda q, i, fam=fam: fam.objects[i].contains(q), points=pts)
        cases.append(("triangles", inst, lambda g, pts=pts, tris=tris: triangle_cover(pts, tris, g)))
    while len(cases) < 150:
        ter = random_terrain(rng, n=rng.randint(4, 12), m=rng.randint(3, 20), height=6)
        end = int(ter.chain.x_last)
        pts = []
        for _ in range(rng.randint(1, 60)):
            x = F(rng.randint(0, end * 8), 8)
            p = (x, ter.chain.height(x))
            if any(ter.sees(i, p) for i in range(len(ter.guards))):
                pts.append(p)
        if not pts:
            continue
        fam = WeightedFamily(ter.guards)
        inst = CoverInstance(fam, lambda q, i, ter=ter: ter.sees(i, q), points=pts)
        cases.append(("terrain", inst, lambda g, inst=inst, ter=ter: bg_cover(inst, ter.net, g)))
    return cases


_CASES = None


def _cases():
    global _CASES
    if _CASES is None:
        rng = random.Random(8)
        out = []
        for geo, inst, solve in _cover_cases():
            t = time.perf_counter()
            opt = exact_cover(inst)
            t_exact = time.perf_counter() - t
            out.append((geo, inst, solve(rng), opt, t_exact))
        _CASES = out
    return _CASES


def criterion_5():
    ok = True
    parts = []
    for geo in ("cubes", "triangles", "terrain"):
        rows = [c for c in _cases() if c[0] == geo]
        ratios = [res.size / opt.size for _, _, res, opt, _ in rows]
        valid = all(validate_cover(inst, res.chosen)[0] for _, inst, res, _, _ in rows)
        slow = max(t for *_, t in rows)
        ok &= valid and max(ratios) <= 20 and slow < 10 and len(rows) == 50
        q = statistics.quantiles(ratios, n=4)
        parts.append(f"{geo}: valid={valid}, ratio min {min(ratios):.2f} q1 {q[0]:.2f} median {q[1]:.2f} q3 {q[2]:.2f} max {max(ratios):.2f}, slowest exact {slow:.2f} s")
    record(5, ok, "; ".join(parts))
    return ok


def criterion_6():
    bad = 0
    worst = 0.0
    for _, inst, _, opt, _ in _cases():
        g = greedy_cover(inst)
        bound = opt.size * (1 + math.log(len(inst.points)))
        bad += g.size > bound
        worst = max(worst, g.size / bound)
    record(6, bad == 0, f"{len(_cases())} instances, {bad} above exact*(1+ln|M|), max greedy/bound = {worst:.2f}")
    return bad == 0


# -- 7 -------------------------------------------------------------------


def _star_partition_violations(np_rng, cubes, cl) -> int:
    system = ClusterSystem(cubes, cl.grid_point)
    regs = [c.region for c in system.zero_regions(cl.members)]
    den = 64 * 1_000_003
    centre = np.array([int(x * den) for x in cl.grid_point], dtype=np.int64)
    Q = centre + np_rng.integers(-2 * den, 2 * den, size=(PROBES, 3))
    lo = np.array([[int(x * den) for x in cubes[i].min_corner] for i in cl.members], dtype=np.int64)
    inside = np.all((Q[:, None, :] >= lo[None]) & (Q[:, None, :] <= lo[None] + den), axis=2).any(axis=1)
    hits = oracles.cone_hits_int(regs, Q, den).sum(axis=1)
    return int((hits[inside] != 0).sum() + (hits[~inside] != 1).sum())


def criterion_7():
    rng = random.Random(9)
    np_rng = np.random.default_rng(9)
    assign_bad = star_bad = clusters = 0
    fits = []
    for _ in range(30):
        cubes = random_cubes(rng, 100, extent=1)
        fam = WeightedFamily(cubes)
        groups = grid_assign(fam)
        seen = sorted(i for cl in groups for i in cl.members)
        assign_bad += seen != list(range(100))
        for cl in groups:
            assign_bad += sum(not cubes[i].contains_interior(cl.grid_point) for i in cl.members)
            star_bad += _star_partition_violations(np_rng, cubes, cl)
            clusters += 1
        for r in (2, 4, 8):
            T = unit_cube_net(fam, r, rng)
            fits.append(len(T) / (125 * r))
    ok = assign_bad == 0 and star_bad == 0
    record(7, ok, f"{clusters} clusters, {assign_bad} assignment errors, {star_bad} star-partition violations over {PROBES} probes per cluster, fitted C = {max(fits):.4f}")
    return ok


# -- 8 -------------------------------------------------------------------


def criterion_8():
    rng = random.Random(10)
    misclass = overlaps = pairs_checked = 0
    for k in range(30):
        n = rng.randint(1, 20) if k >= 10 else rng.randint(1, 12)
        tris = random_fat_triangles(rng, n, centers=2)
        system = TriangleSystem(tris)
        traps = system.decompose(range(n)).trapezoids
        x0, x1, y0, y1 = system.frame
        probes = [(F(2 * rng.randint(int(x0), int(x1) - 1) + 1, 2), F(2 * rng.randint(int(y0), int(y1) - 1) + 1, 2)) for _ in range(PROBES)]
        covered = oracles.triangle_membership(tris, probes).any(axis=1)
        hits = oracles.trap_hits(traps, probes)
        misclass += int((hits[covered] != 0).sum() + (hits[~covered] != 1).sum())
        if n <= 12:
            for a, b in itertools.combinations(traps, 2):
                overlaps += oracles.trapezoids_overlap(a, b)
                pairs_checked += 1
    ok = misclass == 0 and overlaps == 0
    record(8, ok, f"30 sets, {misclass} misclassified of {30 * PROBES} probes, {overlaps} overlapping pairs of {pairs_checked}")
    return ok


# -- 9 -------------------------------------------------------------------


def criterion_9():
    rs = (4, 8, 16, 32)
    seeds = 3
    means = {"terrain": [], "cubes": [], "triangles": []}
    for r in rs:
        sizes = {k: [] for k in means}
        for s in range(seeds):
            rng = random.Random(100 * r + s)
            ter = random_terrain(rng, n=60, m=200, height=3)
            fam = WeightedFamily(ter.guards)
            sizes["terrain"].append(len(two_level_net(ter.left, fam, r, rng)))
            c = random_cluster(rng, 200)
            sizes["cubes"].append(len(two_level_net(ClusterSystem(c, (F(1, 2),) * 3), WeightedFamily(c), r, rng)))
            tris = random_fat_triangles(rng, 150)
            tsys = TriangleSystem(tris, validate=False)
            sizes["triangles"].append(len(two_level_net(tsys, WeightedFamily(tsys.triangles), r, rng)))
        for k in means:
            means[k].append(statistics.mean(sizes[k]))
    c_lin = {k: max(m / r for m, r in zip(means[k], rs)) for k in ("terrain", "cubes")}
    c_tri = max(m / (r * math.log(math.log(r))) for m, r in zip(means["triangles"], rs))
    ok = all(c <= 64 for c in c_lin.values())
    table = "; ".join(f"{k} " + ", ".join(f"r={r}:{m:.1f}" for r, m in zip(rs, means[k])) for k in means)
    record(9, ok, f"{table}; C terrain {c_lin['terrain']:.2f}, C cubes {c_lin['cubes']:.2f}, triangles size/(r loglog r) {c_tri:.2f}")
    return ok


# -- 10 ------------------------------------------------------------------


def _cli_files(tmp):
    rng = random.Random(11)
    ter = random_terrain(rng, n=10, m=8)
    cubes = random_cubes(rng, 12, extent=2)
    tris = random_fat_triangles(rng, 10)
    insts = {
        "terrain": Instance("terrain", list(ter.chain.vertices), list(ter.guards), [], {1: 2}),
        "cubes": Instance("cubes", None, [c.min_corner for c in cubes], random_points_in(rng, cubes, 25)),
        "triangles": Instance("triangles", None, [sum(t.vertices, ()) for t in tris], random_points_in_triangles(rng, tris, 25)),
    }
    paths = {}
    for k, inst in insts.items():
        p = os.path.join(tmp, f"{k}.txt")
        with open(p, "w") as fh:
            fh.write(print_instance(inst))
        paths[k] = p
    return paths


def criterion_10(tmp=None):
    import tempfile

    tmp = tmp or tempfile.mkdtemp(prefix="geonet-acc-")
    paths = _cli_files(tmp)
    cmds = [["bench", "--suite", "basic", "--seed", "3"]]
    for k, p in paths.items():
        cmds += [
            ["net", "--instance", p, "--r", "4", "--method", "two-level", "--seed", "1"],
            ["net", "--instance", p, "--r", "2", "--method", "likely", "--seed", "2"],
            ["cover", "--instance", p, "--algorithm", "bg", "--seed", "3"],
            ["cover", "--instance", p, "--algorithm", "greedy"],
            ["cover", "--instance", p, "--algorithm", "exact"],
            ["verify-net", "--instance", p, "--net", "all", "--r", "3"],
        ]
    differ = 0
    for c in cmds:
        outs = set()
        for _ in range(3):
            proc = subprocess.run([sys.executable, "-m", "geonet", *c, "--no-timing"], capture_output=True, text=True)
            outs.add((proc.returncode, proc.stdout))
        differ += len(outs) != 1 or next(iter(outs))[0] != 0
    ok = differ == 0
    record(10, ok, f"{len(cmds)} commands x 3 runs, {differ} differing or failing")
    return ok


# -- pytest entry points -----------------------------------------------------


def test_criterion_1():
    assert criterion_1()


def test_criterion_2():
    assert criterion_2()


def test_criterion_3():
    assert criterion_3()


def test_criterion_4():
    assert criterion_4()


def test_criterion_5():
    assert criterion_5()


def test_criterion_6():
    assert criterion_6()


def test_criterion_7():
    assert criterion_7()


def test_criterion_8():
    assert criterion_8()


def test_criterion_9():
    assert criterion_9()


def test_criterion_10(tmp_path):
    assert criterion_10(str(tmp_path))


if __name__ == "__main__":
    which = [int(a) for a in sys.argv[1:]] or list(range(1, 11))
    results = [globals()[f"criterion_{k}"]() for k in which]
    sys.exit(0 if all(results) else 1)
