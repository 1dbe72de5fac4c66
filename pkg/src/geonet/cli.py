"""Command line: instance files, nets, covers and reports.

Instance format, one record per line (``#`` starts a comment)::

    kind terrain|cubes|triangles
    chain x0 y0 x1 y1 ...      # terrain
    guard x y                  # terrain, repeatable
    weight i w                 # optional integer weight of object i
    cube x y z                 # cubes: min corner
    tri x1 y1 x2 y2 x3 y3      # triangles
    point x y [z]              # demand point (cubes, triangles)

Numbers are exact: ``3``, ``-0.25`` or ``7/8``.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Optional, Sequence

from .boxes3d import UnitCube, cube_cover, unit_cube_net, verify_cube_net
from .config_core import WeightedFamily, make_rng
from .cover import CoverInstance, InfeasibleError, bg_cover, exact_cover, greedy_cover, validate_cover
from .instances import random_cubes, random_fat_triangles, random_points_in, random_points_in_triangles, random_terrain
from .nets import NetConstructionError, likely_net, two_level_net, verify_net
from .terrain import Chain, ChainError, Terrain
from .triangles2d import GeneralPositionError, Triangle, TriangleSystem, frame_for, triangle_cover

KINDS = ("terrain", "cubes", "triangles")
_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)(/\d+)?$")


class InstanceError(ValueError):
    """Bad instance text; ``line`` is 1-based, or 0 for whole-file problems."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def parse_number(tok: str) -> Fraction:
    if not _NUMBER.match(tok):
        raise ValueError(f"bad number {tok!r}")
    if "/" in tok:
        num, den = tok.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in {tok!r}")
        return Fraction(Decimal(num)) / int(den)
    try:
        return Fraction(Decimal(tok))
    except InvalidOperation as exc:
        raise ValueError(f"bad number {tok!r}") from exc


def format_number(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class Instance:
    kind: str
    chain: Optional[list] = None
    objects: list = field(default_factory=list)
    points: list = field(default_factory=list)
    weights: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.objects)

    @property
    def m(self) -> int:
        return len(self.chain) if self.kind == "terrain" else len(self.points)

    def family(self) -> WeightedFamily:
        objs = self.objects
        if self.kind == "cubes":
            objs = [UnitCube(c) for c in objs]
        elif self.kind == "triangles":
            objs = [Triangle(t[0:2], t[2:4], t[4:6]) for t in objs]
        return WeightedFamily(objs, {i: self.weights.get(i, 1) for i in range(len(objs))})

    def terrain(self) -> Terrain:
        return Terrain(Chain(self.chain), self.objects)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (self.kind, self.chain, self.objects, self.points, self.weights) == (
            other.kind, other.chain, other.objects, other.points, other.weights)


_ARITY = {"guard": 2, "cube": 3, "tri": 6}


def parse_instance(text: str) -> Instance:
    """Parse and validate instance text (see the module docstring)."""
    kind = None
    inst = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "kind":
            if inst is not None:
                raise InstanceError("duplicate kind record", lineno)
            if len(rest) != 1 or rest[0] not in KINDS:
                raise InstanceError(f"kind must be one of {', '.join(KINDS)}", lineno)
            kind = rest[0]
            inst = Instance(kind)
            continue
        if inst is None:
            raise InstanceError("first record must be 'kind'", lineno)
        if head == "weight":
            if len(rest) != 2 or not all(t.isdigit() for t in rest):
                raise InstanceError("weight needs an index and a positive integer", lineno)
            i, w = int(rest[0]), int(rest[1])
            if w <= 0:
                raise InstanceError("weights must be positive", lineno)
            inst.weights[i] = w
            continue
        try:
            nums = [parse_number(t) for t in rest]
        except ValueError as exc:
            raise InstanceError(str(exc), lineno) from None
        allowed = {"terrain": ("chain", "guard"), "cubes": ("cube", "point"), "triangles": ("tri", "point")}[kind]
        if head not in allowed:
            raise InstanceError(f"record {head!r} not allowed for kind {kind}", lineno)
        if head == "chain":
            if inst.chain is not None:
                raise InstanceError("duplicate chain record", lineno)
            if len(nums) < 4 or len(nums) % 2:
                raise InstanceError("chain needs at least two x y pairs", lineno)
            inst.chain = [(nums[k], nums[k + 1]) for k in range(0, len(nums), 2)]
            continue
        if head == "point":
            dim = 3 if kind == "cubes" else 2
            if len(nums) != dim:
                raise InstanceError(f"point needs {dim} coordinates", lineno)
            inst.points.append(tuple(nums))
            continue
        if len(nums) != _ARITY[head]:
            raise InstanceError(f"{head} needs {_ARITY[head]} numbers", lineno)
        inst.objects.append(tuple(nums))
    if inst is None:
        raise InstanceError("missing kind record")
    _validate(inst)
    return inst


def _validate(inst: Instance) -> None:
    for i in inst.weights:
        if not 0 <= i < inst.n:
            raise InstanceError(f"weight for unknown object {i}")
    try:
        if inst.kind == "terrain":
            if inst.chain is None:
                raise InstanceError("terrain needs a chain record")
            inst.terrain()
        elif inst.kind == "triangles":
            fam = inst.family()
            if fam.objects:
                TriangleSystem(fam.objects)
        else:
            inst.family()
    except (ChainError, GeneralPositionError) as exc:
        raise InstanceError(str(exc)) from None
    except ValueError as exc:
        if isinstance(exc, InstanceError):
            raise
        raise InstanceError(str(exc)) from None


def print_instance(inst: Instance) -> str:
    """Canonical text that :func:`parse_instance` maps back to ``inst``."""
    out = [f"kind {inst.kind}"]
    f = format_number
    if inst.chain is not None:
        out.append("chain " + " ".join(f"{f(x)} {f(y)}" for x, y in inst.chain))
    head = {"terrain": "guard", "cubes": "cube", "triangles": "tri"}[inst.kind]
    for o in inst.objects:
        out.append(head + " " + " ".join(f(x) for x in o))
    for p in inst.points:
        out.append("point " + " ".join(f(x) for x in p))
    for i in sorted(inst.weights):
        out.append(f"weight {i} {inst.weights[i]}")
    return "\n".join(out) + "\n"


# -- reports ---------------------------------------------------------------

REPORT_ORDER = ("kind", "n", "m", "r", "c'", "algorithm", "seed", "size", "indices", "iterations", "valid", "elapsed_ms")


def emit_report(result: dict, timing: bool = True) -> str:
    """``key: value`` lines: known keys in fixed order, extras sorted, timing last."""
    keys = [k for k in REPORT_ORDER[:-1] if k in result]
    keys += sorted(k for k in result if k not in REPORT_ORDER)
    keys += [k for k in REPORT_ORDER[-1:] if k in result]
    lines = []
    for k in keys:
        if k == "elapsed_ms" and not timing:
            continue
        v = result[k]
        if k == "indices":
            v = " ".join(str(i) for i in sorted(v))
        elif isinstance(v, bool):
            v = "true" if v else "false"
        elif isinstance(v, Fraction):
            v = format_number(v)
        lines.append(f"{k}: {v}".rstrip())
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        k, _, v = line.partition(":")
        out[k.strip()] = v.strip()
    return out


# -- geometry dispatch -----------------------------------------------------


def _cover_instance(inst: Instance, finite: bool) -> tuple:
    fam = inst.family()
    if inst.kind == "terrain":
        ter = inst.terrain()
        return ter.cover_instance(fam, finite=finite), ter
    member = lambda p, i: fam.objects[i].contains(p)
    return CoverInstance(fam, member, points=list(inst.points)), None


def _net(inst: Instance, r: Fraction, method: str, rng) -> frozenset:
    fam = inst.family()
    if inst.kind == "terrain":
        return inst.terrain().net(fam, r, rng, method=method)
    if inst.kind == "cubes":
        return unit_cube_net(fam, r, rng, method=method)
    system = TriangleSystem(fam.objects, frame_for(fam.objects, inst.points))
    build = likely_net if method == "likely" else two_level_net
    return build(system, fam, r, rng)


def _verify(inst: Instance, T, r: Fraction) -> bool:
    fam = inst.family()
    if inst.kind == "terrain":
        return inst.terrain().verify_net(fam, T, r) is None
    if inst.kind == "cubes":
        return verify_cube_net(fam, T, r) is None
    system = TriangleSystem(fam.objects, frame_for(fam.objects, inst.points))
    return verify_net(system, fam, sorted(T), r, strict=True) is None


def _cover(inst: Instance, algorithm: str, rng):
    if algorithm == "bg":
        if inst.kind == "terrain":
            ter = inst.terrain()
            cinst = ter.cover_instance(inst.family())
            return bg_cover(cinst, lambda fam, r, g: ter.net(fam, r, g), rng)
        objs = inst.family().objects
        if inst.kind == "cubes":
            return cube_cover(inst.points, objs, rng)
        return triangle_cover(inst.points, objs, rng)
    cinst, _ = _cover_instance(inst, finite=True)
    return exact_cover(cinst) if algorithm == "exact" else greedy_cover(cinst)


def _depth(inst: Instance, point: tuple) -> int:
    fam = inst.family()
    if inst.kind == "terrain":
        ter = inst.terrain()
        return sum(fam.weight(i) for i in fam.indices if ter.sees(i, point))
    return sum(fam.weight(i) for i in fam.indices if fam.objects[i].contains(point))


def _parse_indices(text: str, n: int) -> list:
    if text.strip() == "all":
        return list(range(n))
    toks = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    out = []
    for t in toks:
        if not t.isdigit() or int(t) >= n:
            raise ValueError(f"bad net index {t!r}")
        out.append(int(t))
    return out


# -- bench ---------------------------------------------------------------


def _bench(seed: int) -> dict:
    rng = make_rng(seed)
    rows = {}
    ter = random_terrain(rng, n=12, m=10)
    cubes = random_cubes(rng, 12, extent=2)
    pts = random_points_in(rng, cubes, 30)
    tris = random_fat_triangles(rng, 12)
    tpts = random_points_in_triangles(rng, tris, 30)
    cases = [
        ("terrain", Instance("terrain", list(ter.chain.vertices), list(ter.guards))),
        ("cubes", Instance("cubes", None, [c.min_corner for c in cubes], pts)),
        ("triangles", Instance("triangles", None, [sum(t.vertices, ()) for t in tris], tpts)),
    ]
    for name, inst in cases:
        net = _net(inst, Fraction(4), "two-level", rng)
        rows[f"{name}.net_r4_size"] = len(net)
        rows[f"{name}.net_r4_valid"] = _verify(inst, net, Fraction(4))
        bg = _cover(inst, "bg", rng)
        gr = _cover(inst, "greedy", rng)
        ex = _cover(inst, "exact", rng)
        rows[f"{name}.bg_size"] = bg.size
        rows[f"{name}.greedy_size"] = gr.size
        rows[f"{name}.exact_size"] = ex.size
        rows[f"{name}.bg_ratio"] = f"{bg.size / ex.size:.4f}"
    return rows


# -- entry point ---------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValueError(f"usage: {message}")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="geonet", description="Geometric set cover via epsilon-nets.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def common(sp, instance=True):
        if instance:
            sp.add_argument("--instance", required=True, help="instance file")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--no-timing", action="store_true", help="omit elapsed_ms")

    sp = sub.add_parser("net", help="build a 1/r-net")
    common(sp)
    sp.add_argument("--r", required=True)
    sp.add_argument("--method", choices=("two-level", "likely"), default="two-level")
    sp = sub.add_parser("cover", help="cover the demand")
    common(sp)
    sp.add_argument("--algorithm", choices=("bg", "greedy", "exact"), default="bg")
    sp = sub.add_parser("verify-net", help="check a candidate net")
    common(sp)
    sp.add_argument("--net", required=True, help="indices separated by spaces or commas, or 'all'")
    sp.add_argument("--r", required=True)
    sp = sub.add_parser("depth", help="weighted depth of a point")
    common(sp)
    sp.add_argument("--point", required=True, help='coordinates, e.g. "1/2 3"')
    sp = sub.add_parser("bench", help="small fixed benchmark")
    common(sp, instance=False)
    sp.add_argument("--suite", choices=("basic",), default="basic")
    return p


def _load(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def run(argv: Sequence[str], out=None, err=None) -> int:
    """Run one subcommand; returns the exit code (2 = infeasible)."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _build_parser().parse_args(list(argv))
        rng = make_rng(args.seed)
        start = time.perf_counter()
        if args.cmd == "bench":
            report = {"algorithm": f"bench-{args.suite}", "seed": args.seed}
            report.update(_bench(args.seed))
        else:
            inst = _load(args.instance)
            report = {"kind": inst.kind, "n": inst.n, "m": inst.m}
            if args.cmd == "net":
                r = parse_number(args.r)
                T = _net(inst, r, args.method, rng)
                report.update({"r": r, "algorithm": args.method, "seed": args.seed, "size": len(T), "indices": T})
                report["valid"] = _verify(inst, T, r)
            elif args.cmd == "cover":
                res = _cover(inst, args.algorithm, rng)
                if args.algorithm == "bg":
                    report["c'"] = res.guessed_c
                report.update({"algorithm": args.algorithm, "seed": args.seed, "size": res.size, "indices": res.chosen})
                report["iterations"] = res.iterations
                cinst, _ = _cover_instance(inst, finite=False)
                report["valid"] = validate_cover(cinst, res.chosen)[0]
            elif args.cmd == "verify-net":
                r = parse_number(args.r)
                T = _parse_indices(args.net, inst.n)
                report.update({"r": r, "size": len(set(T)), "indices": set(T)})
                report["ok"] = _verify(inst, T, r)
            else:
                point = tuple(parse_number(t) for t in args.point.split())
                report["point"] = " ".join(format_number(x) for x in point)
                report["depth"] = _depth(inst, point)
        report["elapsed_ms"] = round((time.perf_counter() - start) * 1000)
        out.write(emit_report(report, timing=not args.no_timing))
        return 0
    except InfeasibleError as exc:
        err.write(f"infeasible: {exc}\n")
        return 2
    except (ValueError, OSError, NetConstructionError, RuntimeError) as exc:
        err.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
