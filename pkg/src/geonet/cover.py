"""Set cover drivers: weight doubling over nets, greedy, and an exact oracle."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional, Sequence

from .config_core import WeightedFamily

Membership = Callable[[Any, int], bool]
NetFn = Callable[[WeightedFamily, Fraction, random.Random], Iterable[int]]


class InfeasibleError(ValueError):
    """Some demand point lies in no object."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


@dataclass
class CoverInstance:
    """Objects, a membership predicate and the demand to be covered.

    The demand is either a finite list ``points`` or, for infinite demand
    sets, a ``witness_finder`` mapping a chosen index set to an uncovered
    point (None when that set covers everything).
    """

    family: WeightedFamily
    membership: Membership
    points: Optional[Sequence[Any]] = None
    witness_finder: Optional[Callable[[frozenset], Any]] = None

    def __post_init__(self):
        if self.points is None and self.witness_finder is None:
            raise ValueError("need demand points or a witness finder")

    @property
    def n(self) -> int:
        return len(self.family)


@dataclass
class CoverResult:
    chosen: tuple
    guessed_c: int = 0
    iterations: int = 0
    valid: bool = True
    algorithm: str = ""

    @property
    def size(self) -> int:
        return len(self.chosen)


def depth(point: Any, family: WeightedFamily, membership: Membership) -> int:
    """Weighted number of objects containing ``point`` (closed objects)."""
    return sum(w for i, w in family.weights.items() if membership(point, i))


def validate_cover(instance: CoverInstance, chosen: Iterable[int]) -> tuple:
    """Return ``(True, None)`` or ``(False, witness)`` for an uncovered point."""
    chosen = frozenset(chosen)
    if instance.points is None:
        witness = instance.witness_finder(chosen)
        return witness is None, witness
    member = instance.membership
    order = sorted(chosen)
    for p in instance.points:
        if not any(member(p, i) for i in order):
            return False, p
    return True, None


def _uncovered_witness(instance: CoverInstance, chosen: frozenset):
    ok, witness = validate_cover(instance, chosen)
    return None if ok else witness


def bg_cover(
    instance: CoverInstance,
    net_fn: NetFn,
    rng: random.Random,
    budget_factor: int = 8,
    debug: bool = False,
) -> CoverResult:
    """Iterative reweighting: grow a guess ``c'`` and double witness weights.

    For each guess ``c' = 1, 2, 4, ...`` the weights start at 1 and, up to
    ``ceil(budget_factor * c' * log2(max(2, n/c')))`` times, a
    ``1/(2c')``-net of the weighted family is built.  A net that covers the
    demand is returned; otherwise every object containing an uncovered
    witness has its weight doubled.
    """
    base = instance.family
    n = len(base)
    if n == 0:
        ok, witness = validate_cover(instance, ())
        if ok:
            return CoverResult((), 0, 0, True, "bg")
        raise InfeasibleError("empty family cannot cover the demand", witness)
    ok, witness = validate_cover(instance, base.indices)
    if not ok:
        raise InfeasibleError("the family does not cover the demand", witness)

    member = instance.membership
    iterations = 0
    guess = 1
    while True:
        weights = {i: 1 for i in base.indices}
        budget = math.ceil(budget_factor * guess * math.log2(max(2.0, n / guess)))
        for _ in range(budget):
            family = base.with_weights(weights)
            iterations += 1
            # r beyond W asks for the same thing as r = W (every depth-1 point)
            r = min(Fraction(2 * guess), Fraction(family.total_weight))
            net = frozenset(net_fn(family, r, rng))
            witness = _uncovered_witness(instance, net)
            if witness is None:
                return CoverResult(tuple(sorted(net)), guess, iterations, True, "bg")
            containing = [i for i in base.indices if member(witness, i)]
            if debug:
                d = sum(weights[i] for i in containing)
                assert d * r < family.total_weight, "witness escaped a 1/(2c')-net while deep"
            if not containing:
                raise InfeasibleError("witness lies in no object", witness)
            for i in containing:
                weights[i] *= 2
        if guess >= n:
            raise RuntimeError(
                f"no cover found with guess {guess} >= n={n}; membership or net function is broken"
            )
        guess = min(2 * guess, n)


def _cover_masks(instance: CoverInstance) -> tuple:
    if instance.points is None:
        raise ValueError("needs a finite demand set")
    pts = list(instance.points)
    idx = list(instance.family.indices)
    member = instance.membership
    masks = []
    for i in idx:
        m = 0
        for j, p in enumerate(pts):
            if member(p, i):
                m |= 1 << j
        masks.append(m)
    full = (1 << len(pts)) - 1
    union = 0
    for m in masks:
        union |= m
    if union != full:
        missing = ~union & full
        j = (missing & -missing).bit_length() - 1
        raise InfeasibleError(f"demand point {j} is covered by no object", pts[j])
    return idx, masks, full


def greedy_cover(instance: CoverInstance) -> CoverResult:
    """Classic greedy: most newly covered points first, ties to lowest index."""
    idx, masks, full = _cover_masks(instance)
    covered = 0
    chosen = []
    while covered != full:
        best, gain = -1, 0
        for k, m in enumerate(masks):
            g = bin(m & ~covered).count("1")
            if g > gain:
                best, gain = k, g
        chosen.append(idx[best])
        covered |= masks[best]
    return CoverResult(tuple(sorted(chosen)), 0, len(chosen), True, "greedy")


MAX_EXACT_N = 26


def exact_cover(instance: CoverInstance) -> CoverResult:
    """Optimal cover by branch and bound; lexicographically smallest optimum.

    Sizes are tried upward from a lower bound to the greedy size.  For each
    size a depth-first search picks indices in increasing order, so the
    first cover found is the lexicographically smallest of that size.
    """
    if len(instance.family) > MAX_EXACT_N:
        raise ValueError(f"exact_cover refuses n={len(instance.family)} > {MAX_EXACT_N}")
    idx, masks, full = _cover_masks(instance)
    if full == 0:
        return CoverResult((), 0, 0, True, "exact")
    upper = greedy_cover(instance).size
    n = len(masks)
    # suffix unions: what indices >= k can still cover
    suffix = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        suffix[k] = suffix[k + 1] | masks[k]
    popcount = [bin(m).count("1") for m in masks]
    suffix_best = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        suffix_best[k] = max(suffix_best[k + 1], popcount[k])
    nodes = 0

    def search(start: int, covered: int, left: int, picked: list) -> Optional[list]:
        nonlocal nodes
        nodes += 1
        if covered == full:
            return picked
        if left == 0 or start >= n:
            return None
        missing = full & ~covered
        if missing & ~suffix[start]:
            return None
        if left * suffix_best[start] < bin(missing).count("1"):
            return None
        low = missing & -missing
        for k in range(start, n):
            if not (suffix[k] & low):
                break
            picked.append(k)
            found = search(k + 1, covered | masks[k], left - 1, picked)
            if found is not None:
                return found
            picked.pop()
        return None

    lower = max(1, math.ceil(bin(full).count("1") / max(popcount)))
    for size in range(lower, upper + 1):
        found = search(0, 0, size, [])
        if found is not None:
            return CoverResult(tuple(idx[k] for k in found), size, nodes, True, "exact")
    raise AssertionError("greedy bound exceeded; unreachable")
