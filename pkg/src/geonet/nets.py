"""Epsilon-net constructions over configuration systems.

Weighted throughout: ``n`` becomes the total weight ``W`` and a
``1/r``-net must cover every point of weighted depth at least ``W/r``.
"""

from __future__ import annotations

import logging
import math
import random
from fractions import Fraction
from typing import Iterable, Optional

from .config_core import (
    Configuration,
    ConfigurationSystem,
    WeightedFamily,
    weighted_sample,
)

log = logging.getLogger(__name__)

DEFAULT_K = 4
DEFAULT_ATTEMPTS = 64


class NetConstructionError(RuntimeError):
    """The resample budget ran out; ``witness`` is the last heavy region."""

    def __init__(self, message: str, witness: Optional[Configuration] = None, attempts: int = 0):
        super().__init__(message)
        self.witness = witness
        self.attempts = attempts


def _too_heavy(weight: int, r: Fraction, W: int, strict: bool) -> bool:
    # weight vs W/r without division
    return weight * r >= W if strict else weight * r > W


def verify_net(
    system: ConfigurationSystem,
    family: WeightedFamily,
    R: Iterable[int],
    r,
    strict: bool = False,
) -> Optional[Configuration]:
    """Check that every 0-region of ``R`` is light with respect to ``family``.

    Light means conflict weight at most ``W/r`` (below ``W/r`` when
    ``strict``).  Returns None when the check passes and otherwise the
    configuration with the largest conflict weight.

    By completeness, a strict pass means every point of depth ``>= W/r``
    lies in some object of ``R``; a non-strict pass gives the same for
    depth ``> W/r``.
    """
    r = Fraction(r)
    W = family.total_weight
    R = list(R)
    if set(R) >= set(family.indices):
        # 0-regions of the whole family conflict with none of its members
        return None
    worst = None
    worst_weight = -1
    for cfg in system.zero_regions(R):
        w = family.weight_of(system.conflict_set(cfg, family.indices))
        if _too_heavy(w, r, W, strict) and w > worst_weight:
            worst, worst_weight = cfg, w
    return worst


def likely_net_size(r: Fraction, K: float, W: int) -> int:
    size = math.ceil(K * float(r) * math.log(max(float(r), 2.0)))
    return max(1, min(size, W))


def likely_net(
    system: ConfigurationSystem,
    family: WeightedFamily,
    r,
    rng: random.Random,
    K: float = DEFAULT_K,
    max_attempts: int = DEFAULT_ATTEMPTS,
    strict: bool = True,
    stats: Optional[dict] = None,
) -> frozenset:
    """Sample ``K r ln r`` slots until the sample verifies as a ``1/r``-net.

    ``stats["attempts"]`` receives the number of samples drawn.
    """
    r = Fraction(r)
    W = family.total_weight
    if r < 1 or r > W:
        raise ValueError(f"r={r} outside [1, W={W}]")
    size = likely_net_size(r, K, W)
    witness = None
    for attempt in range(1, max_attempts + 1):
        R = weighted_sample(family, size, rng)
        witness = verify_net(system, family, R, r, strict=strict)
        if witness is None:
            if stats is not None:
                stats["attempts"] = attempt
            return R
    if stats is not None:
        stats["attempts"] = max_attempts
    raise NetConstructionError(
        f"no likely 1/{r}-net after {max_attempts} samples of size {size} (K={K} too small?)",
        witness=witness,
        attempts=max_attempts,
    )


def two_level_net(
    system: ConfigurationSystem,
    family: WeightedFamily,
    r,
    rng: random.Random,
    K: float = DEFAULT_K,
    max_attempts: int = DEFAULT_ATTEMPTS,
    stats: Optional[dict] = None,
) -> frozenset:
    """Random sample of size ``r`` repaired region by region.

    Every 0-region of the first sample whose conflict set has weight
    ``w > W/r`` gets a likely ``1/j``-net of its conflict set, with
    ``j = w r / W``.  The union is then verified strictly (weight ``W/r``
    itself counts as heavy); any region that is still heavy gets the same
    repair until the check passes.  The size
    bound O(f(r)) of the construction needs ``r >= 2b``; smaller ``r`` is
    accepted and simply gives a valid net.
    """
    r = Fraction(r)
    W = family.total_weight
    if r < 1 or r > W:
        raise ValueError(f"r={r} outside [1, W={W}]")
    k = min(W, max(1, math.floor(r + Fraction(1, 2))))
    first = weighted_sample(family, k, rng)
    net = set(first)
    repairs = 0
    if len(net) == len(family):
        if stats is not None:
            stats.update(first_size=len(first), repairs=0, extra_rounds=0)
        return frozenset(net)
    for cfg in system.zero_regions(first):
        conflicting = system.conflict_set(cfg, family.indices)
        w = family.weight_of(conflicting)
        if w * r <= W:
            continue
        sub = family.restrict(conflicting)
        net |= likely_net(system, sub, Fraction(w) * r / W, rng, K=K, max_attempts=max_attempts)
        repairs += 1
    rounds = 0
    while True:
        witness = verify_net(system, family, net, r, strict=True)
        if witness is None:
            break
        conflicting = system.conflict_set(witness, family.indices)
        w = family.weight_of(conflicting)
        sub = family.restrict(conflicting)
        net |= likely_net(system, sub, Fraction(w) * r / W, rng, K=K, max_attempts=max_attempts)
        rounds += 1
    if rounds:
        log.debug("two_level_net: %d extra repair rounds at r=%s", rounds, r)
    if stats is not None:
        stats.update(first_size=len(first), repairs=repairs, extra_rounds=rounds)
    return frozenset(net)
