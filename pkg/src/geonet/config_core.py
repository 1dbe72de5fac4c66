"""Configuration systems and weighted families.

A configuration system describes, for any subset ``H`` of objects, a
canonical decomposition of the complement of ``union(H)`` into regions.
Each region is defined by at most ``b`` objects and "conflicts" with the
objects that meet it (or beat one of its definers on a tie-break).

All geometry in this package is exact: coordinates are
:class:`fractions.Fraction` values.
"""

from __future__ import annotations

import bisect
import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable, Iterable, Mapping, Optional, Sequence

Rational = Fraction


def to_rational(value: Any) -> Fraction:
    """Convert ints, Fractions or decimal/``a/b`` strings to a Fraction.

    Binary floats are rejected because they silently carry rounding error.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


class WeightedFamily:
    """An indexed family of objects with positive integer weights.

    ``objects`` is shared by every family derived from the same instance so
    that indices stay stable; ``weights`` decides which indices are members.
    A weight ``w`` stands for ``w`` identical copies of the object.
    """

    __slots__ = ("objects", "_weights", "_indices", "_cumulative", "total_weight")

    def __init__(self, objects: Sequence[Any], weights: Optional[Mapping[int, int]] = None):
        self.objects = tuple(objects) if not isinstance(objects, tuple) else objects
        if weights is None:
            weights = {i: 1 for i in range(len(self.objects))}
        clean = {}
        for i, w in weights.items():
            if not 0 <= i < len(self.objects):
                raise IndexError(f"index {i} out of range")
            if int(w) != w or w < 1:
                raise ValueError(f"weight of {i} must be a positive integer, got {w!r}")
            clean[int(i)] = int(w)
        self._weights = clean
        self._indices = tuple(sorted(clean))
        cum = []
        total = 0
        for i in self._indices:
            total += clean[i]
            cum.append(total)
        self._cumulative = cum
        self.total_weight = total

    @classmethod
    def uniform(cls, objects: Sequence[Any]) -> "WeightedFamily":
        return cls(objects)

    @property
    def indices(self) -> tuple:
        return self._indices

    @property
    def weights(self) -> Mapping[int, int]:
        return self._weights

    def __len__(self) -> int:
        return len(self._indices)

    def __contains__(self, i: int) -> bool:
        return i in self._weights

    def weight(self, i: int) -> int:
        return self._weights[i]

    def weight_of(self, indices: Iterable[int]) -> int:
        w = self._weights
        return sum(w[i] for i in indices)

    def restrict(self, indices: Iterable[int]) -> "WeightedFamily":
        """Sub-family on ``indices`` keeping the current weights."""
        w = self._weights
        return WeightedFamily(self.objects, {i: w[i] for i in indices})

    def with_weights(self, weights: Mapping[int, int]) -> "WeightedFamily":
        return WeightedFamily(self.objects, weights)

    def slot_owner(self, slot: int) -> int:
        """Index owning multiset slot ``slot`` (0-based, < total_weight)."""
        return self._indices[bisect.bisect_right(self._cumulative, slot)]

    def __repr__(self) -> str:
        return f"WeightedFamily(n={len(self)}, W={self.total_weight})"


@dataclass(frozen=True)
class Configuration:
    """A canonical region together with the objects that define it."""

    region: Hashable
    defining_set: frozenset
    system_id: str = ""


class ConfigurationSystem:
    """Base class for the geometric configuration systems.

    Subclasses set ``b`` and ``system_id`` and implement
    :meth:`zero_regions`, :meth:`conflicts` and :meth:`locate`.
    Index arguments always refer to positions in ``objects``.
    """

    b: int = 1
    system_id: str = "abstract"

    def zero_regions(self, H: Iterable[int]) -> list:
        raise NotImplementedError

    def conflicts(self, cfg: Configuration, i: int) -> bool:
        raise NotImplementedError

    def locate(self, point: Any, H: Iterable[int]) -> Optional[Configuration]:
        """The 0-region of ``H`` containing ``point``, or None if covered."""
        raise NotImplementedError

    def conflict_set(self, cfg: Configuration, indices: Iterable[int]) -> list:
        return [i for i in indices if i not in cfg.defining_set and self.conflicts(cfg, i)]


def conflict_weight(system: ConfigurationSystem, cfg: Configuration, family: WeightedFamily) -> int:
    """Total weight of the members of ``family`` conflicting with ``cfg``."""
    return family.weight_of(system.conflict_set(cfg, family.indices))


def weighted_sample(family: WeightedFamily, k: int, rng: random.Random) -> frozenset:
    """Draw ``k`` distinct multiset slots uniformly and return their owners.

    Copies of one object collapse to its single index, so the result may
    have fewer than ``k`` elements.
    """
    W = family.total_weight
    if not 0 <= k <= W:
        raise ValueError(f"sample size {k} outside [0, {W}]")
    if 2 * k <= W:
        slots = set()
        while len(slots) < k:
            slots.add(rng.randrange(W))
        chosen = slots
    else:
        excluded = set()
        while len(excluded) < W - k:
            excluded.add(rng.randrange(W))
        if W - k == 0:
            return frozenset(family.indices)
        # Complement sampling: walk the excluded slots per index.
        result = set()
        counts: dict = {}
        for s in excluded:
            owner = family.slot_owner(s)
            counts[owner] = counts.get(owner, 0) + 1
        for i in family.indices:
            if counts.get(i, 0) < family.weight(i):
                result.add(i)
        return frozenset(result)
    return frozenset(family.slot_owner(s) for s in sorted(chosen))


def split_rng(rng: random.Random, label: str) -> random.Random:
    """Child stream derived from one draw of ``rng`` and a fixed label."""
    base = rng.getrandbits(64)
    digest = hashlib.sha256(f"{base}:{label}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def make_rng(seed: int) -> random.Random:
    return random.Random(int(seed) & 0xFFFFFFFFFFFFFFFF)
