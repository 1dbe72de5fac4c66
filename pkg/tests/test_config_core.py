import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from geonet.boxes3d import ClusterSystem, UnitCube
from geonet.config_core import (
    Configuration,
    WeightedFamily,
    conflict_weight,
    make_rng,
    split_rng,
    to_rational,
    weighted_sample,
)
from geonet.instances import random_terrain


def test_to_rational_exact():
    assert to_rational("0.5") == Fraction(1, 2)
    assert to_rational("7/8") == Fraction(7, 8)
    assert to_rational(3) == 3
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError):
        to_rational(True)


def test_family_invariants():
    fam = WeightedFamily(["a", "b", "c"], {0: 1, 1: 4, 2: 1})
    assert fam.total_weight == 6
    assert fam.indices == (0, 1, 2)
    assert fam.restrict([1, 2]).total_weight == 5
    # the weight map decides membership
    assert WeightedFamily(["a", "b", "c"], {1: 4}).indices == (1,)
    with pytest.raises(ValueError):
        WeightedFamily(["a"], {0: 0})


def test_sample_everything():
    fam = WeightedFamily(["A", "B"])
    assert weighted_sample(fam, 2, make_rng(1)) == {0, 1}


def test_sample_duplicates_collapse():
    fam = WeightedFamily(["A"], {0: 5})
    assert weighted_sample(fam, 3, make_rng(2)) == {0}


def test_sample_range_errors():
    fam = WeightedFamily(["A", "B"])
    with pytest.raises(ValueError):
        weighted_sample(fam, 3, make_rng(0))
    with pytest.raises(ValueError):
        weighted_sample(fam, -1, make_rng(0))


def test_sample_frequency():
    # B holds 3 of 4 slots; frequency 0.75 within 0.01 over 1e5 draws
    fam = WeightedFamily(["A", "B"], {0: 1, 1: 3})
    rng = make_rng(11)
    hits = sum(1 for _ in range(100_000) if weighted_sample(fam, 1, rng) == {1})
    assert abs(hits / 100_000 - 0.75) < 0.01


def test_all_weights_one_full_sample_and_determinism():
    fam = WeightedFamily(list(range(30)))
    assert weighted_sample(fam, 30, make_rng(5)) == set(range(30))
    a = [weighted_sample(fam, 7, make_rng(9)) for _ in range(3)]
    assert a[0] == a[1] == a[2]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=12), st.integers(0, 2**32), st.data())
def test_sample_is_subset_and_bounded(weights, seed, data):
    fam = WeightedFamily(list(range(len(weights))), dict(enumerate(weights)))
    k = data.draw(st.integers(0, fam.total_weight))
    s = weighted_sample(fam, k, random.Random(seed))
    assert s <= set(fam.indices)
    assert len(s) <= k
    if k == fam.total_weight:
        assert s == set(fam.indices)


def test_complement_sampling_marginals():
    # 2k > W takes the complement branch; each unit-weight index is kept w.p. k/W
    fam = WeightedFamily(list(range(10)))
    rng = make_rng(3)
    c = Counter()
    for _ in range(4000):
        c.update(weighted_sample(fam, 8, rng))
    for i in range(10):
        assert abs(c[i] / 4000 - 0.8) < 0.04


def test_split_rng_deterministic():
    a = split_rng(make_rng(1), "x").random()
    b = split_rng(make_rng(1), "x").random()
    c = split_rng(make_rng(1), "y").random()
    assert a == b != c


def test_conflict_weight_examples():
    # two disjoint cubes, region of A's boundary; B far away in cone of +x face
    cubes = [UnitCube((0, 0, 0)), UnitCube((3, 0, 0))]
    system = ClusterSystem(cubes, (Fraction(1, 2),) * 3)
    fam = WeightedFamily(cubes, {0: 2, 1: 3})
    regions = system.zero_regions([0])
    weights = sorted(conflict_weight(system, cfg, fam) for cfg in regions)
    assert weights[0] == 0
    assert weights[-1] == 3
    assert sum(weights) == 3


def test_conflict_weight_matches_brute_force_terrain():
    rng = random.Random(4)
    for _ in range(10):
        ter = random_terrain(rng, n=14, m=10)
        fam = WeightedFamily(ter.guards, {i: rng.randint(1, 3) for i in range(len(ter.guards))})
        H = rng.sample(range(len(ter.guards)), 3)
        for cfg in ter.left.zero_regions(H):
            brute = sum(fam.weight(d) for d in fam.indices if d not in cfg.defining_set and ter.left.conflicts(cfg, d))
            assert conflict_weight(ter.left, cfg, fam) == brute


def test_configuration_is_hashable():
    cfg = Configuration("r", frozenset({1, 2}), "s")
    assert cfg in {cfg}
