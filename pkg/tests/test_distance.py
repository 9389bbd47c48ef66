from __future__ import annotations

import numpy as np
import pytest

from oracles import orbit_distance_by_sets, span
from orbitcodes.distance import (
    classify_direct_sum,
    distance,
    distance_bounds,
    distance_bruteforce,
    distance_multiset,
    exact_log,
    orbit_representatives,
    pairwise_distance_distribution,
    subfield_coset_upper_bound,
)
from orbitcodes.errors import NonDirect, NotNormalized, NotPrimitive
from orbitcodes.field import make_field
from orbitcodes.orbit import best_friend_degree, enumerate_orbit
from orbitcodes.subspace import dual, from_generators, from_logs, subfield


def _sum(f, terms):
    gens = []
    for shift, r in terms:
        gens += [f.mul(f.exp(shift), b) for b in f.subfield_basis(r)]
    return from_generators(f, gens)


def test_exact_log():
    assert exact_log(1, 2) == 0
    assert exact_log(8, 2) == 3
    assert exact_log(6, 2) is None
    assert exact_log(27, 3) == 3


def test_representatives(f16, f64):
    prof = orbit_representatives(from_logs(f16, [0, 1]))
    assert prof.reps == [0, 1, 4] and prof.S == 3 and prof.N == 15
    assert orbit_representatives(subfield(f64, 3)).reps == [0]
    assert orbit_representatives(from_logs(f64, [0, 1, 4])).S == 7
    with pytest.raises(NotNormalized):
        orbit_representatives(from_logs(f64, [1, 2]))


def test_multiset_small_cases(f16, f64):
    rep = distance_multiset(from_logs(f16, [0, 1]))
    assert sorted(rep.profile.multiplicity) == [1, 3, 4, 11, 12, 14]
    assert set(rep.profile.multiplicity.values()) == {1}
    assert rep.profile.M == 1 and rep.d == 2
    spread = distance_multiset(subfield(f64, 3))
    assert spread.profile.multiplicity == {} and spread.profile.M == 0 and spread.d == 6
    assert distance_multiset(from_logs(f64, [0, 1, 4])).d == 4


def test_multiset_profile_invariants(f4096):
    rng = np.random.default_rng(14)
    for _ in range(10):
        u = from_generators(f4096, [1] + [f4096.random_element(rng) for _ in range(4)])
        prof = distance_multiset(u).profile
        n_ = prof.N
        assert sum(prof.multiplicity.values()) == prof.S * (prof.S - 1)
        for j, m in prof.multiplicity.items():
            assert prof.multiplicity.get((n_ - j) % n_) == m


def test_bruteforce_examples(f64, f4096):
    assert distance_bruteforce(from_logs(f64, [0, 1, 4])).d == 4
    rep = distance_bruteforce(_sum(f4096, [(0, 2), (1, 2), (3, 2)]))
    assert rep.d == 8 and rep.s == 1
    assert distance_bruteforce(_sum(f4096, [(0, 4), (1, 2)])).d == 4


def test_bruteforce_against_point_sets(f64, f81):
    rng = np.random.default_rng(15)
    for f in (f64, f81):
        for _ in range(8):
            u = from_generators(f, [1] + [f.random_element(rng) for _ in range(2)])
            ref = orbit_distance_by_sets(span(u.matrix, f.q, f.n), f.spec.modulus, f.q)
            assert distance_bruteforce(u).d == ref
            assert distance_multiset(u).d == ref


def test_distribution_counts_pairs(f64):
    u = from_logs(f64, [0, 1, 4])
    rep = distance_bruteforce(u, distribution=True)
    direct = pairwise_distance_distribution(list(enumerate_orbit(u)))
    assert rep.distribution == direct
    assert sum(direct.values()) == 63 * 62 // 2


def test_non_primitive_beta_uses_brute(f81):
    u = subfield(f81, 2)
    rep = distance(u, 16)
    assert rep.method == "brute" and rep.d == 4 and rep.N == 5
    with pytest.raises(NotPrimitive):
        distance(u, 16, method="multiset")


def test_auto_normalizes(f64):
    assert distance(from_logs(f64, [1, 2, 5])).d == 4


def test_bounds(f64, f4096):
    b = distance_bounds(subfield(f64, 3))
    assert (b.lower, b.upper, b.spread) == (6, 6, True)
    b = distance_bounds(_sum(f4096, [(0, 2), (1, 2), (3, 2)]))
    assert (b.lower, b.upper, b.non_spread_upper) == (4, 12, 8)


def test_t_equals_two_gives_2r(f4096):
    rng = np.random.default_rng(16)
    base = f4096.subfield_basis(2)
    checked = 0
    for _ in range(20):
        g = f4096.random_element(rng, nonzero=True)
        u = from_generators(f4096, base + [f4096.mul(g, b) for b in base])
        if u.k == 4 and best_friend_degree(u) == 2:
            assert distance_multiset(u).d == 4
            checked += 1
    assert checked > 10


def test_direct_sum_classification(f64, f128):
    c = classify_direct_sum(f64, 1, 21, 2)
    assert c.is_field and c.best_friend_degree == 2 and c.degree_equals_t and c.closed_under_shift
    c = classify_direct_sum(f128, 1, 1, 3)
    assert not c.is_field and c.best_friend_is_r
    assert c.predicted_distance == 2 == distance_multiset(c.subspace).d
    assert subfield_coset_upper_bound(c.subspace) is None
    with pytest.raises(NonDirect):
        classify_direct_sum(f64, 3, 9, 2)


def test_coset_bound(f4096, f64):
    b = subfield_coset_upper_bound(_sum(f4096, [(0, 4), (1, 2)]))
    assert b.bound == 4 and b.r_prime == 4
    assert subfield_coset_upper_bound(subfield(f64, 3)) is None


def test_dual_orbit_same_distribution(f64):
    for logs in ([0, 1, 4], [0, 2, 3], [0, 1]):
        orb = list(enumerate_orbit(from_logs(f64, logs)))
        assert pairwise_distance_distribution([dual(v) for v in orb]) == pairwise_distance_distribution(orb)


def test_spread_characterization_exhaustive():
    from orbitcodes.search import rref_with_one

    f = make_field(2, 6)
    for k in (2, 3):
        for u in rref_with_one(f, k):
            d = distance_multiset(u).d
            assert (d == 2 * k) == (u == subfield(f, k) if 6 % k == 0 else False)
