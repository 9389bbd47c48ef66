from __future__ import annotations

import math

import numpy as np
import pytest

from oracles import orbit_by_sets, span
from orbitcodes.errors import InvalidSubfieldDegree, ZeroSpace
from orbitcodes.field import make_field
from orbitcodes.orbit import (
    analyze,
    best_friend_degree,
    covered_points,
    enumerate_orbit,
    friends,
    is_partial_spread,
    is_spread,
    orbit_cardinality,
    orbit_code,
    orbit_matrix,
    spread_code,
    stab_plus_beta_degree,
    stabilizer_order,
)
from orbitcodes.subspace import from_generators, from_logs, subfield, whole_space, zero_space
from orbitcodes import linalg


def _sum(f, terms):
    gens = []
    for shift, r in terms:
        gens += [f.mul(f.exp(shift), b) for b in f.subfield_basis(r)]
    return from_generators(f, gens)


def test_stabilizer_examples(f81, f64):
    assert stabilizer_order(subfield(f81, 2), 16) == (5, 1)
    assert stabilizer_order(subfield(f64, 3), 1) == (9, 7)
    assert stabilizer_order(whole_space(f64), 1)[0] == 1


def test_best_friend_examples(f64, f4096):
    assert best_friend_degree(from_logs(f64, [0, 1, 4]), cross_check=True) == 1
    assert best_friend_degree(_sum(f4096, [(0, 2), (1, 2), (3, 2)]), cross_check=True) == 2
    for k in (1, 2, 3, 6):
        assert best_friend_degree(subfield(f64, k), cross_check=True) == k
    with pytest.raises(ZeroSpace):
        best_friend_degree(zero_space(f64))


def test_friends(f64, f4096):
    assert friends(_sum(f4096, [(0, 4), (1, 2)])) == [1, 2]
    assert friends(subfield(f4096, 6)) == [1, 2, 3, 6]
    assert friends(from_logs(f64, [0, 1, 4])) == [1]


def test_stab_plus_beta(f81, f64):
    u = subfield(f81, 2)
    assert stab_plus_beta_degree(u, 16) == 1
    assert best_friend_degree(u) == 2
    assert stab_plus_beta_degree(from_logs(f64, [0, 1, 4])) == 1
    assert stab_plus_beta_degree(subfield(f64, 3)) == 3


def test_cardinality_examples(f64, f4096):
    assert orbit_cardinality(from_logs(f64, [0, 1, 4])) == 63
    assert orbit_cardinality(_sum(f4096, [(0, 2), (1, 2), (3, 2)])) == 1365
    assert orbit_cardinality(subfield(f64, 3)) == 9


def test_enumerate_orbit_distinct_and_matches_sets(f64):
    u = from_logs(f64, [0, 1, 4])
    members = list(enumerate_orbit(u))
    assert len(members) == len(set(members)) == 63
    ref = orbit_by_sets(span(u.matrix, 2, 6), f64.spec.modulus, 2)
    assert [span(m.matrix, 2, 6) for m in members] == ref


def test_member_equals_matrix_power(f81):
    u = from_logs(f81, [0, 3, 7])
    code = orbit_code(u)
    rng = np.random.default_rng(11)
    for i in rng.integers(0, code.N, 10).tolist():
        raw = orbit_matrix(code.generator, i)
        assert code.member(i).rows == linalg.rref(raw, 3, 4)


def test_spread_of_f8(f64):
    code = spread_code(f64, 3)
    members = code.members()
    assert code.N == 9 and len(members) == 9
    assert is_spread(members)
    assert len(covered_points(members)) == 63
    with pytest.raises(InvalidSubfieldDegree):
        spread_code(f64, 4)


def test_partial_spread_non_primitive(f81):
    code = spread_code(f81, 2, 16)
    members = code.members()
    assert len(members) == 5
    assert is_partial_spread(members)
    assert not is_spread(members)
    assert is_partial_spread(members[:1])


def test_orbit_code_descriptor(f64):
    u = from_logs(f64, [1, 2, 5])
    code = orbit_code(u)
    assert 1 in code.generator
    assert code.generator in set(enumerate_orbit(u))
    data = code.to_json(distance=4)
    assert data["N"] == 63 and data["best_friend_degree"] == 1 and data["distance"] == 4
    assert code.generator.rows == linalg.rref(orbit_matrix(code.generator, code.N), 2, 6)


def test_analyze(f4096):
    a = analyze(_sum(f4096, [(0, 2), (1, 2), (3, 2)]))
    assert (a.k, a.r, a.t, a.stab_order, a.N) == (6, 2, 3, 3, 1365)
    assert a.friends == [1, 2]


def test_prime_degree_cardinality():
    rng = np.random.default_rng(12)
    for q, n in ((2, 5), (2, 7), (3, 5)):
        f = make_field(q, n)
        for _ in range(10):
            k = int(rng.integers(1, n))
            u = from_generators(f, [1] + [f.random_element(rng) for _ in range(k - 1)])
            if u.k == n:
                continue
            assert orbit_cardinality(u) == (q**n - 1) // (q - 1)
            assert stabilizer_order(u)[0] == (q**n - 1) // (q - 1)


def test_non_primitive_divisibility(f4096):
    rng = np.random.default_rng(13)
    for _ in range(20):
        k = int(rng.integers(1, 5))
        u = from_generators(f4096, [f4096.random_element(rng, nonzero=True) for _ in range(k)])
        e = int(rng.choice([3, 5, 7, 9, 13, 21, 35, 63, 65, 195]))
        n_, stab = stabilizer_order(u, e)
        order = f4096.order // math.gcd(e, f4096.order)
        assert n_ * stab == order
        assert n_ % (order // math.gcd(order, 2**u.k - 1)) == 0
        assert stab_plus_beta_degree(u, e) <= best_friend_degree(u)
