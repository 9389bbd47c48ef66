from __future__ import annotations

import numpy as np
import pytest

from oracles import span
from orbitcodes.errors import EmptyGenerators, FieldMismatch, InvalidSubfieldDegree, ZeroScalar, ZeroSpace
from orbitcodes.orbit import enumerate_orbit
from orbitcodes.distance import pairwise_distance_distribution
from orbitcodes.subspace import (
    Subspace,
    contains_element,
    contains_subspace,
    dual,
    from_generators,
    from_logs,
    intersection,
    intersection_dim,
    is_space_over,
    normalize_contains_one,
    scalar_multiply,
    subfield,
    subspace_distance,
    sum_,
    whole_space,
    zero_space,
)


def _random_subspace(f, rng, k):
    return from_generators(f, [f.random_element(rng) for _ in range(k)])


def test_from_generators_rref(f64):
    u = from_logs(f64, [0, 1, 4])
    assert u.matrix == ((1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0))
    assert u.k == 3
    assert from_logs(f64, [0]).matrix == ((1, 0, 0, 0, 0, 0),)
    pts = [0] + [f64.exp(e) for e in (0, 1, 4, 6, 16, 24, 33)]
    assert from_generators(f64, pts) == u
    assert sorted(u.nonzero_elements()) == sorted(pts[1:])


def test_zero_generators_give_zero_space(f64):
    z = from_generators(f64, [0, 0])
    assert z.k == 0 and z == zero_space(f64)
    with pytest.raises(EmptyGenerators):
        from_generators(f64, [])


def test_rref_invariants(f81):
    rng = np.random.default_rng(4)
    for _ in range(50):
        u = _random_subspace(f81, rng, 3)
        m = u.matrix
        piv = u.pivots
        assert list(piv) == sorted(set(piv))
        for i, p in enumerate(piv):
            assert m[i][p] == 1
            assert all(m[j][p] == 0 for j in range(len(m)) if j != i)


def test_canonicity_under_reshuffling(f81):
    rng = np.random.default_rng(5)
    for _ in range(50):
        gens = [f81.random_element(rng) for _ in range(3)]
        u = from_generators(f81, gens)
        mixed = [f81.add(gens[0], f81.scale(2, gens[1])), f81.scale(2, gens[2]), gens[1], gens[0]]
        assert from_generators(f81, list(reversed(mixed))) == u
        assert hash(from_generators(f81, mixed)) == hash(u)


def test_intersection_examples(f64):
    f8 = subfield(f64, 3)
    assert intersection(f8, f8) == f8
    assert intersection(f8, scalar_multiply(f8, f64.alpha)).k == 0
    assert subspace_distance(f8, scalar_multiply(f8, f64.alpha)) == 6
    u = from_logs(f64, [0, 1, 4])
    assert intersection_dim(u, scalar_multiply(u, f64.alpha)) == 1


def test_intersection_against_point_sets(f81):
    rng = np.random.default_rng(6)
    for _ in range(30):
        v, w = _random_subspace(f81, rng, 2), _random_subspace(f81, rng, 3)
        sv = span(v.matrix, 3, 4)
        sw = span(w.matrix, 3, 4)
        inter = intersection(v, w)
        assert span(inter.matrix, 3, 4) == sv & sw
        assert intersection_dim(v, w) + sum_(v, w).k == v.k + w.k


def test_distance_metric_and_identities(f64):
    rng = np.random.default_rng(7)
    spaces = [_random_subspace(f64, rng, 3) for _ in range(15)]
    for v in spaces:
        assert subspace_distance(v, v) == 0
        for w in spaces:
            d = subspace_distance(v, w)
            assert d == subspace_distance(w, v)
            assert (d == 0) == (v == w)
            if v.k == w.k:
                assert d == 2 * (sum_(v, w).k - v.k)
            for x in spaces[:5]:
                assert subspace_distance(v, x) <= d + subspace_distance(w, x)


def test_field_mismatch(f64, f16):
    with pytest.raises(FieldMismatch):
        intersection(subfield(f64, 1), subfield(f16, 1))


def test_dual(f64, f81):
    assert dual(whole_space(f64)).k == 0
    assert dual(zero_space(f64)) == whole_space(f64)
    rng = np.random.default_rng(8)
    for f in (f64, f81):
        for _ in range(100):
            v, w = _random_subspace(f, rng, 2), _random_subspace(f, rng, 2)
            assert dual(dual(v)) == v
            assert dual(v).k == f.n - v.k
            assert subspace_distance(dual(v), dual(w)) == subspace_distance(v, w)
            for a in dual(v).rows:
                for b in v.rows:
                    assert sum(x * y for x, y in zip(f.vector(a), f.vector(b))) % f.q == 0


def test_scalar_multiply(f64):
    u = from_logs(f64, [0, 1, 4])
    assert scalar_multiply(u, 1) == u
    assert scalar_multiply(u, f64.exp(63)) == u
    rng = np.random.default_rng(9)
    for _ in range(30):
        g, h = f64.random_element(rng, nonzero=True), f64.random_element(rng, nonzero=True)
        assert scalar_multiply(scalar_multiply(u, g), f64.inv(g)) == u
        assert scalar_multiply(scalar_multiply(u, g), h) == scalar_multiply(u, f64.mul(g, h))
    with pytest.raises(ZeroScalar):
        scalar_multiply(u, 0)


def test_normalize_contains_one(f64):
    u = from_logs(f64, [0, 1, 4])
    assert normalize_contains_one(u) == (u, 1)
    v, g = normalize_contains_one(from_logs(f64, [1]))
    assert v == from_logs(f64, [0]) and g == f64.inv(f64.alpha)
    w = from_logs(f64, [1, 2])
    w1, g = normalize_contains_one(w)
    assert contains_element(w1, 1)
    # the orbits are isometric: same distance distribution
    a = pairwise_distance_distribution(list(enumerate_orbit(w)))
    b = pairwise_distance_distribution(list(enumerate_orbit(w1)))
    assert a == b
    with pytest.raises(ZeroSpace):
        normalize_contains_one(zero_space(f64))


def test_normalize_uses_smallest_vector(f81):
    rng = np.random.default_rng(10)
    for _ in range(20):
        v = _random_subspace(f81, rng, 2)
        if 1 in v:
            continue
        _, g = normalize_contains_one(v)
        smallest = min(v.nonzero_elements(), key=lambda e: f81.vector(e))
        assert g == f81.inv(smallest)


def test_is_space_over(f64, f4096):
    u = from_logs(f64, [0, 1, 4])
    assert is_space_over(u, 1)
    assert not is_space_over(u, 2)
    gens = []
    for s in (0, 1, 3):
        gens += [f4096.mul(f4096.exp(s), b) for b in f4096.subfield_basis(2)]
    assert is_space_over(from_generators(f4096, gens), 2)
    with pytest.raises(InvalidSubfieldDegree):
        is_space_over(u, 4)


def test_contains(f64):
    u = from_logs(f64, [0, 1, 4])
    assert contains_element(u, f64.exp(33))
    assert not contains_element(u, f64.exp(2))
    assert contains_subspace(u, from_logs(f64, [6]))
    assert 0 in u


def test_json_roundtrip(f81):
    u = from_logs(f81, [0, 5, 7])
    data = u.to_json(gen_logs=[0, 5, 7])
    assert Subspace.from_json(f81, data) == u
    assert Subspace.from_json(f81, {"k": 3, "rows": [], "gen_logs": [0, 5, 7]}) == u
