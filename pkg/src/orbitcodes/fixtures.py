"""Catalog of reference instances with their expected invariants.

Each fixture pins its field modulus, builds the object, and returns the
computed quantities as a dict that is compared key by key against
``expected``.  ``source`` records where the expected numbers come from:

* ``published``: values stated in the literature for this instance,
* ``derived``: values produced by an independent oracle and frozen here,
* ``trivial``: values that follow from a closed formula.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field, replace
from typing import Any, Callable, Optional

from .distance import (
    classify_direct_sum,
    distance_bruteforce,
    distance_multiset,
    orbit_representatives,
    subfield_coset_upper_bound,
)
from .errors import OrbitCodesError
from .field import Field, FieldSpec, default_modulus, make_field
from .linkage import (
    ConstituentCode,
    check_cardinality_bound,
    distance_between,
    greedy_partial_spread,
    link_cyclic,
    link_many,
    verify_union_of_orbits,
)
from .orbit import (
    best_friend_degree,
    friends,
    is_partial_spread,
    is_spread,
    orbit_cardinality,
    orbit_code,
    spread_code,
    stab_plus_beta_degree,
    stabilizer_order,
)
from .search import SearchSpec, exhaustive_search, k3sb_family
from .subspace import from_generators, from_logs, from_rows, is_space_over, subfield

SOURCES = ("published", "derived", "trivial")

# Pinned moduli, low-degree-first.
F2_4 = FieldSpec(2, 4, (1, 1, 0, 0, 1))                               # x^4+x+1
F2_6 = FieldSpec(2, 6, (1, 1, 0, 0, 0, 0, 1))                         # x^6+x+1
F2_7 = FieldSpec(2, 7, (1, 1, 0, 0, 0, 0, 0, 1))                      # x^7+x+1
F2_12 = FieldSpec(2, 12, (1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1))     # x^12+x^7+x^6+x^5+x^3+x+1
F3_4 = FieldSpec(3, 4, (2, 1, 0, 0, 1))                               # x^4+x+2

PART_SPREAD_ROWS = ((1, 0, 0, 0, 0, 0, 0), (0, 1, 0, 0, 1, 0, 1), (0, 0, 1, 1, 0, 1, 0))
PART_SPREAD_EXPONENTS = (0, 2, 5, 10, 20, 23, 57, 72, 75, 91, 95, 109, 113)

K3SB_BINARY = tuple(range(6, 21))
K3SB_ODD = tuple((q, n) for q in (3, 5, 7) for n in (6, 7, 8))


def k3sb_spec(q: int, n: int) -> FieldSpec:
    """Modulus used for the span{1, a^2, a^3} family.

    The distance of this family depends on which primitive element is alpha.
    The smallest primitive polynomial in the high-degree-first order (smallest
    sum c_i q^i) gives distance 4 for every listed (q, n).
    """
    return FieldSpec(q, n, default_modulus(q, n, high_first=True))


@dataclass
class Fixture:
    name: str
    source: str
    citation: str
    spec: Optional[FieldSpec]
    expected: dict[str, Any]
    compute: Callable[[Optional[Field]], dict[str, Any]]
    slow: bool = False

    def run(self) -> "FixtureOutcome":
        try:
            f = make_field(self.spec.q, self.spec.n, self.spec.modulus) if self.spec else None
            got = self.compute(f)
        except OrbitCodesError as exc:
            return FixtureOutcome(self, {}, [], error=f"{type(exc).__name__}: {exc}", exit_code=exc.exit_code)
        bad = [k for k, v in self.expected.items() if got.get(k) != v]
        return FixtureOutcome(self, got, bad)


@dataclass
class FixtureOutcome:
    fixture: Fixture
    computed: dict[str, Any]
    mismatches: list[str] = dc_field(default_factory=list)
    error: Optional[str] = None
    exit_code: int = 0

    @property
    def passed(self) -> bool:
        return self.error is None and not self.mismatches

    def to_json(self) -> dict:
        fx = self.fixture
        return {
            "name": fx.name,
            "source": fx.source,
            "citation": fx.citation,
            "passed": self.passed,
            "expected": _jsonable(fx.expected),
            "computed": _jsonable({k: self.computed.get(k) for k in fx.expected}),
            "mismatches": self.mismatches,
            "error": self.error,
        }


def _jsonable(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        if isinstance(v, int) and not isinstance(v, bool) and abs(v) > 2**53:
            v = str(v)
        elif isinstance(v, tuple):
            v = list(v)
        out[k] = v
    return out


# compute functions


def _etva1(f: Field) -> dict:
    u = from_logs(f, [0, 1, 4])
    pts = from_logs(f, [0, 1, 4, 6, 16, 24, 33])
    return {
        "rows": u.matrix,
        "same_as_point_set": pts == u,
        "k": u.k,
        "r": best_friend_degree(u),
        "friends": friends(u),
        "N": orbit_cardinality(u),
        "d_multiset": distance_multiset(u).d,
        "d_brute": distance_bruteforce(u).d,
        "over_F4": is_space_over(u, 2),
    }


def _etva1_arith(f: Field) -> dict:
    prod = f.mul(f.exp(3), f.exp(4))
    return {"a3_times_a4": f.vector(prod), "log": f.log(prod), "order_a9": f.element_order(f.exp(9)),
            "mipo_a9_degree": len(f.minimal_polynomial(f.exp(9), 1)) - 1, "phi_a4": f.vector(f.exp(4))}


def _sum_of_subfields(f: Field, terms) -> Any:
    gens = []
    for shift, r in terms:
        a = f.exp(shift)
        gens += [f.mul(a, b) for b in f.subfield_basis(r)]
    return from_generators(f, gens)


def _etva2a(f: Field) -> dict:
    u = _sum_of_subfields(f, [(0, 2), (1, 2), (3, 2)])
    brute = distance_bruteforce(u, shift_dims=True)
    return {
        "k": u.k,
        "r": best_friend_degree(u),
        "N": orbit_cardinality(u),
        "d_multiset": distance_multiset(u).d,
        "d_brute": brute.d,
        "max_F4_dim": max(brute.shift_dims[1:]) // 2,
    }


def _etva2b(f: Field) -> dict:
    w = _sum_of_subfields(f, [(0, 4), (1, 2)])
    bound = subfield_coset_upper_bound(w)
    return {
        "k": w.k,
        "r": best_friend_degree(w),
        "friends": friends(w),
        "N": orbit_cardinality(w),
        "d_multiset": distance_multiset(w).d,
        "d_brute": distance_bruteforce(w).d,
        "coset_bound": None if bound is None else bound.bound,
    }


def _spread_f8(f: Field) -> dict:
    code = spread_code(f, 3)
    members = code.members()
    return {
        "N": code.N,
        "stab_order": stabilizer_order(code.generator)[1],
        "d": distance_multiset(code.generator).d,
        "d_brute": distance_bruteforce(code.generator).d,
        "spread": is_spread(members),
    }


def _f81(f: Field) -> dict:
    beta_log = 16
    beta = f.exp(beta_log)
    u = subfield(f, 2)
    n_, stab = stabilizer_order(u, beta_log)
    code = orbit_code(u, beta_log)
    return {
        "beta_order": f.element_order(beta),
        "mipo_beta": f.minimal_polynomial(beta, 1),
        "N": n_,
        "stab_order": stab,
        "stab_plus_degree": stab_plus_beta_degree(u, beta_log),
        "best_friend": best_friend_degree(u),
        "partial_spread": is_partial_spread(code.members()),
    }


def _reps_f16(f: Field) -> dict:
    u = from_logs(f, [0, 1])
    prof = distance_multiset(u).profile
    return {"reps": tuple(orbit_representatives(u).reps), "N": prof.N, "D": sorted(prof.multiplicity),
            "M": prof.M, "d": 2 * (u.k - prof.L)}


def _direct_sum_f4(f: Field) -> dict:
    c = classify_direct_sum(f, 1, 21, 2)
    return {"is_field": c.is_field, "best_friend": c.best_friend_degree, "mipo_degree": c.mipo_degree}


def _direct_sum_f128(f: Field) -> dict:
    c = classify_direct_sum(f, 1, 1, 3)
    return {
        "is_field": c.is_field,
        "best_friend": c.best_friend_degree,
        "d": distance_multiset(c.subspace).d,
        "coset_bound": subfield_coset_upper_bound(c.subspace),
    }


def _exhaustive(n, k, r, q, target):
    def compute(_f):
        res = exhaustive_search(SearchSpec(q, n, k, r, target_distance=target))
        return {
            "search_space": res.search_space,
            "best": res.best_distance,
            "target_met": res.target_met,
            "complete": res.exhaustive_complete,
            "certified_nonexistence": res.nonexistence_certified,
        }

    return compute


def _k3sb(f: Field) -> dict:
    u, rep = k3sb_family(f)
    return {"d": rep.d, "N": rep.N, "r": rep.r}


def bounds_generator(f: Field, beta_log: int):
    b = beta_log
    return from_generators(f, [f.exp(e) for e in (0, 1, 4, 10, 10 + b, 8 + 2 * b)])


def bounds_per_beta(f: Field) -> dict[int, int]:
    """j -> distance of the generator built with beta = alpha^(65 j), gcd(j, 63) = 1."""
    out = {}
    for j in range(1, 63):
        if math.gcd(j, 63) != 1:
            continue
        u = bounds_generator(f, 65 * j)
        if u.k == 6 and best_friend_degree(u) == 1:
            out[j] = distance_multiset(u, 1).d
    return out


def _bounds(f: Field) -> dict:
    per = bounds_per_beta(f)
    best = [j for j, d in per.items() if d == 8]
    u = bounds_generator(f, 65 * best[0]) if best else None
    return {
        "betas_tried": len(per),
        "betas_with_d8": best,
        "max_d": max(per.values()),
        "brute_check": distance_bruteforce(u).d if u is not None else None,
    }


def part_spread_code():
    """The linked (13, 1165, 6, 3)_2 code and its two constituents."""
    f6 = make_field(F2_6.q, F2_6.n, F2_6.modulus)
    f7 = make_field(F2_7.q, F2_7.n, F2_7.modulus)
    c1 = ConstituentCode.from_orbit(spread_code(f6, 3), d=6, name="spread F_8 in F_2^6")
    u = from_rows(f7, PART_SPREAD_ROWS)
    c2 = greedy_partial_spread(orbit_code(u), PART_SPREAD_EXPONENTS)
    return c1, c2, link_cyclic(c1, f7, u.rows, c2.exponents, d2=6)


def _part_spread(_f) -> dict:
    c1, c2, linked = part_spread_code()
    return {
        "C1": (c1.n, c1.N, c1.verify_distance(), c1.k),
        "C2": (c2.n, c2.N, c2.verify_distance(), c2.k),
        "params": (linked.n, linked.N, linked.verify_distance(), linked.k),
        "ranks_ok": linked.check_ranks(),
        "within_1169": linked.N <= (2**13 - 2) // 7 - 1,
    }


def k3sb_constituents() -> list[ConstituentCode]:
    out = []
    for n in K3SB_BINARY:
        spec = k3sb_spec(2, n)
        f = make_field(2, n, spec.modulus)
        u, rep = k3sb_family(f)
        out.append(ConstituentCode.from_orbit(orbit_code(u), d=rep.d, name=f"k3sb n={n}"))
    return out


def sample_pair_distances(code, pairs: int, seed: int) -> list[int]:
    rng = random.Random(seed)
    out = []
    while len(out) < pairs:
        a, b = rng.randrange(code.N), rng.randrange(code.N)
        if a == b:
            continue
        ma, mb = code.member(code.index_of(a)), code.member(code.index_of(b))
        out.append(distance_between(ma, mb, code.q, code.n))
    return out


def _patch_second_best(_f) -> dict:
    linked = link_many(k3sb_constituents())
    card = check_cardinality_bound(linked)
    ds = sample_pair_distances(linked, 100, seed=0)
    return {
        "n": linked.n,
        "N": linked.N,
        "d": linked.d,
        "equality": card.equality,
        "equality_predicted": card.equality_predicted,
        "sampled_min_ge_4": min(ds) >= 4,
    }


def _union_23(_f) -> dict:
    fields = [make_field(2, 2), make_field(2, 3)]
    cs = [ConstituentCode.from_orbit(orbit_code(from_logs(f, [0])), name=f"F_2^{f.n} points") for f in fields]
    res = verify_union_of_orbits(link_many(cs), fields)
    return {"closed": res.closed, "orbits": res.orbit_count, "members": link_many(cs).N}


def _build() -> list[Fixture]:
    fx = [
        Fixture("etva1", "published", "binary field of order 64, generator span{1, a, a^4}", F2_6,
                {"rows": ((1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0)), "same_as_point_set": True,
                 "k": 3, "r": 1, "friends": [1], "N": 63, "d_multiset": 4, "d_brute": 4, "over_F4": False},
                _etva1),
        Fixture("etva1-arith", "derived", "table oracle in the field of order 64", F2_6,
                {"a3_times_a4": (0, 1, 1, 0, 0, 0), "log": 7, "order_a9": 7, "mipo_a9_degree": 3,
                 "phi_a4": (0, 0, 0, 0, 1, 0)},
                _etva1_arith),
        Fixture("etva2a", "published", "F_4 + a F_4 + a^3 F_4 in the field of order 4096", F2_12,
                {"k": 6, "r": 2, "N": 1365, "d_multiset": 8, "d_brute": 8, "max_F4_dim": 1},
                _etva2a),
        Fixture("etva2b", "published", "F_16 + a F_4 in the field of order 4096", F2_12,
                {"k": 6, "r": 2, "friends": [1, 2], "N": 1365, "d_multiset": 4, "d_brute": 4, "coset_bound": 4},
                _etva2b),
        Fixture("spread-f8", "published", "orbit of F_8 in the field of order 64", F2_6,
                {"N": 9, "stab_order": 7, "d": 6, "d_brute": 6, "spread": True},
                _spread_f8),
        Fixture("f81", "published", "F_9 under beta = a^16 in the field of order 81", F3_4,
                {"beta_order": 5, "mipo_beta": (1, 1, 1, 1, 1), "N": 5, "stab_order": 1, "stab_plus_degree": 1,
                 "best_friend": 2, "partial_spread": True},
                _f81),
        Fixture("reps-f16", "derived", "span{1, a} in the field of order 16, element enumeration", F2_4,
                {"reps": (0, 1, 4), "N": 15, "D": [1, 3, 4, 11, 12, 14], "M": 1, "d": 2},
                _reps_f16),
        Fixture("dirsum-f4", "published", "F_2 + a^21 F_2 in the field of order 64 is F_4", F2_6,
                {"is_field": True, "best_friend": 2, "mipo_degree": 2},
                _direct_sum_f4),
        Fixture("dirsum-f128", "published", "span{1, a, a^2} in the field of order 128", F2_7,
                {"is_field": False, "best_friend": 1, "d": 2, "coset_bound": None},
                _direct_sum_f128),
        Fixture("exhaustive-6-3-1-2", "published", "all 3-subspaces of F_2^6 containing 1", None,
                {"best": 4, "target_met": True, "complete": True},
                _exhaustive(6, 3, 1, 2, 4)),
        Fixture("exhaustive-8-4-1-2", "published", "all 4-subspaces of F_2^8 containing 1, target 6", None,
                {"search_space": 11811, "best": 4, "target_met": False, "complete": True,
                 "certified_nonexistence": True},
                _exhaustive(8, 4, 1, 2, 6), slow=True),
        Fixture("bounds-beta", "derived", "6-dim generator in the field of order 4096, every order-63 beta",
                F2_12,
                {"betas_tried": 36, "betas_with_d8": [13, 53], "max_d": 8, "brute_check": 8},
                _bounds),
        Fixture("partspread", "published", "spread of F_2^6 linked with a 13-member partial spread of F_2^7",
                None,
                {"C1": (6, 9, 6, 3), "C2": (7, 13, 6, 3), "params": (13, 1165, 6, 3), "ranks_ok": True,
                 "within_1169": True},
                _part_spread, slow=True),
        Fixture("patch-second-best", "published", "linkage of the 15 binary k = 3 codes of lengths 6..20", None,
                {"n": 195, "N": 2**195 - 1, "d": 4, "equality": True, "equality_predicted": True,
                 "sampled_min_ge_4": True},
                _patch_second_best, slow=True),
        Fixture("union-2-3", "derived", "binary point codes of lengths 2 and 3, closure check", None,
                {"closed": True, "orbits": 3, "members": 31},
                _union_23),
    ]
    for n in K3SB_BINARY:
        fx.append(Fixture(f"k3sb-2-{n}", "published", f"span{{1, a^2, a^3}} over F_2, n = {n}", k3sb_spec(2, n),
                          {"d": 4, "N": 2**n - 1, "r": 1}, _k3sb, slow=n >= 18))
    for q, n in K3SB_ODD:
        fx.append(Fixture(f"k3sb-{q}-{n}", "published", f"span{{1, a^2, a^3}} over F_{q}, n = {n}",
                          k3sb_spec(q, n), {"d": 4, "N": (q**n - 1) // (q - 1), "r": 1}, _k3sb,
                          slow=q**n > 10**6))
    return fx


class FixtureCatalog:
    """Named fixtures, filterable by substring."""

    def __init__(self, fixtures: list[Fixture] | None = None):
        self.fixtures = list(fixtures) if fixtures is not None else _build()
        for f in self.fixtures:
            if f.source not in SOURCES:
                raise ValueError(f"fixture {f.name}: unknown source {f.source!r}")
            if not f.citation:
                raise ValueError(f"fixture {f.name}: missing citation")

    def __len__(self) -> int:
        return len(self.fixtures)

    def __iter__(self):
        return iter(self.fixtures)

    def get(self, name: str) -> Fixture:
        for f in self.fixtures:
            if f.name == name:
                return f
        raise KeyError(name)

    def select(self, pattern: str | None = None, include_slow: bool = True) -> "FixtureCatalog":
        keep = [f for f in self.fixtures
                if (pattern is None or pattern.lower() in f.name.lower()) and (include_slow or not f.slow)]
        return FixtureCatalog(keep)

    def with_spec(self, name: str, spec_or_modulus) -> "FixtureCatalog":
        """Copy of the catalog with one fixture's field replaced (used for negative tests)."""
        out = []
        for f in self.fixtures:
            if f.name == name:
                spec = spec_or_modulus
                if not isinstance(spec, FieldSpec):
                    spec = FieldSpec(f.spec.q, f.spec.n, tuple(spec_or_modulus))
                f = replace(f, spec=spec)
            out.append(f)
        return FixtureCatalog(out)

    def run(self) -> list[FixtureOutcome]:
        return [f.run() for f in self.fixtures]
