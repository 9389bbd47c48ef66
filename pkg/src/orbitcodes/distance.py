"""Minimum subspace distance of cyclic orbit codes.

Two independent routes: ``distance_bruteforce`` intersects U with every shift
U beta^j; ``distance_multiset`` works from the discrete logs of U's nonzero
elements reduced mod N and counts pairwise differences.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from . import linalg
from .errors import InternalInconsistency, NonDirect, NotNormalized, NotPrimitive
from .field import Field, divisors
from .orbit import _orbit_rows, best_friend_degree, is_primitive_beta, orbit_cardinality
from .subspace import Subspace, contains_element, from_generators, scalar_multiply, subfield

DENSE_LIMIT = 1 << 22


def exact_log(x: int, q: int) -> Optional[int]:
    """log_q(x) if x is a power of q, else None."""
    e = 0
    while x % q == 0 and x > 1:
        x //= q
        e += 1
    return e if x == 1 else None


@dataclass
class RepProfile:
    N: int
    r: int
    S: int
    reps: list[int]
    multiplicity: dict[int, int] = dc_field(default_factory=dict)
    M: int = 0
    L: int = 0

    def intersection_dims(self, q: int) -> dict[int, int]:
        """J -> dim(U cap U alpha^J) for every J with m(J) > 0."""
        return {j: exact_log(m * (q**self.r - 1) + 1, q) for j, m in self.multiplicity.items()}


@dataclass
class DistanceReport:
    d: int
    s: int
    method: str
    k: int
    r: int
    N: int
    distribution: Optional[dict[int, int]] = None
    shift_dims: Optional[list[int]] = None
    profile: Optional[RepProfile] = None

    def to_json(self) -> dict:
        data = {"d": self.d, "s": self.s, "method": self.method, "k": self.k, "r": self.r, "N": self.N}
        if self.distribution is not None:
            data["distribution"] = {str(k): v for k, v in sorted(self.distribution.items())}
        if self.profile is not None:
            data["S"] = self.profile.S
            data["M"] = self.profile.M
            data["L"] = self.profile.L
        return data


def _require_normalized(u: Subspace) -> None:
    if not u.field.is_primitive:
        raise NotPrimitive("the multiset method needs a primitive field")
    if not contains_element(u, 1):
        raise NotNormalized("U must contain 1; use normalize_contains_one first")


def orbit_representatives(u: Subspace, r: int | None = None) -> RepProfile:
    """Exponents b_1 < ... < b_S < N with U minus 0 the union of the O(alpha^{b_i})."""
    _require_normalized(u)
    f = u.field
    if r is None:
        r = best_friend_degree(u)
    n_ = f.order // (f.q**r - 1)
    hits = Counter(f.log(x) % n_ for x in u.nonzero_elements())
    s = (f.q**u.k - 1) // (f.q**r - 1)
    if len(hits) != s or any(c != f.q**r - 1 for c in hits.values()):
        raise InternalInconsistency(f"expected {s} representatives each hit {f.q**r - 1} times")
    return RepProfile(N=n_, r=r, S=s, reps=sorted(hits))


def distance_multiset(u: Subspace, r: int | None = None) -> DistanceReport:
    """Distance 2(k - L) with L = log_q(M(q^r - 1) + 1), M the largest difference multiplicity."""
    prof = orbit_representatives(u, r)
    f = u.field
    q, n_ = f.q, prof.N
    if prof.S > 1:
        b = np.array(prof.reps, dtype=np.int64)
        diff = (b[:, None] - b[None, :]) % n_
        vals = diff[~np.eye(prof.S, dtype=bool)]
        if n_ <= DENSE_LIMIT:
            counts = np.bincount(vals, minlength=n_)
            nz = np.nonzero(counts)[0]
            prof.multiplicity = dict(zip(nz.tolist(), counts[nz].tolist()))
        else:
            prof.multiplicity = dict(Counter(vals.tolist()))
        prof.M = max(prof.multiplicity.values())
    unit = q**prof.r - 1
    for j, m in prof.multiplicity.items():
        if exact_log(m * unit + 1, q) is None:
            raise InternalInconsistency(f"m({j})(q^r-1)+1 = {m * unit + 1} is not a power of {q}")
    prof.L = exact_log(prof.M * unit + 1, q)
    d = 2 * (u.k - prof.L)
    return DistanceReport(d=d, s=prof.L // prof.r, method="multiset", k=u.k, r=prof.r, N=n_, profile=prof)


def distance_bruteforce(
    u: Subspace,
    beta_log: int = 1,
    distribution: bool = False,
    shift_dims: bool = False,
) -> DistanceReport:
    """min over 1 <= j < N of d(U, U beta^j), by direct intersection.

    Without ``distribution``/``shift_dims`` the scan stops as soon as some
    shift meets U in dimension k - r, the largest value a distinct shift allows.
    """
    f = u.field
    q, n, k = f.q, f.n, u.k
    r = best_friend_degree(u)
    n_ = orbit_cardinality(u, beta_log)
    full = distribution or shift_dims
    ceiling = k - r
    best = 0
    counts: Counter = Counter()
    dims = [k] if shift_dims else None
    rows = u.rows
    it = _orbit_rows(u, beta_log, n_)
    next(it)
    for raw in it:
        dim = 2 * k - linalg.rank(rows + raw, q, n)
        if dim > best:
            best = dim
        if full:
            counts[2 * (k - dim)] += 1
            if dims is not None:
                dims.append(dim)
        elif best >= ceiling:
            break
    dist = None
    if distribution:
        dist = {d: n_ * c // 2 for d, c in counts.items()}
    return DistanceReport(
        d=2 * (k - best), s=best // r, method="brute", k=k, r=r, N=n_, distribution=dist, shift_dims=dims
    )


def distance(u: Subspace, beta_log: int = 1, method: str = "auto") -> DistanceReport:
    """Dispatch: the multiset method for primitive beta, brute force otherwise."""
    if method == "multiset" or (method == "auto" and is_primitive_beta(u.field, beta_log)):
        if not is_primitive_beta(u.field, beta_log):
            raise NotPrimitive("the multiset method only applies to primitive beta")
        if not contains_element(u, 1):
            from .subspace import normalize_contains_one

            u, _ = normalize_contains_one(u)
        return distance_multiset(u)
    return distance_bruteforce(u, beta_log)


def pairwise_distance_distribution(code: list[Subspace]) -> dict[int, int]:
    out: Counter = Counter()
    for i in range(len(code)):
        for j in range(i + 1, len(code)):
            a, b = code[i], code[j]
            inter = a.k + b.k - linalg.rank(a.rows + b.rows, a.field.q, a.field.n)
            out[a.k + b.k - 2 * inter] += 1
    return dict(out)


@dataclass(frozen=True)
class DistanceBounds:
    lower: int
    upper: int
    non_spread_upper: Optional[int]
    spread: bool


def distance_bounds(u: Subspace) -> DistanceBounds:
    """2r <= d <= 2k, and d <= 2(k - r) unless U is the subfield F_{q^k}."""
    r = best_friend_degree(u)
    k = u.k
    t = k // r
    return DistanceBounds(lower=2 * r, upper=2 * k, non_spread_upper=2 * (k - r) if t >= 2 else None, spread=r == k)


@dataclass
class DirectSumClassification:
    subspace: Subspace
    r: int
    l: int
    t: int
    mipo_degree: int
    degree_equals_t: bool
    closed_under_shift: bool
    best_friend_degree: int
    best_friend_is_r: bool
    is_field: bool
    predicted_distance: Optional[int]


def classify_direct_sum(field: Field, r: int, l: int, t: int) -> DirectSumClassification:
    """Build U = sum_{i<t} alpha^{il} F_{q^r} and report the equivalent field tests."""
    field.check_subfield_degree(r)
    basis = field.subfield_basis(r)
    gens = [field.mul(field.exp(i * l), b) for i in range(t) for b in basis]
    u = from_generators(field, gens)
    if u.k != r * t:
        raise NonDirect(f"sum has dimension {u.k}, expected {r * t}")
    a_l = field.exp(l)
    deg = len(field.minimal_polynomial(a_l, r)) - 1
    closed = scalar_multiply(u, a_l) == u
    bf = best_friend_degree(u)
    is_field = field.n % (r * t) == 0 and u == subfield(field, r * t)
    return DirectSumClassification(
        subspace=u,
        r=r,
        l=l,
        t=t,
        mipo_degree=deg,
        degree_equals_t=deg == t,
        closed_under_shift=closed,
        best_friend_degree=bf,
        best_friend_is_r=bf == r,
        is_field=is_field,
        predicted_distance=2 * r if bf == r else None,
    )


@dataclass(frozen=True)
class CosetBound:
    bound: int
    r_prime: int
    gamma: int


def subfield_coset_upper_bound(u: Subspace) -> Optional[CosetBound]:
    """Look for gamma F_{q^r'} inside U with r' > r; if found, d <= 2(k - r').

    Only cosets of subfields are tried, so a None result proves nothing.
    """
    f = u.field
    r = best_friend_degree(u)
    elems = set(u.elements())
    nonzero = sorted(e for e in elems if e)
    for rp in sorted((d for d in divisors(f.n) if r < d <= u.k), reverse=True):
        basis = f.subfield_basis(rp)
        for gamma in nonzero:
            if all(f.mul(gamma, b) in elems for b in basis):
                return CosetBound(bound=2 * (u.k - rp), r_prime=rp, gamma=gamma)
    return None
