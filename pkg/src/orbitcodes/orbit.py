"""Cyclic orbit codes: stabilizers, best friends, cardinality, enumeration."""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from . import linalg
from .errors import ZeroSpace
from .field import Field, divisors
from .subspace import (
    Subspace,
    contains_element,
    is_space_over,
    normalize_contains_one,
    scalar_multiply,
    subfield,
)


def beta_order(field: Field, beta_log: int) -> int:
    return field.order // math.gcd(beta_log % field.order or field.order, field.order)


def stabilizer_order(u: Subspace, beta_log: int = 1) -> tuple[int, int]:
    """(N, |stab_beta(U)|) where N is the orbit length.

    N is the least divisor of |beta| with U beta^N = U.
    """
    f = u.field
    ob = beta_order(f, beta_log)
    for n_ in divisors(ob):
        if scalar_multiply(u, f.exp(beta_log * n_)) == u:
            return n_, ob // n_
    raise AssertionError("unreachable: beta^|beta| = 1 stabilizes everything")


def best_friend_degree(u: Subspace, cross_check: bool = False) -> int:
    """Degree r of the largest subfield F_{q^r} over which U is a vector space."""
    if u.k == 0:
        raise ZeroSpace("the zero space has every subfield as friend")
    f = u.field
    g = math.gcd(f.n, u.k)
    r = next(d for d in reversed(divisors(g)) if is_space_over(u, d))
    if cross_check:
        _, stab = stabilizer_order(u, 1)
        if stab != f.q**r - 1:
            from .errors import InternalInconsistency

            raise InternalInconsistency(f"stabilizer order {stab} != q^{r}-1")
    return r


def friends(u: Subspace) -> list[int]:
    return [d for d in divisors(u.field.n) if d <= max(u.k, 1) and is_space_over(u, d)]


def stab_plus_beta_degree(u: Subspace, beta_log: int = 1) -> int:
    """Degree over F_q of the smallest subfield containing stab_beta(U)."""
    f = u.field
    n_, _ = stabilizer_order(u, beta_log)
    gamma = f.exp(beta_log * n_)
    return len(f.conjugates(gamma, 1))


def is_primitive_beta(field: Field, beta_log: int) -> bool:
    return math.gcd(beta_log, field.order) == 1


def orbit_cardinality(u: Subspace, beta_log: int = 1) -> int:
    f = u.field
    if is_primitive_beta(f, beta_log):
        return f.order // (f.q ** best_friend_degree(u) - 1)
    return stabilizer_order(u, beta_log)[0]


def _orbit_rows(u: Subspace, beta_log: int, count: int) -> Iterator[tuple[int, ...]]:
    f = u.field
    if f.has_tables:
        logs = [f.log(r) for r in u.rows]
        for i in range(count):
            yield tuple(f.exp(lg + i * beta_log) for lg in logs)
    else:
        beta = f.exp(beta_log)
        raw = u.rows
        for _ in range(count):
            yield raw
            raw = tuple(f.mul(r, beta) for r in raw)


def enumerate_orbit(u: Subspace, beta_log: int = 1, count: int | None = None) -> Iterator[Subspace]:
    """U beta^i for i = 0..N-1, canonicalized, in exponent order."""
    f = u.field
    if count is None:
        count = orbit_cardinality(u, beta_log)
    for raw in _orbit_rows(u, beta_log, count):
        yield Subspace(f, linalg.rref(raw, f.q, f.n))


def orbit_matrix(u: Subspace, i: int, beta_log: int = 1) -> tuple[int, ...]:
    """Raw rows of U M^(i*beta_log) without canonicalization."""
    f = u.field
    g = f.exp(i * beta_log)
    return tuple(f.mul(r, g) for r in u.rows)


@dataclass(frozen=True)
class OrbitAnalysis:
    k: int
    r: int
    t: int
    stab_order: int
    N: int
    friends: list[int]
    stab_beta_plus_degree: int


@dataclass
class OrbitCode:
    field: Field
    beta_log: int
    generator: Subspace
    N: int
    best_friend: int = dc_field(default=0)

    @property
    def beta(self) -> int:
        return self.field.exp(self.beta_log)

    def __len__(self) -> int:
        return self.N

    def __iter__(self) -> Iterator[Subspace]:
        return enumerate_orbit(self.generator, self.beta_log, self.N)

    def member(self, i: int) -> Subspace:
        f = self.field
        return Subspace(f, linalg.rref(orbit_matrix(self.generator, i, self.beta_log), f.q, f.n))

    def members(self) -> list[Subspace]:
        return list(self)

    def to_json(self, distance: int | None = None) -> dict:
        data = {
            **self.field.spec.to_json(),
            "beta_log": self.beta_log,
            "generator": self.generator.to_json(),
            "N": self.N,
            "best_friend_degree": self.best_friend,
        }
        if distance is not None:
            data["distance"] = distance
        return data


def orbit_code(u: Subspace, beta_log: int = 1) -> OrbitCode:
    """The orbit code of U under <alpha^beta_log>.

    The generator is normalized to contain 1 when that leaves the orbit
    unchanged (the scaling factor lies in <beta>).
    """
    f = u.field
    gen = u
    if not contains_element(u, 1):
        normed, u_inv = normalize_contains_one(u)
        step = math.gcd(beta_log, f.order)
        if f.log(u_inv) % step == 0:
            gen = normed
    n_, _ = stabilizer_order(gen, beta_log)
    return OrbitCode(f, beta_log, gen, n_, best_friend_degree(gen))


def analyze(u: Subspace, beta_log: int = 1) -> OrbitAnalysis:
    f = u.field
    r = best_friend_degree(u)
    n_, stab = stabilizer_order(u, beta_log)
    return OrbitAnalysis(
        k=u.k,
        r=r,
        t=u.k // r,
        stab_order=stab,
        N=n_,
        friends=friends(u),
        stab_beta_plus_degree=stab_plus_beta_degree(u, beta_log),
    )


def spread_code(field: Field, r: int, beta_log: int = 1) -> OrbitCode:
    """Orbit of the subfield F_{q^r}: a spread for primitive beta, else a partial spread."""
    field.check_subfield_degree(r)
    return orbit_code(subfield(field, r), beta_log)


def is_partial_spread(code: Sequence[Subspace]) -> bool:
    """Pairwise trivial intersection, checked by counting covered points."""
    seen: set[int] = set()
    for s in code:
        pts = s.nonzero_elements()
        if seen.intersection(pts):
            return False
        seen.update(pts)
    return True


def covered_points(code: Sequence[Subspace]) -> set[int]:
    out: set[int] = set()
    for s in code:
        out.update(s.nonzero_elements())
    return out


def is_spread(code: Sequence[Subspace]) -> bool:
    if not code:
        return False
    f = code[0].field
    return is_partial_spread(code) and len(covered_points(code)) == f.order
