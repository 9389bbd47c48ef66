"""F_q-subspaces of F_{q^n} held in canonical RREF form."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import EmptyGenerators, FieldMismatch, ZeroScalar, ZeroSpace
from .field import Field


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space of ``rows`` (packed field elements in RREF).

    Two subspaces are equal iff their fields and RREF rows coincide.
    """

    field: Field
    rows: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return self.field.n

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.rows == other.rows and self.field == other.field

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        mat = " ".join("".join(map(str, r)) for r in self.matrix)
        return f"Subspace(k={self.k}, rows=[{mat}])"

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.field.vector(r) for r in self.rows)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(linalg.pivot_column(r, self.field.q) for r in self.rows)

    def elements(self) -> list[int]:
        """All q^k elements, zero first."""
        q = self.field.q
        if self.k == 0:
            return [0]
        if q == 2:
            out = [0]
            for r in self.rows:
                out += [x ^ r for x in out]
            return out
        coeffs = np.array(list(itertools.product(range(q), repeat=self.k)), dtype=np.int64)
        digits = np.array(self.matrix, dtype=np.int64)
        combos = coeffs @ digits % q
        weights = np.array([q**i for i in range(self.n)], dtype=np.int64)
        return (combos @ weights).tolist()

    def nonzero_elements(self) -> list[int]:
        return [e for e in self.elements() if e]

    def __contains__(self, a: int) -> bool:
        return contains_element(self, a)

    def to_json(self, gen_logs: Sequence[int] | None = None) -> dict:
        data = {"k": self.k, "rows": [list(r) for r in self.matrix]}
        if gen_logs is not None:
            data["gen_logs"] = list(gen_logs)
        return data

    @classmethod
    def from_json(cls, field: Field, data: dict) -> "Subspace":
        if "rows" in data and data["rows"]:
            return from_rows(field, data["rows"])
        if "gen_logs" in data:
            return from_generators(field, [field.exp(e) for e in data["gen_logs"]])
        return zero_space(field)


def _same_field(*spaces: Subspace) -> Field:
    f = spaces[0].field
    for s in spaces[1:]:
        if s.field != f:
            raise FieldMismatch("subspaces live in different fields")
    return f


def from_generators(field: Field, gens: Iterable[int]) -> Subspace:
    gens = list(gens)
    if not gens:
        raise EmptyGenerators("need at least one generator")
    return Subspace(field, linalg.rref(gens, field.q, field.n))


def from_rows(field: Field, rows: Iterable[Sequence[int]]) -> Subspace:
    return from_generators(field, [field.element(r) for r in rows])


def zero_space(field: Field) -> Subspace:
    return Subspace(field, ())


def whole_space(field: Field) -> Subspace:
    return from_generators(field, [field.q**i for i in range(field.n)])


def subfield(field: Field, r: int) -> Subspace:
    """F_{q^r} as an F_q-subspace."""
    return from_generators(field, field.subfield_basis(r))


def from_logs(field: Field, logs: Iterable[int]) -> Subspace:
    return from_generators(field, [field.exp(e) for e in logs])


def sum_(v: Subspace, w: Subspace) -> Subspace:
    f = _same_field(v, w)
    return Subspace(f, linalg.rref(v.rows + w.rows, f.q, f.n))


def dual(v: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot product on phi-coordinates."""
    f = v.field
    if v.k == 0:
        return whole_space(f)
    return Subspace(f, linalg.null_space(v.rows, f.q, f.n))


def intersection(v: Subspace, w: Subspace) -> Subspace:
    _same_field(v, w)
    if v.k == 0 or w.k == 0:
        return zero_space(v.field)
    return dual(sum_(dual(v), dual(w)))


def intersection_dim(v: Subspace, w: Subspace) -> int:
    f = _same_field(v, w)
    return v.k + w.k - linalg.rank(v.rows + w.rows, f.q, f.n)


def contains_element(v: Subspace, a: int) -> bool:
    f = v.field
    if a == 0:
        return True
    return linalg.rank(v.rows + (a,), f.q, f.n) == v.k


def contains_subspace(v: Subspace, w: Subspace) -> bool:
    f = _same_field(v, w)
    return linalg.rank(v.rows + w.rows, f.q, f.n) == v.k


def subspace_distance(v: Subspace, w: Subspace) -> int:
    """dim V + dim W - 2 dim(V cap W)."""
    return v.k + w.k - 2 * intersection_dim(v, w)


def scalar_multiply(v: Subspace, gamma: int) -> Subspace:
    if gamma == 0:
        raise ZeroScalar("multiplying a subspace by zero")
    f = v.field
    return Subspace(f, linalg.rref([f.mul(r, gamma) for r in v.rows], f.q, f.n))


def normalize_contains_one(v: Subspace) -> tuple[Subspace, int]:
    """Return (V u^{-1}, u^{-1}) with 1 in the result.

    u = 1 when 1 is already in V, otherwise the nonzero element of V with the
    lexicographically smallest coordinate vector, which is the last RREF row.
    """
    if v.k == 0:
        raise ZeroSpace("the zero space cannot be normalized")
    if contains_element(v, 1):
        return v, 1
    u_inv = v.field.inv(v.rows[-1])
    return scalar_multiply(v, u_inv), u_inv


def is_space_over(v: Subspace, r: int) -> bool:
    """True iff V is a vector space over F_{q^r}."""
    f = v.field
    f.check_subfield_degree(r)
    if r == 1 or v.k == 0:
        return True
    return scalar_multiply(v, f.subfield_generator(r)) == v
