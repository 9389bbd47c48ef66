"""Linkage of constant-dimension codes into longer codes.

Constituent members are raw k x n_i matrices (tuples of packed rows).  They
are deliberately not canonicalized: the concatenated members depend on which
representative matrix each constituent subspace carries.
"""
from __future__ import annotations

import math
import random
from collections.abc import Sequence
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Optional

from . import linalg
from .errors import DimensionMismatch, NotPartialSpread, RankLoss, UnsupportedParameters
from .field import Field
from .orbit import OrbitCode
from .subspace import Subspace

Matrix = tuple[int, ...]
MATERIALIZE_CAP = 10**6


class OrbitMatrices(Sequence):
    """Lazy sequence of the matrices U M^e for e in ``exponents``."""

    def __init__(self, field: Field, rows: Sequence[int], exponents: Sequence[int] | None = None):
        self.field = field
        self.rows = tuple(rows)
        self.exponents = range(field.order) if exponents is None else exponents
        self._logs = [field.log(r) for r in self.rows] if field.has_tables else None

    def __len__(self) -> int:
        return len(self.exponents)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        e = self.exponents[i]
        f = self.field
        if self._logs is not None:
            return tuple(f.exp(lg + e) for lg in self._logs)
        g = f.exp(e)
        return tuple(f.mul(r, g) for r in self.rows)


@dataclass
class ConstituentCode:
    q: int
    k: int
    n: int
    members: Sequence[Matrix]
    d: Optional[int] = None
    best_friend_degree: Optional[int] = None
    name: str = ""
    field: Optional[Field] = None
    exponents: Optional[Sequence[int]] = None

    @property
    def N(self) -> int:
        return len(self.members)

    def check_ranks(self, limit: int = MATERIALIZE_CAP) -> bool:
        return all(linalg.rank(m, self.q, self.n) == self.k for m in _head(self.members, limit))

    def verify_distance(self) -> int:
        return min_pairwise_distance(list(self.members), self.q, self.n)

    def describe(self) -> dict:
        return {"name": self.name, "q": self.q, "n": self.n, "k": self.k, "N": self.N, "d": self.d,
                "best_friend_degree": self.best_friend_degree}

    @classmethod
    def from_orbit(cls, code: OrbitCode, d: int | None = None, name: str = "") -> "ConstituentCode":
        f = code.field
        mats = OrbitMatrices(f, code.generator.rows, range(0, code.N * code.beta_log, code.beta_log))
        return cls(f.q, code.generator.k, f.n, mats, d, code.best_friend, name, field=f,
                   exponents=mats.exponents)

    @classmethod
    def from_subspaces(cls, spaces: Sequence[Subspace], d: int | None = None, name: str = "") -> "ConstituentCode":
        f = spaces[0].field
        return cls(f.q, spaces[0].k, f.n, [s.rows for s in spaces], d, name=name, field=f)


def _head(seq: Sequence, limit: int) -> Iterable:
    return (seq[i] for i in range(min(len(seq), limit)))


def min_pairwise_distance(mats: Sequence[Matrix], q: int, n: int) -> int:
    """Exact minimum subspace distance over all pairs of distinct row spaces."""
    canon = [linalg.rref(m, q, n) for m in mats]
    best = None
    for i, a in enumerate(canon):
        ka = len(a)
        for b in canon[i + 1:]:
            d = 2 * linalg.rank(a + b, q, n) - ka - len(b)
            if best is None or d < best:
                best = d
    return best if best is not None else 0


def distance_between(a: Matrix, b: Matrix, q: int, n: int) -> int:
    return 2 * linalg.rank(tuple(a) + tuple(b), q, n) - linalg.rank(a, q, n) - linalg.rank(b, q, n)


@dataclass
class LinkedCode:
    q: int
    k: int
    constituents: list[ConstituentCode]
    kind: str = "many"
    cyclic_block: Optional[OrbitMatrices] = None
    provenance: list[str] = dc_field(default_factory=list)

    @property
    def widths(self) -> list[int]:
        return [c.n for c in self.constituents]

    @property
    def n(self) -> int:
        return sum(self.widths)

    @property
    def N(self) -> int:
        if self.kind == "cyclic":
            c1, c2 = self.constituents
            return c1.N + c2.N + len(self.cyclic_block) * c1.N
        return math.prod(c.N + 1 for c in self.constituents) - 1

    @property
    def d(self) -> Optional[int]:
        ds = [c.d for c in self.constituents]
        return None if any(x is None for x in ds) else min(ds)

    def member(self, index: Sequence[int]) -> Matrix:
        """Matrix for an index tuple; index 0 in a slot is the zero block.

        For the cyclic construction the tuple is (l, m): (0, m) takes member m
        of the second constituent, (l, m) with l > 0 takes power m - 1 of the
        full orbit in the second slot.
        """
        q = self.q
        if self.kind == "cyclic":
            l, m = index
            c1, c2 = self.constituents
            left = c1.members[l - 1] if l else (0,) * self.k
            if m == 0:
                right = (0,) * self.k
            elif l == 0:
                right = c2.members[m - 1]
            else:
                right = self.cyclic_block[m - 1]
            shift = q**c1.n
            return tuple(a + b * shift for a, b in zip(left, right))
        rows = [0] * self.k
        shift = 1
        for c, l in zip(self.constituents, index):
            if l:
                block = c.members[l - 1]
                for i in range(self.k):
                    rows[i] += block[i] * shift
            shift *= q**c.n
        return tuple(rows)

    def indices(self) -> Iterator[tuple[int, ...]]:
        if self.kind == "cyclic":
            c1, c2 = self.constituents
            for l in range(1, c1.N + 1):
                yield (l, 0)
            for m in range(1, c2.N + 1):
                yield (0, m)
            for l in range(1, c1.N + 1):
                for m in range(1, len(self.cyclic_block) + 1):
                    yield (l, m)
            return
        for idx in _product_ranges([c.N + 1 for c in self.constituents]):
            if any(idx):
                yield idx

    def index_of(self, position: int) -> tuple[int, ...]:
        """Decode a position in [0, N) into an index tuple."""
        if not 0 <= position < self.N:
            raise IndexError(position)
        if self.kind == "cyclic":
            c1, c2 = self.constituents
            if position < c1.N:
                return (position + 1, 0)
            position -= c1.N
            if position < c2.N:
                return (0, position + 1)
            position -= c2.N
            l, m = divmod(position, len(self.cyclic_block))
            return (l + 1, m + 1)
        x = position + 1
        out = []
        for c in self.constituents:
            x, digit = divmod(x, c.N + 1)
            out.append(digit)
        return tuple(out)

    def random_member(self, rng: random.Random) -> Matrix:
        return self.member(self.index_of(rng.randrange(self.N)))

    def members(self, cap: int = MATERIALIZE_CAP) -> list[Matrix]:
        if self.N > cap:
            raise ValueError(f"code has {self.N} members, above the materialization cap {cap}")
        return [self.member(i) for i in self.indices()]

    def subspaces(self, cap: int = MATERIALIZE_CAP) -> list[tuple[int, ...]]:
        return [linalg.rref(m, self.q, self.n) for m in self.members(cap)]

    def verify_distance(self, cap: int = MATERIALIZE_CAP) -> int:
        return min_pairwise_distance(self.members(cap), self.q, self.n)

    def check_ranks(self, cap: int = MATERIALIZE_CAP) -> bool:
        return all(linalg.rank(m, self.q, self.n) == self.k for m in self.members(cap))

    def as_constituent(self) -> ConstituentCode:
        return ConstituentCode(self.q, self.k, self.n, _LinkedMembers(self), self.d, name="linked")

    def to_json(self) -> dict:
        data = {
            "construction": self.kind,
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "N": str(self.N) if self.N > 2**53 else self.N,
            "d": self.d,
            "constituents": [c.describe() for c in self.constituents],
            "index_algebra": {
                "many": "tuples (l_1..l_t), l_i in 0..N_i, not all zero; 0 = zero block",
                "cyclic": "(l,0) | (0,m) member m of C2 | (l,m) power m-1 of the full orbit",
            }[self.kind],
        }
        if self.kind == "cyclic":
            data["cyclic_powers"] = len(self.cyclic_block)
            data["exponent_set"] = list(self.constituents[1].exponents or [])
        return data


class _LinkedMembers(Sequence):
    def __init__(self, code: LinkedCode):
        self.code = code
        self._order = list(code.indices()) if code.N <= MATERIALIZE_CAP else None

    def __len__(self) -> int:
        return self.code.N

    def __getitem__(self, i):
        idx = self._order[i] if self._order is not None else self.code.index_of(i)
        return self.code.member(idx)


def _product_ranges(sizes: Sequence[int]) -> Iterator[tuple[int, ...]]:
    import itertools

    return itertools.product(*(range(s) for s in sizes))


def _check_k(constituents: Sequence[ConstituentCode]) -> int:
    ks = {c.k for c in constituents}
    qs = {c.q for c in constituents}
    if len(ks) != 1 or len(qs) != 1:
        raise DimensionMismatch(f"constituents disagree on k or q: k={sorted(ks)}, q={sorted(qs)}")
    return ks.pop()


def link_many(constituents: Sequence[ConstituentCode]) -> LinkedCode:
    """All block tuples (U_{1,l_1}, ..., U_{t,l_t}) not entirely zero."""
    if not constituents:
        raise DimensionMismatch("need at least one constituent")
    k = _check_k(constituents)
    return LinkedCode(constituents[0].q, k, list(constituents), "many", provenance=[c.name for c in constituents])


def link_two(c1: ConstituentCode, c2: ConstituentCode) -> LinkedCode:
    """Zero-padded copies of each constituent plus all concatenations; N = N1 + N2 + N1 N2."""
    return link_many([c1, c2])


def link_cyclic(c1: ConstituentCode, field2: Field, u2: Sequence[int], exponent_set: Sequence[int],
                d2: int | None = None) -> LinkedCode:
    """Linkage where the concatenated part uses every power of the primitive element.

    ``u2`` holds the rows of U_2 as elements of ``field2``; the second
    constituent is {U_2 M^l : l in exponent_set}.
    """
    u2 = tuple(u2)
    q = field2.q
    if c1.q != q or len(u2) != c1.k:
        raise DimensionMismatch(f"U_2 has {len(u2)} rows, constituent has k={c1.k}")
    if linalg.rank(u2, q, field2.n) != len(u2):
        raise RankLoss("U_2 does not have full row rank")
    c2 = ConstituentCode(q, c1.k, field2.n, OrbitMatrices(field2, u2, list(exponent_set)), d2,
                         name="orbit subset", field=field2, exponents=list(exponent_set))
    full = OrbitMatrices(field2, u2, range(field2.order))
    return LinkedCode(q, c1.k, [c1, c2], "cyclic", cyclic_block=full, provenance=[c1.name, c2.name])


@dataclass(frozen=True)
class UnionOfOrbits:
    closed: bool
    orbit_count: int
    group_order: int


def _shift_blocks(mat: Matrix, fields: Sequence[Field], q: int) -> Matrix:
    out = []
    for row in mat:
        v, shift, rest = 0, 1, row
        for f in fields:
            rest, block = divmod(rest, f.size)
            v += f.mul(block, f.alpha) * shift
            shift *= f.size
        out.append(v)
    return tuple(out)


def verify_union_of_orbits(code: LinkedCode, constituent_fields: Sequence[Field],
                           cap: int = MATERIALIZE_CAP) -> UnionOfOrbits:
    """Check closure under diag(M_1, ..., M_t) and count the resulting orbits.

    Needs q = 2, coprime lengths and full primitive orbit constituents.
    """
    if code.kind != "many" or code.q != 2:
        raise UnsupportedParameters("only binary t-fold linkages are covered")
    ns = [f.n for f in constituent_fields]
    if ns != code.widths:
        raise UnsupportedParameters("fields do not match constituent lengths")
    if len(ns) > 1 and math.gcd(*ns) != 1:
        raise UnsupportedParameters(f"gcd{tuple(ns)} = {math.gcd(*ns)}: the block group is not cyclic")
    for c, f in zip(code.constituents, constituent_fields):
        if c.N != f.order or not isinstance(c.members, OrbitMatrices) or list(c.members.exponents) != list(range(f.order)):
            raise UnsupportedParameters("constituents must be full primitive orbit codes of size 2^n_i - 1")
    q, n = code.q, code.n
    mats = code.members(cap)
    canon = [linalg.rref(m, q, n) for m in mats]
    index = {c: i for i, c in enumerate(canon)}
    succ = []
    closed = True
    for m in mats:
        image = linalg.rref(_shift_blocks(m, constituent_fields, q), q, n)
        j = index.get(image)
        if j is None:
            closed = False
            break
        succ.append(j)
    group_order = math.prod(f.order for f in constituent_fields)
    if not closed:
        return UnionOfOrbits(False, 0, group_order)
    seen = [False] * len(mats)
    orbits = 0
    for start in range(len(mats)):
        if seen[start]:
            continue
        orbits += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = succ[j]
    return UnionOfOrbits(True, orbits, group_order)


@dataclass(frozen=True)
class CardinalityCheck:
    N: int
    bound: int
    holds: bool
    equality: bool
    equality_predicted: bool

    @property
    def slack(self) -> int:
        return self.bound - self.N


def check_cardinality_bound(code: LinkedCode) -> CardinalityCheck:
    """|C| <= (q^n - 1)/(q - 1); equality exactly when q = 2 and every r_i = 1."""
    q = code.q
    bound = (q**code.n - 1) // (q - 1)
    rs = [c.best_friend_degree for c in code.constituents]
    predicted = q == 2 and all(r == 1 for r in rs)
    N = code.N
    return CardinalityCheck(N, bound, N <= bound, N == bound, predicted)


def greedy_partial_spread(orbit: OrbitCode, accept_list: Sequence[int] | None = None) -> ConstituentCode:
    """Select orbit members pairwise meeting in {0}.

    With ``accept_list`` exactly those exponents are taken (and checked);
    otherwise exponents are scanned in increasing order and kept greedily.
    """
    f = orbit.field
    gen = orbit.generator
    seen: set[int] = set()
    chosen: list[int] = []
    candidates = accept_list if accept_list is not None else range(orbit.N)
    for j in candidates:
        pts = set(orbit.member(j).nonzero_elements())
        if seen & pts:
            if accept_list is not None:
                raise NotPartialSpread(f"member alpha^{j} meets an earlier member")
            continue
        seen |= pts
        chosen.append(j)
    d = 2 * gen.k if len(chosen) > 1 else None
    mats = OrbitMatrices(f, gen.rows, [j * orbit.beta_log for j in chosen])
    return ConstituentCode(f.q, gen.k, f.n, mats, d, orbit.best_friend, name="partial spread", field=f,
                           exponents=chosen)
