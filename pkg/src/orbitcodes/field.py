"""Arithmetic in F_{q^n} for prime q.

Elements are plain ``int`` values holding the base-q digits of the coordinate
vector, digit i being the coefficient of alpha^i.  For q = 2 this is the usual
bitmask, so addition is XOR.  ``Field.vector``/``Field.element`` convert
between the packed form and the digit tuple (a_0, ..., a_{n-1}).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np
import sympy

from .errors import (
    DivisionByZero,
    InvalidModulus,
    InvalidSubfieldDegree,
    LogOfZero,
    NonPrime,
    NotPrimitive,
    OrderOfZero,
    Reducible,
    WrongLength,
)

TABLE_THRESHOLD = 1 << 22


@lru_cache(maxsize=None)
def prime_factors(m: int) -> tuple[int, ...]:
    return tuple(sorted(sympy.factorint(m)))


@lru_cache(maxsize=None)
def divisors(m: int) -> tuple[int, ...]:
    return tuple(sympy.divisors(m))


@dataclass(frozen=True)
class FieldSpec:
    """q, n and the monic modulus, coefficients low-degree-first (length n+1)."""

    q: int
    n: int
    modulus: tuple[int, ...]
    non_primitive_allowed: bool = False

    def __post_init__(self):
        if not sympy.isprime(self.q):
            raise NonPrime(f"q={self.q} is not prime")
        if self.n < 1:
            raise InvalidModulus(f"extension degree must be >= 1, got {self.n}")
        if len(self.modulus) != self.n + 1 or self.modulus[-1] != 1:
            raise InvalidModulus(f"modulus {self.modulus} is not monic of degree {self.n}")
        if any(not 0 <= c < self.q for c in self.modulus):
            raise InvalidModulus(f"modulus digits must lie in [0, {self.q})")

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        return cls(int(data["q"]), int(data["n"]), tuple(int(c) for c in data["modulus"]))

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse the inline form ``q,n,c0,c1,...,cn``."""
        parts = [int(p) for p in text.replace(" ", "").split(",") if p]
        if len(parts) < 2:
            raise InvalidModulus(f"cannot parse field spec {text!r}")
        q, n, coeffs = parts[0], parts[1], tuple(parts[2:])
        return cls(q, n, coeffs)

    def poly_str(self) -> str:
        return poly_to_str(self.modulus)


def poly_to_str(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "1" if i == 0 else var if i == 1 else f"{var}^{i}"
        if i == 0:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) if terms else "0"


def _mulmod_gf2(a: int, b: int, n: int, mask: int) -> int:
    top = 1 << n
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= mask
    return r


class Field:
    """The extension field F_q[x]/(modulus) with alpha = class of x."""

    def __init__(self, spec: FieldSpec, table_threshold: int = TABLE_THRESHOLD, *, _check: bool = True):
        self.spec = spec
        self.q = q = spec.q
        self.n = n = spec.n
        self.size = q**n
        self.order = self.size - 1
        self._low = spec.modulus[:n]
        self._neg_low = tuple((-c) % q for c in self._low)
        self._qpow = tuple(q**i for i in range(n + 1))
        if q == 2:
            self._mask = sum(c << i for i, c in enumerate(spec.modulus))
        self.alpha = q if n > 1 else self._neg_low[0]
        self.table_threshold = table_threshold
        self.antilog: list[int] | None = None
        self.log_table: list[int] | None = None

        self.is_primitive = self._has_full_order()
        if _check:
            if not self.is_primitive:
                if not spec.non_primitive_allowed:
                    if not _is_irreducible(q, spec.modulus):
                        raise Reducible(f"{spec.poly_str()} is reducible over F_{q}")
                    raise NotPrimitive(f"{spec.poly_str()} is not primitive over F_{q}")
                if not _is_irreducible(q, spec.modulus):
                    raise Reducible(f"{spec.poly_str()} is reducible over F_{q}")
        if self.is_primitive and self.size <= table_threshold:
            self._build_tables()

    def __repr__(self) -> str:
        return f"Field(q={self.q}, n={self.n}, modulus={self.spec.poly_str()})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.spec.modulus == self.spec.modulus and other.q == self.q

    def __hash__(self) -> int:
        return hash((self.q, self.spec.modulus))

    @property
    def has_tables(self) -> bool:
        return self.antilog is not None

    # coordinates

    def vector(self, a: int) -> tuple[int, ...]:
        """phi: element -> (a_0, ..., a_{n-1})."""
        q = self.q
        if q == 2:
            return tuple((a >> i) & 1 for i in range(self.n))
        out = []
        for _ in range(self.n):
            a, d = divmod(a, q)
            out.append(d)
        return tuple(out)

    def element(self, vec: Sequence[int]) -> int:
        """Inverse of :meth:`vector`."""
        if len(vec) != self.n:
            raise WrongLength(f"expected {self.n} coordinates, got {len(vec)}")
        v = 0
        for d in reversed(vec):
            v = v * self.q + (int(d) % self.q)
        return v

    # arithmetic

    def add(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        q = self.q
        r, p = 0, 1
        while a or b:
            a, da = divmod(a, q)
            b, db = divmod(b, q)
            r += ((da + db) % q) * p
            p *= q
        return r

    def scale(self, c: int, a: int) -> int:
        """Multiply a by the prime-field scalar c."""
        q = self.q
        c %= q
        if c == 0:
            return 0
        if c == 1:
            return a
        r, p = 0, 1
        while a:
            a, d = divmod(a, q)
            r += (d * c % q) * p
            p *= q
        return r

    def neg(self, a: int) -> int:
        return self.scale(self.q - 1, a) if self.q != 2 else a

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _poly_mul(self, a: int, b: int) -> int:
        if self.q == 2:
            return _mulmod_gf2(a, b, self.n, self._mask)
        q, n = self.q, self.n
        da = self.vector(a)
        db = self.vector(b)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] += x * y
        neg_low = self._neg_low
        for deg in range(2 * n - 2, n - 1, -1):
            c = prod[deg] % q
            if c:
                base = deg - n
                for i in range(n):
                    prod[base + i] += c * neg_low[i]
        r = 0
        for d in reversed(prod[:n]):
            r = r * q + d % q
        return r

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.antilog is not None:
            return self.antilog[(self.log_table[a] + self.log_table[b]) % self.order]
        return self._poly_mul(a, b)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self.antilog is not None:
            return self.antilog[(self.log_table[a] * e) % self.order]
        result = 1
        base = a
        while e:
            if e & 1:
                result = self._poly_mul(result, base)
            base = self._poly_mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.antilog is not None:
            return self.antilog[(-self.log_table[a]) % self.order]
        return self.pow(a, self.size - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def exp(self, i: int) -> int:
        """alpha^i."""
        if self.antilog is not None:
            return self.antilog[i % self.order]
        return self.pow(self.alpha, i)

    # logs and orders

    def _has_full_order(self) -> bool:
        if self.alpha == 0:
            return False
        if self.pow(self.alpha, self.order) != 1:
            return False
        return all(self.pow(self.alpha, self.order // p) != 1 for p in prime_factors(self.order)) if self.order > 1 else True

    def _build_tables(self) -> None:
        q, n, order = self.q, self.n, self.order
        m = self.companion_matrix().astype(np.int64)
        block = min(order, 4096)
        first = np.zeros((block, n), dtype=np.int64)
        first[0, 0] = 1
        for i in range(1, block):
            first[i] = first[i - 1] @ m % q
        step = np.eye(n, dtype=np.int64)
        power, e = m.copy(), block
        while e:
            if e & 1:
                step = step @ power % q
            power = power @ power % q
            e >>= 1
        chunks = [first]
        done = block
        while done < order:
            chunks.append(chunks[-1] @ step % q)
            done += block
        digits = np.concatenate(chunks)[:order]
        weights = np.array(self._qpow[:n], dtype=np.int64)
        packed = digits @ weights
        log = np.full(self.size, -1, dtype=np.int64)
        log[packed] = np.arange(order, dtype=np.int64)
        self.antilog = packed.tolist()
        self.log_table = log.tolist()

    @cached_property
    def _bsgs(self) -> tuple[int, dict[int, int], int]:
        m = math.isqrt(self.order) + 1
        baby = {}
        g = 1
        for j in range(m):
            baby.setdefault(g, j)
            g = self._poly_mul(g, self.alpha)
        giant = self.pow(self.inv(self.alpha), m)
        return m, baby, giant

    def log(self, a: int) -> int:
        """Discrete log to base alpha, in [0, q^n - 1)."""
        if a == 0:
            raise LogOfZero("log of zero")
        if not self.is_primitive:
            raise NotPrimitive("discrete log needs a primitive modulus")
        if self.log_table is not None:
            return self.log_table[a]
        m, baby, giant = self._bsgs
        gamma = a
        for i in range(m + 1):
            j = baby.get(gamma)
            if j is not None:
                return (i * m + j) % self.order
            gamma = self._poly_mul(gamma, giant)
        raise ArithmeticError("discrete log not found; modulus is not primitive")

    def element_order(self, a: int) -> int:
        if a == 0:
            raise OrderOfZero("zero has no multiplicative order")
        if self.is_primitive:
            return self.order // math.gcd(self.log(a), self.order)
        o = self.order
        for p in prime_factors(self.order):
            while o % p == 0 and self.pow(a, o // p) == 1:
                o //= p
        return o

    # subfields

    def check_subfield_degree(self, r: int) -> None:
        if r < 1 or self.n % r:
            raise InvalidSubfieldDegree(f"{r} does not divide n={self.n}")

    def subfield_generator(self, r: int) -> int:
        """alpha^((q^n-1)/(q^r-1)), a generator of F_{q^r}^*."""
        self.check_subfield_degree(r)
        if not self.is_primitive:
            raise NotPrimitive("subfield generator needs a primitive modulus")
        return self.exp(self.order // (self.q**r - 1))

    def subfield_basis(self, r: int) -> list[int]:
        """An F_q-basis 1, g, ..., g^{r-1} of F_{q^r}."""
        g = self.subfield_generator(r)
        basis = [1]
        for _ in range(r - 1):
            basis.append(self.mul(basis[-1], g))
        return basis

    def in_subfield(self, a: int, r: int) -> bool:
        return self.pow(a, self.q**r) == a

    def conjugates(self, a: int, r: int = 1) -> list[int]:
        self.check_subfield_degree(r)
        qr = self.q**r
        out = [a]
        c = self.pow(a, qr)
        while c != a:
            out.append(c)
            c = self.pow(c, qr)
        return out

    def minimal_polynomial(self, a: int, r: int = 1) -> tuple[int, ...]:
        """Minimal polynomial of a over F_{q^r}, low-degree-first, monic.

        Coefficients are field elements; for r = 1 they are the digits 0..q-1.
        """
        self.check_subfield_degree(r)
        poly = [1]
        for c in self.conjugates(a, r):
            nc = self.neg(c)
            new = [0] * (len(poly) + 1)
            for i, p in enumerate(poly):
                new[i + 1] = self.add(new[i + 1], p)
                new[i] = self.add(new[i], self.mul(nc, p))
            poly = new
        for coeff in poly:
            if not self.in_subfield(coeff, r):
                raise ArithmeticError("minimal polynomial coefficient escaped the subfield")
        return tuple(poly)

    def companion_matrix(self) -> np.ndarray:
        """Row-vector companion matrix: ones on the superdiagonal, last row -f_0..-f_{n-1}."""
        n = self.n
        m = np.zeros((n, n), dtype=np.int64)
        for i in range(n - 1):
            m[i, i + 1] = 1
        m[n - 1, :] = self._neg_low
        return m

    def random_element(self, rng: np.random.Generator, nonzero: bool = False) -> int:
        lo = 1 if nonzero else 0
        return int(rng.integers(lo, self.size))


def phi(field: Field, a: int) -> tuple[int, ...]:
    return field.vector(a)


def phi_inv(field: Field, vec: Sequence[int]) -> int:
    return field.element(vec)


def _is_irreducible(q: int, modulus: Sequence[int]) -> bool:
    if len(modulus) == 2:
        return True
    x = sympy.Symbol("x")
    expr = sum(int(c) * x**i for i, c in enumerate(modulus))
    return sympy.Poly(expr, x, modulus=q).is_irreducible


def _primitive_candidates(q: int, n: int, high_first: bool) -> Iterable[tuple[int, ...]]:
    # the norm of alpha, (-1)^n f_0, must generate F_q^*
    roots = {g for g in range(1, q) if q == 2 or all(pow(g, (q - 1) // p, q) != 1 for p in prime_factors(q - 1))}
    for low in itertools.product(range(q), repeat=n):
        if high_first:
            low = low[::-1]
        if ((-1) ** n * low[0]) % q not in roots:
            continue
        yield tuple(low) + (1,)


@lru_cache(maxsize=None)
def default_modulus(q: int, n: int, high_first: bool = False) -> tuple[int, ...]:
    """Lexicographically smallest primitive monic polynomial.

    Coefficients are compared low-degree-first by default.  ``high_first``
    compares from x^{n-1} down instead, i.e. minimizes sum c_i q^i (x^6+x+1
    rather than x^6+x^5+1).
    """
    for coeffs in _primitive_candidates(q, n, high_first):
        spec = FieldSpec(q, n, coeffs, non_primitive_allowed=True)
        if Field(spec, table_threshold=0, _check=False).is_primitive:
            return coeffs
    raise NotPrimitive(f"no primitive polynomial of degree {n} over F_{q}")


def make_field(
    q: int,
    n: int,
    modulus: Sequence[int] | None = None,
    *,
    non_primitive_allowed: bool = False,
    table_threshold: int = TABLE_THRESHOLD,
) -> Field:
    if not sympy.isprime(q):
        raise NonPrime(f"q={q} is not prime")
    if modulus is None:
        modulus = default_modulus(q, n)
    spec = FieldSpec(q, n, tuple(int(c) for c in modulus), non_primitive_allowed)
    return _cached_field(spec, table_threshold)


@lru_cache(maxsize=64)
def _cached_field(spec: FieldSpec, table_threshold: int) -> Field:
    return Field(spec, table_threshold)


def field_from_exponents(q: int, n: int, exponents: Iterable[int], **kw) -> Field:
    """Build a field from the exponents present in the modulus, e.g. (6, 1, 0)."""
    coeffs = [0] * (n + 1)
    for e in exponents:
        coeffs[e] = 1
    return make_field(q, n, coeffs, **kw)
