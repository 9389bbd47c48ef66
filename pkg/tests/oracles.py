"""Independent reference implementations used by the tests.

Nothing here imports the package's arithmetic: field elements are digit
tuples, products are schoolbook polynomial products reduced by the modulus,
and subspaces are explicit sets of vectors.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Sequence

Vec = tuple[int, ...]


def poly_mulmod(a: Vec, b: Vec, modulus: Sequence[int], q: int) -> Vec:
    n = len(modulus) - 1
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % q
    for deg in range(len(prod) - 1, n - 1, -1):
        c = prod[deg]
        if c:
            for i in range(n + 1):
                prod[deg - n + i] = (prod[deg - n + i] - c * modulus[i]) % q
    return tuple(prod[:n])


def antilog(modulus: Sequence[int], q: int) -> list[Vec]:
    """alpha^0, alpha^1, ... by repeated multiplication until it cycles back to 1."""
    n = len(modulus) - 1
    one = (1,) + (0,) * (n - 1)
    x = (0, 1) + (0,) * (n - 2) if n > 1 else ((-modulus[0]) % q,)
    out = [one]
    cur = one
    while True:
        cur = poly_mulmod(cur, x, modulus, q)
        if cur == one:
            return out
        out.append(cur)


def vec_add(a: Vec, b: Vec, q: int) -> Vec:
    return tuple((x + y) % q for x, y in zip(a, b))


def span(vectors: Iterable[Vec], q: int, n: int) -> frozenset[Vec]:
    vectors = list(vectors)
    out = set()
    for coeffs in itertools.product(range(q), repeat=len(vectors)):
        v = (0,) * n
        for c, w in zip(coeffs, vectors):
            if c:
                v = vec_add(v, tuple(c * x % q for x in w), q)
        out.add(v)
    return frozenset(out)


def log_q(size: int, q: int) -> int:
    k = 0
    while size > 1:
        assert size % q == 0
        size //= q
        k += 1
    return k


def shift(points: frozenset[Vec], g: Vec, modulus, q) -> frozenset[Vec]:
    return frozenset(poly_mulmod(p, g, modulus, q) for p in points)


def orbit_by_sets(points: frozenset[Vec], modulus, q) -> list[frozenset[Vec]]:
    """Distinct shifts U alpha^j in exponent order, as point sets."""
    table = antilog(modulus, q)
    seen = []
    for g in table:
        s = shift(points, g, modulus, q)
        if s == points and seen:
            break
        seen.append(s)
    return seen


def set_distance(a: frozenset[Vec], b: frozenset[Vec], q: int) -> int:
    return log_q(len(a), q) + log_q(len(b), q) - 2 * log_q(len(a & b), q)


def orbit_distance_by_sets(points: frozenset[Vec], modulus, q) -> int:
    orb = orbit_by_sets(points, modulus, q)
    return min(set_distance(points, s, q) for s in orb[1:]) if len(orb) > 1 else 2 * log_q(len(points), q)


def count_subspaces_containing(q: int, n: int, k: int, v: Vec) -> int:
    """Brute-force count of k-dimensional subspaces of F_q^n containing v."""
    all_vecs = [t for t in itertools.product(range(q), repeat=n) if any(t)]
    found = set()
    for extra in itertools.combinations(all_vecs, k - 1):
        s = span((v, *extra), q, n)
        if len(s) == q**k:
            found.add(s)
    return len(found)


def matrix_order(m: list[list[int]], q: int, limit: int) -> int:
    n = len(m)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    cur = [row[:] for row in m]
    for e in range(1, limit + 1):
        if cur == ident:
            return e
        cur = [[sum(cur[i][t] * m[t][j] for t in range(n)) % q for j in range(n)] for i in range(n)]
    raise AssertionError("order exceeds limit")
