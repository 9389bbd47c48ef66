"""Row reduction over F_q on packed row vectors.

A row of length n is an int whose base-q digit i is the entry in column i
(the same packing as field elements).  Pivot columns are the lowest nonzero
digit, so RREF rows come out ordered by increasing pivot column.
Concatenating blocks is ``left + right * q**n_left``.
"""
from __future__ import annotations

from typing import Iterable, Sequence


def unpack(v: int, q: int, n: int) -> list[int]:
    if q == 2:
        return [(v >> i) & 1 for i in range(n)]
    out = []
    for _ in range(n):
        v, d = divmod(v, q)
        out.append(d)
    return out


def pack(digits: Sequence[int], q: int) -> int:
    if q == 2:
        v = 0
        for i, d in enumerate(digits):
            if d & 1:
                v |= 1 << i
        return v
    v = 0
    for d in reversed(digits):
        v = v * q + d % q
    return v


def _rref_gf2(vectors: Iterable[int]) -> tuple[int, ...]:
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            low = v & -v
            b = basis.get(low)
            if b is None:
                basis[low] = v
                break
            v ^= b
    pivots = sorted(basis, reverse=True)
    for p in pivots:
        row = basis[p]
        for other in pivots:
            if other < p and basis[other] & p:
                basis[other] ^= row
    return tuple(basis[p] for p in reversed(pivots))


def _rank_gf2(vectors: Iterable[int]) -> int:
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            low = v & -v
            b = basis.get(low)
            if b is None:
                basis[low] = v
                break
            v ^= b
    return len(basis)


def _rref_digits(rows: list[list[int]], q: int, n: int) -> list[list[int]]:
    rows = [r for r in rows if any(r)]
    out = 0
    for col in range(n):
        piv = None
        for i in range(out, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[out], rows[piv] = rows[piv], rows[out]
        prow = rows[out]
        inv = pow(prow[col], q - 2, q)
        if inv != 1:
            prow[:] = [x * inv % q for x in prow]
        for i in range(len(rows)):
            if i != out:
                c = rows[i][col]
                if c:
                    r = rows[i]
                    rows[i] = [(a - c * b) % q for a, b in zip(r, prow)]
        out += 1
        if out == len(rows):
            break
    return rows[:out]


def rref(vectors: Iterable[int], q: int, n: int) -> tuple[int, ...]:
    """Canonical reduced row echelon basis of the span."""
    if q == 2:
        return _rref_gf2(vectors)
    rows = _rref_digits([unpack(v, q, n) for v in vectors], q, n)
    return tuple(pack(r, q) for r in rows)


def rank(vectors: Iterable[int], q: int, n: int) -> int:
    if q == 2:
        return _rank_gf2(vectors)
    return len(_rref_digits([unpack(v, q, n) for v in vectors], q, n))


def pivot_column(v: int, q: int) -> int:
    if q == 2:
        return (v & -v).bit_length() - 1
    c = 0
    while v % q == 0:
        v //= q
        c += 1
    return c


def null_space(rows: Sequence[int], q: int, n: int) -> tuple[int, ...]:
    """Basis of {x : <r, x> = 0 for all rows r}, in RREF."""
    reduced = rref(rows, q, n)
    digits = [unpack(r, q, n) for r in reduced]
    pivots = [pivot_column(r, q) for r in reduced]
    pivot_set = set(pivots)
    out = []
    for free in range(n):
        if free in pivot_set:
            continue
        x = [0] * n
        x[free] = 1
        for row, p in zip(digits, pivots):
            x[p] = (-row[free]) % q
        out.append(pack(x, q))
    return rref(out, q, n)


def lex_key(v: int, q: int, n: int) -> tuple[int, ...]:
    """Sort key comparing coordinate vectors (a_0, a_1, ...) lexicographically."""
    return tuple(unpack(v, q, n))


def concat(blocks: Sequence[int], widths: Sequence[int], q: int) -> int:
    v, shift = 0, 1
    for b, w in zip(blocks, widths):
        v += b * shift
        shift *= q**w
    return v

