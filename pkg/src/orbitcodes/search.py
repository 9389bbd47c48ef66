"""Search for generating subspaces with a given best friend and distance.

Only subspaces containing 1 are visited: every orbit has such a member, so
nothing is lost and the space shrinks from [n, k]_q to [n-1, k-1]_q.
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Optional

import numpy as np

from . import linalg
from .distance import DistanceReport, distance_multiset, subfield_coset_upper_bound
from .errors import InternalInconsistency, SearchSpaceTooLarge
from .field import Field, make_field
from .orbit import best_friend_degree, orbit_cardinality
from .subspace import Subspace, from_logs

log = logging.getLogger(__name__)

DEFAULT_CAP = 2_000_000


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@dataclass
class SearchSpec:
    q: int
    n: int
    k: int
    r: int = 1
    target_distance: Optional[int] = None
    mode: str = "exhaustive"
    trials: int = 0
    seed: Optional[int] = None
    parallelism: int = 1
    modulus: Optional[tuple[int, ...]] = None
    cap: int = DEFAULT_CAP
    prune: bool = True

    def __post_init__(self):
        if self.k % self.r:
            raise ValueError(f"r={self.r} must divide k={self.k}")
        if self.target_distance is None:
            self.target_distance = 2 * (self.k - self.r) if self.k > self.r else 2 * self.k
        t = self.target_distance
        if t % 2 or t > 2 * self.k or t < 2 * self.r:
            raise ValueError(f"target distance {t} must be even and within [2r, 2k]")

    def field(self) -> Field:
        return make_field(self.q, self.n, self.modulus)


@dataclass
class SearchResult:
    best_found: Optional[tuple[Subspace, int]] = None
    candidates_examined: int = 0
    matched_best_friend: int = 0
    pruned: int = 0
    exhaustive_complete: bool = False
    histogram: Counter = dc_field(default_factory=Counter)
    target_distance: int = 0
    search_space: Optional[int] = None

    @property
    def best_distance(self) -> Optional[int]:
        return None if self.best_found is None else self.best_found[1]

    @property
    def target_met(self) -> bool:
        return self.best_found is not None and self.best_found[1] >= self.target_distance

    @property
    def nonexistence_certified(self) -> bool:
        return self.exhaustive_complete and not self.target_met

    def merge(self, other: "SearchResult") -> "SearchResult":
        """Order-independent merge: max distance, ties to the smaller RREF."""
        out = SearchResult(
            best_found=_better(self.best_found, other.best_found),
            candidates_examined=self.candidates_examined + other.candidates_examined,
            matched_best_friend=self.matched_best_friend + other.matched_best_friend,
            pruned=self.pruned + other.pruned,
            exhaustive_complete=self.exhaustive_complete and other.exhaustive_complete,
            histogram=self.histogram + other.histogram,
            target_distance=self.target_distance,
            search_space=self.search_space,
        )
        return out

    def to_json(self) -> dict:
        best = None
        if self.best_found is not None:
            u, d = self.best_found
            best = {"distance": d, "generator": u.to_json()}
        return {
            "best_found": best,
            "target_distance": self.target_distance,
            "target_met": self.target_met,
            "candidates_examined": self.candidates_examined,
            "matched_best_friend": self.matched_best_friend,
            "pruned": self.pruned,
            "exhaustive_complete": self.exhaustive_complete,
            "nonexistence_certified": self.nonexistence_certified,
            "search_space": self.search_space,
            "histogram": {str(d): c for d, c in sorted(self.histogram.items())},
        }


def _key(u: Subspace) -> tuple:
    return u.matrix


def _better(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a[1] != b[1]:
        return a if a[1] > b[1] else b
    return a if _key(a[0]) <= _key(b[0]) else b


def rref_with_one(field: Field, k: int) -> Iterator[Subspace]:
    """Every k-subspace containing 1, as RREF with first row phi(1)."""
    q, n = field.q, field.n
    if k == 0:
        return
    for pivots in itertools.combinations(range(1, n), k - 1):
        pset = set(pivots)
        free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, n) if c not in pset]
        base = [q**p for p in pivots]
        weights = [q**c for _, c in free]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = list(base)
            for (i, _), w, v in zip(free, weights, values):
                if v:
                    rows[i] += v * w
            yield Subspace(field, (1, *rows))


def _evaluate(u: Subspace, spec: SearchSpec, res: SearchResult) -> None:
    res.candidates_examined += 1
    if best_friend_degree(u) != spec.r:
        return
    res.matched_best_friend += 1
    if spec.prune:
        cap = 2 * u.k if spec.r == u.k else 2 * (u.k - spec.r)
        if cap < spec.target_distance:
            res.pruned += 1
            return
        bound = subfield_coset_upper_bound(u)
        if bound is not None and bound.bound < spec.target_distance:
            res.pruned += 1
            return
    d = distance_multiset(u, spec.r).d
    res.histogram[d] += 1
    res.best_found = _better(res.best_found, (u, d))


def _exhaustive_shard(args) -> SearchResult:
    spec, shard, jobs = args
    field = spec.field()
    res = SearchResult(target_distance=spec.target_distance, exhaustive_complete=True)
    for i, u in enumerate(rref_with_one(field, spec.k)):
        if i % jobs == shard:
            _evaluate(u, spec, res)
    return res


def exhaustive_search(spec: SearchSpec) -> SearchResult:
    """Visit every k-subspace containing 1; certify non-existence when the target is missed."""
    count = gaussian_binomial(spec.n - 1, spec.k - 1, spec.q)
    if count > spec.cap:
        raise SearchSpaceTooLarge(count, spec.cap)
    jobs = max(1, spec.parallelism)
    shards = [(spec, s, jobs) for s in range(jobs)]
    if jobs == 1:
        parts = [_exhaustive_shard(shards[0])]
    else:
        with ProcessPoolExecutor(jobs) as ex:
            parts = list(ex.map(_exhaustive_shard, shards))
    res = parts[0]
    for p in parts[1:]:
        res = res.merge(p)
    res.search_space = count
    if res.candidates_examined != count:
        raise InternalInconsistency(f"visited {res.candidates_examined} subspaces, expected {count}")
    log.info("exhaustive (%d,%d,%d,%d): %d candidates, best %s", spec.n, spec.k, spec.r, spec.q,
             count, res.best_distance)
    return res


def random_candidate(field: Field, k: int, seed: int, index: int) -> Subspace:
    """Uniform k-subspace containing 1, drawn from a stream keyed by (seed, index)."""
    rng = np.random.default_rng([seed, index])
    while True:
        vecs = [1] + [int(rng.integers(0, field.size)) for _ in range(k - 1)]
        rows = linalg.rref(vecs, field.q, field.n)
        if len(rows) == k:
            return Subspace(field, rows)


def _random_shard(args) -> SearchResult:
    spec, shard, jobs = args
    field = spec.field()
    res = SearchResult(target_distance=spec.target_distance)
    for i in range(shard, spec.trials, jobs):
        _evaluate(random_candidate(field, spec.k, spec.seed, i), spec, res)
    return res


def random_search(spec: SearchSpec) -> SearchResult:
    """Seeded random sampling; identical results for any parallelism."""
    if spec.seed is None:
        raise ValueError("random search needs an explicit seed")
    jobs = max(1, spec.parallelism)
    shards = [(spec, s, jobs) for s in range(jobs)]
    if jobs == 1 or spec.trials == 0:
        parts = [_random_shard(shards[0])]
    else:
        with ProcessPoolExecutor(jobs) as ex:
            parts = list(ex.map(_random_shard, shards))
    res = parts[0]
    for p in parts[1:]:
        res = res.merge(p)
    res.exhaustive_complete = False
    return res


def run(spec: SearchSpec) -> SearchResult:
    return exhaustive_search(spec) if spec.mode == "exhaustive" else random_search(spec)


def k3sb_family(field: Field) -> tuple[Subspace, DistanceReport]:
    """span{1, alpha^2, alpha^3}: best friend F_q, full cardinality, distance by multisets."""
    u = from_logs(field, [0, 2, 3])
    r = best_friend_degree(u)
    if r != 1:
        raise InternalInconsistency(f"span{{1, a^2, a^3}} has best friend degree {r}")
    n_ = orbit_cardinality(u)
    if n_ != (field.size - 1) // (field.q - 1):
        raise InternalInconsistency(f"orbit has {n_} members")
    return u, distance_multiset(u, 1)
