"""Exhaustive search for quasi-orders on small finite rings.

Candidates are weak orders (ordered set partitions) given as rank vectors,
so reflexivity, totality and transitivity hold by construction.  The ring
axioms are then applied as vectorized filters, cheapest first, and every
survivor is re-confirmed by the independent axiom engine.
"""

from __future__ import annotations

import itertools
from math import comb
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .axioms import check_axioms
from .errors import LimitError, UnsupportedOperation
from .relations import MatrixRelation, TrivialAtPrime
from .rings import Ideal, _finite_closure, is_prime_ideal

MAX_N = 8
_CHUNK = 1 << 15


@dataclass(frozen=True)
class WeakOrderCode:
    """Blocks of equivalent elements, listed from least to greatest."""

    blocks: tuple

    @classmethod
    def from_ranks(cls, ranks) -> "WeakOrderCode":
        ranks = [int(r) for r in ranks]
        k = max(ranks) + 1 if ranks else 0
        return cls(tuple(tuple(i for i, r in enumerate(ranks) if r == b) for b in range(k)))

    def ranks(self) -> tuple:
        n = sum(len(b) for b in self.blocks)
        out = [0] * n
        for r, block in enumerate(self.blocks):
            for i in block:
                out[i] = r
        return tuple(out)

    def matrix(self) -> np.ndarray:
        r = np.array(self.ranks())
        return r[:, None] <= r[None, :]


def _check_n(n, max_n=MAX_N):
    if not isinstance(n, int) or n < 1 or n > max_n:
        raise LimitError(f"n must be in 1..{max_n}, got {n!r}")


@lru_cache(maxsize=None)
def _set_partitions(n):
    """Restricted growth strings of length n, as an int8 array."""
    out = []

    def rec(prefix, k):
        if len(prefix) == n:
            out.append(prefix)
            return
        for b in range(k + 1):
            rec(prefix + (b,), max(k, b + 1))

    rec((), 0)
    return np.array(out, dtype=np.int8).reshape(len(out), n)


def weak_order_ranks(n: int, max_n: int = MAX_N) -> np.ndarray:
    """All weak orders on n labelled elements as rank vectors, shape (count, n)."""
    _check_n(n, max_n)
    rgs = _set_partitions(n)
    blocks = rgs.max(axis=1) + 1
    parts = []
    for k in range(1, n + 1):
        sel = rgs[blocks == k]
        perms = np.array(list(itertools.permutations(range(k))), dtype=np.int8)
        # every partition, with its blocks placed in every order
        parts.append(perms[:, sel].transpose(1, 0, 2).reshape(-1, n))
    return np.concatenate(parts)


def enumerate_weak_orders(n: int, max_n: int = MAX_N):
    for row in weak_order_ranks(n, max_n):
        yield WeakOrderCode.from_ranks(row)


def ordered_bell(n: int) -> int:
    """Number of weak orders on n elements, by the standard recurrence."""
    a = [1]
    for m in range(1, n + 1):
        a.append(sum(comb(m, k) * a[m - k] for k in range(1, m + 1)))
    return a[n]


# ------------------------------------------------------------------ filters


def _filter(ranks, add, mul, z, o):
    """Rows of ``ranks`` satisfying QR1-QR5 on the ring given by its tables."""
    n = ranks.shape[1]
    keep = ranks[:, z] < ranks[:, o]
    ranks = ranks[keep]
    if not len(ranks):
        return ranks
    x, y, w = np.arange(n)[:, None, None], np.arange(n)[None, :, None], np.arange(n)[None, None, :]

    def pairs(r):
        # QR2: xy <= 0 implies x <= 0 or y <= 0
        r0 = r[:, z][:, None, None]
        prod = r[:, mul] <= r0
        le0 = r <= r0[:, :, 0]
        return ~(prod & ~le0[:, :, None] & ~le0[:, None, :]).reshape(len(r), -1).any(axis=1)

    def qr3(r):
        r0 = r[:, z][:, None, None, None]
        le = r[:, x] <= r[:, y]
        pos = r0 <= r[:, w]
        ok = r[:, mul[x, w]] <= r[:, mul[y, w]]
        return ~(le & pos & ~ok).reshape(len(r), -1).any(axis=1)

    def qr4(r):
        le = r[:, x] <= r[:, y]
        guard = r[:, w] != r[:, y]
        ok = r[:, add[x, w]] <= r[:, add[y, w]]
        return ~(le & guard & ~ok).reshape(len(r), -1).any(axis=1)

    def qr5(r):
        r0 = r[:, z][:, None, None, None]
        pos = r0 < r[:, w]
        hit = r[:, mul[x, w]] <= r[:, mul[y, w]]
        return ~(pos & hit & (r[:, x] > r[:, y])).reshape(len(r), -1).any(axis=1)

    for test in (pairs, qr5, qr4, qr3):
        out = []
        for lo in range(0, len(ranks), _CHUNK):
            chunk = ranks[lo:lo + _CHUNK]
            out.append(chunk[test(chunk)])
        ranks = np.concatenate(out) if out else ranks[:0]
        if not len(ranks):
            break
    return ranks


@dataclass
class Enumeration:
    ring: object
    relations: list
    exhaustive: bool
    candidates: int = 0
    notice: str | None = None
    codes: list = field(default_factory=list)


def enumerate_quasiorders(ring, max_n: int = MAX_N) -> Enumeration:
    """All quasi-orders on a finite ring, as matrix relations.

    Rings with more than ``max_n`` elements take the theory-guided path:
    one relation per prime ideal, each verified, flagged non-exhaustive.
    """
    if not ring.is_finite:
        raise UnsupportedOperation("enumeration needs a finite ring")
    n = ring.size
    if n > max_n:
        return _theory_guided(ring, max_n)
    add, mul, _ = ring.tables
    z, o = ring.index[ring.zero()], ring.index[ring.one()]
    ranks = weak_order_ranks(n, max_n)
    total = len(ranks)
    survivors = _filter(ranks, add, mul, z, o)
    codes = sorted({tuple(int(v) for v in row) for row in survivors})
    relations = []
    for code in codes:
        rel = MatrixRelation(ring, WeakOrderCode.from_ranks(code).matrix())
        report = check_axioms(rel)
        if not report.ok:
            raise AssertionError(f"filter and axiom engine disagree on {code}: {report.failures()}")
        relations.append(rel)
    wcodes = [WeakOrderCode.from_ranks(c) for c in codes]
    return Enumeration(ring, relations, True, total, codes=wcodes)


def _theory_guided(ring, max_n):
    relations, codes = [], []
    for ideal in enumerate_prime_ideals(ring):
        rel = TrivialAtPrime(ideal)
        els = ring.elements()
        m = np.array([[rel._leq(a, b) for b in els] for a in els], dtype=bool)
        mat = MatrixRelation(ring, m)
        if not check_axioms(mat).ok:
            raise AssertionError(f"trivial quasi-order at {ideal!r} fails the axioms")
        relations.append(mat)
        codes.append(WeakOrderCode.from_ranks([0 if ideal.contains(x) else 1 for x in els]))
    notice = f"{ring.size} elements exceed the exhaustive limit {max_n}; listing one quasi-order per prime ideal"
    return Enumeration(ring, relations, False, 0, notice, codes)


def enumerate_prime_ideals(ring) -> list:
    """All prime ideals of a finite ring, sorted by their element indices."""
    if not ring.is_finite:
        raise UnsupportedOperation("prime ideals are enumerated on finite rings only")
    idx = ring.index
    principal = {frozenset(_finite_closure(ring, [x])) for x in ring.elements()}
    ideals = set(principal)
    frontier = set(principal)
    while frontier:
        new = set()
        for a in frontier:
            for b in principal:
                s = frozenset(_finite_closure(ring, list(a | b)))
                if s not in ideals:
                    new.add(s)
        ideals |= new
        frontier = new
    primes = []
    for s in ideals:
        ideal = Ideal.from_elements(ring, s)
        if is_prime_ideal(ring, ideal)[0]:
            primes.append(ideal)
    primes.sort(key=lambda I: tuple(sorted(idx[x] for x in I.elements)))
    return primes


@dataclass
class CrossCheck:
    ok: bool
    pairs: list
    problems: list
    classifications: list


def cross_check_dichotomy(ring, enumeration: Enumeration | None = None) -> CrossCheck:
    """Every quasi-order is valued with trivial group; supports <-> prime ideals."""
    from .classifier import VALUED, classify
    from .groups import TrivialGroup

    enumeration = enumeration or enumerate_quasiorders(ring)
    primes = enumerate_prime_ideals(ring)
    prime_sets = [frozenset(p.elements) for p in primes]
    problems, pairs, classes = [], [], []
    seen = {}
    for k, rel in enumerate(enumeration.relations):
        c = classify(rel)
        classes.append(c)
        if c.branch != VALUED:
            problems.append(f"quasi-order {k} classified as {c.branch}")
        elif not isinstance(c.group, TrivialGroup):
            problems.append(f"quasi-order {k} has value group {c.group.kind}")
        supp = frozenset(c.support.members)
        if supp not in prime_sets:
            problems.append(f"support of quasi-order {k} is not a prime ideal")
            continue
        j = prime_sets.index(supp)
        if j in seen:
            problems.append(f"quasi-orders {seen[j]} and {k} share the support {primes[j]!r}")
        seen[j] = k
        pairs.append((k, primes[j]))
    if enumeration.exhaustive:
        for j, p in enumerate(primes):
            if j not in seen:
                problems.append(f"no quasi-order with support {p!r}")
    return CrossCheck(not problems, pairs, problems, classes)
