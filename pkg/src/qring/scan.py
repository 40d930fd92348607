"""Vectorized evaluation of a relation over a window and its sums/products.

A :class:`Universe` interns the window elements together with every pairwise
sum and product the axiom checks need, so each element gets an integer
index.  A comparator then answers ``leq`` for whole index arrays at once.
Which comparator is used depends on what the relation offers:

* finite rings: a full ``|R| x |R|`` table
* integer windows with ``int_keys``: int64 key comparison
* integer windows, translation-invariant relations: membership of ``y - x``
* ``sort_key``: dense ranks from sorting the universe
* otherwise: cached Python calls
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from functools import cached_property

import numpy as np

from .rings import FiniteRing, Integers

_BLOCK_ELEMS = 1 << 21


def worker_count() -> int:
    env = os.environ.get("QRING_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


class Universe:
    def __init__(self, ring, window):
        self.ring = ring
        self.elements = []
        self.index = {}
        self.w = np.array([self.intern(x) for x in window], dtype=np.int64)
        self.n = len(self.w)
        self.zero = self.intern(ring.zero())
        self.one = self.intern(ring.one())
        self.minus_one = self.intern(ring._neg(ring.one()))

    def intern(self, x) -> int:
        i = self.index.get(x)
        if i is None:
            i = len(self.elements)
            self.elements.append(x)
            self.index[x] = i
        return i

    def _pairwise(self, op):
        els = [self.elements[i] for i in self.w]
        out = np.empty((self.n, self.n), dtype=np.int64)
        intern = self.intern
        for i, a in enumerate(els):
            row = out[i]
            for j, b in enumerate(els):
                row[j] = intern(op(a, b))
        return out

    @cached_property
    def S(self) -> np.ndarray:
        return self._pairwise(self.ring._add)

    @cached_property
    def P(self) -> np.ndarray:
        return self._pairwise(self.ring._mul)

    @cached_property
    def neg(self) -> np.ndarray:
        return np.array([self.intern(self.ring._neg(self.elements[i])) for i in self.w], dtype=np.int64)

    def in_window(self) -> np.ndarray:
        mask = np.zeros(len(self.elements), dtype=bool)
        mask[self.w] = True
        return mask

    def element(self, u):
        return self.elements[int(u)]


class FiniteUniverse(Universe):
    """The whole finite ring in enumeration order; sums/products via tables."""

    def __init__(self, ring: FiniteRing, window):
        self.ring = ring
        self.elements = ring.elements()
        self.index = ring.index
        self.w = np.array([ring.index[x] for x in window], dtype=np.int64)
        self.n = len(self.w)
        self.zero = ring.index[ring.zero()]
        self.one = ring.index[ring.one()]
        self.minus_one = ring.index[ring._neg(ring.one())]

    def intern(self, x):
        return self.index[x]

    @cached_property
    def S(self):
        return self.ring.tables[0][np.ix_(self.w, self.w)]

    @cached_property
    def P(self):
        return self.ring.tables[1][np.ix_(self.w, self.w)]

    @cached_property
    def neg(self):
        return self.ring.tables[2][self.w]


class IntUniverse(Universe):
    """Integer windows: everything is built eagerly with numpy."""

    def __init__(self, ring: Integers, window):
        self.ring = ring
        wv = np.array(list(window), dtype=np.int64)
        bound = int(np.abs(wv).max()) if len(wv) else 0
        if bound * bound >= 1 << 62:
            raise OverflowError("integer window too large for int64 products")
        sums = wv[:, None] + wv[None, :]
        prods = wv[:, None] * wv[None, :]
        vals = np.unique(np.concatenate([wv, sums.ravel(), prods.ravel(), -wv, [0, 1, -1]]))
        self.values = vals
        self.elements = vals.tolist()
        self.w = np.searchsorted(vals, wv)
        self.n = len(wv)
        self.S = np.searchsorted(vals, sums)
        self.P = np.searchsorted(vals, prods)
        self.neg = np.searchsorted(vals, -wv)
        self.zero, self.one, self.minus_one = (int(i) for i in np.searchsorted(vals, [0, 1, -1]))

    @cached_property
    def index(self):
        return {x: i for i, x in enumerate(self.elements)}

    def intern(self, x):
        return self.index[x]


def make_universe(ring, window) -> Universe:
    if ring.is_finite:
        return FiniteUniverse(ring, window)
    if isinstance(ring, Integers):
        return IntUniverse(ring, window)
    return Universe(ring, window)


# ------------------------------------------------------------ comparators


class KeyComparator:
    def __init__(self, keys):
        self.keys = np.asarray(keys)

    def leq(self, u, v, where=None):
        return self.keys[u] <= self.keys[v]


class TableComparator:
    def __init__(self, table):
        self.table = table

    def leq(self, u, v, where=None):
        return self.table[u, v]


class RankComparator:
    """Dense ranks from sorting ``sort_key`` over the (growing) universe."""

    def __init__(self, relation, universe):
        self.relation = relation
        self.universe = universe
        self._ranks = None

    def _sync(self):
        els = self.universe.elements
        if self._ranks is not None and len(self._ranks) == len(els):
            return
        keys = [self.relation.sort_key(x) for x in els]
        order = sorted(range(len(els)), key=keys.__getitem__)
        ranks = np.empty(len(els), dtype=np.int64)
        r = 0
        for pos, i in enumerate(order):
            if pos and keys[order[pos - 1]] < keys[i]:
                r += 1
            ranks[i] = r
        self._ranks = ranks

    def leq(self, u, v, where=None):
        self._sync()
        return self._ranks[u] <= self._ranks[v]


class DifferenceComparator:
    """``leq(x, y) = member(y - x)`` on integer universes."""

    def __init__(self, member, values):
        self.member = member
        self.values = values
        self._cache = {}

    def leq(self, u, v, where=None):
        d = self.values[v] - self.values[u]
        uniq, inv = np.unique(d, return_inverse=True)
        cache = self._cache
        mem = np.empty(len(uniq), dtype=bool)
        for k, x in enumerate(uniq.tolist()):
            hit = cache.get(x)
            if hit is None:
                hit = cache[x] = bool(self.member(x))
            mem[k] = hit
        return mem[inv].reshape(d.shape)


class PythonComparator:
    def __init__(self, relation, universe):
        self.relation = relation
        self.universe = universe
        self._cache = {}

    def leq(self, u, v, where=None):
        u, v = np.broadcast_arrays(np.asarray(u), np.asarray(v))
        out = np.zeros(u.shape, dtype=bool)
        if where is None:
            positions = np.ndindex(u.shape)
        else:
            where = np.broadcast_to(where, u.shape)
            positions = map(tuple, np.argwhere(where))
        els = self.universe.elements
        cache, leq = self._cache, self.relation._leq
        for pos in positions:
            key = (int(u[pos]), int(v[pos]))
            hit = cache.get(key)
            if hit is None:
                hit = cache[key] = leq(els[key[0]], els[key[1]])
            out[pos] = hit
        return out


def make_comparator(relation, universe):
    custom = relation.comparator(universe)
    if custom is not None:
        return custom
    ring = relation.ring
    if isinstance(universe, FiniteUniverse):
        matrix = getattr(relation, "matrix", None)
        if matrix is None:
            els = universe.elements
            matrix = np.array([[relation._leq(a, b) for b in els] for a in els], dtype=bool)
        return TableComparator(matrix)
    if isinstance(universe, IntUniverse):
        keys = relation.int_keys(universe.values)
        if keys is not None:
            return KeyComparator(keys)
        if relation.translation_invariant:
            z = ring.zero()
            return DifferenceComparator(lambda d: relation._leq(z, d), universe.values)
    if relation.has_sort_key:
        return RankComparator(relation, universe)
    return PythonComparator(relation, universe)


# ------------------------------------------------------------------- scan


class Scan:
    """A relation evaluated over one window; shared by all the checks."""

    def __init__(self, relation, window, universe=None):
        self.relation = relation
        self.ring = relation.ring
        self.window = window
        self.u = universe if universe is not None else make_universe(self.ring, window)
        self.n = self.u.n
        self.w = self.u.w

    @cached_property
    def comparator(self):
        return make_comparator(self.relation, self.u)

    def leq(self, a, b, where=None):
        return self.comparator.leq(a, b, where)

    def equiv(self, a, b, where=None):
        return self.leq(a, b, where) & self.leq(b, a, where)

    @cached_property
    def L(self) -> np.ndarray:
        w = self.w
        return self.leq(w[:, None], w[None, :])

    @cached_property
    def E(self) -> np.ndarray:
        return self.L & self.L.T

    @cached_property
    def le0(self) -> np.ndarray:
        """``0 <= x`` for window x."""
        return self.leq(np.full(self.n, self.u.zero), self.w)

    @cached_property
    def ge0(self) -> np.ndarray:
        """``x <= 0`` for window x."""
        return self.leq(self.w, np.full(self.n, self.u.zero))

    @property
    def E0(self) -> np.ndarray:
        return self.le0 & self.ge0

    @property
    def gt0(self) -> np.ndarray:
        return self.le0 & ~self.ge0

    def is_zero_mask(self) -> np.ndarray:
        return np.array([self.ring.is_zero(self.u.elements[i]) for i in self.w], dtype=bool)

    def elements_at(self, *window_positions):
        return tuple(self.u.elements[int(self.w[i])] for i in window_positions)

    def first_pair(self, mask):
        hits = np.flatnonzero(mask.ravel())
        if not len(hits):
            return None
        return divmod(int(hits[0]), mask.shape[1])

    def first_triple(self, block):
        """First ``(i, j, k)`` in scan order where ``block(lo, hi)`` is true.

        ``block`` returns a boolean array of shape ``(hi - lo, n, n)``.
        Blocks are evaluated in parallel batches and the earliest hit wins,
        so serial and parallel runs give the same witness.
        """
        n = self.n
        step = max(1, _BLOCK_ELEMS // max(1, n * n))
        bounds = [(lo, min(n, lo + step)) for lo in range(0, n, step)]
        workers = min(worker_count(), len(bounds))

        def run(b):
            lo, hi = b
            v = block(lo, hi)
            hits = np.flatnonzero(v.ravel())
            if not len(hits):
                return None
            i, rest = divmod(int(hits[0]), n * n)
            j, k = divmod(rest, n)
            return lo + i, j, k

        if workers <= 1:
            for b in bounds:
                hit = run(b)
                if hit is not None:
                    return hit
            return None
        with ThreadPoolExecutor(workers) as pool:
            for start in range(0, len(bounds), workers):
                for hit in pool.map(run, bounds[start:start + workers]):
                    if hit is not None:
                        return hit
        return None


_SCANS: dict = {}


def get_scan(relation, window) -> Scan:
    """Reuse the scan for a (relation, window) pair across checks."""
    key = (id(relation), id(window))
    hit = _SCANS.get(key)
    if hit is not None and hit.relation is relation and hit.window is window:
        return hit
    if len(_SCANS) >= 6:
        _SCANS.pop(next(iter(_SCANS)))
    scan = _SCANS[key] = Scan(relation, window)
    return scan
