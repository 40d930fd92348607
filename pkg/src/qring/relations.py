"""Total preorders on rings and their derived equivalence and strict parts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError, StructuralError
from .groups import Descending, value_le
from .rings import Ideal, Integers, Ring, is_prime_ideal
from . import windows as W

# int key used for v = infinity in vectorized valuation keys
BIG = 1 << 62


class QuasiOrder:
    """Base class for binary relations ``x <= y`` on a ring.

    Subclasses implement ``_leq``.  Optional fast paths used by the scan
    engine: ``sort_key`` (with ``has_sort_key = True``) when ``leq`` is
    ``key(x) <= key(y)``, ``int_keys`` for vectorized keys over integer
    arrays, and ``translation_invariant`` when ``leq(x, y)`` only depends
    on ``y - x``.
    """

    kind = "abstract"
    has_sort_key = False
    translation_invariant = False

    def __init__(self, ring: Ring):
        self.ring = ring

    def _leq(self, x, y) -> bool:
        raise NotImplementedError

    def leq(self, x, y) -> bool:
        self.ring.check(x)
        self.ring.check(y)
        return self._leq(x, y)

    def equiv(self, x, y) -> bool:
        return self.leq(x, y) and self._leq(y, x)

    def strict(self, x, y) -> bool:
        return self.leq(x, y) and not self._leq(y, x)

    def _equiv(self, x, y) -> bool:
        return self._leq(x, y) and self._leq(y, x)

    def sort_key(self, x):
        raise NotImplementedError

    def int_keys(self, values: np.ndarray):
        return None

    def support_is_zero(self):
        """True/False when the support is known symbolically, else None."""
        return None

    def comparator(self, universe):
        """Hook for relation-specific vectorized comparators."""
        return None

    def describe(self) -> dict:
        return {"kind": self.kind}


class MatrixRelation(QuasiOrder):
    """Explicit boolean matrix over the enumeration order of a finite ring."""

    kind = "matrix"

    def __init__(self, ring: Ring, rows):
        if not ring.is_finite:
            raise StructuralError("matrix relations need a finite ring")
        super().__init__(ring)
        m = np.asarray(rows, dtype=bool)
        n = ring.size
        if m.shape != (n, n):
            raise StructuralError(f"matrix must be {n}x{n}, got {m.shape}")
        if not m.diagonal().all():
            i = int(np.flatnonzero(~m.diagonal())[0])
            raise StructuralError(f"matrix is not reflexive at {ring.format(ring.elements()[i])}")
        tot = m | m.T
        if not tot.all():
            i, j = np.argwhere(~tot)[0]
            els = ring.elements()
            raise StructuralError(
                f"matrix is not total at ({ring.format(els[i])}, {ring.format(els[j])})"
            )
        self.matrix = m

    def _leq(self, x, y):
        idx = self.ring.index
        return bool(self.matrix[idx[x], idx[y]])

    def describe(self):
        return {"kind": "matrix", "rows": self.matrix.astype(int).tolist()}


class TrivialAtPrime(QuasiOrder):
    """``x <= y`` iff ``x`` lies in the prime ``p`` or ``y`` does not."""

    kind = "trivial_at_prime"
    has_sort_key = True

    def __init__(self, ideal: Ideal):
        super().__init__(ideal.ring)
        ok, witness = is_prime_ideal(ideal.ring, ideal)
        if not ok:
            raise PreconditionError(f"{ideal!r} is not a prime ideal (witness {witness})")
        self.ideal = ideal

    def _leq(self, x, y):
        return self.ideal.contains(x) or not self.ideal.contains(y)

    def sort_key(self, x):
        return 0 if self.ideal.contains(x) else 1

    def int_keys(self, values):
        if not isinstance(self.ring, Integers):
            return None
        g = abs(self.ideal.gcd)
        return (values != 0).astype(np.int64) if g == 0 else (values % g != 0).astype(np.int64)

    def support_is_zero(self):
        return self.ideal.is_zero()

    def describe(self):
        return {"kind": "trivial_at_prime", **self.ideal.describe()}


class ValuationRelation(QuasiOrder):
    """``x <= y`` iff ``v(y) <= v(x)``."""

    kind = "valuation"
    has_sort_key = True

    def __init__(self, valuation):
        super().__init__(valuation.ring)
        self.valuation = valuation

    def _leq(self, x, y):
        v = self.valuation
        return value_le(v.group, v.value(y), v.value(x))

    def sort_key(self, x):
        return Descending(self.valuation.group, self.valuation.value(x))

    def int_keys(self, values):
        return self.valuation.order_keys(values)

    def support_is_zero(self):
        return self.valuation.support_is_zero()

    def describe(self):
        return {"kind": "valuation", "valuation": self.valuation.describe()}


class OrderRelation(QuasiOrder):
    """A ring order viewed as a quasi-order."""

    kind = "order"

    def __init__(self, order):
        super().__init__(order.ring)
        self.order = order
        self.has_sort_key = order.has_sort_key
        self.translation_invariant = order.translation_invariant

    def _leq(self, x, y):
        return self.order._leq(x, y)

    def sort_key(self, x):
        return self.order.sort_key(x)

    def int_keys(self, values):
        return self.order.int_keys(values)

    def support_is_zero(self):
        return self.order.support_is_zero()

    def comparator(self, universe):
        return self.order.comparator(universe)

    def describe(self):
        return {"kind": "order", "order": self.order.describe()}


@dataclass(frozen=True)
class SupportSet:
    """The equivalence class of 0, with the members found in a window."""

    relation: QuasiOrder
    members: tuple
    exhaustive: bool

    def contains(self, x) -> bool:
        return self.relation._equiv(x, self.relation.ring.zero())

    def is_zero(self) -> bool:
        return self.members == (self.relation.ring.zero(),)

    def to_json(self):
        return [self.relation.ring.to_json(x) for x in self.members]


def compute_support(relation: QuasiOrder, window=None) -> SupportSet:
    if window is None:
        window = W.default_window(relation.ring)
    z = relation.ring.zero()
    members = tuple(x for x in window if relation._equiv(x, z))
    return SupportSet(relation, members, window.exhaustive)
