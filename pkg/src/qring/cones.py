"""Positive cones, ring orders and the translation-invariance lemma."""

from __future__ import annotations

import numpy as np

from .axioms import (
    FAIL,
    AxiomReport,
    AxiomResult,
    _resolve,
    _result,
    find_additive,
    find_intransitive,
    find_irreflexive,
    find_mult_monotone,
    find_nontotal,
    find_o2prime,
    find_qr2,
    prime_on_window,
    qr1_holds,
)
from .errors import StructuralError
from .relations import MatrixRelation, OrderRelation, QuasiOrder
from .rings import Integers, Polynomial
from .scan import IntUniverse, Scan
from . import windows as W


class PositiveCone:
    """A subset ``P`` of a ring given by a membership predicate.

    ``elements`` is set when the cone was materialized from a window; the
    predicate then answers only for those elements and is ``False``
    elsewhere.
    """

    def __init__(self, ring, member, kind="predicate", elements=None, params=None):
        self.ring = ring
        self._member = member
        self.kind = kind
        self.elements = tuple(elements) if elements is not None else None
        self.params = dict(params or {})

    def contains(self, x) -> bool:
        return bool(self._member(x))

    def member_array(self, elements, values=None) -> np.ndarray:
        if values is not None and self.kind == "nonnegative":
            return values >= 0
        return np.array([self.contains(x) for x in elements], dtype=bool)

    def window_members(self, window) -> list:
        return [x for x in window if self.contains(x)]

    def support(self, window) -> list:
        """``P n -P`` restricted to the window."""
        neg = self.ring._neg
        return [x for x in window if self.contains(x) and self.contains(neg(x))]

    def describe(self) -> dict:
        d = {"kind": self.kind, **self.params}
        if self.elements is not None:
            d["elements"] = [self.ring.to_json(x) for x in self.elements]
        return d

    @classmethod
    def nonnegative_integers(cls, ring=None):
        return cls(ring or Integers(), lambda x: x >= 0, "nonnegative")

    @classmethod
    def leading_positive(cls, ring: Polynomial, precedence=None):
        order = PolynomialAtInfinity(ring, precedence)
        return cls(ring, order.nonneg, "leading_positive", params={"precedence": list(order.precedence)})

    @classmethod
    def from_elements(cls, ring, elements):
        elements = [ring.from_json(e) if not ring.contains(e) else e for e in elements]
        s = frozenset(elements)
        return cls(ring, s.__contains__, "cone", elements=elements)

    @classmethod
    def from_relation(cls, relation, window):
        """``{x : 0 <= x}`` on the window."""
        z = relation.ring.zero()
        members = [x for x in window if relation._leq(z, x)]
        if relation.ring.is_finite and window.exhaustive:
            return cls.from_elements(relation.ring, members)
        # keep the relation's own predicate so the cone is usable off-window
        return cls(relation.ring, lambda x: relation._leq(z, x), "from_relation", elements=members)


# ------------------------------------------------------------------ orders


class Order:
    """A binary order ``<=`` on a ring; viewed as a quasi-order via OrderRelation."""

    kind = "abstract"
    has_sort_key = False
    translation_invariant = False

    def __init__(self, ring):
        self.ring = ring

    def _leq(self, x, y) -> bool:
        raise NotImplementedError

    def leq(self, x, y) -> bool:
        self.ring.check(x)
        self.ring.check(y)
        return self._leq(x, y)

    def sort_key(self, x):
        raise NotImplementedError

    def int_keys(self, values):
        return None

    def support_is_zero(self):
        return None

    def comparator(self, universe):
        return None

    def relation(self) -> OrderRelation:
        return OrderRelation(self)

    def describe(self) -> dict:
        return {"kind": self.kind}


class StandardInteger(Order):
    kind = "standard"
    has_sort_key = True
    translation_invariant = True

    def __init__(self, ring=None):
        ring = ring or Integers()
        if not isinstance(ring, Integers):
            raise StructuralError("the standard order lives on the integers")
        super().__init__(ring)

    def _leq(self, x, y):
        return x <= y

    def sort_key(self, x):
        return x

    def int_keys(self, values):
        return np.asarray(values, dtype=np.int64)

    def support_is_zero(self):
        return True


class PolynomialAtInfinity(Order):
    """``f >= 0`` iff the leading coefficient of ``f`` is positive.

    The leading term is taken under graded-lex with variables compared in
    ``precedence`` order (default: the ring's variable order).
    """

    kind = "poly_at_infinity"
    has_sort_key = True
    translation_invariant = True

    def __init__(self, ring: Polynomial, precedence=None):
        if not isinstance(ring, Polynomial):
            raise StructuralError("poly_at_infinity needs a polynomial ring")
        precedence = tuple(precedence or ring.variables)
        if sorted(precedence) != sorted(ring.variables):
            raise StructuralError(f"precedence {list(precedence)} must list each variable once")
        super().__init__(ring)
        self.precedence = precedence
        self._perm = [ring.variables.index(v) for v in precedence]

    def _lead_key(self, e):
        return (sum(e), tuple(e[k] for k in self._perm))

    def nonneg(self, f) -> bool:
        if not f:
            return True
        _, c = max(f, key=lambda t: self._lead_key(t[0]))
        return c > 0

    def _leq(self, x, y):
        return self.nonneg(self.ring._sub(y, x))

    def sort_key(self, x):
        return _OrderKey(self, x)

    def support_is_zero(self):
        return True

    def describe(self):
        return {"kind": self.kind, "precedence": list(self.precedence)}


class _OrderKey:
    __slots__ = ("order", "x")

    def __init__(self, order, x):
        self.order = order
        self.x = x

    def __lt__(self, other):
        return not self.order._leq(other.x, self.x)


class ConeOrder(Order):
    """``x <= y`` iff ``y - x`` lies in the cone."""

    kind = "cone"
    translation_invariant = True

    def __init__(self, cone: PositiveCone):
        super().__init__(cone.ring)
        self.cone = cone
        if cone.kind == "nonnegative":
            self.has_sort_key = True

    def _leq(self, x, y):
        return self.cone.contains(self.ring._sub(y, x))

    def sort_key(self, x):
        return x

    def int_keys(self, values):
        if self.cone.kind == "nonnegative":
            return np.asarray(values, dtype=np.int64)
        return None

    def support_is_zero(self):
        return True if self.cone.kind in ("nonnegative", "leading_positive") else None

    def describe(self):
        if self.cone.kind == "cone":
            return {"kind": "cone", "elements": [self.ring.to_json(x) for x in self.cone.elements]}
        return {"kind": "cone", "cone": self.cone.describe()}


class MatrixOrder(Order):
    """Explicit ``<=`` matrix on a finite ring."""

    kind = "matrix"

    def __init__(self, ring, rows):
        super().__init__(ring)
        self._rel = MatrixRelation(ring, rows)
        self.matrix = self._rel.matrix

    def _leq(self, x, y):
        return self._rel._leq(x, y)

    def describe(self):
        return self._rel.describe()


def cone_to_order(cone: PositiveCone) -> ConeOrder:
    return ConeOrder(cone)


def order_to_cone(order: Order, window) -> PositiveCone:
    z = order.ring.zero()
    members = [x for x in window if order._leq(z, x)]
    return PositiveCone(order.ring, lambda x: order._leq(z, x), "from_order", elements=members)


# ------------------------------------------------------------------ checks


def _cone_scan(cone, window):
    rel = ConeOrder(cone).relation()
    scan = Scan(rel, window)
    u = scan.u
    u.S, u.P, u.neg  # intern sums, products and negatives first
    values = u.values if isinstance(u, IntUniverse) else None
    member = cone.member_array(u.elements, values)
    return scan, member


def check_cone(cone: PositiveCone, window=None) -> AxiomReport:
    """P0-P3 on the window; closure checks only see in-window results."""
    window = _resolve(ConeOrder(cone).relation(), window)
    scan, member = _cone_scan(cone, window)
    u = scan.u
    rep = AxiomReport(cone.ring, window)
    res = rep.results
    inP = member[u.w]
    inNegP = member[u.neg]

    bad = np.flatnonzero(~(inP | inNegP))
    res["P0"] = _result(scan, (int(bad[0]),) if len(bad) else None)

    supp = inP & inNegP
    supp_u = _support_array(cone, u, member)
    verdict = prime_on_window(scan, supp, lambda idx, where: supp_u[idx])
    res["P1"] = (
        _result(scan, None) if verdict.ok else AxiomResult(FAIL, verdict.witness, verdict.reason)
    )

    inw = u.in_window()
    for name, T in (("P2", u.P), ("P3", u.S)):
        pre = inP[:, None] & inP[None, :] & inw[T]
        res[name] = _result(scan, scan.first_pair(pre & ~member[T]))
    return rep


def _support_array(cone, u, member):
    """``x in P and -x in P`` for every universe element."""
    if isinstance(u, IntUniverse) and cone.kind == "nonnegative":
        return u.values == 0
    neg = u.ring._neg
    return member & np.array([cone.contains(neg(x)) for x in u.elements], dtype=bool)


def check_order_axioms(order, window=None) -> AxiomReport:
    """O1-O4, O2' and whether O2 and O2' agree, plus prime support."""
    relation = order if isinstance(order, QuasiOrder) else OrderRelation(order)
    window = _resolve(relation, window)
    scan = Scan(relation, window)
    rep = AxiomReport(relation.ring, window)
    res = rep.results
    res["reflexive"] = _result(scan, find_irreflexive(scan))
    res["transitive"] = _result(scan, find_intransitive(scan))
    res["total"] = _result(scan, find_nontotal(scan))
    R = relation.ring
    res["O1"] = _result(scan, None) if qr1_holds(scan) else AxiomResult(FAIL, (R.zero(), R.one()))
    res["O2"] = _result(scan, find_qr2(scan))
    res["O2'"] = _result(scan, find_o2prime(scan))
    res["O3"] = _result(scan, find_mult_monotone(scan))
    res["O4"] = _result(scan, find_additive(scan, guarded=False))
    if res["O2"].failed == res["O2'"].failed:
        res["O2_iff_O2'"] = _result(scan, None)
    else:
        others = [k for k in ("O1", "O3", "O4") if res[k].failed]
        note = "verdicts differ" + (f" (premises {', '.join(others)} fail)" if others else "")
        res["O2_iff_O2'"] = AxiomResult(FAIL, None, note)
    z = scan.u.zero
    verdict = prime_on_window(scan, scan.E0, lambda idx, where: scan.equiv(idx, z, where=where))
    res["support_prime"] = (
        _result(scan, None) if verdict.ok else AxiomResult(FAIL, verdict.witness, verdict.reason)
    )
    return rep


# ------------------------------------------------- translation invariance


class SubsetRelation(QuasiOrder):
    """``x <= y`` iff ``y - x`` lies in an arbitrary subset ``T``.

    Neither reflexive nor total in general; used for the lemma that any
    such relation is translation invariant.
    """

    kind = "subset"
    translation_invariant = True

    def __init__(self, ring, subset):
        super().__init__(ring)
        self.subset = frozenset(subset)

    def _leq(self, x, y):
        return self.ring._sub(y, x) in self.subset

    def describe(self):
        idx = getattr(self.ring, "index", None)
        key = idx.__getitem__ if idx else None
        return {"kind": "subset", "elements": [self.ring.to_json(t) for t in sorted(self.subset, key=key)]}


def check_translation_invariance(relation, window):
    """First ``(x, y, z)`` with ``x <= y`` but not ``x + z <= y + z``, or None."""
    window = W.explicit(relation.ring, window) if not isinstance(window, W.Window) else window
    scan = Scan(relation, window)
    hit = find_additive(scan, guarded=False)
    return None if hit is None else scan.elements_at(*hit)
