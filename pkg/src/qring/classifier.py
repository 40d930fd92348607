"""The dichotomy: a verified quasi-order is an order or comes from a valuation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .axioms import _resolve
from .cones import (
    ConeOrder,
    PolynomialAtInfinity,
    PositiveCone,
    StandardInteger,
    check_cone,
    check_order_axioms,
)
from .constructions import (
    _require_axioms,
    build_value_monoid,
    grothendieck_group,
    lift_order,
    lift_valuation,
    quotient_quasiorder,
    SynthesizedValuation,
)
from .errors import InconsistencyError
from .groups import TrivialGroup
from .relations import OrderRelation, ValuationRelation, compute_support
from .rings import Ideal, Integers, Polynomial
from .scan import Scan
from .valuations import MonomialValuation, PAdic, TrivialValuation, check_valuation_axioms
from . import windows as W

ORDERED = "ordered"
VALUED = "valued"


@dataclass
class Classification:
    branch: str
    relation: object
    window: W.Window
    support: object
    minus_one: str
    order: object = None
    cone: object = None
    valuation: object = None
    synthesized: object = None
    group: object = None
    checks: dict = field(default_factory=dict)

    @property
    def structure(self):
        return self.order if self.branch == ORDERED else self.valuation

    def induced_relation(self):
        if self.branch == ORDERED:
            return OrderRelation(self.order)
        return ValuationRelation(self.valuation)

    def to_json(self) -> dict:
        R = self.relation.ring
        d = {
            "branch": self.branch,
            "support": self.support.to_json(),
            "minus_one": self.minus_one,
        }
        if self.branch == ORDERED:
            d["order"] = self.order.describe()
            d["cone_window"] = [R.to_json(x) for x in self.cone.window_members(self.window)]
        else:
            d["group"] = self.group.describe()
            d["valuation"] = self.valuation.describe()
            if self.synthesized is not None:
                d["map"] = self.synthesized.describe()["map"]
        d["checks"] = {k: v.ok for k, v in self.checks.items()}
        return d


def _sign_of_minus_one(relation) -> str:
    R = relation.ring
    z, m1 = R.zero(), R._neg(R.one())
    if relation._leq(m1, z) and not relation._leq(z, m1):
        return "negative"
    if relation._leq(z, m1) and not relation._leq(m1, z):
        return "positive"
    return "zero"


def classify(relation, window=None) -> Classification:
    """Run the dichotomy pipeline; raises RejectedInput when axioms fail."""
    R = relation.ring
    if R.is_finite:
        window = W.full(R)
    window = _resolve(relation, window)
    report = _require_axioms(relation, window)
    support = compute_support(relation, window)
    view = quotient_quasiorder(relation, window, report)
    sign = _sign_of_minus_one(relation)
    if sign == "zero":
        raise InconsistencyError("-1 ~ 0 although the support is a proper ideal", (R._neg(R.one()),))

    if sign == "negative":
        return _ordered(relation, window, support, view)
    if not relation._equiv(R._neg(R.one()), R.one()):
        raise InconsistencyError("0 < -1 but -1 is not ~ 1", (R._neg(R.one()), R.one()))
    return _valued(relation, window, support, view)


def _ordered(relation, window, support, view):
    qrel = view.quotient_relation
    qwindow = window if view.identity else W.full(view.ring)
    cone = PositiveCone.from_relation(qrel, qwindow)
    order, order_report = lift_order(ConeOrder(cone), view, window)
    closed = _closed_form_order(relation, window)
    if closed is not None:
        order = closed
    out = Classification(ORDERED, relation, window, support, "negative", order=order)
    out.cone = PositiveCone.from_relation(relation, window)
    out.checks["order"] = check_order_axioms(order, window) if closed is not None else order_report
    out.checks["cone"] = check_cone(out.cone, window)
    return out


def _closed_form_order(relation, window):
    R = relation.ring
    if isinstance(R, Integers):
        cand = StandardInteger(R)
    elif isinstance(R, Polynomial):
        cand = PolynomialAtInfinity(R)
    else:
        return None
    return cand if _agrees(relation, OrderRelation(cand), window) is None else None


def _valued(relation, window, support, view):
    if view.ring.is_finite:
        Q = view.ring
        qmonoid = build_value_monoid(view.quotient_relation, W.full(Q))
        if len(qmonoid) != 1:
            raise InconsistencyError("finite quotient field carries a nontrivial value monoid", qmonoid.classes[1])
        qval = TrivialValuation(Ideal(Q, [Q.zero()]))
        lifted, vreport = lift_valuation(qval, view, window)
        closed = _support_valuation(relation, support)
        valuation = closed if closed is not None and _agrees(
            relation, ValuationRelation(closed), window
        ) is None else lifted
        out = Classification(VALUED, relation, window, support, "positive", valuation=valuation)
        out.group = TrivialGroup()
        out.checks["valuation"] = vreport if valuation is lifted else check_valuation_axioms(valuation, window)
        return out

    monoid = build_value_monoid(relation, window)
    group = grothendieck_group(monoid)
    synth = SynthesizedValuation(relation, group, monoid)
    closed = _closed_form_valuation(relation, window, monoid)
    valuation = closed if closed is not None else synth
    out = Classification(VALUED, relation, window, support, "positive", valuation=valuation, synthesized=synth)
    out.group = valuation.group
    out.checks["valuation"] = check_valuation_axioms(valuation, window)
    return out


def _support_valuation(relation, support):
    R = relation.ring
    if R.is_finite:
        ideal = Ideal.from_elements(R, support.members)
    elif isinstance(R, Integers) and hasattr(relation, "ideal"):
        ideal = relation.ideal
    else:
        return None
    return TrivialValuation(ideal)


def _closed_form_valuation(relation, window, monoid):
    R = relation.ring
    cands = []
    if len(monoid) == 1:
        cands.append(TrivialValuation(Ideal(R, [R.zero()])))
    elif isinstance(R, Integers):
        # the least positive x with x < 1 generates the valuation ideal
        below = [x for x in window if x > 0 and relation._leq(x, 1) and not relation._leq(1, x)]
        if below:
            p = min(below)
            if p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1)):
                cands.append(PAdic(p, R))
    elif isinstance(R, Polynomial):
        weights = {}
        for name in R.variables:
            k = monoid.rank(R.var(name))
            if k is None or k <= 0:
                break
            weights[name] = k
        else:
            cands.append(MonomialValuation(R, weights))
    for cand in cands:
        if _agrees(relation, ValuationRelation(cand), window) is None:
            return cand
    return None


def _agrees(a, b, window):
    """First window pair where the relations differ, or None."""
    sa, sb = Scan(a, window), Scan(b, window)
    hit = sa.first_pair(sa.L != sb.L)
    return None if hit is None else sa.elements_at(*hit)


class RoundTrip(NamedTuple):
    ok: bool
    witness: tuple | None
    reason: str | None


def roundtrip_check(relation, classification: Classification, window=None) -> RoundTrip:
    """Re-induce a quasi-order from the classification and compare on the window."""
    window = classification.window if window is None else _resolve(relation, window)
    induced = classification.induced_relation()
    diff = _agrees(relation, induced, window)
    if diff is not None:
        return RoundTrip(False, diff, "relations differ")
    s1 = compute_support(relation, window).members
    s2 = compute_support(induced, window).members
    if s1 != s2:
        extra = next(x for x in s1 + s2 if (x in s1) != (x in s2))
        return RoundTrip(False, (extra,), "supports differ")
    return RoundTrip(True, None, None)
