"""Quotient by the support, fraction extension, lifts and value-group synthesis."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .axioms import (
    AxiomReport,
    _resolve,
    _result,
    check_axioms,
    find_additive,
    find_cancel,
    find_intransitive,
    find_irreflexive,
    find_mult_monotone,
    find_nonzero_in_support,
    find_nontotal,
)
from .cones import Order, check_order_axioms
from .errors import (
    InconsistencyError,
    PreconditionError,
    RejectedInput,
    StructuralError,
    UnsupportedOperation,
)
from .groups import INF, OrderedAbelianGroup, TrivialGroup, check_group_samples
from .relations import MatrixRelation, QuasiOrder, compute_support
from .rings import Integers, Modular, Ring, TableRing
from .scan import Scan, get_scan
from .valuations import Valuation, check_valuation_axioms
from . import windows as W


def _require_axioms(relation, window, report=None):
    report = report or check_axioms(relation, window)
    if not report.ok:
        name = report.failures()[0]
        wit = report[name].witness
        shown = ", ".join(relation.ring.format(x) for x in wit) if wit else ""
        raise RejectedInput(f"{name} fails with witness ({shown})", report)
    return report


# ---------------------------------------------------------------- quotient


class QuotientRingView:
    """``R / E0`` with the induced relation ``x' <= y'  iff  x <= y``.

    ``project`` maps R to the quotient ring.  On finite rings the cosets are
    represented by their enumeration-order minimum; when the support is
    ``{0}`` the view is the identity.
    """

    def __init__(self, relation, support, quotient, project, quotient_relation, representatives=None):
        self.relation = relation
        self.base = relation.ring
        self.support = support
        self.ring = quotient
        self.project = project
        self.quotient_relation = quotient_relation
        self.representatives = representatives

    @property
    def identity(self) -> bool:
        return self.ring is self.base

    def lift_point(self, q):
        """A representative in R of the quotient element ``q``."""
        return q if self.identity else self.representatives[q]

    def describe(self) -> dict:
        d = {"identity": self.identity, "support": self.support.to_json()}
        if not self.identity:
            d["quotient_ring"] = self.ring.describe()
            d["representatives"] = [self.base.to_json(x) for x in self.representatives]
        return d


def quotient_quasiorder(relation, window=None, report=None) -> QuotientRingView:
    R = relation.ring
    if R.is_finite:
        window = W.full(R)
    window = _resolve(relation, window)
    _require_axioms(relation, window, report)
    support = compute_support(relation, window)

    if support.is_zero() and (R.is_finite or relation.support_is_zero() is not False):
        return QuotientRingView(relation, support, R, lambda x: x, relation)

    if R.is_finite:
        view = _finite_quotient(relation, support)
    elif isinstance(R, Integers) and hasattr(relation, "ideal") and relation.ideal.gcd:
        p = abs(relation.ideal.gcd)
        Q = Modular(p)
        reps = list(range(p))
        rows = [[relation._leq(a, b) for b in reps] for a in reps]
        view = QuotientRingView(relation, support, Q, lambda x: x % p, MatrixRelation(Q, rows), reps)
    else:
        raise UnsupportedOperation(
            f"quotient of {R!r} by a nontrivial support needs a finite ring or a principal prime of Z"
        )
    _check_well_defined(relation, window, support)
    return view


def _finite_quotient(relation, support):
    R = relation.ring
    idx = R.index
    els = R.elements()
    members = list(support.members)
    rep_of = {}
    for x in els:
        rep_of[x] = min((R._add(x, c) for c in members), key=idx.__getitem__)
    reps = sorted(set(rep_of.values()), key=idx.__getitem__)
    if isinstance(R, Modular):
        d = reps[-1] + 1
        Q = Modular(d)
        project = lambda x: x % d  # noqa: E731
    else:
        pos = {r: i for i, r in enumerate(reps)}
        add = [[pos[rep_of[R._add(a, b)]] for b in reps] for a in reps]
        mul = [[pos[rep_of[R._mul(a, b)]] for b in reps] for a in reps]
        Q = TableRing(add, mul, pos[rep_of[R.zero()]], pos[rep_of[R.one()]])
        project = lambda x: pos[rep_of[x]]  # noqa: E731
    rows = [[relation._leq(a, b) for b in reps] for a in reps]
    return QuotientRingView(relation, support, Q, project, MatrixRelation(Q, rows), reps)


def _check_well_defined(relation, window, support):
    """``x ~ x + c`` for window ``x`` and support members ``c``."""
    R = relation.ring
    for c in support.members:
        for x in window:
            if not relation._equiv(x, R._add(x, c)):
                raise InconsistencyError("induced relation is not well defined on cosets", (x, c))


# ---------------------------------------------------------- fraction field


class FractionField(Ring):
    """Fractions ``(a, b)`` with ``b != 0`` over an integral domain; not reduced."""

    def __init__(self, base: Ring):
        if not base.is_integral_domain():
            raise PreconditionError(f"{base!r} is not an integral domain")
        self.base = base
        self.is_finite = False

    def __repr__(self):
        return f"FractionField({self.base!r})"

    def zero(self):
        return (self.base.zero(), self.base.one())

    def one(self):
        return (self.base.one(), self.base.one())

    def _add(self, p, q):
        B = self.base
        (a, b), (c, d) = p, q
        return (B._add(B._mul(a, d), B._mul(c, b)), B._mul(b, d))

    def _mul(self, p, q):
        B = self.base
        return (B._mul(p[0], q[0]), B._mul(p[1], q[1]))

    def _neg(self, p):
        return (self.base._neg(p[0]), p[1])

    def check(self, x):
        if not (isinstance(x, tuple) and len(x) == 2):
            raise StructuralError(f"{x!r} is not a fraction pair")
        self.base.check(x[0])
        self.base.check(x[1])
        if self.base.is_zero(x[1]):
            raise StructuralError("zero denominator")

    def eq(self, p, q) -> bool:
        self.check(p)
        self.check(q)
        return self.same(p, q)

    def same(self, p, q) -> bool:
        B = self.base
        return B._mul(p[0], q[1]) == B._mul(q[0], p[1])

    def is_zero(self, x) -> bool:
        return self.base.is_zero(x[0])

    def is_integral_domain(self):
        return True

    def is_field(self):
        return True

    def describe(self):
        return {"kind": "fraction_field", "base": self.base.describe()}

    def to_json(self, x):
        return [self.base.to_json(x[0]), self.base.to_json(x[1])]

    def from_json(self, value):
        x = (self.base.from_json(value[0]), self.base.from_json(value[1]))
        self.check(x)
        return x

    def format(self, x):
        B = self.base
        a, b = B.format(x[0]), B.format(x[1])
        if not isinstance(B, Integers):
            a, b = f"({a})", f"({b})"
        return f"{a}/{b}"


class FractionRelation(QuasiOrder):
    """``a/b <= x/y  iff  a*b*y^2 <= x*y*b^2`` in the base relation."""

    kind = "fraction"

    def __init__(self, base_relation):
        super().__init__(FractionField(base_relation.ring))
        self.base_relation = base_relation

    def _operands(self, p, q):
        B = self.base_relation.ring
        (a, b), (x, y) = p, q
        lhs = B._mul(B._mul(a, b), B._mul(y, y))
        rhs = B._mul(B._mul(x, y), B._mul(b, b))
        return lhs, rhs

    def _leq(self, p, q):
        return self.base_relation._leq(*self._operands(p, q))

    def support_is_zero(self):
        return self.base_relation.support_is_zero()

    def comparator(self, universe):
        if not isinstance(self.ring.base, Integers):
            return None
        probe = self.base_relation.int_keys(np.array([0, 1], dtype=np.int64))
        if probe is None:
            return None
        nums = np.array([p[0] for p in universe.elements], dtype=object)
        dens = np.array([p[1] for p in universe.elements], dtype=object)
        bound = max(int(np.abs(nums).max()), int(np.abs(dens).max()))
        if bound ** 4 >= 1 << 62:
            return None
        return _FormulaComparator(self.base_relation, universe)

    def describe(self):
        return {"kind": "fraction", "base": self.base_relation.describe()}


class _FormulaComparator:
    """Vectorized ``a*b*y^2 <= x*y*b^2`` over integer fraction universes."""

    def __init__(self, base_relation, universe):
        self.base = base_relation
        self.universe = universe
        self._n = 0

    def _sync(self):
        els = self.universe.elements
        if self._n != len(els):
            self.A = np.array([p[0] for p in els], dtype=np.int64)
            self.B = np.array([p[1] for p in els], dtype=np.int64)
            self._n = len(els)

    def leq(self, u, v, where=None):
        self._sync()
        A, B = self.A, self.B
        bu, bv = B[u], B[v]
        lhs = A[u] * bu * bv * bv
        rhs = A[v] * bv * bu * bu
        lhs, rhs = np.broadcast_arrays(lhs, rhs)
        keys = self.base.int_keys(np.concatenate([lhs.ravel(), rhs.ravel()]))
        k = lhs.size
        return (keys[:k] <= keys[k:]).reshape(lhs.shape)


def fraction_window(base_window) -> W.Window:
    """All pairs ``(a, b)`` of base window elements with ``b != 0``."""
    F = FractionField(base_window.ring)
    B = base_window.ring
    els = [(a, b) for b in base_window if not B.is_zero(b) for a in base_window]
    return W.Window(F, "fraction", els, {"base": base_window.describe()})


def reduced_fraction_window(base_window) -> W.Window:
    """One representative per fraction value (integers only; else all pairs)."""
    full_w = fraction_window(base_window)
    if not isinstance(base_window.ring, Integers):
        return full_w
    seen, els = set(), []
    for a, b in full_w:
        g = math.gcd(a, b)
        key = (a // g, b // g) if b > 0 else (-a // g, -b // g)
        if key not in seen:
            seen.add(key)
            els.append(key)
    return W.Window(full_w.ring, "fraction_reduced", els, {"base": base_window.describe()})


def fraction_extension(relation, window) -> FractionRelation:
    R = relation.ring
    window = _resolve(relation, window)
    support = compute_support(relation, window)
    if relation.support_is_zero() is False or not support.is_zero():
        raise PreconditionError("support is not {0}; take the quotient by the support first")
    if not R.is_integral_domain():
        raise PreconditionError(f"{R!r} is not an integral domain; take the quotient first")
    _require_axioms(relation, window)
    return FractionRelation(relation)


def check_fraction_extension(ext: FractionRelation, base_window, reference=None) -> AxiomReport:
    """Order axioms and the field axioms Q1-Q3 for the extended relation.

    Pairwise checks run over every fraction pair; the triple checks (Q2,
    Q3, transitivity) over one representative per fraction value, which is
    equivalent once well-definedness passes.  ``reference(p, q)``, if
    given, is an independent prediction of ``p <= q`` compared on all pairs.
    """
    fw = fraction_window(base_window)
    F = fw.ring
    scan = Scan(ext, fw)
    rep = AxiomReport(F, fw)
    res = rep.results
    res["reflexive"] = _result(scan, find_irreflexive(scan))
    res["total"] = _result(scan, find_nontotal(scan))

    hit = find_nonzero_in_support(scan)
    res["Q1"] = _result(scan, hit)

    # equal fractions must have identical rows and columns
    L = scan.L
    keys = [_fraction_key(F, p) for p in fw]
    groups: dict = {}
    for i, k in enumerate(keys):
        groups.setdefault(k, []).append(i)
    bad = None
    for members in groups.values():
        first = members[0]
        for j in members[1:]:
            diff = np.flatnonzero((L[first] != L[j]) | (L[:, first] != L[:, j]))
            if len(diff):
                bad = (first, j, int(diff[0]))
                break
        if bad:
            break
    res["well_defined"] = _result(scan, bad)

    B = base_window.ring
    base_scan = get_scan(ext.base_relation, base_window)
    one = B.one()
    pos = {p: i for i, p in enumerate(fw)}
    ints = np.array([pos[(a, one)] for a in base_window], dtype=np.int64)
    emb = L[np.ix_(ints, ints)]
    bad = scan.first_pair(emb != base_scan.L)
    res["embedding"] = _result(scan, None if bad is None else (int(ints[bad[0]]), int(ints[bad[1]])))

    if reference is not None:
        els = list(fw)
        bad = None
        for i, p in enumerate(els):
            row = L[i]
            for j, q in enumerate(els):
                if bool(row[j]) != bool(reference(p, q)):
                    bad = (i, j)
                    break
            if bad:
                break
        res["reference"] = _result(scan, bad)

    red = reduced_fraction_window(base_window)
    rscan = Scan(ext, red)
    res["transitive"] = _result(rscan, find_intransitive(rscan))
    res["Q2"] = _result(rscan, find_mult_monotone(rscan))
    res["Q3"] = _result(rscan, find_additive(rscan, guarded=True))
    return rep


def _fraction_key(F, p):
    a, b = p
    if isinstance(F.base, Integers):
        g = math.gcd(a, b)
        return (a // g, b // g) if b > 0 else (-a // g, -b // g)
    return p


# ------------------------------------------------------------------- lifts


class LiftedValuation(Valuation):
    """``v(x) = vbar(xbar)`` for a valuation on the quotient."""

    kind = "lifted"

    def __init__(self, quotient_valuation, view: QuotientRingView):
        super().__init__(view.base, quotient_valuation.group)
        self.inner = quotient_valuation
        self.view = view

    def value(self, x):
        return self.inner.value(self.view.project(x))

    def support_is_zero(self):
        return self.view.support.is_zero() if self.view.base.is_finite else None

    def describe(self):
        return {"kind": "lifted", "quotient": self.view.describe(), "valuation": self.inner.describe()}


def _quotient_support_is_zero(view, is_zero_at) -> bool:
    Q = view.ring
    if Q.is_finite:
        z = Q.zero()
        return all(is_zero_at(q) == (q == z) for q in Q.elements())
    return True


def lift_valuation(quotient_valuation, view: QuotientRingView, window=None):
    ok = _quotient_support_is_zero(view, lambda q: quotient_valuation.value(q) is INF)
    if not ok:
        raise PreconditionError("quotient valuation must have support {0}")
    if view.identity:
        lifted = quotient_valuation
    else:
        lifted = LiftedValuation(quotient_valuation, view)
    window = _resolve(view.relation, window)
    report = check_valuation_axioms(lifted, window)
    if not report.ok:
        raise InconsistencyError(f"lifted valuation fails {report.failures()}", report)
    return lifted, report


class LiftedOrder(Order):
    kind = "lifted"

    def __init__(self, quotient_order, view: QuotientRingView):
        super().__init__(view.base)
        self.inner = quotient_order
        self.view = view

    def _leq(self, x, y):
        p = self.view.project
        return self.inner._leq(p(x), p(y))

    def describe(self):
        return {"kind": "lifted", "quotient": self.view.describe(), "order": self.inner.describe()}


def lift_order(quotient_order, view: QuotientRingView, window=None):
    z = view.ring.zero()
    ok = _quotient_support_is_zero(
        view, lambda q: quotient_order._leq(q, z) and quotient_order._leq(z, q)
    )
    if not ok:
        raise PreconditionError("quotient order must have support {0}")
    lifted = quotient_order if view.identity else LiftedOrder(quotient_order, view)
    window = _resolve(view.relation, window)
    report = check_order_axioms(lifted, window)
    return lifted, report


# ------------------------------------------------------------ value monoid


class ValueMonoid:
    """Classes of nonzero window elements under ``~``, in increasing order.

    ``[x] <= [y]`` iff ``y <= x``; multiplication is ``[x][y] = [xy]``.
    """

    def __init__(self, relation, window, classes):
        self.relation = relation
        self.window = window
        self.classes = classes
        self._class_of = {x: i for i, c in enumerate(classes) for x in c}
        self.unit = self._class_of[relation.ring.one()]

    def __len__(self):
        return len(self.classes)

    def class_of(self, x):
        """Class index of ``x``, or None when its class has no window member."""
        i = self._class_of.get(x)
        if i is not None:
            return i
        rel = self.relation
        for i, c in enumerate(self.classes):
            if rel._equiv(x, c[0]):
                return i
        return None

    def rank(self, x):
        """Position of ``[x]`` relative to ``[1]``."""
        i = self.class_of(x)
        return None if i is None else i - self.unit

    def mul(self, i, j):
        R = self.relation.ring
        return self.class_of(R._mul(self.classes[i][0], self.classes[j][0]))

    def le(self, i, j) -> bool:
        return i <= j

    def describe(self) -> dict:
        R = self.relation.ring
        return {
            "classes": [[R.to_json(x) for x in c] for c in self.classes],
            "unit": self.unit,
        }


def build_value_monoid(relation, window, report=None) -> ValueMonoid:
    window = _resolve(relation, window)
    _require_axioms(relation, window, report)
    scan = get_scan(relation, window)
    u = scan.u
    z, m1 = u.zero, u.minus_one
    if not (bool(scan.leq(z, m1)) and not bool(scan.leq(m1, z))):
        raise PreconditionError("value monoids need 0 < -1 (the valued branch)")
    nonzero = ~scan.E0
    if relation.support_is_zero() is False or (~nonzero & ~scan.is_zero_mask()).any():
        raise PreconditionError("support must be {0}")

    hit = find_cancel(scan)
    if hit is not None:
        raise InconsistencyError("cancellation fails", scan.elements_at(*hit))

    # in a total preorder, #{y : y <= x} ranks x and equal ranks mean x ~ y
    L = scan.L
    below = L.sum(axis=0)
    pos = np.flatnonzero(nonzero)
    by_rank: dict = {}
    for i in pos.tolist():
        by_rank.setdefault(int(below[i]), []).append(scan.elements_at(i)[0])
    # larger in the relation means smaller in the monoid
    classes = [tuple(by_rank[r]) for r in sorted(by_rank, reverse=True)]
    return ValueMonoid(relation, window, classes)


# --------------------------------------------------------- value group


@dataclass(frozen=True)
class Diff:
    """The formal difference ``[a] - [b]``."""

    a: object
    b: object


class FormalDifferenceGroup(OrderedAbelianGroup):
    """Pairs ``([a], [b])`` with ``([a],[b]) <= ([c],[d])`` iff ``cb <= ad``."""

    kind = "formal_difference"

    def __init__(self, monoid: ValueMonoid):
        self.monoid = monoid
        self.relation = monoid.relation
        self.ring = monoid.relation.ring

    def zero(self):
        one = self.ring.one()
        return Diff(one, one)

    def add(self, p, q):
        R = self.ring
        return Diff(R._mul(p.a, q.a), R._mul(p.b, q.b))

    def neg(self, p):
        return Diff(p.b, p.a)

    def le(self, p, q):
        R = self.ring
        return self.relation._leq(R._mul(q.a, p.b), R._mul(p.a, q.b))

    def eq(self, p, q):
        R = self.ring
        return self.relation._equiv(R._mul(p.a, q.b), R._mul(q.a, p.b))

    def contains(self, p):
        if not isinstance(p, Diff):
            return False
        z = self.ring.zero()
        rel = self.relation
        return not rel._equiv(p.a, z) and not rel._equiv(p.b, z)

    def describe(self):
        return {"kind": self.kind, "classes": len(self.monoid)}

    def to_json(self, p):
        return [self.ring.to_json(p.a), self.ring.to_json(p.b)]


def grothendieck_group(monoid: ValueMonoid):
    """Complete the monoid to its group of formal differences.

    A single class gives the trivial group.  The order is checked for
    independence of representatives and the group laws on differences of
    window classes; a failure raises :class:`InconsistencyError`.
    """
    if len(monoid) == 1:
        return TrivialGroup()
    G = FormalDifferenceGroup(monoid)
    reps = [c[0] for c in monoid.classes]
    for c in monoid.classes:
        for x in c[1:]:
            p, q = Diff(c[0], monoid.relation.ring.one()), Diff(x, monoid.relation.ring.one())
            if not G.eq(p, q):
                raise InconsistencyError("class members give different differences", (c[0], x))
            for r in reps:
                s = Diff(r, monoid.relation.ring.one())
                if G.le(p, s) != G.le(q, s) or G.le(s, p) != G.le(s, q):
                    raise InconsistencyError("order depends on the representative", (c[0], x, r))
    samples = [Diff(a, b) for a in reps[:6] for b in reps[:6]]
    failure = check_group_samples(G, samples, max_triples=12)
    if failure is not None:
        law, wit = failure
        raise InconsistencyError(f"formal differences violate {law}", wit)
    return G


class SynthesizedValuation(Valuation):
    """``w(x) = [x] - [1]``, and ``INF`` on the support."""

    kind = "synthesized"

    def __init__(self, relation, group, monoid: ValueMonoid):
        super().__init__(relation.ring, group)
        self.relation = relation
        self.monoid = monoid

    def value(self, x):
        R = self.ring
        if self.relation._equiv(x, R.zero()):
            return INF
        if isinstance(self.group, TrivialGroup):
            return 0
        return Diff(x, R.one())

    def order_keys(self, values):
        # w(y) <= w(x)  iff  x*1 <= y*1, so the relation's own keys order w
        return self.relation.int_keys(values)

    def support_is_zero(self):
        return self.relation.support_is_zero()

    def describe(self):
        R = self.ring
        return {
            "kind": "synthesized",
            "group": self.group.describe(),
            "map": [
                [R.to_json(x), self.monoid.rank(x)] for x in self.monoid.window if not R.is_zero(x)
            ],
        }
