"""Named structures: the two-variable counterexample and the builtin registry."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .axioms import (
    FAIL,
    AxiomResult,
    _result,
    find_additive,
    find_intransitive,
    find_irreflexive,
    find_mult_monotone,
    find_nontotal,
    find_qr2,
    find_qr5,
    qr1_holds,
)
from .cones import StandardInteger
from .errors import StructuralError, UnknownBuiltin
from .relations import QuasiOrder, TrivialAtPrime, ValuationRelation
from .rings import Ideal, Integers, Modular, Polynomial
from .scan import get_scan
from .valuations import MonomialValuation, PAdic, _is_prime_number
from . import windows as W

COUNTEREXAMPLE_COEFFS = (-2, -1, 1, 2)


class CounterexampleRelation(QuasiOrder):
    """Compare polynomials by the largest monomial class they contain.

    Monomial classes, from small to large: ``0``, then ``X^i`` for
    ``i = 0, 1, 2, ...``, then one class for every monomial with a positive
    power of ``Y``.  Coefficients are ignored.
    """

    kind = "counterexample_sec3"
    has_sort_key = True

    def __init__(self, ring: Polynomial):
        if not isinstance(ring, Polynomial) or ring.nvars != 2:
            raise StructuralError("the counterexample relation needs exactly two variables")
        super().__init__(ring)

    @staticmethod
    def monomial_class(e):
        i, j = e
        return (2, 0) if j > 0 else (1, i)

    def sort_key(self, f):
        if not f:
            return (0, 0)
        return max(self.monomial_class(e) for e, _ in f)

    def _leq(self, f, g):
        return self.sort_key(f) <= self.sort_key(g)

    def support_is_zero(self):
        return True


def sec3_relation(ring: Polynomial | None = None) -> CounterexampleRelation:
    return CounterexampleRelation(ring or Polynomial(["X", "Y"]))


def sec3_window(ring: Polynomial, max_degree: int = 3, coeffs=COUNTEREXAMPLE_COEFFS) -> W.Window:
    return W.poly_window(ring, max_degree, coeffs)


@dataclass
class CounterexampleReport:
    checks: dict
    minus_one_positive: bool
    qr5: AxiomResult
    witness: tuple
    witness_holds: dict

    @property
    def ok(self) -> bool:
        return (
            all(not r.failed for r in self.checks.values())
            and self.minus_one_positive
            and self.qr5.failed
            and all(self.witness_holds.values())
        )

    def to_json(self, ring) -> dict:
        checks = {}
        for k, r in self.checks.items():
            checks[k] = {"status": r.status}
            if r.witness is not None:
                checks[k]["witness"] = [ring.to_json(x) for x in r.witness]
        return {
            "checks": checks,
            "zero_below_minus_one": self.minus_one_positive,
            "QR5": {"status": self.qr5.status, "first_witness": [ring.to_json(x) for x in self.qr5.witness or ()]},
            "witness": [ring.to_json(x) for x in self.witness],
            "witness_facts": self.witness_holds,
            "reproduced": self.ok,
        }


def counterexample_report(window: W.Window | None = None, relation: CounterexampleRelation | None = None) -> CounterexampleReport:
    """The counterexample passes the order-like axioms yet fails cancellation.

    ``witness`` is ``(X, X^2, Y)``: ``X < X^2`` and ``0 < Y`` but
    ``XY ~ X^2 Y``.  Passing the ``relation`` already scanned on ``window``
    reuses that scan.
    """
    ring = window.ring if window is not None else Polynomial(["X", "Y"])
    window = window or sec3_window(ring)
    rel = relation if relation is not None else CounterexampleRelation(ring)
    scan = get_scan(rel, window)
    R = ring
    checks = {
        "reflexive": _result(scan, find_irreflexive(scan)),
        "transitive": _result(scan, find_intransitive(scan)),
        "total": _result(scan, find_nontotal(scan)),
        "O1": _result(scan, None) if qr1_holds(scan) else AxiomResult(FAIL, (R.zero(), R.one())),
        "O2": _result(scan, find_qr2(scan)),
        "O3": _result(scan, find_mult_monotone(scan)),
        "Q3": _result(scan, find_additive(scan, guarded=True)),
    }
    m1 = R._neg(R.one())
    minus_one_positive = rel._leq(R.zero(), m1) and not rel._leq(m1, R.zero())
    qr5 = _result(scan, find_qr5(scan))
    X, Y = R.var(R.variables[0]), R.var(R.variables[1])
    X2 = R._mul(X, X)
    facts = {
        "X < X^2": rel.strict(X, X2),
        "0 < Y": rel.strict(R.zero(), Y),
        "XY ~ X^2Y": rel.equiv(R._mul(X, Y), R._mul(X2, Y)),
    }
    return CounterexampleReport(checks, minus_one_positive, qr5, (X, X2, Y), facts)


# ----------------------------------------------------------------- registry


@dataclass
class Builtin:
    name: str
    ring: object
    relation: object
    window: W.Window
    description: str


def _z_standard():
    Z = Integers()
    return Z, StandardInteger(Z).relation(), W.interval(Z, -20, 20), "integers with the usual order"


def _z_padic(p, bound):
    def make():
        Z = Integers()
        return Z, ValuationRelation(PAdic(p, Z)), W.interval(Z, -bound, bound), f"integers with the {p}-adic valuation"

    return make


def _poly_at_infinity():
    from .cones import PolynomialAtInfinity

    Q = Polynomial(["X"])
    return Q, PolynomialAtInfinity(Q).relation(), W.poly_window(Q, 2, COUNTEREXAMPLE_COEFFS), "Q[X] ordered by leading coefficient"


def _poly_x_adic():
    Q = Polynomial(["X"])
    v = MonomialValuation(Q, {"X": [1]})
    return Q, ValuationRelation(v), W.poly_window(Q, 3, COUNTEREXAMPLE_COEFFS), "Q[X] with the X-adic valuation"


def _sec3():
    Q = Polynomial(["X", "Y"])
    return Q, CounterexampleRelation(Q), sec3_window(Q), "the counterexample relation on Q[X,Y]"


_FIXED = {
    "z_standard": _z_standard,
    "z_padic_2": _z_padic(2, 64),
    "z_padic_3": _z_padic(3, 81),
    "z_padic_5": _z_padic(5, 125),
    "poly_at_infinity": _poly_at_infinity,
    "poly_x_adic": _poly_x_adic,
    "sec3": _sec3,
}

# listed examples of the zmod_trivial_<n>_<p> family
ZMOD_EXAMPLES = ("zmod_trivial_6_2", "zmod_trivial_6_3", "zmod_trivial_12_2", "zmod_trivial_12_3")

_ZMOD = re.compile(r"zmod_trivial_(\d+)_(\d+)")


def builtin_names() -> list[str]:
    return [*_FIXED, *ZMOD_EXAMPLES]


def builtin(name: str) -> Builtin:
    make = _FIXED.get(name)
    if make is not None:
        ring, rel, window, desc = make()
        return Builtin(name, ring, rel, window, desc)
    m = _ZMOD.fullmatch(name)
    if m:
        n, p = int(m.group(1)), int(m.group(2))
        if n >= 2 and _is_prime_number(p) and n % p == 0:
            R = Modular(n)
            rel = TrivialAtPrime(Ideal(R, [p % n]))
            return Builtin(name, R, rel, W.full(R), f"Z/{n} with the trivial quasi-order at ({p})")
        raise UnknownBuiltin(f"{name}: need n >= 2 and a prime p dividing n")
    raise UnknownBuiltin(
        f"unknown builtin {name!r}; available: {', '.join(builtin_names())} (and zmod_trivial_<n>_<p>)"
    )
