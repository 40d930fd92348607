"""Acceptance criteria, each checked exactly and within its time budget.

Run under pytest, or directly with ``python tests/test_acceptance.py``;
either way one PASS/FAIL line is printed per criterion.
"""

import random
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE, distinct_prime_divisors, v_p  # noqa: E402

from qring.axioms import FAIL, check_axioms, lemma_suite  # noqa: E402
from qring.classifier import ORDERED, VALUED, classify, roundtrip_check  # noqa: E402
from qring.cones import PolynomialAtInfinity, StandardInteger, SubsetRelation, check_order_axioms  # noqa: E402
from qring.cones import check_translation_invariance  # noqa: E402
from qring.constructions import (  # noqa: E402
    check_fraction_extension,
    fraction_extension,
    lift_valuation,
    quotient_quasiorder,
)
from qring.gallery import builtin, builtin_names, counterexample_report, sec3_relation, sec3_window  # noqa: E402
from qring.groups import value_le  # noqa: E402
from qring.modelfinder import enumerate_prime_ideals, enumerate_quasiorders  # noqa: E402
from qring.relations import TrivialAtPrime, ValuationRelation, compute_support  # noqa: E402
from qring.rings import Ideal, Integers, Modular, Polynomial, Product  # noqa: E402
from qring.valuations import (  # noqa: E402
    MonomialValuation,
    PAdic,
    TrivialValuation,
    check_valuation_axioms,
    induce_quasiorder_from_order,
    induce_quasiorder_from_valuation,
)
from qring import windows as W  # noqa: E402

Z = Integers()


@contextmanager
def criterion(n, title, budget):
    t0 = time.perf_counter()
    ok, detail = False, ""
    try:
        yield
        elapsed = time.perf_counter() - t0
        ok = elapsed < budget
        detail = f"{elapsed:.1f} s (budget {budget} s)"
        assert ok, f"criterion {n} took {elapsed:.1f} s, budget {budget} s"
    except AssertionError as exc:
        detail = detail or f"{exc}".splitlines()[0][:80]
        raise
    finally:
        line = f"{'PASS' if ok else 'FAIL'}  {n}. {title:<44} {detail}"
        ACCEPTANCE[str(n)] = line
        print(line)


def test_1_finite_enumeration_matches_prime_ideals():
    with criterion(1, "finite enumeration vs prime ideals", 60):
        for n in range(2, 9):
            R = Modular(n)
            en = enumerate_quasiorders(R)
            assert en.exhaustive
            assert len(en.relations) == len(distinct_prime_divisors(n)), n
            primes = [frozenset(I.elements) for I in enumerate_prime_ideals(R)]
            supports = [frozenset(compute_support(r).members) for r in en.relations]
            # bijection: distinct supports, each a prime ideal, covering all primes
            assert len(set(supports)) == len(supports)
            assert set(supports) == set(primes)
            assert set(primes) == {frozenset(range(0, n, p)) for p in distinct_prime_divisors(n)}


def test_2_counterexample_reproduction():
    with criterion(2, "two-variable counterexample", 30):
        R = Polynomial(["X", "Y"])
        rel, w = sec3_relation(R), sec3_window(R)
        assert len(w) == 761
        rep = check_axioms(rel, w)
        for name in ("reflexive", "transitive", "total", "QR1", "QR2", "QR3", "QR4"):
            assert rep[name].status != FAIL, name
        assert rep["QR5"].status == FAIL
        rep = counterexample_report(w, rel)
        assert rep.ok
        X, Y = R.var("X"), R.var("Y")
        X2 = R.mul(X, X)
        assert rep.witness == (X, X2, Y)
        assert rel.strict(X, X2) and rel.strict(R.zero(), Y) and rel.equiv(R.mul(X, Y), R.mul(X2, Y))
        m1 = R.neg(R.one())
        assert rel.strict(R.zero(), m1)


def _valued_roundtrip(p):
    w = W.interval(Z, -200, 200)
    rel = induce_quasiorder_from_valuation(PAdic(p, Z))
    rep = check_axioms(rel, w)
    assert rep.ok, rep.failures()
    lem = lemma_suite(rel, w, rep)
    assert lem.ok, [k for k, r in lem.results.items() if r.failed]
    vrep = check_valuation_axioms(PAdic(p, Z), w)
    assert vrep["min_equality"].status != FAIL and vrep["support_prime"].status != FAIL
    c = classify(rel, w)
    assert c.branch == VALUED
    syn = c.synthesized
    G = syn.group
    vals = {x: syn.value(x) for x in w}
    inf = float("inf")
    oracle = {x: inf if v_p(x, p) is None else v_p(x, p) for x in w}
    for x in w:
        for y in w:
            assert value_le(G, vals[x], vals[y]) == (oracle[x] <= oracle[y]), (p, x, y)
    assert roundtrip_check(rel, c).ok


def test_3_valued_roundtrip():
    # budget is 120 s per prime
    with criterion(3, "valued round trip, p = 2, 3, 5", 360):
        for p in (2, 3, 5):
            t0 = time.perf_counter()
            _valued_roundtrip(p)
            assert time.perf_counter() - t0 < 120, p


def test_4_ordered_roundtrip():
    with criterion(4, "ordered round trip", 5):
        w = W.interval(Z, -50, 50)
        rel = StandardInteger(Z).relation()
        c = classify(rel, w)
        assert c.branch == ORDERED
        assert c.cone.window_members(w) == list(range(0, 51))
        rt = roundtrip_check(rel, c)
        assert rt.ok
        induced = c.induced_relation()
        assert all(induced.leq(x, y) == (x <= y) for x in w for y in w)
        rep = check_order_axioms(c.order, w)
        assert rep["O2"].status == rep["O2'"].status
        assert rep["O2_iff_O2'"].status != FAIL


def test_5_fraction_extension():
    with criterion(5, "fraction extension, 2-adic", 120):
        base = W.interval(Z, -20, 20)
        ext = fraction_extension(ValuationRelation(PAdic(2, Z)), base)

        def reference(p, q):
            # a/b <= c/d  iff  v(c) - v(d) <= v(a) - v(b), with v(0) = infinity
            (a, b), (c, d) = p, q
            if a == 0:
                return True
            if c == 0:
                return False
            return v_p(c, 2) - v_p(d, 2) <= v_p(a, 2) - v_p(b, 2)

        rep = check_fraction_extension(ext, base, reference=reference)
        for name in ("reflexive", "transitive", "total", "Q1", "Q2", "Q3", "well_defined", "reference"):
            assert rep[name].status != FAIL, name
        assert len(rep.window) == 41 * 40


def test_6_quotient_lift_coherence():
    with criterion(6, "quotient and lift coherence on Z/12", 1):
        R = Modular(12)
        for p in (2, 3):
            rel = TrivialAtPrime(Ideal(R, [p]))
            view = quotient_quasiorder(rel)
            Q = view.ring
            assert Q.is_field() and Q.size == p
            assert compute_support(view.quotient_relation).members == (0,)
            lifted, _ = lift_valuation(TrivialValuation(Ideal(Q, [0])), view)
            induced = ValuationRelation(lifted)
            pairs = [(x, y) for x in R.elements() for y in R.elements()]
            assert len(pairs) == 144
            assert all(induced.leq(x, y) == rel.leq(x, y) for x, y in pairs)


def test_7_roundtrips_and_induced_structures():
    with criterion(7, "round trips and induced structures", 60):
        for name in builtin_names():
            b = builtin(name)
            if name == "sec3":
                # not a quasi-order, so it must be rejected rather than round-tripped
                assert check_axioms(b.relation, b.window).failures() == ["QR5"]
                continue
            c = classify(b.relation, b.window)
            assert roundtrip_check(b.relation, c).ok, name
        for R in [Modular(n) for n in range(2, 9)] + [Product([Modular(2), Modular(3)])]:
            for rel in enumerate_quasiorders(R).relations:
                assert roundtrip_check(rel, classify(rel)).ok

        Qx, Qxy = Polynomial(["X"]), Polynomial(["X", "Y"])
        wz = W.interval(Z, -30, 30)
        wx = W.poly_window(Qx, 3, [-2, -1, 1, 2])
        wxy = W.poly_window(Qxy, 2, [-1, 1])
        orders = [
            (StandardInteger(Z), wz),
            (PolynomialAtInfinity(Qx), wx),
            (PolynomialAtInfinity(Qxy), wxy),
            (PolynomialAtInfinity(Qxy, ["Y", "X"]), wxy),
        ]
        valuations = [(PAdic(p, Z), wz) for p in (2, 3, 5, 7)] + [
            (TrivialValuation(Ideal(Z, [0])), wz),
            (TrivialValuation(Ideal(Z, [5])), wz),
            (MonomialValuation(Qx, {"X": [1]}), wx),
            (MonomialValuation(Qxy, {"X": [1, 0], "Y": [0, 1]}), wxy),
            (MonomialValuation(Qxy, {"X": [2], "Y": [3]}), wxy),
        ]
        for n in (6, 12, 30):
            Rn = Modular(n)
            valuations += [(TrivialValuation(I), W.full(Rn)) for I in enumerate_prime_ideals(Rn)]
        for o, w in orders:
            assert check_axioms(induce_quasiorder_from_order(o), w).ok, o.describe()
        for v, w in valuations:
            assert check_axioms(induce_quasiorder_from_valuation(v), w).ok, v.describe()


def test_8_translation_invariance():
    with criterion(8, "translation invariance of subset relations", 10):
        rng = random.Random(20240611)
        window = W.interval(Z, -10, 10)
        pool = list(range(-10, 11))
        for _ in range(100):
            T = {t for t in pool if rng.random() < 0.5}
            rel = SubsetRelation(Z, T)
            assert check_translation_invariance(rel, window) is None, sorted(T)
            for x in pool:
                for y in pool:
                    if rel.leq(x, y):
                        assert all(rel.leq(x + z, y + z) for z in pool)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
