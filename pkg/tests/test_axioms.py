import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qring.axioms import FAIL, PASS, check_axioms, check_support_prime, lemma_suite, reverify
from qring.errors import InvalidWindow, PreconditionError, StructuralError
from qring.relations import MatrixRelation, TrivialAtPrime, ValuationRelation, compute_support
from qring.rings import Ideal, Integers, Modular, Product
from qring.valuations import PAdic
from qring import windows as W


def oracle(R, le):
    """First violation of each axiom by direct nested loops, or None."""
    els = R.elements()
    z, o = R.zero(), R.one()
    eq = lambda a, b: le(a, b) and le(b, a)
    out = {}

    def first(cond, arity):
        for t in itertools.product(els, repeat=arity):
            if cond(*t):
                return t
        return None

    out["transitive"] = first(lambda x, y, w: le(x, y) and le(y, w) and not le(x, w), 3)
    out["QR1"] = None if le(z, o) and not le(o, z) else (z, o)
    out["QR2"] = first(lambda x, y: le(R.mul(x, y), z) and not le(x, z) and not le(y, z), 2)
    out["QR3"] = first(lambda x, y, w: le(x, y) and le(z, w) and not le(R.mul(x, w), R.mul(y, w)), 3)
    out["QR4"] = first(lambda x, y, w: le(x, y) and not eq(w, y) and not le(R.add(x, w), R.add(y, w)), 3)
    out["QR5"] = first(
        lambda x, y, w: le(z, w) and not le(w, z) and le(R.mul(x, w), R.mul(y, w)) and not le(x, y), 3
    )
    return out


def complete_relations(R):
    """Every reflexive total relation on a small finite ring."""
    n = R.size
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for choice in itertools.product(range(3), repeat=len(pairs)):
        m = np.eye(n, dtype=bool)
        for (i, j), c in zip(pairs, choice):
            m[i, j] = c != 1
            m[j, i] = c != 0
        yield m


@pytest.mark.parametrize("R", [Modular(3), Modular(4), Product([Modular(2), Modular(2)])], ids=repr)
def test_engine_matches_nested_loop_oracle(R):
    checked = 0
    for m in complete_relations(R):
        rel = MatrixRelation(R, m)
        rep = check_axioms(rel)
        expect = oracle(R, rel._leq)
        for name, wit in expect.items():
            r = rep[name]
            assert (r.status == FAIL) == (wit is not None), (name, m.astype(int).tolist())
            if wit is not None:
                assert r.witness == wit, name
                assert reverify(rel, name, r.witness)
        checked += 1
    assert checked == 3 ** (R.size * (R.size - 1) // 2)


def _random_complete(n, data):
    m = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            c = data.draw(st.integers(0, 2))
            m[i, j] = c != 1
            m[j, i] = c != 0
    return m


@given(st.integers(2, 7), st.data())
def test_every_reported_witness_reverifies(n, data):
    R = Modular(n)
    rel = MatrixRelation(R, _random_complete(n, data))
    rep = check_axioms(rel)
    for name, r in rep.results.items():
        if r.status == FAIL and name != "QR1":
            assert reverify(rel, name, r.witness), name
    lem = lemma_suite(rel, axiom_report=rep)
    for name in ("lem1", "cancel", "squares"):
        if lem[name].status == FAIL:
            assert reverify(rel, name, lem[name].witness)


@given(st.integers(2, 6), st.data())
def test_reports_do_not_depend_on_worker_count(n, data):
    import os

    R = Modular(n)
    m = _random_complete(n, data)
    reports = []
    for workers in ("1", "3"):
        os.environ["QRING_WORKERS"] = workers
        try:
            reports.append(check_axioms(MatrixRelation(R, m)).to_json())
        finally:
            del os.environ["QRING_WORKERS"]
    assert reports[0] == reports[1]


def test_trivial_quasiorder_on_zmod12_at_3_passes_everything():
    R = Modular(12)
    rel = TrivialAtPrime(Ideal(R, [3]))
    rep = check_axioms(rel)
    assert rep.ok and all(r.status == PASS for r in rep.results.values())
    assert lemma_suite(rel).ok
    assert compute_support(rel).members == (0, 3, 6, 9)


def test_trivial_pattern_at_non_prime_ideal_fails_qr2():
    R = Modular(12)
    with pytest.raises(PreconditionError):
        TrivialAtPrime(Ideal(R, [4]))
    inside = [x % 4 == 0 for x in R.elements()]
    m = [[a or not b for b in inside] for a in inside]
    rel = MatrixRelation(R, m)
    rep = check_axioms(rel)
    assert rep["QR2"].status == FAIL
    x, y = rep["QR2"].witness
    assert (x * y) % 4 == 0 and x % 4 and y % 4
    assert not check_support_prime(rel).ok


def test_padic_relation_on_window():
    Z = Integers()
    rel = ValuationRelation(PAdic(3, Z))
    rep = check_axioms(rel, W.interval(Z, -27, 27))
    assert rep.ok and rep["QR5"].status == "pass-on-window"


def test_matrix_relation_rejects_non_total_input():
    with pytest.raises(StructuralError, match="total"):
        MatrixRelation(Modular(2), [[1, 0], [0, 1]])


def test_single_element_window_is_too_small():
    with pytest.raises(InvalidWindow):
        check_axioms(ValuationRelation(PAdic(2)), W.Window(Integers(), "elements", [0]))


def test_window_must_belong_to_the_ring():
    with pytest.raises(StructuralError):
        check_axioms(ValuationRelation(PAdic(2)), W.full(Modular(3)))
