import pytest

from qring.axioms import FAIL, check_axioms, lemma_suite, reverify
from qring.errors import StructuralError, UnknownBuiltin
from qring.gallery import CounterexampleRelation, builtin, builtin_names, counterexample_report, sec3_relation, sec3_window
from qring.rings import Polynomial


@pytest.fixture(scope="module")
def sec3():
    R = Polynomial(["X", "Y"])
    rel = sec3_relation(R)
    w = sec3_window(R)
    return R, rel, w, check_axioms(rel, w)


def test_sec3_window_is_degree_three(sec3):
    R, _, w, _ = sec3
    assert len(w) == 761
    assert max(R.degree(f) for f in w if f) == 3


def test_sec3_fails_only_qr5(sec3):
    R, rel, w, rep = sec3
    assert rep.failures() == ["QR5"]
    # the first witness in scan order: 0 < Y and Y*Y ~ 1*Y but Y is not <= 1
    Y = R.var("Y")
    assert rep["QR5"].witness == (Y, R.one(), Y)
    assert reverify(rel, "QR5", rep["QR5"].witness)


def test_sec3_lemmas(sec3):
    R, rel, w, rep = sec3
    lem = lemma_suite(rel, w, rep)
    assert lem["cancel"].status == FAIL
    assert reverify(rel, "cancel", lem["cancel"].witness)
    assert lem["lem1"].status != FAIL and lem["squares"].status != FAIL
    assert lem["support_prime"].status != FAIL


def test_counterexample_reproduction(sec3):
    R, rel, w, _ = sec3
    rep = counterexample_report(w, rel)
    assert rep.ok
    assert all(not r.failed for r in rep.checks.values())
    assert rep.minus_one_positive and rep.qr5.failed
    X, Y = R.var("X"), R.var("Y")
    assert rep.witness == (X, R.mul(X, X), Y)
    assert rep.witness_holds == {"X < X^2": True, "0 < Y": True, "XY ~ X^2Y": True}
    # the same triple read as (X^2, X, Y) is a literal cancellation failure
    assert reverify(rel, "QR5", (R.mul(X, X), X, Y))


def test_sec3_chain():
    R = Polynomial(["X", "Y"])
    rel = sec3_relation(R)
    X, Y = R.var("X"), R.var("Y")
    X2 = R.mul(X, X)
    chain = [R.zero(), R.one(), X, X2, Y]
    for a, b in zip(chain, chain[1:]):
        assert rel.strict(a, b)
    assert rel.leq(X2, Y)
    assert rel.equiv(Y, R.mul(X, Y))
    # coefficients are ignored, and a Y-term dominates any power of X
    assert rel.equiv(R.sub(Y, R.mul(X, Y)), Y)
    assert rel.strict(R.monomial((5, 0), 3), R.neg(Y))


def test_sec3_needs_two_variables():
    with pytest.raises(StructuralError):
        CounterexampleRelation(Polynomial(["X"]))


def test_registry():
    names = builtin_names()
    assert names[:7] == ["z_standard", "z_padic_2", "z_padic_3", "z_padic_5", "poly_at_infinity", "poly_x_adic", "sec3"]
    assert builtin("zmod_trivial_30_5").ring.size == 30
    with pytest.raises(UnknownBuiltin):
        builtin("zmod_trivial_12_5")
    with pytest.raises(UnknownBuiltin):
        builtin("nonsense")


@pytest.mark.parametrize("name", [n for n in builtin_names() if n != "sec3"])
def test_builtins_pass_axioms(name):
    b = builtin(name)
    assert check_axioms(b.relation, b.window).ok
