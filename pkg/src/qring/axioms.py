"""Quasi-ordered ring axioms, support primality and the derived lemmas.

Every check scans window tuples in window order (first index outermost)
and reports the first violation it meets, so witnesses are deterministic.
Sums and products are evaluated exactly even when they leave the window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import InvalidWindow, StructuralError
from .scan import Scan, get_scan
from . import windows as W

PASS = "pass"
PASS_ON_WINDOW = "pass-on-window"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"

AXIOMS = ("reflexive", "transitive", "total", "QR1", "QR2", "QR3", "QR4", "QR5")


@dataclass
class AxiomResult:
    status: str
    witness: tuple | None = None
    note: str | None = None

    @property
    def failed(self) -> bool:
        return self.status == FAIL


@dataclass
class AxiomReport:
    ring: object
    window: W.Window
    results: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(r.failed for r in self.results.values())

    def failures(self) -> list[str]:
        return [name for name, r in self.results.items() if r.failed]

    def __getitem__(self, name) -> AxiomResult:
        return self.results[name]

    def to_json(self) -> dict:
        out = {}
        for name, r in self.results.items():
            d = {"status": r.status}
            if r.witness is not None:
                d["witness"] = [self.ring.to_json(x) for x in r.witness]
            if r.note:
                d["note"] = r.note
            out[name] = d
        return {"window": self.window.describe(), "exhaustive": self.window.exhaustive, "results": out}


def _resolve(relation, window):
    if window is None:
        window = W.default_window(relation.ring)
    if window.ring != relation.ring:
        raise StructuralError("window and relation live in different rings")
    if len(window) < 2:
        raise InvalidWindow("window too small")
    return window


def _result(scan: Scan, hit) -> AxiomResult:
    if hit is None:
        return AxiomResult(PASS if scan.window.exhaustive else PASS_ON_WINDOW)
    return AxiomResult(FAIL, scan.elements_at(*hit))


# ------------------------------------------------------ individual checks
# Each returns window positions of the first violation, or None.


def find_irreflexive(scan: Scan):
    bad = np.flatnonzero(~scan.L.diagonal())
    return (int(bad[0]),) if len(bad) else None


def find_nontotal(scan: Scan):
    return scan.first_pair(~(scan.L | scan.L.T))


def find_intransitive(scan: Scan):
    L = scan.L
    Lf = L.astype(np.float32)
    reach = (Lf @ Lf) > 0
    rows = np.flatnonzero((reach & ~L).any(axis=1))
    if not len(rows):
        return None
    i = int(rows[0])
    v = L[i][:, None] & L & ~L[i][None, :]
    j, k = scan.first_pair(v)
    return i, j, k


def qr1_holds(scan: Scan) -> bool:
    z, o = scan.u.zero, scan.u.one
    return bool(scan.leq(z, o)) and not bool(scan.leq(o, z))


def find_qr2(scan: Scan):
    """xy <= 0 implies x <= 0 or y <= 0; pairs whose product is in the window."""
    P = scan.u.P
    inw = scan.u.in_window()[P]
    prod_le0 = scan.leq(P, scan.u.zero, where=inw)
    ge0 = scan.ge0
    return scan.first_pair(inw & prod_le0 & ~ge0[:, None] & ~ge0[None, :])


def find_o2prime(scan: Scan):
    """xy ~ 0 implies x ~ 0 or y ~ 0; pairs whose product is in the window."""
    P = scan.u.P
    inw = scan.u.in_window()[P]
    prod_e0 = scan.equiv(P, scan.u.zero, where=inw)
    E0 = scan.E0
    return scan.first_pair(inw & prod_e0 & ~E0[:, None] & ~E0[None, :])


def find_mult_monotone(scan: Scan):
    """x <= y and 0 <= z imply xz <= yz."""
    L, le0, P = scan.L, scan.le0, scan.u.P

    def block(lo, hi):
        pre = L[lo:hi, :, None] & le0[None, None, :]
        ok = scan.leq(P[lo:hi, None, :], P[None, :, :], where=pre)
        return pre & ~ok

    return scan.first_triple(block)


def find_additive(scan: Scan, guarded: bool):
    """x <= y imply x+z <= y+z; with ``guarded`` only when z is not ~ y."""
    L, S = scan.L, scan.u.S
    notE_yz = ~scan.E  # [j, k]: y_j not ~ z_k

    def block(lo, hi):
        pre = L[lo:hi, :, None]
        if guarded:
            pre = pre & notE_yz[None, :, :]
        else:
            pre = np.broadcast_to(pre, (hi - lo, scan.n, scan.n))
        ok = scan.leq(S[lo:hi, None, :], S[None, :, :], where=pre)
        return pre & ~ok

    return scan.first_triple(block)


def find_qr5(scan: Scan):
    """0 < z and xz <= yz imply x <= y."""
    L, gt0, P = scan.L, scan.gt0, scan.u.P

    def block(lo, hi):
        pre = gt0[None, None, :] & ~L[lo:hi, :, None]
        hit = scan.leq(P[lo:hi, None, :], P[None, :, :], where=pre)
        return pre & hit

    return scan.first_triple(block)


def find_cancel(scan: Scan):
    """z not ~ 0 and xz ~ yz imply x ~ y."""
    E, E0, P = scan.E, scan.E0, scan.u.P

    def block(lo, hi):
        pre = ~E0[None, None, :] & ~E[lo:hi, :, None]
        a, b = P[lo:hi, None, :], P[None, :, :]
        hit = scan.leq(a, b, where=pre) & scan.leq(b, a, where=pre)
        return pre & hit

    return scan.first_triple(block)


def find_lem1(scan: Scan):
    """x not ~ 0 and y ~ 0 imply x + y ~ x."""
    E0, S, w = scan.E0, scan.u.S, scan.w
    pre = ~E0[:, None] & E0[None, :]
    x = np.broadcast_to(w[:, None], S.shape)
    ok = scan.equiv(S, x, where=pre)
    return scan.first_pair(pre & ~ok)


def find_square_negative(scan: Scan):
    """0 <= x^2."""
    diag = scan.u.P.diagonal()
    ok = scan.leq(np.full(scan.n, scan.u.zero), diag)
    bad = np.flatnonzero(~ok)
    return (int(bad[0]),) if len(bad) else None


def find_nonzero_in_support(scan: Scan):
    bad = np.flatnonzero(scan.E0 & ~scan.is_zero_mask())
    return (int(bad[0]),) if len(bad) else None


class PrimeVerdict(NamedTuple):
    ok: bool
    witness: tuple | None
    reason: str | None


def prime_on_window(scan: Scan, member_w: np.ndarray, member_u) -> PrimeVerdict:
    """Ideal and primality tests for a set given by window and universe membership.

    ``member_w`` flags window positions; ``member_u(idx, where)`` evaluates
    membership for universe indices (sums and products are exact).
    """
    S, P = scan.u.S, scan.u.P
    pre = member_w[:, None] & member_w[None, :]
    hit = scan.first_pair(pre & ~member_u(S, pre))
    if hit:
        return PrimeVerdict(False, scan.elements_at(*hit), "not closed under addition")
    pre = np.broadcast_to(member_w[:, None], P.shape)
    hit = scan.first_pair(pre & ~member_u(P, pre))
    if hit:
        return PrimeVerdict(False, scan.elements_at(*hit), "not closed under multiplication by ring elements")
    if bool(member_u(np.array(scan.u.one), None)):
        return PrimeVerdict(False, (scan.ring.one(),), "contains 1")
    pre = ~member_w[:, None] & ~member_w[None, :]
    hit = scan.first_pair(pre & member_u(P, pre))
    if hit:
        return PrimeVerdict(False, scan.elements_at(*hit), "not prime")
    return PrimeVerdict(True, None, None)


def check_support_prime(relation, window=None) -> PrimeVerdict:
    """Is the support (class of 0) a prime ideal, as far as the window shows?"""
    window = _resolve(relation, window)
    scan = get_scan(relation, window)
    z = scan.u.zero

    def member_u(idx, where):
        return scan.equiv(idx, z, where=where)

    return prime_on_window(scan, scan.E0, member_u)


# --------------------------------------------------------------- reports


def check_axioms(relation, window=None) -> AxiomReport:
    window = _resolve(relation, window)
    scan = get_scan(relation, window)
    rep = AxiomReport(relation.ring, window)
    res = rep.results
    res["reflexive"] = _result(scan, find_irreflexive(scan))
    res["transitive"] = _result(scan, find_intransitive(scan))
    res["total"] = _result(scan, find_nontotal(scan))
    one = relation.ring.one()
    res["QR1"] = _result(scan, None) if qr1_holds(scan) else AxiomResult(FAIL, (relation.ring.zero(), one))
    res["QR2"] = _result(scan, find_qr2(scan))
    res["QR3"] = _result(scan, find_mult_monotone(scan))
    res["QR4"] = _result(scan, find_additive(scan, guarded=True))
    res["QR5"] = _result(scan, find_qr5(scan))
    return rep


@dataclass
class LemmaReport:
    ring: object
    window: W.Window
    results: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(r.failed for r in self.results.values())

    def __getitem__(self, name) -> AxiomResult:
        return self.results[name]

    def to_json(self) -> dict:
        return AxiomReport.to_json(self)["results"]


def lemma_suite(relation, window=None, axiom_report: AxiomReport | None = None) -> LemmaReport:
    """Consequences of the axioms, checked on the window.

    ``lem1``: x not~0, y~0 => x+y ~ x.  ``cancel``: z not~0, xz~yz => x~y.
    ``squares``: 0 <= x^2.  ``qr5_implies_qr2``: no QR2 violation when QR5
    holds.  ``field``: on fields the support is {0} and Q1-Q3 hold.
    ``support_prime``: the support is a prime ideal.
    """
    window = _resolve(relation, window)
    scan = get_scan(relation, window)
    if axiom_report is None:
        axiom_report = check_axioms(relation, window)
    rep = LemmaReport(relation.ring, window)
    res = rep.results
    res["lem1"] = _result(scan, find_lem1(scan))
    res["cancel"] = _result(scan, find_cancel(scan))
    res["squares"] = _result(scan, find_square_negative(scan))

    qr2, qr5 = axiom_report["QR2"], axiom_report["QR5"]
    if not qr5.failed and qr2.failed:
        res["qr5_implies_qr2"] = AxiomResult(FAIL, qr2.witness, "QR2 fails while QR5 holds")
    else:
        res["qr5_implies_qr2"] = _result(scan, None)

    if relation.ring.is_field():
        hit = find_nonzero_in_support(scan)
        if hit is not None:
            res["field"] = AxiomResult(FAIL, scan.elements_at(*hit), "support is not {0}")
        else:
            q2, q3 = axiom_report["QR3"], axiom_report["QR4"]
            bad = q2 if q2.failed else q3 if q3.failed else None
            res["field"] = (
                AxiomResult(FAIL, bad.witness, "Q2/Q3 violated") if bad else _result(scan, None)
            )
    else:
        res["field"] = AxiomResult(NOT_APPLICABLE)

    verdict = check_support_prime(relation, window)
    res["support_prime"] = (
        _result(scan, None) if verdict.ok else AxiomResult(FAIL, verdict.witness, verdict.reason)
    )
    return rep


def reverify(relation, axiom: str, witness) -> bool:
    """True when ``witness`` really violates ``axiom`` under ``relation``.

    Evaluates the comparator directly, independent of the scan engine.
    """
    R, le = relation.ring, relation._leq
    z, one = R.zero(), R.one()
    eq = relation._equiv
    if axiom == "reflexive":
        (x,) = witness
        return not le(x, x)
    if axiom == "total":
        x, y = witness
        return not le(x, y) and not le(y, x)
    if axiom == "transitive":
        x, y, w = witness
        return le(x, y) and le(y, w) and not le(x, w)
    if axiom == "QR1":
        return not (le(z, one) and not le(one, z))
    if axiom == "QR2":
        x, y = witness
        return le(R._mul(x, y), z) and not le(x, z) and not le(y, z)
    if axiom == "QR3":
        x, y, w = witness
        return le(x, y) and le(z, w) and not le(R._mul(x, w), R._mul(y, w))
    if axiom == "QR4":
        x, y, w = witness
        return le(x, y) and not eq(w, y) and not le(R._add(x, w), R._add(y, w))
    if axiom == "QR5":
        x, y, w = witness
        return le(z, w) and not le(w, z) and le(R._mul(x, w), R._mul(y, w)) and not le(x, y)
    if axiom == "cancel":
        x, y, w = witness
        return not eq(w, z) and eq(R._mul(x, w), R._mul(y, w)) and not eq(x, y)
    if axiom == "lem1":
        x, y = witness
        return not eq(x, z) and eq(y, z) and not eq(R._add(x, y), x)
    if axiom == "squares":
        (x,) = witness
        return not le(z, R._mul(x, x))
    raise ValueError(f"no re-verification rule for {axiom!r}")
