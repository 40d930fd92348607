"""Finite windows: the element universes on which quantified axioms are scanned."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import InvalidWindow, StructuralError
from .rings import Integers, Polynomial, Ring, _norm_coeff


class Window:
    """An ordered, duplicate-free, negation-closed finite set of ring elements.

    ``exhaustive`` is true only when the window is the whole of a finite
    ring, which is what lets a check report ``pass`` instead of
    ``pass-on-window``.
    """

    def __init__(self, ring: Ring, kind: str, elements, params=None, exhaustive=False):
        self.ring = ring
        self.kind = kind
        self.elements = tuple(elements)
        self.params = dict(params or {})
        self.exhaustive = exhaustive
        validate_window(ring, self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"Window({self.kind}, {len(self)} elements)"

    def describe(self) -> dict:
        d = {"kind": self.kind, **self.params}
        if self.kind == "elements":
            d["elements"] = [self.ring.to_json(x) for x in self.elements]
        return d


def validate_window(ring: Ring, elements) -> None:
    seen = set()
    for x in elements:
        try:
            ring.check(x)
        except StructuralError as exc:
            raise InvalidWindow(f"window element outside the ring: {exc}") from None
        if x in seen:
            raise InvalidWindow(f"duplicate window element {ring.format(x)}")
        seen.add(x)
    for name, x in [("0", ring.zero()), ("1", ring.one()), ("-1", ring._neg(ring.one()))]:
        if x not in seen:
            raise InvalidWindow(f"window must contain {name}")
    for x in elements:
        if ring._neg(x) not in seen:
            raise InvalidWindow(f"window not closed under negation: missing -({ring.format(x)})")


def full(ring: Ring) -> Window:
    return Window(ring, "all", ring.elements(), exhaustive=True)


def interval(ring: Ring, lo: int, hi: int) -> Window:
    if not isinstance(ring, Integers):
        raise InvalidWindow("interval windows apply to the integers only")
    if lo > hi:
        raise InvalidWindow(f"empty interval [{lo}, {hi}]")
    return Window(ring, "interval", range(lo, hi + 1), {"lo": lo, "hi": hi})


def poly_window(ring: Ring, max_degree: int, coeffs, max_terms: int = 2) -> Window:
    """Polynomials with at most ``max_terms`` terms of total degree <= ``max_degree``.

    Coefficients are drawn from ``coeffs``.  Ordered by term count, then
    by graded-lex position of the monomials, then by coefficient
    (``1, -1, 2, -2, ...``).
    """
    if not isinstance(ring, Polynomial):
        raise InvalidWindow("poly windows apply to polynomial rings only")
    if max_degree < 0 or max_terms < 1:
        raise InvalidWindow("max_degree must be >= 0 and max_terms >= 1")
    coeffs = sorted({_norm_coeff(Fraction(c)) for c in coeffs}, key=lambda c: (abs(c), c < 0))
    if 0 in coeffs:
        raise InvalidWindow("coefficient samples must be nonzero")
    monos = sorted(
        (e for e in itertools.product(range(max_degree + 1), repeat=ring.nvars) if sum(e) <= max_degree),
        key=lambda e: (sum(e), e),
    )
    els = [ring.zero()]
    for k in range(1, max_terms + 1):
        for chosen in itertools.combinations(monos, k):
            for cs in itertools.product(coeffs, repeat=k):
                d = dict(zip(chosen, cs))
                els.append(ring._from_dict(d))
    params = {"max_degree": max_degree, "coeffs": [_json_num(c) for c in coeffs]}
    if max_terms != 2:
        params["max_terms"] = max_terms
    return Window(ring, "poly", els, params)


def explicit(ring: Ring, elements) -> Window:
    elements = list(elements)
    exhaustive = ring.is_finite and len(set(elements)) == len(ring.elements())
    return Window(ring, "elements", elements, exhaustive=exhaustive)


def default_window(ring: Ring) -> Window:
    if ring.is_finite:
        return full(ring)
    raise InvalidWindow(f"{ring!r} is infinite; a window is required")


def _json_num(c):
    return c if isinstance(c, int) else str(c)
