"""Structure files: JSON descriptions of a ring, a relation and a window."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .cones import ConeOrder, MatrixOrder, PolynomialAtInfinity, PositiveCone, StandardInteger
from .errors import QRingError, StructureFileError
from .gallery import CounterexampleRelation
from .relations import MatrixRelation, TrivialAtPrime, ValuationRelation
from .rings import Ideal, Integers, Modular, Polynomial, Product, TableRing
from .valuations import MonomialValuation, PAdic, TableValuation, TrivialValuation
from . import windows as W


@dataclass
class Structure:
    ring: object
    relation: object
    window: W.Window

    def describe(self) -> dict:
        return {
            "ring": self.ring.describe(),
            "relation": self.relation.describe(),
            "window": self.window.describe(),
        }


def _obj(d, where, required=(), optional=()):
    if not isinstance(d, dict):
        raise StructureFileError("expected an object", where)
    allowed = set(required) | set(optional)
    for k in d:
        if k not in allowed:
            raise StructureFileError(f"unknown key {k!r}", where)
    for k in required:
        if k not in d:
            raise StructureFileError(f"missing key {k!r}", where)
    return d


def _kind(d, where, kinds):
    if not isinstance(d, dict) or "kind" not in d:
        raise StructureFileError("expected an object with a 'kind'", where)
    k = d["kind"]
    if k not in kinds:
        raise StructureFileError(f"unknown kind {k!r}; expected one of {', '.join(kinds)}", where)
    return k


def _int(v, where, lo=None):
    if not isinstance(v, int) or isinstance(v, bool) or (lo is not None and v < lo):
        bound = f" >= {lo}" if lo is not None else ""
        raise StructureFileError(f"expected an integer{bound}, got {v!r}", where)
    return v


def _list(v, where):
    if not isinstance(v, list):
        raise StructureFileError(f"expected a list, got {type(v).__name__}", where)
    return v


def _wrap(fn, where):
    try:
        return fn()
    except StructureFileError:
        raise
    except (QRingError, ValueError, TypeError, IndexError) as exc:
        raise StructureFileError(str(exc), where) from None


def parse_ring(d, where="ring"):
    k = _kind(d, where, ("modular", "product", "integers", "polynomial", "table"))
    if k == "modular":
        _obj(d, where, ("kind", "n"))
        return Modular(_int(d["n"], f"{where}.n", 2))
    if k == "product":
        _obj(d, where, ("kind", "factors"))
        fs = _list(d["factors"], f"{where}.factors")
        if not fs:
            raise StructureFileError("a product needs at least one factor", f"{where}.factors")
        factors = [parse_ring(f, f"{where}.factors[{i}]") for i, f in enumerate(fs)]
        return _wrap(lambda: Product(factors), where)
    if k == "integers":
        _obj(d, where, ("kind",))
        return Integers()
    if k == "polynomial":
        _obj(d, where, ("kind", "vars"))
        names = _list(d["vars"], f"{where}.vars")
        return _wrap(lambda: Polynomial(names), where)
    _obj(d, where, ("kind", "add", "mul"), ("zero", "one"))
    return _wrap(lambda: TableRing(d["add"], d["mul"], d.get("zero"), d.get("one")), where)


def _elements(ring, values, where):
    out = []
    for i, v in enumerate(_list(values, where)):
        out.append(_wrap(lambda v=v: ring.from_json(v), f"{where}[{i}]"))
    return out


def _ideal(ring, gens, where):
    elements = _elements(ring, gens, where)
    return _wrap(lambda: Ideal(ring, elements), where)


def parse_valuation(ring, d, where):
    k = _kind(d, where, ("padic", "monomial", "trivial", "table"))
    if k == "padic":
        _obj(d, where, ("kind", "p"))
        if not isinstance(ring, Integers):
            raise StructureFileError("p-adic valuations need the integers", where)
        return _wrap(lambda: PAdic(_int(d["p"], f"{where}.p", 2), ring), where)
    if k == "monomial":
        _obj(d, where, ("kind", "weights"))
        return _wrap(lambda: MonomialValuation(ring, d["weights"]), where)
    if k == "trivial":
        _obj(d, where, ("kind", "generators"))
        ideal = _ideal(ring, d["generators"], f"{where}.generators")
        return _wrap(lambda: TrivialValuation(ideal), where)
    _obj(d, where, ("kind", "values"))
    return _wrap(lambda: TableValuation(ring, d["values"]), where)


def parse_order(ring, d, where):
    k = _kind(d, where, ("standard", "poly_at_infinity", "cone", "matrix"))
    if k == "standard":
        _obj(d, where, ("kind",))
        return _wrap(lambda: StandardInteger(ring), where)
    if k == "poly_at_infinity":
        _obj(d, where, ("kind",), ("precedence",))
        return _wrap(lambda: PolynomialAtInfinity(ring, d.get("precedence")), where)
    if k == "cone":
        _obj(d, where, ("kind", "elements"))
        els = _elements(ring, d["elements"], f"{where}.elements")
        return ConeOrder(PositiveCone.from_elements(ring, els))
    _obj(d, where, ("kind", "rows"))
    return _wrap(lambda: MatrixOrder(ring, d["rows"]), where)


def parse_relation(ring, d, where="relation"):
    k = _kind(d, where, ("valuation", "order", "matrix", "trivial_at_prime", "counterexample_sec3"))
    if k == "valuation":
        _obj(d, where, ("kind", "valuation"))
        return ValuationRelation(parse_valuation(ring, d["valuation"], f"{where}.valuation"))
    if k == "order":
        _obj(d, where, ("kind", "order"))
        return parse_order(ring, d["order"], f"{where}.order").relation()
    if k == "matrix":
        _obj(d, where, ("kind", "rows"))
        return _wrap(lambda: MatrixRelation(ring, d["rows"]), where)
    if k == "trivial_at_prime":
        _obj(d, where, ("kind", "generators"))
        ideal = _ideal(ring, d["generators"], f"{where}.generators")
        return _wrap(lambda: TrivialAtPrime(ideal), where)
    _obj(d, where, ("kind",))
    return _wrap(lambda: CounterexampleRelation(ring), where)


def parse_window(ring, d, where="window"):
    """Window errors keep their own type so callers can tell them apart."""
    k = _kind(d, where, ("all", "interval", "poly", "elements"))
    if k == "all":
        _obj(d, where, ("kind",))
        return W.full(ring)
    if k == "interval":
        _obj(d, where, ("kind", "lo", "hi"))
        return W.interval(ring, _int(d["lo"], f"{where}.lo"), _int(d["hi"], f"{where}.hi"))
    if k == "poly":
        _obj(d, where, ("kind", "max_degree", "coeffs"), ("max_terms",))
        return W.poly_window(
            ring,
            _int(d["max_degree"], f"{where}.max_degree", 0),
            _list(d["coeffs"], f"{where}.coeffs"),
            _int(d.get("max_terms", 2), f"{where}.max_terms", 1),
        )
    _obj(d, where, ("kind", "elements"))
    return W.explicit(ring, _elements(ring, d["elements"], f"{where}.elements"))


def parse_structure(doc) -> Structure:
    _obj(doc, "", ("ring", "relation"), ("window",))
    ring = parse_ring(doc["ring"])
    relation = parse_relation(ring, doc["relation"])
    if "window" in doc:
        window = parse_window(ring, doc["window"])
    elif ring.is_finite:
        window = W.full(ring)
    else:
        raise StructureFileError("infinite rings need a window", "window")
    return Structure(ring, relation, window)


def load_structure(path) -> Structure:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise StructureFileError(f"cannot read file: {exc.strerror}", str(path)) from None
    except json.JSONDecodeError as exc:
        raise StructureFileError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    return parse_structure(doc)
