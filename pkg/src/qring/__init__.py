"""Verification and classification of quasi-ordered commutative rings."""

from .axioms import AxiomReport, AxiomResult, check_axioms, check_support_prime, lemma_suite, reverify
from .classifier import ORDERED, VALUED, Classification, classify, roundtrip_check
from .cones import (
    ConeOrder,
    PolynomialAtInfinity,
    PositiveCone,
    StandardInteger,
    check_cone,
    check_order_axioms,
    cone_to_order,
    order_to_cone,
)
from .constructions import (
    build_value_monoid,
    check_fraction_extension,
    fraction_extension,
    grothendieck_group,
    lift_order,
    lift_valuation,
    quotient_quasiorder,
)
from .errors import (
    InconsistencyError,
    InvalidIdeal,
    InvalidWindow,
    LimitError,
    PreconditionError,
    QRingError,
    RejectedInput,
    StructuralError,
    StructureFileError,
    UnknownBuiltin,
    UnsupportedOperation,
)
from .gallery import builtin, builtin_names, counterexample_report, sec3_relation, sec3_window
from .groups import IntegerGroup, LexGroup, TrivialGroup
from .modelfinder import (
    cross_check_dichotomy,
    enumerate_prime_ideals,
    enumerate_quasiorders,
    enumerate_weak_orders,
    ordered_bell,
)
from .relations import MatrixRelation, TrivialAtPrime, ValuationRelation, compute_support
from .rings import Ideal, Integers, Modular, Polynomial, Product, TableRing, is_prime_ideal
from .structure import load_structure, parse_structure
from .valuations import (
    MonomialValuation,
    PAdic,
    TrivialValuation,
    check_valuation_axioms,
    induce_quasiorder_from_order,
    induce_quasiorder_from_valuation,
)
from .windows import Window, explicit, full, interval, poly_window

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "AxiomResult",
    "check_axioms",
    "check_support_prime",
    "lemma_suite",
    "reverify",
    "ORDERED",
    "VALUED",
    "Classification",
    "classify",
    "roundtrip_check",
    "ConeOrder",
    "PolynomialAtInfinity",
    "PositiveCone",
    "StandardInteger",
    "check_cone",
    "check_order_axioms",
    "cone_to_order",
    "order_to_cone",
    "build_value_monoid",
    "check_fraction_extension",
    "fraction_extension",
    "grothendieck_group",
    "lift_order",
    "lift_valuation",
    "quotient_quasiorder",
    "InconsistencyError",
    "InvalidIdeal",
    "InvalidWindow",
    "LimitError",
    "PreconditionError",
    "QRingError",
    "RejectedInput",
    "StructuralError",
    "StructureFileError",
    "UnknownBuiltin",
    "UnsupportedOperation",
    "builtin",
    "builtin_names",
    "counterexample_report",
    "sec3_relation",
    "sec3_window",
    "IntegerGroup",
    "LexGroup",
    "TrivialGroup",
    "cross_check_dichotomy",
    "enumerate_prime_ideals",
    "enumerate_quasiorders",
    "enumerate_weak_orders",
    "ordered_bell",
    "MatrixRelation",
    "TrivialAtPrime",
    "ValuationRelation",
    "compute_support",
    "Ideal",
    "Integers",
    "Modular",
    "Polynomial",
    "Product",
    "TableRing",
    "is_prime_ideal",
    "load_structure",
    "parse_structure",
    "MonomialValuation",
    "PAdic",
    "TrivialValuation",
    "check_valuation_axioms",
    "induce_quasiorder_from_order",
    "induce_quasiorder_from_valuation",
    "Window",
    "explicit",
    "full",
    "interval",
    "poly_window",
]
