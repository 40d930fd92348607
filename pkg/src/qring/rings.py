"""Exact commutative rings with 1.

Elements are plain hashable Python values in canonical form, so equality is
structural equality:

* ``Modular(n)``: ints in ``[0, n)``
* ``Product``: tuples of factor elements
* ``Integers``: Python ints
* ``Polynomial``: tuples of ``(exponents, coefficient)`` pairs, sorted by
  descending graded-lex monomial order, zero coefficients never stored
* ``TableRing``: table indices

The public operations (``add``, ``mul``, ``neg``, ``sub``) validate their
operands.  The underscored variants skip validation and are what the scan
engine uses in its hot loops.
"""

from __future__ import annotations

import itertools
import math
import operator
import re
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import InvalidIdeal, StructuralError, UnsupportedOperation


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


class Ring:
    is_finite = False

    def __eq__(self, other):
        return isinstance(other, Ring) and self.describe() == other.describe()

    def __hash__(self):
        return hash(repr(self.describe()))

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def check(self, x) -> None:
        raise NotImplementedError

    def contains(self, x) -> bool:
        try:
            self.check(x)
        except StructuralError:
            return False
        return True

    def add(self, a, b):
        self.check(a)
        self.check(b)
        return self._add(a, b)

    def mul(self, a, b):
        self.check(a)
        self.check(b)
        return self._mul(a, b)

    def neg(self, a):
        self.check(a)
        return self._neg(a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _sub(self, a, b):
        return self._add(a, self._neg(b))

    def eq(self, a, b) -> bool:
        self.check(a)
        self.check(b)
        return a == b

    def is_zero(self, x) -> bool:
        return x == self.zero()

    def power(self, x, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.one()
        for _ in range(k):
            result = self._mul(result, x)
        return result

    def elements(self) -> list:
        raise UnsupportedOperation(f"{self!r} is infinite; use a window")

    def is_integral_domain(self) -> bool:
        raise NotImplementedError

    def is_field(self) -> bool:
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError

    def to_json(self, x):
        return x

    def from_json(self, value):
        self.check(value)
        return value

    def format(self, x) -> str:
        return str(x)


class FiniteRing(Ring):
    is_finite = True

    def _enumerate(self) -> tuple:
        raise NotImplementedError

    @cached_property
    def _elements(self) -> tuple:
        return tuple(self._enumerate())

    def elements(self) -> list:
        return list(self._elements)

    @property
    def size(self) -> int:
        return len(self._elements)

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self._elements)}

    @cached_property
    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Index tables ``(add, mul, neg)`` over the enumeration order."""
        els, idx = self._elements, self.index
        n = len(els)
        add = np.empty((n, n), dtype=np.int64)
        mul = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                add[i, j] = idx[self._add(a, b)]
                mul[i, j] = idx[self._mul(a, b)]
        neg = np.array([idx[self._neg(a)] for a in els], dtype=np.int64)
        return add, mul, neg

    def is_integral_domain(self) -> bool:
        _, mul, _ = self.tables
        z = self.index[self.zero()]
        nonzero = [i for i in range(self.size) if i != z]
        if self.index[self.one()] == z:
            return False
        return not (mul[np.ix_(nonzero, nonzero)] == z).any()

    def is_field(self) -> bool:
        # finite domains are fields
        return self.is_integral_domain()


class Modular(FiniteRing):
    def __init__(self, n: int):
        if not _is_int(n) or n < 2:
            raise StructuralError(f"Modular ring needs an integer n >= 2, got {n!r}")
        self.n = n

    def __repr__(self):
        return f"Modular({self.n})"

    def _enumerate(self):
        return range(self.n)

    def zero(self):
        return 0

    def one(self):
        return 1 % self.n

    def _add(self, a, b):
        return (a + b) % self.n

    def _mul(self, a, b):
        return (a * b) % self.n

    def _neg(self, a):
        return (-a) % self.n

    def check(self, x):
        if not _is_int(x) or not 0 <= x < self.n:
            raise StructuralError(f"{x!r} is not an element of Z/{self.n}")

    def describe(self):
        return {"kind": "modular", "n": self.n}


class Product(FiniteRing):
    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise StructuralError("Product ring needs at least one factor")
        for f in factors:
            if not f.is_finite:
                raise StructuralError(f"Product factors must be finite, got {f!r}")
        self.factors = factors

    def __repr__(self):
        return f"Product({', '.join(map(repr, self.factors))})"

    def _enumerate(self):
        return itertools.product(*(f.elements() for f in self.factors))

    def zero(self):
        return tuple(f.zero() for f in self.factors)

    def one(self):
        return tuple(f.one() for f in self.factors)

    def _add(self, a, b):
        return tuple(f._add(x, y) for f, x, y in zip(self.factors, a, b))

    def _mul(self, a, b):
        return tuple(f._mul(x, y) for f, x, y in zip(self.factors, a, b))

    def _neg(self, a):
        return tuple(f._neg(x) for f, x in zip(self.factors, a))

    def check(self, x):
        if not isinstance(x, tuple) or len(x) != len(self.factors):
            raise StructuralError(f"{x!r} is not an element of {self!r}")
        for f, c in zip(self.factors, x):
            f.check(c)

    def describe(self):
        return {"kind": "product", "factors": [f.describe() for f in self.factors]}

    def to_json(self, x):
        return [f.to_json(c) for f, c in zip(self.factors, x)]

    def from_json(self, value):
        if not isinstance(value, list) or len(value) != len(self.factors):
            raise StructuralError(f"{value!r} is not an element of {self!r}")
        return tuple(f.from_json(v) for f, v in zip(self.factors, value))

    def format(self, x):
        return "(" + ", ".join(f.format(c) for f, c in zip(self.factors, x)) + ")"


class TableRing(FiniteRing):
    """A ring given by Cayley tables; all ring axioms are verified at load."""

    def __init__(self, add, mul, zero=None, one=None):
        add = np.asarray(add, dtype=np.int64)
        mul = np.asarray(mul, dtype=np.int64)
        n = add.shape[0] if add.ndim == 2 else 0
        if n == 0 or add.shape != (n, n) or mul.shape != (n, n):
            raise StructuralError("add and mul tables must be square and of equal size")
        if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
            raise StructuralError("table entries must be element indices")
        r = np.arange(n)
        if zero is None:
            zero = _identity_row(add, "additive")
        if one is None:
            one = _identity_row(mul, "multiplicative")
        self._add_t, self._mul_t = add, mul
        self._zero, self._one = int(zero), int(one)
        self.n = n
        _verify_tables(add, mul, self._zero, self._one)
        self._neg_t = np.argmax(add == self._zero, axis=1)
        assert (add[r, self._neg_t] == self._zero).all()

    def __repr__(self):
        return f"TableRing(n={self.n})"

    def _enumerate(self):
        return range(self.n)

    @cached_property
    def tables(self):
        return self._add_t, self._mul_t, self._neg_t

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def _add(self, a, b):
        return int(self._add_t[a, b])

    def _mul(self, a, b):
        return int(self._mul_t[a, b])

    def _neg(self, a):
        return int(self._neg_t[a])

    def check(self, x):
        if not _is_int(x) or not 0 <= x < self.n:
            raise StructuralError(f"{x!r} is not an index of {self!r}")

    def describe(self):
        return {
            "kind": "table",
            "add": self._add_t.tolist(),
            "mul": self._mul_t.tolist(),
            "zero": self._zero,
            "one": self._one,
        }


def _identity_row(table, what):
    r = np.arange(table.shape[0])
    for i in range(table.shape[0]):
        if (table[i] == r).all():
            return i
    raise StructuralError(f"table has no {what} identity")


def _verify_tables(A, M, z, o):
    n = A.shape[0]
    r = np.arange(n)
    checks = [
        ("additive identity", (A[z] == r).all()),
        ("multiplicative identity", (M[o] == r).all()),
        ("additive commutativity", (A == A.T).all()),
        ("multiplicative commutativity", (M == M.T).all()),
        ("additive inverses", (A == z).any(axis=1).all()),
    ]
    for name, ok in checks:
        if not ok:
            raise StructuralError(f"table ring violates {name}")
    a, b, c = r[:, None, None], r[None, :, None], r[None, None, :]
    for name, lhs, rhs in [
        ("additive associativity", A[A[a, b], c], A[a, A[b, c]]),
        ("multiplicative associativity", M[M[a, b], c], M[a, M[b, c]]),
        ("distributivity", M[a, A[b, c]], A[M[a, b], M[a, c]]),
    ]:
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            raise StructuralError(f"table ring violates {name} at {tuple(int(v) for v in bad[0])}")


class Integers(Ring):
    def __repr__(self):
        return "Integers()"

    def zero(self):
        return 0

    def one(self):
        return 1

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def check(self, x):
        if not _is_int(x):
            raise StructuralError(f"{x!r} is not an integer")

    def is_integral_domain(self):
        return True

    def is_field(self):
        return False

    def describe(self):
        return {"kind": "integers"}


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _mono_key(e):
    return (sum(e), e)


def _term_key(t):
    e = t[0]
    return (sum(e), e)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_]\w*)|(\^)|(\*)|([+-]))")


class Polynomial(Ring):
    """Multivariate polynomials with exact rational coefficients."""

    def __init__(self, variables):
        variables = tuple(variables)
        if not variables:
            raise StructuralError("Polynomial ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise StructuralError(f"duplicate variable names in {variables}")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_]\w*", v):
                raise StructuralError(f"bad variable name {v!r}")
        self.variables = variables
        self.nvars = len(variables)

    def __repr__(self):
        return f"Polynomial({', '.join(self.variables)})"

    def _from_dict(self, d):
        terms = []
        for e, c in d.items():
            if c:
                if type(c) is Fraction and c.denominator == 1:
                    c = int(c.numerator)
                terms.append((e, c))
        terms.sort(key=_term_key, reverse=True)
        return tuple(terms)

    def zero(self):
        return ()

    def one(self):
        return (((0,) * self.nvars, 1),)

    def const(self, c):
        c = _norm_coeff(Fraction(c))
        return ((((0,) * self.nvars), c),) if c != 0 else ()

    def monomial(self, exps, coeff=1):
        coeff = _norm_coeff(Fraction(coeff))
        return ((tuple(exps), coeff),) if coeff != 0 else ()

    def var(self, name):
        e = [0] * self.nvars
        e[self.variables.index(name)] = 1
        return ((tuple(e), 1),)

    def _add(self, a, b):
        if not a:
            return b
        if not b:
            return a
        d = dict(a)
        for e, c in b:
            d[e] = d.get(e, 0) + c
        return self._from_dict(d)

    def _mul(self, a, b):
        if not a or not b:
            return ()
        d = {}
        for e1, c1 in a:
            for e2, c2 in b:
                e = tuple(map(operator.add, e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return self._from_dict(d)

    def _neg(self, a):
        return tuple((e, -c) for e, c in a)

    def check(self, x):
        if not isinstance(x, tuple):
            raise StructuralError(f"{x!r} is not a polynomial over {self.variables}")
        prev = None
        for term in x:
            if not (isinstance(term, tuple) and len(term) == 2):
                raise StructuralError(f"malformed polynomial term {term!r}")
            e, c = term
            if (
                not isinstance(e, tuple)
                or len(e) != self.nvars
                or not all(_is_int(k) and k >= 0 for k in e)
            ):
                raise StructuralError(f"bad exponent vector {e!r} for {self!r}")
            if not (_is_int(c) or isinstance(c, Fraction)) or c == 0 or _norm_coeff(c) is not c:
                raise StructuralError(f"non-canonical coefficient {c!r}")
            if prev is not None and not _mono_key(e) < _mono_key(prev):
                raise StructuralError("polynomial terms not in canonical order")
            prev = e

    def is_integral_domain(self):
        return True

    def is_field(self):
        return False

    def describe(self):
        return {"kind": "polynomial", "vars": list(self.variables)}

    def degree(self, f) -> int:
        return max((sum(e) for e, _ in f), default=-1)

    def to_json(self, x):
        return self.format(x)

    def from_json(self, value):
        if _is_int(value):
            return self.const(value)
        if isinstance(value, str):
            return self.parse(value)
        raise StructuralError(f"cannot read polynomial from {value!r}")

    def _format_mono(self, e):
        parts = []
        for name, k in zip(self.variables, e):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def format(self, f):
        if not f:
            return "0"
        out = []
        for i, (e, c) in enumerate(f):
            mono = self._format_mono(e)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def parse(self, text: str):
        pos, tokens = 0, []
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise StructuralError(f"cannot parse polynomial {text!r} at offset {pos}")
            tokens.append(next((i, g) for i, g in enumerate(m.groups()) if g is not None))
            pos = m.end()
        result, i = (), 0
        sign = 1
        if not tokens:
            raise StructuralError("empty polynomial text")
        while i < len(tokens):
            if tokens[i][0] == 4:
                sign = -1 if tokens[i][1] == "-" else 1
                i += 1
            term, i = self._parse_term(tokens, i, text)
            result = self._add(result, self._mul(self.const(sign), term))
            sign = 1
            if i < len(tokens) and tokens[i][0] != 4:
                raise StructuralError(f"unexpected token in {text!r}")
        return result

    def _parse_term(self, tokens, i, text):
        term = self.one()
        expect = True
        while i < len(tokens):
            kind, val = tokens[i]
            if kind == 4:
                break
            if kind == 3:
                if expect:
                    raise StructuralError(f"misplaced '*' in {text!r}")
                expect = True
                i += 1
                continue
            if not expect:
                raise StructuralError(f"missing '*' in {text!r}")
            if kind == 0:
                factor = self.const(Fraction(val))
                i += 1
            elif kind == 1:
                if val not in self.variables:
                    raise StructuralError(f"unknown variable {val!r} in {text!r}")
                factor = self.var(val)
                i += 1
                if i < len(tokens) and tokens[i][0] == 2:
                    if i + 1 >= len(tokens) or tokens[i + 1][0] != 0 or "/" in tokens[i + 1][1]:
                        raise StructuralError(f"bad exponent in {text!r}")
                    factor = self.power(factor, int(tokens[i + 1][1]))
                    i += 2
            else:
                raise StructuralError(f"unexpected '^' in {text!r}")
            term = self._mul(term, factor)
            expect = False
        if expect:
            raise StructuralError(f"dangling operator in {text!r}")
        return term, i


# ---------------------------------------------------------------- ideals


class Ideal:
    """An ideal given by generators, with its element set on finite rings."""

    def __init__(self, ring: Ring, generators, elements=None):
        self.ring = ring
        self.generators = tuple(generators)
        for g in self.generators:
            ring.check(g)
        self._elements = frozenset(elements) if elements is not None else None
        if ring.is_finite and self._elements is None:
            self._elements = frozenset(_finite_closure(ring, self.generators))
        if isinstance(ring, Integers):
            self.gcd = math.gcd(*self.generators) if self.generators else 0
        if isinstance(ring, Polynomial):
            self._poly_vars = _variable_generators(ring, self.generators)

    @classmethod
    def from_elements(cls, ring: FiniteRing, elements):
        """Wrap an explicit element set, verifying that it is an ideal."""
        elements = [ring.from_json(e) if not ring.contains(e) else e for e in elements]
        s = set(elements)
        witness = _ideal_closure_witness(ring, s)
        if witness is not None:
            raise InvalidIdeal(f"{sorted(map(ring.format, s))} is not an ideal", witness)
        members = sorted(s, key=ring.index.__getitem__)
        gens = members
        for g in members:
            if set(_finite_closure(ring, [g])) == s:
                gens = [g]
                break
        return cls(ring, gens, elements=s)

    @property
    def elements(self):
        if self._elements is None:
            raise UnsupportedOperation("ideal of an infinite ring has no element list")
        idx = self.ring.index
        return sorted(self._elements, key=idx.__getitem__)

    def contains(self, x) -> bool:
        if self._elements is not None:
            return x in self._elements
        if isinstance(self.ring, Integers):
            return x % self.gcd == 0 if self.gcd else x == 0
        if isinstance(self.ring, Polynomial):
            vars_, whole = self._poly_vars
            if whole:
                return True
            return all(any(e[k] > 0 for k in vars_) for e, _ in x)
        raise UnsupportedOperation(f"ideal membership on {self.ring!r}")

    def is_zero(self) -> bool:
        if self._elements is not None:
            return self._elements == {self.ring.zero()}
        return all(self.ring.is_zero(g) for g in self.generators)

    def describe(self) -> dict:
        return {"generators": [self.ring.to_json(g) for g in self.generators]}

    def __repr__(self):
        return f"Ideal({', '.join(self.ring.format(g) for g in self.generators) or '0'})"


def _finite_closure(ring: FiniteRing, generators):
    add, mul, _ = ring.tables
    idx = ring.index
    member = np.zeros(ring.size, dtype=bool)
    member[idx[ring.zero()]] = True
    for g in generators:
        member[idx[g]] = True
    while True:
        cur = np.flatnonzero(member)
        new = member.copy()
        new[mul[:, cur].ravel()] = True
        new[add[np.ix_(cur, cur)].ravel()] = True
        if (new == member).all():
            break
        member = new
    els = ring.elements()
    return [els[i] for i in np.flatnonzero(member)]


def _ideal_closure_witness(ring: FiniteRing, s):
    if ring.zero() not in s:
        return ("zero",)
    els = ring.elements()
    members = [x for x in els if x in s]
    for a in members:
        for b in members:
            if ring._add(a, b) not in s:
                return ("sum", a, b)
    for a in members:
        for r in els:
            if ring._mul(r, a) not in s:
                return ("product", r, a)
    return None


def _variable_generators(ring: Polynomial, gens):
    """Indices of variables generating the ideal; second item flags the unit ideal."""
    vars_ = set()
    for g in gens:
        if not g:
            continue
        if len(g) != 1:
            raise UnsupportedOperation(
                "polynomial ideals must be generated by scalar multiples of variables"
            )
        e, _ = g[0]
        if sum(e) == 0:
            return frozenset(), True
        if sum(e) != 1:
            raise UnsupportedOperation(
                "polynomial ideals must be generated by scalar multiples of variables"
            )
        vars_.add(e.index(1))
    return frozenset(vars_), False


def is_prime_ideal(ring: Ring, ideal: Ideal):
    """Return ``(True, None)`` or ``(False, witness)``.

    The witness is a violating pair ``(x, y)`` with ``xy`` in the ideal and
    neither factor in it, or ``(1,)`` when the ideal is the whole ring.
    Raises :class:`InvalidIdeal` when a finite element set is not closed.
    """
    if ring.is_finite:
        s = set(ideal.elements)
        witness = _ideal_closure_witness(ring, s)
        if witness is not None:
            raise InvalidIdeal("element set is not an ideal", witness)
        if ring.one() in s:
            return False, (ring.one(),)
        els = ring.elements()
        outside = [x for x in els if x not in s]
        for x in outside:
            for y in outside:
                if ring._mul(x, y) in s:
                    return False, (x, y)
        return True, None
    if isinstance(ring, Integers):
        g = abs(ideal.gcd)
        if g == 0:
            return True, None
        if g == 1:
            return False, (1,)
        for a in range(2, math.isqrt(g) + 1):
            if g % a == 0:
                return False, (a, g // a)
        return True, None
    if isinstance(ring, Polynomial):
        _, whole = ideal._poly_vars
        if whole:
            return False, (ring.one(),)
        return True, None
    raise UnsupportedOperation(f"primality test on {ring!r}")
