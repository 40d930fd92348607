"""Ring valuations v: R -> G u {INF} and their axiom checks."""

from __future__ import annotations

import numpy as np

from .axioms import FAIL, AxiomReport, AxiomResult, _resolve, _result, prime_on_window
from .errors import PreconditionError, StructuralError
from .groups import (
    INF,
    IntegerGroup,
    LexGroup,
    TrivialGroup,
    value_add,
    value_eq,
    value_le,
    value_min,
    value_to_json,
)
from .relations import BIG, OrderRelation, ValuationRelation
from .rings import Ideal, Integers, Polynomial, is_prime_ideal
from .scan import IntUniverse, Scan


class Valuation:
    kind = "abstract"

    def __init__(self, ring, group):
        self.ring = ring
        self.group = group

    def value(self, x):
        raise NotImplementedError

    def vmap(self, x):
        self.ring.check(x)
        return self.value(x)

    def int_values(self, values: np.ndarray):
        """Vectorized values over an int array (INF as ``BIG``), or None."""
        return None

    def order_keys(self, values: np.ndarray):
        """Int keys with ``key(x) <= key(y)`` iff ``v(y) <= v(x)``, or None."""
        vals = self.int_values(values)
        return None if vals is None else -vals

    def support_is_zero(self):
        return None

    def describe(self) -> dict:
        return {"kind": self.kind}


def _is_prime_number(p) -> bool:
    return isinstance(p, int) and p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


class PAdic(Valuation):
    kind = "padic"

    def __init__(self, p: int, ring: Integers | None = None):
        if not _is_prime_number(p):
            raise StructuralError(f"p-adic valuation needs a prime, got {p!r}")
        super().__init__(ring or Integers(), IntegerGroup())
        self.p = p

    def value(self, x):
        if x == 0:
            return INF
        k, p = 0, self.p
        while x % p == 0:
            x //= p
            k += 1
        return k

    def int_values(self, values):
        arr = np.abs(np.asarray(values, dtype=np.int64)).ravel()
        out = np.zeros(arr.shape, dtype=np.int64)
        zero = arr == 0
        p = self.p
        if p == 2:
            low = arr & -arr
            out = np.frexp(low.astype(np.float64))[1].astype(np.int64) - 1
        else:
            idx = np.flatnonzero(~zero & (arr % p == 0))
            if len(idx):
                rest = arr[idx]
                cnt = np.zeros(len(idx), dtype=np.int64)
                top = int(rest.max())
                steps = []
                pk = p
                while pk <= top:
                    steps.append(pk)
                    pk = pk * pk
                # binary lifting: strip p^(2^j) from the largest j down
                for j in reversed(range(len(steps))):
                    m = rest % steps[j] == 0
                    rest = np.where(m, rest // steps[j], rest)
                    cnt += m.astype(np.int64) << j
                out[idx] = cnt
        out[zero] = BIG
        return out.reshape(np.shape(values))

    def support_is_zero(self):
        return True

    def describe(self):
        return {"kind": "padic", "p": self.p}


class MonomialValuation(Valuation):
    """``v(f)`` is the least weight of a monomial of ``f`` (lexicographic weights)."""

    kind = "monomial"

    def __init__(self, ring: Polynomial, weights: dict):
        if not isinstance(ring, Polynomial):
            raise StructuralError("monomial valuations live on polynomial rings")
        ws = []
        rank = None
        for name in ring.variables:
            if name not in weights:
                raise StructuralError(f"missing weight for variable {name!r}")
            w = weights[name]
            w = (w,) if isinstance(w, int) else tuple(w)
            if rank is None:
                rank = len(w)
            if len(w) != rank or not all(isinstance(c, int) for c in w):
                raise StructuralError("weights must be integer vectors of equal length")
            if not w > (0,) * rank:
                raise StructuralError(f"weight of {name!r} must be positive, got {list(w)}")
            ws.append(w)
        extra = set(weights) - set(ring.variables)
        if extra:
            raise StructuralError(f"weights for unknown variables {sorted(extra)}")
        super().__init__(ring, LexGroup(rank))
        self.weights = tuple(ws)

    def value(self, f):
        if not f:
            return INF
        rank = self.group.rank
        best = None
        for e, _ in f:
            s = tuple(sum(k * w[r] for k, w in zip(e, self.weights)) for r in range(rank))
            if best is None or s < best:
                best = s
        return best

    def support_is_zero(self):
        return True

    def describe(self):
        return {
            "kind": "monomial",
            "weights": {n: list(w) for n, w in zip(self.ring.variables, self.weights)},
        }


class TrivialValuation(Valuation):
    """``INF`` on a prime ideal, 0 elsewhere."""

    kind = "trivial"

    def __init__(self, ideal: Ideal):
        ok, witness = is_prime_ideal(ideal.ring, ideal)
        if not ok:
            raise PreconditionError(f"{ideal!r} is not prime (witness {witness})")
        super().__init__(ideal.ring, TrivialGroup())
        self.ideal = ideal

    def value(self, x):
        return INF if self.ideal.contains(x) else 0

    def int_values(self, values):
        if not isinstance(self.ring, Integers):
            return None
        g = abs(self.ideal.gcd)
        inside = values == 0 if g == 0 else values % g == 0
        return np.where(inside, BIG, 0).astype(np.int64)

    def support_is_zero(self):
        return self.ideal.is_zero()

    def describe(self):
        return {"kind": "trivial", **self.ideal.describe()}


class TableValuation(Valuation):
    """Explicit values over the enumeration of a finite ring (``None`` = INF)."""

    kind = "table"

    def __init__(self, ring, values, group=None):
        if not ring.is_finite:
            raise StructuralError("table valuations need a finite ring")
        values = list(values)
        if len(values) != ring.size:
            raise StructuralError(f"need {ring.size} values, got {len(values)}")
        finite = [v for v in values if v is not None and v != "inf"]
        if group is None:
            if all(isinstance(v, int) for v in finite):
                group = TrivialGroup() if all(v == 0 for v in finite) else IntegerGroup()
            else:
                group = LexGroup(len(finite[0]))
        conv = []
        for v in values:
            if v is None or v == "inf":
                conv.append(INF)
            else:
                v = tuple(v) if isinstance(v, list) else v
                if not group.contains(v):
                    raise StructuralError(f"value {v!r} is not in the {group.kind} group")
                conv.append(v)
        super().__init__(ring, group)
        self.values = conv

    def value(self, x):
        return self.values[self.ring.index[x]]

    def support_is_zero(self):
        z = self.ring.index[self.ring.zero()]
        return all((v is INF) == (i == z) for i, v in enumerate(self.values))

    def describe(self):
        return {"kind": "table", "values": [value_to_json(self.group, v) for v in self.values]}


def vmap(valuation: Valuation, x):
    return valuation.vmap(x)


def induce_quasiorder_from_valuation(valuation: Valuation) -> ValuationRelation:
    return ValuationRelation(valuation)


def induce_quasiorder_from_order(order) -> OrderRelation:
    return OrderRelation(order)


def check_valuation_axioms(valuation: Valuation, window=None) -> AxiomReport:
    """V1-V4, the ultrametric equality for unequal values, and prime support."""
    relation = ValuationRelation(valuation)
    window = _resolve(relation, window)
    scan = Scan(relation, window)
    u, G = scan.u, valuation.group
    S, P, w, n = u.S, u.P, u.w, u.n
    int_vals = valuation.int_values(u.values) if isinstance(u, IntUniverse) else None
    if int_vals is not None:
        vals = [INF if v >= BIG else int(v) for v in int_vals.tolist()]
    else:
        vals = [valuation.value(x) for x in u.elements]
    rep = AxiomReport(valuation.ring, window)
    res = rep.results
    R = valuation.ring

    v0 = vals[u.zero]
    res["V1"] = _result(scan, None) if v0 is INF else AxiomResult(FAIL, (R.zero(),))
    v1 = vals[u.one]
    res["V2"] = (
        _result(scan, None)
        if v1 is not INF and G.eq(v1, G.zero())
        else AxiomResult(FAIL, (R.one(),))
    )

    wv = [vals[i] for i in w]
    v3 = v4 = vmin = None
    for i in range(n):
        a = wv[i]
        for j in range(n):
            b = wv[j]
            if v3 is None and not value_eq(G, vals[P[i, j]], value_add(G, a, b)):
                v3 = (i, j)
            s = vals[S[i, j]]
            m = value_min(G, a, b)
            if v4 is None and not value_le(G, m, s):
                v4 = (i, j)
            if vmin is None and not value_eq(G, a, b) and not value_eq(G, s, m):
                vmin = (i, j)
        if v3 and v4 and vmin:
            break
    res["V3"] = _result(scan, v3)
    res["V4"] = _result(scan, v4)
    res["min_equality"] = _result(scan, vmin)

    inf_u = np.array([v is INF for v in vals], dtype=bool)
    verdict = prime_on_window(scan, inf_u[w], lambda idx, where: inf_u[idx])
    res["support_prime"] = (
        _result(scan, None) if verdict.ok else AxiomResult(FAIL, verdict.witness, verdict.reason)
    )
    return rep
