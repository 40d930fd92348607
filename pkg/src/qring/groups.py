"""Ordered abelian value groups and the absorbing symbol infinity."""

from __future__ import annotations

import itertools


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class OrderedAbelianGroup:
    kind = "abstract"

    def zero(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def le(self, a, b) -> bool:
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return self.le(a, b) and self.le(b, a)

    def contains(self, a) -> bool:
        raise NotImplementedError

    def describe(self) -> dict:
        return {"kind": self.kind}

    def to_json(self, a):
        return a

    def times(self, k: int, a):
        out = self.zero()
        for _ in range(k):
            out = self.add(out, a)
        return out


class TrivialGroup(OrderedAbelianGroup):
    kind = "trivial"

    def zero(self):
        return 0

    def add(self, a, b):
        return 0

    def neg(self, a):
        return 0

    def le(self, a, b):
        return True

    def contains(self, a):
        return a == 0


class IntegerGroup(OrderedAbelianGroup):
    """The integers with their usual order."""

    kind = "free_rank_one"

    def zero(self):
        return 0

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def le(self, a, b):
        return a <= b

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool)


class LexGroup(OrderedAbelianGroup):
    """Z^k under the lexicographic order; elements are int tuples."""

    kind = "lex_power"

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError("lexicographic power needs rank >= 1")
        self.rank = rank

    def zero(self):
        return (0,) * self.rank

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def le(self, a, b):
        return a <= b

    def contains(self, a):
        return isinstance(a, tuple) and len(a) == self.rank and all(isinstance(x, int) for x in a)

    def describe(self):
        return {"kind": self.kind, "rank": self.rank}

    def to_json(self, a):
        return list(a)


# values: group elements or INF


def value_le(group: OrderedAbelianGroup, a, b) -> bool:
    if b is INF:
        return True
    if a is INF:
        return False
    return group.le(a, b)


def value_eq(group: OrderedAbelianGroup, a, b) -> bool:
    if a is INF or b is INF:
        return a is b
    return group.eq(a, b)


def value_add(group: OrderedAbelianGroup, a, b):
    if a is INF or b is INF:
        return INF
    return group.add(a, b)


def value_min(group: OrderedAbelianGroup, a, b):
    return a if value_le(group, a, b) else b


def value_to_json(group: OrderedAbelianGroup, a):
    return "inf" if a is INF else group.to_json(a)


class Descending:
    """Sort key placing larger values first; used to rank valuation relations."""

    __slots__ = ("group", "value")

    def __init__(self, group, value):
        self.group = group
        self.value = value

    def __lt__(self, other):
        return not value_le(self.group, self.value, other.value)


def check_group_samples(group: OrderedAbelianGroup, samples, max_triples: int = 30):
    """Sampled check of the ordered-group laws.

    Returns ``None`` or ``(law, witness)``.  Pairs are checked in full,
    triples on the first ``max_triples`` samples.
    """
    samples = list(samples)
    z = group.zero()
    for a in samples:
        if not group.eq(group.add(a, z), a):
            return "identity", (a,)
        if not group.eq(group.add(a, group.neg(a)), z):
            return "inverse", (a,)
        for n in range(1, 5):
            if group.eq(group.times(n, a), z) and not group.eq(a, z):
                return "torsion", (a, n)
    for a, b in itertools.product(samples, repeat=2):
        if not (group.le(a, b) or group.le(b, a)):
            return "totality", (a, b)
        if not group.eq(group.add(a, b), group.add(b, a)):
            return "commutativity", (a, b)
    head = samples[:max_triples]
    for a, b, c in itertools.product(head, repeat=3):
        if group.le(a, b) and group.le(b, c) and not group.le(a, c):
            return "transitivity", (a, b, c)
        if group.le(a, b) and not group.le(group.add(a, c), group.add(b, c)):
            return "compatibility", (a, b, c)
        if not group.eq(group.add(group.add(a, b), c), group.add(a, group.add(b, c))):
            return "associativity", (a, b, c)
    return None
