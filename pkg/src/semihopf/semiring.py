"""Finite commutative semirings.

Carriers are index sets 0..n-1 with dense addition/multiplication tables, so
every law is exhaustively checkable and every operation is an O(1) lookup.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MalformedInputError, ParameterError
from .report import ValidationReport

DEFAULT_CAP = 4096


def _check_table(table, rows: int, cols: int, size: int, what: str) -> tuple[tuple[int, ...], ...]:
    """Normalize a 2d table to tuples, raising MalformedInputError on shape/range problems."""
    if len(table) != rows:
        raise MalformedInputError(f"{what}: expected {rows} rows, got {len(table)}")
    out = []
    for i, row in enumerate(table):
        row = tuple(row)
        if len(row) != cols:
            raise MalformedInputError(f"{what}: row {i} has length {len(row)}, expected {cols}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not (0 <= v < size):
                raise MalformedInputError(f"{what}[{i}][{j}] = {v!r} is not an index in 0..{size - 1}")
        out.append(row)
    return tuple(out)


@dataclass(frozen=True)
class FiniteSemiring:
    """A finite commutative semiring given by dense operation tables."""

    name: str
    size: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int
    one: int
    element_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size <= 0:
            raise MalformedInputError("carrier must be nonempty")
        object.__setattr__(self, "add", _check_table(self.add, self.size, self.size, self.size, "add"))
        object.__setattr__(self, "mul", _check_table(self.mul, self.size, self.size, self.size, "mul"))
        for idx, what in ((self.zero, "zero"), (self.one, "one")):
            if not isinstance(idx, int) or not (0 <= idx < self.size):
                raise MalformedInputError(f"{what} = {idx!r} is not a carrier index")
        if self.element_names is None:
            object.__setattr__(self, "element_names", tuple(str(i) for i in range(self.size)))
        elif len(self.element_names) != self.size or len(set(self.element_names)) != self.size:
            raise MalformedInputError("element names must be distinct, one per element")

    def elements(self):
        return range(self.size)

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def sum(self, xs) -> int:
        acc = self.zero
        for x in xs:
            acc = self.add[acc][x]
        return acc

    def neg(self, a: int) -> int | None:
        """Additive inverse of a, or None if there is none."""
        for b in self.elements():
            if self.add[a][b] == self.zero:
                return b
        return None

    @property
    def is_ring(self) -> bool:
        """Every element additively invertible."""
        return all(self.neg(a) is not None for a in self.elements())

    @property
    def is_field(self) -> bool:
        if not self.is_ring or self.size < 2 or self.zero == self.one:
            return False
        for a in self.elements():
            if a == self.zero:
                continue
            if not any(self.mul[a][b] == self.one for b in self.elements()):
                return False
        return True

    def __repr__(self):
        return f"FiniteSemiring({self.name}, size={self.size})"


def check_semiring(candidate: FiniteSemiring) -> ValidationReport:
    """Exhaustively check the commutative-semiring laws, witnessing failures."""
    s = candidate
    rep = ValidationReport(f"semiring {s.name}")
    els = list(s.elements())

    def first_fail(pred, pts):
        for p in pts:
            if not pred(*p):
                return p
        return None

    pairs = [(a, b) for a in els for b in els]
    triples = [(a, b, c) for a in els for b in els for c in els]

    w = first_fail(lambda a, b: s.add[a][b] == s.add[b][a], pairs)
    rep.record("addition commutative", w is None, w or ())
    w = first_fail(lambda a, b, c: s.add[s.add[a][b]][c] == s.add[a][s.add[b][c]], triples)
    rep.record("addition associative", w is None, w or ())
    w = first_fail(lambda a: s.add[s.zero][a] == a, [(a,) for a in els])
    rep.record("zero is additive unit", w is None, w or ())

    w = first_fail(lambda a, b: s.mul[a][b] == s.mul[b][a], pairs)
    rep.record("multiplication commutative", w is None, w or ())
    w = first_fail(lambda a, b, c: s.mul[s.mul[a][b]][c] == s.mul[a][s.mul[b][c]], triples)
    rep.record("multiplication associative", w is None, w or ())
    w = first_fail(lambda a: s.mul[s.one][a] == a, [(a,) for a in els])
    rep.record("one is multiplicative unit", w is None, w or ())

    w = first_fail(
        lambda a, b, c: s.mul[a][s.add[b][c]] == s.add[s.mul[a][b]][s.mul[a][c]], triples
    )
    rep.record("multiplication distributes over addition", w is None, w or ())
    w = first_fail(lambda a: s.mul[s.zero][a] == s.zero, [(a,) for a in els])
    rep.record("zero annihilates", w is None, w or ())
    return rep


def builtin(name: str, k: int | None = None) -> FiniteSemiring:
    """Built-in instances: ``bool``, ``zmod k`` and ``nat_sat k``.

    ``zmod k`` has carrier 0..k-1 with arithmetic mod k; ``nat_sat k`` has
    carrier 0..k with addition and multiplication saturating at k.
    """
    if name == "bool":
        s = FiniteSemiring("bool", 2, ((0, 1), (1, 1)), ((0, 0), (0, 1)), 0, 1)
    elif name == "zmod":
        if k is None or k < 1:
            raise ParameterError("zmod needs a modulus k >= 1")
        els = range(k)
        s = FiniteSemiring(
            f"zmod{k}",
            k,
            tuple(tuple((a + b) % k for b in els) for a in els),
            tuple(tuple((a * b) % k for b in els) for a in els),
            0,
            1 % k,
        )
    elif name == "nat_sat":
        if k is None or k < 1:
            raise ParameterError("nat_sat needs a bound k >= 1")
        els = range(k + 1)
        s = FiniteSemiring(
            f"nat_sat{k}",
            k + 1,
            tuple(tuple(min(a + b, k) for b in els) for a in els),
            tuple(tuple(min(a * b, k) for b in els) for a in els),
            0,
            1,
        )
    else:
        raise ParameterError(f"unknown builtin semiring {name!r}")
    rep = check_semiring(s)
    if not rep.valid:  # pragma: no cover - builtin construction bug trap
        raise MalformedInputError(f"builtin {name} failed its own law check: {rep}")
    return s


@dataclass(frozen=True)
class SemiringHom:
    """A semiring homomorphism stored as an index array."""

    source: FiniteSemiring
    target: FiniteSemiring
    mapping: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def is_valid(self) -> bool:
        s, t, f = self.source, self.target, self.mapping
        if f[s.zero] != t.zero or f[s.one] != t.one:
            return False
        for a in s.elements():
            for b in s.elements():
                if f[s.add[a][b]] != t.add[f[a]][f[b]]:
                    return False
                if f[s.mul[a][b]] != t.mul[f[a]][f[b]]:
                    return False
        return True


def monoid_completion(size: int, plus, zero: int):
    """Group completion of a finite commutative monoid by the pair construction.

    ``plus`` is a binary callable.  (a, b) ~ (a', b') iff a + b' + c = a' + b + c
    for some c, with c searched exhaustively.  Returns (number of classes,
    class_of, reps) where class_of maps a pair index a*size+b to its class;
    classes are numbered in first-seen order, so class 0 contains (zero, zero).
    """
    els = range(size)

    def equiv(a, b, a2, b2):
        return any(plus(plus(a, b2), c) == plus(plus(a2, b), c) for c in els)

    class_of = [-1] * (size * size)
    reps: list[tuple[int, int]] = []
    for a in els:
        for b in els:
            idx = a * size + b
            for ci, (ra, rb) in enumerate(reps):
                if equiv(a, b, ra, rb):
                    class_of[idx] = ci
                    break
            else:
                class_of[idx] = len(reps)
                reps.append((a, b))
    return len(reps), class_of, reps


def ring_reflection(s: FiniteSemiring) -> tuple[FiniteSemiring, SemiringHom]:
    """Universal map of a finite commutative semiring into a ring.

    The result is the group completion of (S, +) with the induced
    multiplication (a,b)*(c,d) = (ac+bd, ad+bc); the returned hom sends a to
    the class of (a, 0) and is universal among semiring maps into rings.
    """
    n, class_of, reps = monoid_completion(s.size, lambda a, b: s.add[a][b], s.zero)

    def pair_add(p, q):
        return (s.add[p[0]][q[0]], s.add[p[1]][q[1]])

    def pair_mul(p, q):
        (a, b), (c, d) = p, q
        return (s.add[s.mul[a][c]][s.mul[b][d]], s.add[s.mul[a][d]][s.mul[b][c]])

    def cls(p):
        return class_of[p[0] * s.size + p[1]]

    add = tuple(tuple(cls(pair_add(reps[i], reps[j])) for j in range(n)) for i in range(n))
    mul = tuple(tuple(cls(pair_mul(reps[i], reps[j])) for j in range(n)) for i in range(n))
    rs = FiniteSemiring(f"R({s.name})", n, add, mul, cls((s.zero, s.zero)), cls((s.one, s.zero)))
    rep = check_semiring(rs)
    if not rep.valid:  # pragma: no cover - completion bug trap
        raise MalformedInputError(f"ring reflection produced an invalid semiring: {rep}")
    r = SemiringHom(s, rs, tuple(cls((a, s.zero)) for a in s.elements()))
    return rs, r


def enumerate_semiring_homs(s: FiniteSemiring, t: FiniteSemiring) -> list[SemiringHom]:
    """All semiring homomorphisms S -> T by brute force over value tables."""
    from itertools import product

    out = []
    for values in product(range(t.size), repeat=s.size):
        h = SemiringHom(s, t, values)
        if h.is_valid():
            out.append(h)
    return out
