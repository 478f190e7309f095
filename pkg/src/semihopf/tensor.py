"""The entropic tensor product of finite semimodules.

A (x) B is the universal target of bimorphisms out of A x B.  Three engines
build it:

* free x free: the free module on the products of basis elements, with the
  digit outer product as universal bimorphism;
* generic: quotient of the direct sum of |A| copies of B (or the cheaper
  orientation) by the congruence generated by the remaining bilinearity and
  balance relations - exact for any base, bounded by the carrier cap;
* field coordinates: coordinatize both factors as free modules first, then
  use the free engine; this is what keeps iterated tensors of small dense
  modules over zmod p representable.

Every element of the constructed object carries a pure-tensor decomposition,
which is how maps out of tensors get evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalConsistencyError, ParameterError, ResourceCapError
from .report import ValidationReport
from .semiring import DEFAULT_CAP
from .semimodule import (
    Biproduct,
    ENUM_LIMIT,
    FinSemimodule,
    FreeSemimodule,
    Hom,
    PAIR_BUDGET,
    TableSemimodule,
    biproduct,
    congruence_closure,
    enumerate_homs,
    free_coordinates,
    generating_log,
    quotient,
    span_closure,
    unit_module,
)


class Bimorphism:
    """A two-variable map that is a homomorphism in each variable separately."""

    def __init__(self, left, right, target, fn=None, table=None):
        self.left = left
        self.right = right
        self.target = target
        if (fn is None) == (table is None):
            raise ParameterError("Bimorphism needs exactly one of fn / table")
        if table is not None:
            table = tuple(tuple(row) for row in table)
            if len(table) != left.size or any(len(r) != right.size for r in table):
                raise ParameterError("bimorphism table shape must be |left| x |right|")
        self._table = table
        self._fn = fn
        self._cache: dict[tuple[int, int], int] = {}

    @classmethod
    def from_table(cls, left, right, target, table) -> "Bimorphism":
        return cls(left, right, target, table=table)

    @classmethod
    def zero_map(cls, left, right, target) -> "Bimorphism":
        return cls(left, right, target, fn=lambda _a, _b: target.zero)

    def __call__(self, a: int, b: int) -> int:
        if self._table is not None:
            return self._table[a][b]
        key = (a, b)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = self._fn(a, b)
        return hit

    def table(self, limit: int = ENUM_LIMIT):
        if self._table is None:
            self._table = tuple(
                tuple(self(a, b) for b in self.right.elements(limit))
                for a in self.left.elements(limit)
            )
        return self._table

    def partial_left(self, a: int) -> Hom:
        """The homomorphism f(a, -)."""
        return Hom.from_fn(self.right, self.target, lambda b: self(a, b))

    def partial_right(self, b: int) -> Hom:
        return Hom.from_fn(self.left, self.target, lambda a: self(a, b))

    def check(self, limit: int = ENUM_LIMIT, pair_budget: int = PAIR_BUDGET) -> ValidationReport:
        """Each partial map must be a homomorphism.

        Instances whose evaluation leaves a degree window are skipped and
        counted, never treated as violations.
        """
        from .errors import DegreeOverflowError

        rep = ValidationReport("bimorphism")
        cubic = self.left.size * self.right.size * (self.left.size + self.right.size)
        if self.left.enumerable(limit) and cubic <= pair_budget * 4:
            lefts = list(self.left.elements(limit))
            rights = list(self.right.elements(limit))
            rep.note("checked exhaustively")
        else:
            lefts = _generators(self.left)
            rights = _generators(self.right)
            rep.note("checked on generating sets")
        skipped = 0
        tgt = self.target

        def slice_violation(fixed_points, varying, mod, apply):
            nonlocal skipped
            for a in fixed_points:
                try:
                    if apply(a, mod.zero) != tgt.zero:
                        return (a, mod.zero)
                except DegreeOverflowError:
                    skipped += 1
                for x in varying:
                    for y in varying:
                        try:
                            if apply(a, mod.add(x, y)) != tgt.add(apply(a, x), apply(a, y)):
                                return (a, x, y)
                        except DegreeOverflowError:
                            skipped += 1
                    for s in mod.base.elements():
                        try:
                            if apply(a, mod.act(s, x)) != tgt.act(s, apply(a, x)):
                                return (a, s, x)
                        except DegreeOverflowError:
                            skipped += 1
            return None

        w = slice_violation(lefts, rights, self.right, lambda a, b: self(a, b))
        rep.record("left slices are homomorphisms", w is None, w or ())
        w = slice_violation(rights, lefts, self.left, lambda a, b: self(b, a))
        rep.record("right slices are homomorphisms", w is None, w or ())
        if skipped:
            rep.note(f"{skipped} instances skipped (degree overflow)")
        return rep


def _generators(m: FinSemimodule):
    if isinstance(m, FreeSemimodule):
        return m.basis()
    return generating_log(m)[0]


class TensorObject:
    """A (x) B: carrier, universal bimorphism and per-element decompositions."""

    def __init__(self, left, right, obj, univ: Bimorphism, decompose_fn, basis_pairs=None):
        self.left = left
        self.right = right
        self.object = obj
        self.univ = univ
        self._decompose = decompose_fn
        # pure-tensor pairs mapping to a generating set of the carrier, when linear
        self.basis_pairs = basis_pairs

    def pure(self, a: int, b: int) -> int:
        return self.univ(a, b)

    def decompose(self, t: int) -> tuple[tuple[int, int], ...]:
        """A pure-tensor decomposition t = sum of a_i (x) b_i."""
        return self._decompose(t)

    @property
    def gen(self):
        """The generator table (a, b) -> element index."""
        return self.univ.table()

    def check_generation(self, limit: int = ENUM_LIMIT) -> bool:
        image = {
            self.univ(a, b)
            for a in self.left.elements(limit)
            for b in self.right.elements(limit)
        }
        return len(span_closure(self.object, image, limit)) == self.object.size


def _tensor_free(a: FreeSemimodule, b: FreeSemimodule) -> TensorObject:
    base = a.base
    names = tuple(f"{na}.{nb}" for na in a.basis_names for nb in b.basis_names)
    obj = FreeSemimodule(base, a.rank * b.rank, names)
    mul = base.mul

    def univ_fn(x, y):
        dx, dy = a.digits(x), b.digits(y)
        return obj.from_digits(mul[da][db] for da in dx for db in dy)

    def decompose(t):
        out = []
        for c, p in obj.scaled_terms(t):
            i, j = divmod(p, b.rank)
            out.append((a.act(c, a.basis_element(i)), b.basis_element(j)))
        return tuple(out)

    pairs = [(a.basis_element(i), b.basis_element(j)) for i in range(a.rank) for j in range(b.rank)]
    return TensorObject(a, b, obj, Bimorphism(a, b, obj, fn=univ_fn), decompose, pairs)


class _PowerModule(FinSemimodule):
    """Direct sum of n copies of a module; digits are component elements."""

    def __init__(self, part: FinSemimodule, copies: int):
        self.base = part.base
        self.part = part
        self.copies = copies
        self.size = part.size**copies
        self.zero = 0

    def digits(self, i):
        q, out = i, []
        for _ in range(self.copies):
            q, r = divmod(q, self.part.size)
            out.append(r)
        return tuple(out)

    def from_digits(self, ds):
        out = 0
        for d in reversed(tuple(ds)):
            out = out * self.part.size + d
        return out

    def inject(self, pos: int, x: int) -> int:
        return x * self.part.size**pos

    def add(self, i, j):
        return self.from_digits(self.part.add(x, y) for x, y in zip(self.digits(i), self.digits(j)))

    def act(self, s, i):
        return self.from_digits(self.part.act(s, x) for x in self.digits(i))

    def element_name(self, i):
        return "(" + ",".join(self.part.element_name(x) for x in self.digits(i)) + ")"


def _tensor_generic(a: FinSemimodule, b: FinSemimodule, cap: int) -> TensorObject:
    """Quotient construction.

    A (x) B is the direct sum of one copy of B per element of A (every element
    is then automatically a sum of pure tensors), modulo the congruence
    generated by left additivity, the balancing relation and the left zero
    law; the right-hand laws already hold in the direct sum.
    """
    flip = b.size**a.size > a.size**b.size
    idx, val = (b, a) if flip else (a, b)
    d_size = val.size**idx.size
    if d_size > cap:
        raise ResourceCapError("tensor carrier enumeration", d_size, cap)
    d = _PowerModule(val, idx.size)

    seeds = []
    for i1 in idx.elements():
        for i2 in idx.elements():
            for x in val.elements():
                seeds.append(
                    (d.add(d.inject(i1, x), d.inject(i2, x)), d.inject(idx.add(i1, i2), x))
                )
    for s in idx.base.elements():
        for i in idx.elements():
            for x in val.elements():
                seeds.append((d.inject(idx.act(s, i), x), d.inject(i, val.act(s, x))))
    for x in val.elements():
        seeds.append((d.inject(idx.zero, x), d.zero))

    cong = congruence_closure(d, seeds, limit=max(cap, d_size))
    obj, proj = quotient(d, cong)

    if flip:
        table = tuple(tuple(proj(d.inject(y, x)) for y in b.elements()) for x in a.elements())
    else:
        table = tuple(tuple(proj(d.inject(x, y)) for y in b.elements()) for x in a.elements())
    univ = Bimorphism.from_table(a, b, obj, table)

    reps = [blk[0] for blk in cong.blocks]

    def decompose(t):
        digits = d.digits(reps[t])
        if flip:
            return tuple((x, i) for i, x in enumerate(digits) if x != val.zero)
        return tuple((i, x) for i, x in enumerate(digits) if x != val.zero)

    t = TensorObject(a, b, obj, univ, decompose)
    if not t.check_generation():  # pragma: no cover - construction bug trap
        raise InternalConsistencyError("tensor carrier is not generated by pure tensors")
    return t


def _tensor_coords(a: FinSemimodule, b: FinSemimodule, limit: int = ENUM_LIMIT) -> TensorObject | None:
    ca = free_coordinates(a, limit)
    cb = free_coordinates(b, limit)
    if ca is None or cb is None:
        return None
    inner = _tensor_free(ca.free, cb.free)

    def univ_fn(x, y):
        return inner.univ(ca.to_free(x), cb.to_free(y))

    def decompose(t):
        return tuple((ca.from_free(u), cb.from_free(v)) for u, v in inner.decompose(t))

    pairs = [(ca.from_free(u), cb.from_free(v)) for u, v in inner.basis_pairs]
    return TensorObject(a, b, inner.object, Bimorphism(a, b, inner.object, fn=univ_fn), decompose, pairs)


def tensor(a: FinSemimodule, b: FinSemimodule, cap: int = DEFAULT_CAP) -> TensorObject:
    """The universal object A (x) B.

    Dispatch: free factors use the free engine; small pairs use the generic
    quotient engine; dense factors over a field base fall back to free
    coordinates.  Anything else is a resource error naming the stage.
    """
    if a.base != b.base:
        raise ParameterError("tensor factors must share a base semiring")
    if isinstance(a, FreeSemimodule) and isinstance(b, FreeSemimodule):
        return _tensor_free(a, b)
    d_size = min(a.size**b.size if b.enumerable() else float("inf"),
                 b.size**a.size if a.enumerable() else float("inf"))
    if d_size <= cap:
        return _tensor_generic(a, b, cap)
    byc = _tensor_coords(a, b)
    if byc is not None:
        return byc
    raise ResourceCapError("tensor carrier enumeration", d_size, cap)


def factor_bimorphism(t: TensorObject, f: Bimorphism, verify: bool = True) -> Hom:
    """The unique homomorphism g with g o univ = f.

    Existence is guaranteed by universality, so a mismatch is a bug trap, not
    a user error.
    """
    if f.left is not t.left or f.right is not t.right:
        raise ParameterError("bimorphism sources must match the tensor factors")
    c = f.target
    if t.basis_pairs is not None and isinstance(t.object, FreeSemimodule):
        g = Hom.linear(t.object, c, tuple(f(a, b) for a, b in t.basis_pairs))
    else:
        table = tuple(
            c.sum(f(a, b) for a, b in t.decompose(q)) for q in t.object.elements()
        )
        g = Hom.from_table(t.object, c, table)
    if verify:
        if t.left.enumerable() and t.left.size * t.right.size <= PAIR_BUDGET:
            pairs = ((a, b) for a in t.left.elements() for b in t.right.elements())
        else:
            pairs = iter(t.basis_pairs or ())
        for a, b in pairs:
            if g(t.univ(a, b)) != f(a, b):  # pragma: no cover - universality bug trap
                raise InternalConsistencyError(
                    f"factorization failed at pure tensor ({a}, {b})"
                )
    return g


def tensor_map(src: TensorObject, tgt: TensorObject, f: Hom, g: Hom) -> Hom:
    """f (x) g as a homomorphism between constructed tensor objects."""
    bim = Bimorphism(src.left, src.right, tgt.object, fn=lambda a, b: tgt.univ(f(a), g(b)))
    return factor_bimorphism(src, bim, verify=False)


@dataclass(frozen=True)
class HomObject:
    """[A, B]: the module of all homomorphisms with pointwise structure."""

    object: TableSemimodule
    homs: tuple[Hom, ...]

    @property
    def size(self):
        return self.object.size


def hom_object(a: FinSemimodule, b: FinSemimodule, max_candidates: int = 1 << 20) -> HomObject:
    homs = enumerate_homs(a, b, max_candidates)
    tables = [h.table() for h in homs]
    index = {t: i for i, t in enumerate(tables)}
    zero_tab = tuple(b.zero for _ in a.elements())

    def add_h(i, j):
        return index[tuple(b.add(x, y) for x, y in zip(tables[i], tables[j]))]

    def act_h(s, i):
        return index[tuple(b.act(s, x) for x in tables[i])]

    n = len(homs)
    add = tuple(tuple(add_h(i, j) for j in range(n)) for i in range(n))
    act = tuple(tuple(act_h(s, i) for i in range(n)) for s in a.base.elements())
    names = tuple(f"h{i}" for i in range(n))
    obj = TableSemimodule(a.base, n, add, index[zero_tab], act, names)
    return HomObject(obj, tuple(homs))


@dataclass(frozen=True)
class UnitIso:
    tensor: TensorObject
    to_plain: Hom
    from_plain: Hom


def unit_left_iso(a: FinSemimodule, cap: int = DEFAULT_CAP) -> UnitIso:
    """F1 (x) A ~ A via s (x) x -> s.x."""
    f1 = unit_module(a.base)
    t = tensor(f1, a, cap)
    to_plain = factor_bimorphism(t, Bimorphism(f1, a, a, fn=lambda s, x: a.act(s, x)))
    from_plain = Hom.from_fn(a, t.object, lambda x: t.univ(a.base.one, x))
    return UnitIso(t, to_plain, from_plain)


def unit_right_iso(a: FinSemimodule, cap: int = DEFAULT_CAP) -> UnitIso:
    """A (x) F1 ~ A via x (x) s -> s.x."""
    f1 = unit_module(a.base)
    t = tensor(a, f1, cap)
    to_plain = factor_bimorphism(t, Bimorphism(a, f1, a, fn=lambda x, s: a.act(s, x)))
    from_plain = Hom.from_fn(a, t.object, lambda x: t.univ(x, a.base.one))
    return UnitIso(t, to_plain, from_plain)


@dataclass(frozen=True)
class SymmetryIso:
    tensor_ab: TensorObject
    tensor_ba: TensorObject
    swap: Hom
    swap_back: Hom


def symmetry_iso(t_ab: TensorObject, t_ba: TensorObject) -> SymmetryIso:
    swap = factor_bimorphism(
        t_ab, Bimorphism(t_ab.left, t_ab.right, t_ba.object, fn=lambda a, b: t_ba.univ(b, a))
    )
    swap_back = factor_bimorphism(
        t_ba, Bimorphism(t_ba.left, t_ba.right, t_ab.object, fn=lambda b, a: t_ab.univ(a, b))
    )
    return SymmetryIso(t_ab, t_ba, swap, swap_back)


@dataclass(frozen=True)
class AssociatorIso:
    left_nested: TensorObject  # (A (x) B) (x) C
    right_nested: TensorObject  # A (x) (B (x) C)
    tensor_ab: TensorObject
    tensor_bc: TensorObject
    reassociate: Hom  # (A (x) B) (x) C -> A (x) (B (x) C)


def associator_iso(a, b, c, cap: int = DEFAULT_CAP, t_ab: TensorObject | None = None,
                   t_bc: TensorObject | None = None) -> AssociatorIso:
    t_ab = t_ab if t_ab is not None else tensor(a, b, cap)
    t_abc = tensor(t_ab.object, c, cap)
    t_bc = t_bc if t_bc is not None else tensor(b, c, cap)
    t_a_bc = tensor(a, t_bc.object, cap)

    per_c: dict[int, Hom] = {}

    def slice_for(z: int) -> Hom:
        h = per_c.get(z)
        if h is None:
            bim = Bimorphism(a, b, t_a_bc.object, fn=lambda x, y: t_a_bc.univ(x, t_bc.univ(y, z)))
            h = per_c[z] = factor_bimorphism(t_ab, bim, verify=False)
        return h

    reassoc = factor_bimorphism(
        t_abc,
        Bimorphism(t_ab.object, c, t_a_bc.object, fn=lambda t, z: slice_for(z)(t)),
        verify=False,
    )
    return AssociatorIso(t_abc, t_a_bc, t_ab, t_bc, reassoc)


@dataclass(frozen=True)
class CanonicalIsos:
    unit_left: UnitIso
    unit_right: UnitIso
    symmetry: SymmetryIso
    associator: AssociatorIso


def canonical_isos(a, b, c, cap: int = DEFAULT_CAP) -> CanonicalIsos:
    """The unit, symmetry and associativity isomorphisms for (A, B, C)."""
    t_ab = tensor(a, b, cap)
    t_ba = tensor(b, a, cap)
    return CanonicalIsos(
        unit_left_iso(a, cap),
        unit_right_iso(a, cap),
        symmetry_iso(t_ab, t_ba),
        associator_iso(a, b, c, cap),
    )


@dataclass(frozen=True)
class Insertions:
    """Tensoring with a fixed element on either side, plus their pairing."""

    tensor_ab: TensorObject
    tensor_ba: TensorObject
    pair_object: Biproduct
    right: Hom  # a -> a (x) b
    left: Hom  # a -> b (x) a
    paired: Hom  # a -> (A (x) B) x (B (x) A)


def element_insertions(a: FinSemimodule, b: FinSemimodule, elt: int, cap: int = DEFAULT_CAP) -> Insertions:
    t_ab = tensor(a, b, cap)
    t_ba = tensor(b, a, cap)
    right = Hom.from_fn(a, t_ab.object, lambda x: t_ab.univ(x, elt))
    left = Hom.from_fn(a, t_ba.object, lambda x: t_ba.univ(elt, x))
    prod = biproduct(t_ab.object, t_ba.object, cap=max(cap, t_ab.object.size * t_ba.object.size))
    paired = Hom.from_fn(
        a, prod.object, lambda x: prod.object.add(prod.inject_left(right(x)), prod.inject_right(left(x)))
    )
    return Insertions(t_ab, t_ba, prod, right, left, paired)


def primitive_coproduct(square: TensorObject, unit_elt: int) -> Hom:
    """The map x -> x (x) 1 + 1 (x) x into the tensor square of a carrier."""
    carrier = square.left
    obj = square.object
    return Hom.from_fn(
        carrier, obj, lambda x: obj.add(square.univ(x, unit_elt), square.univ(unit_elt, x))
    )
