"""Enveloping monoids of Lie objects at a degree bound.

U<=d(L) is the truncated tensor algebra of the Lie carrier modulo the
congruence generated, in every word context that fits the bound, by

    x.y  ~  y.x + [x, y]

The quotient is computed two ways behind one interface: over a field base the
congruence is coset equivalence modulo the span of the seed differences
(reduced echelon form, eliminating high-degree coordinates first, so
canonical representatives have minimal top degree); over other bases the
generic worklist closure runs on the enumerated carrier.

The truncation caveat is explicit: U<=d is the degree-<=d fragment of the
untruncated envelope only if no congruence consequence passes through higher
degrees, which ``stability_check`` probes by comparing against degree d+1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import (
    DegreeOverflowError,
    InternalConsistencyError,
    ParameterError,
    PreconditionError,
    ResourceCapError,
)
from .report import ValidationReport
from .semiring import DEFAULT_CAP, FiniteSemiring
from .semimodule import (
    Congruence,
    FinSemimodule,
    FreeSemimodule,
    Hom,
    congruence_closure,
    quotient as quotient_by,
    unit_module,
)
from .tensor import Bimorphism, TensorObject, tensor, tensor_map
from .monoidal import BimonoidObject, ComonoidObject, HopfObject, MonoidObject
from .abelian import inv, is_abelian, negative
from .lie import LieObject, lie_of_monoid
from .tensor_algebra import GradedBimonoid, antipode as graded_antipode, truncated_tensor_algebra


class _FieldRowSpace:
    """Reduced echelon row space of digit vectors over a prime-field base.

    Pivots are the highest nonzero coordinates, kept fully reduced, so the
    canonical representative of a coset zeroes out as much high-degree
    support as possible.
    """

    def __init__(self, base: FiniteSemiring, width: int):
        self.base = base
        self.width = width
        self.neg = [base.neg(a) for a in base.elements()]
        self.inv = [None] * base.size
        for a in base.elements():
            for b in base.elements():
                if base.mul[a][b] == base.one:
                    self.inv[a] = b
        self.rows: list[tuple[int, ...]] = []
        self.pivots: list[int] = []

    def _sub_scaled(self, vec, row, coeff):
        """vec - coeff * row, componentwise."""
        add, mul = self.base.add, self.base.mul
        neg = self.neg
        return [add[v][neg[mul[coeff][r]]] for v, r in zip(vec, row)]

    def reduce(self, vec):
        vec = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            c = vec[piv]
            if c != self.base.zero:
                vec = self._sub_scaled(vec, row, c)
        return vec

    def insert(self, vec) -> bool:
        """Add a vector to the span; returns True if the span grew."""
        vec = self.reduce(vec)
        piv = max((k for k, v in enumerate(vec) if v != self.base.zero), default=None)
        if piv is None:
            return False
        scale = self.inv[vec[piv]]
        vec = [self.base.mul[scale][v] for v in vec]
        self.rows = [
            tuple(self._sub_scaled(row, vec, row[piv])) if row[piv] != self.base.zero else row
            for row in self.rows
        ]
        self.rows.append(tuple(vec))
        self.pivots = [max(k for k, v in enumerate(r) if v != self.base.zero) for r in self.rows]
        order = sorted(range(len(self.rows)), key=lambda i: -self.pivots[i])
        self.rows = [self.rows[i] for i in order]
        self.pivots = [self.pivots[i] for i in order]
        return True

    def canonical_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.rows)


class _FieldQuotient:
    """Quotient of a free carrier by the span of seed differences."""

    def __init__(self, carrier: FreeSemimodule, seeds):
        base = carrier.base
        self.carrier = carrier
        self.space = _FieldRowSpace(base, carrier.rank)
        minus_one = base.neg(base.one)
        for u, v in seeds:
            diff = carrier.add(u, carrier.act(minus_one, v))
            self.space.insert(carrier.digits(diff))
        self.free_positions = sorted(set(range(carrier.rank)) - set(self.space.pivots))
        names = tuple(carrier.basis_names[k] for k in self.free_positions)
        self.module = FreeSemimodule(base, len(self.free_positions), names)
        self.q = Hom.linear(
            carrier, self.module,
            tuple(self._project(carrier.basis_element(k)) for k in range(carrier.rank)),
        )
        self.lift = Hom.linear(
            self.module, carrier,
            tuple(carrier.basis_element(k) for k in self.free_positions),
        )

    def _project(self, x: int) -> int:
        reduced = self.space.reduce(self.carrier.digits(x))
        return self.module.from_digits(reduced[k] for k in self.free_positions)

    def project(self, x: int) -> int:
        return self.q(x)

    def related(self, u: int, v: int) -> bool:
        return self.q(u) == self.q(v)


class _DenseQuotient:
    """Worklist congruence closure on an enumerated carrier."""

    def __init__(self, carrier: FinSemimodule, seeds, cap: int):
        if not carrier.enumerable(cap):
            raise ResourceCapError("envelope carrier enumeration", carrier.size, cap)
        self.carrier = carrier
        self.congruence: Congruence = congruence_closure(carrier, seeds, limit=max(cap, carrier.size))
        self.module, self.q = quotient_by(carrier, self.congruence)
        reps = tuple(blk[0] for blk in self.congruence.blocks)
        self.lift = Hom.from_table(self.module, carrier, reps)

    def project(self, x: int) -> int:
        return self.q(x)

    def related(self, u: int, v: int) -> bool:
        return self.congruence.related(u, v)


@dataclass
class EnvelopeObject:
    lie: LieObject
    degree: int
    algebra: GradedBimonoid
    seeds: tuple[tuple[int, int], ...]
    quotient: FinSemimodule
    q: Hom
    lift: Hom
    mult: Bimorphism
    unit: int
    square: TensorObject
    comult: Hom
    counit: Hom
    lie_embedding: Hom
    name: str = "U"
    _path: object = None

    def as_monoid(self) -> MonoidObject:
        return MonoidObject(self.quotient, self.mult, self.unit, self.name)

    def as_bimonoid(self) -> BimonoidObject:
        return BimonoidObject(
            self.as_monoid(),
            ComonoidObject(self.quotient, self.square, self.comult, self.counit, self.name),
            self.name,
        )

    def as_hopf(self) -> HopfObject:
        bi = self.as_bimonoid()
        return HopfObject(bi.monoid, bi.comonoid, self.name, antipode(self))


def _envelope_seeds(t: GradedBimonoid, lie: LieObject) -> list[tuple[int, int]]:
    """Seed pairs w.x.y.w' ~ w.(y.x).w' + w.[x,y].w' over basis-word contexts."""
    words, carrier = t.words, t.carrier
    rank, d = t.coords.free.rank, t.degree
    from_free = t.coords.from_free
    letters = [from_free(t.coords.free.basis_element(k)) for k in range(rank)]
    seeds = []
    for xk in range(rank):
        for yk in range(rank):
            bracket_word = t.iota1(lie(letters[xk], letters[yk]))
            for n1 in range(0, d - 1):
                for n2 in range(0, d - 1 - n1):
                    for w1 in product(range(rank), repeat=n1):
                        left = carrier.basis_element(words.position(w1))
                        for w2 in product(range(rank), repeat=n2):
                            right = carrier.basis_element(words.position(w2))
                            u = carrier.basis_element(words.position(w1 + (xk, yk) + w2))
                            swapped = carrier.basis_element(words.position(w1 + (yk, xk) + w2))
                            middle = t.mult(t.mult(left, bracket_word), right)
                            seeds.append((u, carrier.add(swapped, middle)))
    return seeds


def enveloping(lie: LieObject, degree: int, cap: int = DEFAULT_CAP,
               name: str | None = None) -> EnvelopeObject:
    """The enveloping monoid of a Lie object at a degree bound (d >= 2)."""
    if degree < 2:
        raise ParameterError("the defining relation needs degree >= 2")
    name = name or f"U<={degree}({lie.name})"
    t = truncated_tensor_algebra(lie.carrier, degree, cap, name=f"T<={degree}({lie.name})")
    seeds = _envelope_seeds(t, lie)

    if t.carrier.base.is_field:
        path = _FieldQuotient(t.carrier, seeds)
    else:
        path = _DenseQuotient(t.carrier, seeds, cap)
    q_mod, q_hom, lift = path.module, path.q, path.lift

    def mult_fn(p, r):
        return q_hom(t.mult(lift(p), lift(r)))

    mult = Bimorphism(q_mod, q_mod, q_mod, fn=mult_fn)
    unit = q_hom(t.unit)

    square = tensor(q_mod, q_mod, cap=max(cap, 1 << 14))
    qq = tensor_map(t.square, square, q_hom, q_hom)
    for u, v in seeds:
        if qq(t.comult(u)) != qq(t.comult(v)):  # pragma: no cover - theorem-level
            raise InternalConsistencyError("comultiplication does not respect the congruence")
        if t.counit(u) != t.counit(v):  # pragma: no cover - theorem-level
            raise InternalConsistencyError("counit does not respect the congruence")

    if isinstance(q_mod, FreeSemimodule):
        comult = Hom.linear(
            q_mod, square.object,
            tuple(qq(t.comult(lift(q_mod.basis_element(k)))) for k in range(q_mod.rank)),
        )
        counit = Hom.linear(
            q_mod, unit_module(t.carrier.base),
            tuple(t.counit(lift(q_mod.basis_element(k))) for k in range(q_mod.rank)),
        )
    else:
        comult = Hom.from_table(
            q_mod, square.object, tuple(qq(t.comult(lift(p))) for p in q_mod.elements())
        )
        counit = Hom.from_table(
            q_mod, unit_module(t.carrier.base),
            tuple(t.counit(lift(p)) for p in q_mod.elements()),
        )

    return EnvelopeObject(
        lie, degree, t, tuple(seeds), q_mod, q_hom, lift, mult, unit,
        square, comult, counit, t.iota1.then(q_hom), name, path,
    )


def antipode(e: EnvelopeObject) -> Hom:
    """The antipode descended from signed word reversal (abelian Lie carriers)."""
    if not is_abelian(e.lie.carrier):
        raise PreconditionError("the envelope antipode needs an abelian Lie carrier")
    s_t = graded_antipode(e.algebra)
    for u, v in e.seeds:
        if e.q(s_t(u)) != e.q(s_t(v)):  # pragma: no cover - theorem-level
            raise InternalConsistencyError("antipode does not respect the congruence")
    if isinstance(e.quotient, FreeSemimodule):
        return Hom.linear(
            e.quotient, e.quotient,
            tuple(e.q(s_t(e.lift(e.quotient.basis_element(k)))) for k in range(e.quotient.rank)),
        )
    return Hom.from_table(
        e.quotient, e.quotient, tuple(e.q(s_t(e.lift(p))) for p in e.quotient.elements())
    )


def check_quotient_compatibility(e: EnvelopeObject, element_budget: int = 1 << 16) -> ValidationReport:
    """The projection is a bimonoid morphism.

    Comultiplications: comult_U o q = (q (x) q) o comult_T elementwise (this
    is the commuting square defining the quotient comultiplication); counits
    agree; multiplication descends on the seed representatives by
    construction.
    """
    rep = ValidationReport(f"{e.name}: projection is a bimonoid morphism")
    t = e.algebra
    qq = tensor_map(t.square, e.square, e.q, e.q)
    if t.carrier.size <= element_budget:
        pts = list(t.carrier.elements(element_budget))
        rep.note(f"checked elementwise over {len(pts)} elements")
    else:
        pts = t.carrier.basis()
        rep.note("checked on the word basis (both sides are homomorphisms)")
    w = next(((x,) for x in pts if e.comult(e.q(x)) != qq(t.comult(x))), None)
    rep.record("comultiplication square commutes", w is None, w or ())
    w = next(((x,) for x in pts if e.counit(e.q(x)) != t.counit(x)), None)
    rep.record("counits agree", w is None, w or ())
    w = next(((x,) for x in pts if e.q(t.mult(x, t.unit)) != e.mult(e.q(x), e.unit)), None)
    rep.record("projection preserves the unit and unital products", w is None, w or ())
    return rep


def check_lie_embedding(e: EnvelopeObject) -> ValidationReport:
    """For abelian Lie carriers the degree-1 embedding is a Lie morphism:
    eta[x, y] = eta(x).eta(y) - eta(y).eta(x) in the quotient."""
    rep = ValidationReport(f"{e.name}: degree-1 embedding is a Lie morphism")
    if not is_abelian(e.lie.carrier):
        raise PreconditionError("stated for abelian Lie carriers")
    lcar = e.lie.carrier
    emb = e.lie_embedding
    w = None
    for x in lcar.elements():
        for y in lcar.elements():
            lhs = emb(e.lie(x, y))
            rhs = e.quotient.add(
                e.mult(emb(x), emb(y)),
                negative(e.quotient, e.mult(emb(y), emb(x))),
            )
            if lhs != rhs:
                w = (x, y)
                break
        if w:
            break
    rep.record("embedding respects brackets", w is None, w or ())
    return rep


def _check_lie_morphism_into_monoid(lie: LieObject, m: MonoidObject, f: Hom) -> None:
    carrier = m.carrier
    for x in lie.carrier.elements():
        fx = f(x)
        if carrier.neg(fx) is None:
            raise PreconditionError(f"image of {x} is not additively invertible in the target")
    for x in lie.carrier.elements():
        for y in lie.carrier.elements():
            lhs = f(lie(x, y))
            rhs = carrier.add(m.product(f(x), f(y)), negative(carrier, m.product(f(y), f(x))))
            if lhs != rhs:
                raise PreconditionError(f"not a Lie morphism into the monoid at ({x}, {y})")


def _word_extension_images(e: EnvelopeObject, m: MonoidObject, letter_images) -> list[int]:
    """Images of the word basis under the multiplicative extension of letter images."""
    t = e.algebra
    images = []
    for p in range(t.words.total):
        acc = m.unit
        for letter in t.words.word_at(p):
            acc = m.product(acc, letter_images[letter])
        images.append(acc)
    return images


def _descend_word_extension(e: EnvelopeObject, m: MonoidObject, word_images) -> Hom | None:
    """The extension as a map on the quotient, or None if it breaks a seed."""
    t = e.algebra
    sharp = Hom.linear(t.carrier, m.carrier, word_images)
    for u, v in e.seeds:
        if sharp(u) != sharp(v):
            return None
    if isinstance(e.quotient, FreeSemimodule):
        return Hom.linear(
            e.quotient, m.carrier,
            tuple(sharp(e.lift(e.quotient.basis_element(k))) for k in range(e.quotient.rank)),
        )
    return Hom.from_table(e.quotient, m.carrier, tuple(sharp(e.lift(p)) for p in e.quotient.elements()))


def universal_factorization(e: EnvelopeObject, m: MonoidObject, f: Hom) -> Hom:
    """The unique multiplicative map out of the envelope extending a Lie
    morphism into the underlying Lie object of a monoid.

    f goes from the Lie carrier into the monoid carrier; it must land in the
    invertible part and respect brackets (PreconditionError otherwise).  The
    returned map composes with the degree-1 embedding back to f and is
    multiplicative on every product defined within the bound; uniqueness is
    structural, because words generate the quotient.
    """
    if not is_abelian(e.lie.carrier):
        raise PreconditionError("the adjunction is stated over abelian Lie carriers")
    if f.source is not e.lie.carrier or f.target is not m.carrier:
        raise ParameterError("factorization needs f: Lie carrier -> monoid carrier")
    _check_lie_morphism_into_monoid(e.lie, m, f)

    coords = e.algebra.coords
    letter_images = [f(coords.from_free(coords.free.basis_element(k)))
                     for k in range(coords.free.rank)]
    ft = _descend_word_extension(e, m, _word_extension_images(e, m, letter_images))
    if ft is None:  # pragma: no cover - theorem-level
        raise InternalConsistencyError("extension of a Lie morphism broke the congruence")
    for x in e.lie.carrier.elements():
        if ft(e.lie_embedding(x)) != f(x):  # pragma: no cover - theorem-level
            raise InternalConsistencyError("factorization does not extend f")
    return ft


def is_multiplicative(e: EnvelopeObject, m: MonoidObject, h: Hom,
                      pair_budget: int = 1 << 12) -> bool:
    """h respects unit and all products of the quotient defined within degree."""
    if h(e.unit) != m.unit:
        return False
    qmod = e.quotient
    if qmod.size <= round(pair_budget ** 0.5) + 1:
        pts = list(qmod.elements())
    elif isinstance(qmod, FreeSemimodule):
        pts = qmod.basis()
    else:
        from .semimodule import generating_log

        pts = generating_log(qmod)[0]
    for x in pts:
        for y in pts:
            try:
                if h(e.mult(x, y)) != m.product(h(x), h(y)):
                    return False
            except DegreeOverflowError:
                continue
    return True


def enumerate_multiplicative_homs(e: EnvelopeObject, m: MonoidObject,
                                  max_candidates: int = 1 << 16) -> list[Hom]:
    """All unit-preserving multiplicative homs out of the envelope, found by
    extending every assignment of degree-1 generator images (complete because
    words generate the quotient as an algebra)."""
    rank = e.algebra.coords.free.rank
    n_candidates = m.carrier.size**rank
    if n_candidates > max_candidates:
        raise ResourceCapError("multiplicative hom enumeration", n_candidates, max_candidates)
    seen = {}
    for letter_images in product(list(m.carrier.elements()), repeat=rank):
        ft = _descend_word_extension(e, m, _word_extension_images(e, m, letter_images))
        if ft is None or not is_multiplicative(e, m, ft):
            continue
        key = ft.table() if e.quotient.enumerable(1 << 14) else tuple(
            ft(e.quotient.basis_element(k)) for k in range(e.quotient.rank)
        )
        seen.setdefault(key, ft)
    return [seen[k] for k in sorted(seen)]


def check_monoid_adjunction(e: EnvelopeObject, m: MonoidObject,
                            max_candidates: int = 1 << 16) -> ValidationReport:
    """Lie morphisms into the underlying Lie object of M correspond
    bijectively to multiplicative homs out of the envelope; both sides are
    enumerated independently."""
    from .lie import enumerate_lie_morphisms

    rep = ValidationReport(f"{e.name} -| Lie adjunction against {m.name}")
    lie_target = lie_of_monoid(m)
    embedding = inv(m.carrier).embedding
    lie_morphs = enumerate_lie_morphisms(e.lie, lie_target, max_candidates)

    built = {}
    for f in lie_morphs:
        f_m = f.then(embedding)
        ft = universal_factorization(e, m, f_m)
        roundtrip = all(ft(e.lie_embedding(x)) == f_m(x) for x in e.lie.carrier.elements())
        if not roundtrip:  # pragma: no cover - asserted in universal_factorization
            rep.record("factorizations restrict back to their Lie morphisms", False, ())
            return rep
        built[ft.table() if e.quotient.enumerable(1 << 14) else tuple(
            ft(e.quotient.basis_element(k)) for k in range(e.quotient.rank))] = ft
    rep.record("factorizations restrict back to their Lie morphisms", True)
    rep.record("factorization is injective", len(built) == len(lie_morphs),
               (len(built), len(lie_morphs)))

    independent = enumerate_multiplicative_homs(e, m, max_candidates)
    keys = sorted(built)
    ind_keys = sorted(
        h.table() if e.quotient.enumerable(1 << 14) else tuple(
            h(e.quotient.basis_element(k)) for k in range(e.quotient.rank))
        for h in independent
    )
    rep.record(
        "factorizations coincide with independently enumerated multiplicative homs",
        keys == ind_keys,
        (len(keys), len(ind_keys)),
    )
    rep.note(f"{len(lie_morphs)} Lie morphisms, {len(independent)} multiplicative homs")
    return rep


def stability_check(lie: LieObject, degree: int, cap: int = DEFAULT_CAP) -> ValidationReport:
    """U<=d agrees with the degree-<=d fragment of U<=(d+1).

    Over a field base this compares the canonical echelon rows of the two
    congruence spans restricted to the low-degree coordinate block; otherwise
    it compares the partitions on the embedded low-degree carrier (the flat
    index of a low-degree element is the same in both carriers).
    """
    rep = ValidationReport(f"envelope stability of {lie.name} at degree {degree}")
    e_low = enveloping(lie, degree, cap)
    e_high = enveloping(lie, degree + 1, cap)
    low_width = e_low.algebra.words.total

    if isinstance(e_low._path, _FieldQuotient) and isinstance(e_high._path, _FieldQuotient):
        low_rows = set(e_low._path.space.canonical_rows())
        restricted = {
            row[:low_width]
            for row, piv in zip(e_high._path.space.rows, e_high._path.space.pivots)
            if piv < low_width
        }
        rep.record("low-degree congruences coincide", restricted == low_rows,
                   (len(restricted), len(low_rows)))
    else:
        sig_to_class: dict[int, int] = {}
        ok = True
        witness = ()
        for x in e_low.algebra.carrier.elements():
            sig = e_high.q(x)
            cls = e_low.q(x)
            if sig in sig_to_class:
                if sig_to_class[sig] != cls:
                    ok, witness = False, (x,)
                    break
            else:
                sig_to_class[sig] = cls
        if ok and len(sig_to_class) != len(set(sig_to_class.values())):
            ok = False
        rep.record("low-degree congruences coincide", ok, witness)
    return rep
