"""Finite semimodules over a fixed finite commutative semiring.

Two carrier representations share one interface:

* ``TableSemimodule`` - dense addition/action tables, exhaustively checkable;
  every declared fixture lives here.
* ``FreeSemimodule`` - rank-r free module whose elements are base-|S| digit
  vectors encoded as (possibly huge) integers; operations are computed
  digitwise and nothing is materialized, which is what lets tensor powers and
  graded carriers scale past the dense cap.

Homomorphisms are stored as dense index arrays when the source is small and
as basis images (linear extension) when the source is a free module.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product

from .errors import (
    InternalConsistencyError,
    MalformedInputError,
    ParameterError,
    ResourceCapError,
)
from .report import ValidationReport
from .semiring import DEFAULT_CAP, FiniteSemiring, _check_table

# Elementwise law checks fall back from exhaustive enumeration to generating
# sets past these budgets; reports say which regime ran.
ENUM_LIMIT = 1 << 17
PAIR_BUDGET = 1 << 16
TRIPLE_BUDGET = 1 << 18


class FinSemimodule:
    """Common interface of all finite-semimodule carriers."""

    base: FiniteSemiring
    size: int
    zero: int

    def add(self, i: int, j: int) -> int:
        raise NotImplementedError

    def act(self, s: int, i: int) -> int:
        raise NotImplementedError

    def element_name(self, i: int) -> str:
        raise NotImplementedError

    def elements(self, limit: int = ENUM_LIMIT):
        if self.size > limit:
            raise ResourceCapError("carrier enumeration", self.size, limit)
        return range(self.size)

    def enumerable(self, limit: int = ENUM_LIMIT) -> bool:
        return self.size <= limit

    def sum(self, xs) -> int:
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def neg(self, i: int) -> int | None:
        """Additive inverse, or None.  Exhaustive search on dense carriers."""
        for j in self.elements():
            if self.add(i, j) == self.zero:
                return j
        return None

    def describe(self) -> str:
        return f"{type(self).__name__} of size {self.size} over {self.base.name}"


class TableSemimodule(FinSemimodule):
    """Dense-table semimodule; the representation of every declared fixture."""

    def __init__(self, base: FiniteSemiring, size: int, add, zero: int, act, names=None):
        if size <= 0:
            raise MalformedInputError("carrier must be nonempty")
        self.base = base
        self.size = size
        self._add = _check_table(add, size, size, size, "add")
        self._act = _check_table(act, base.size, size, size, "act")
        if not isinstance(zero, int) or not (0 <= zero < size):
            raise MalformedInputError(f"zero = {zero!r} is not a carrier index")
        self.zero = zero
        if names is None:
            names = tuple(str(i) for i in range(size))
        if len(names) != size or len(set(names)) != size:
            raise MalformedInputError("element names must be distinct and one per element")
        self.names = tuple(names)

    def add(self, i, j):
        return self._add[i][j]

    def act(self, s, i):
        return self._act[s][i]

    def element_name(self, i):
        return self.names[i]


class FreeSemimodule(FinSemimodule):
    """Free module of a given rank; elements are base-|S| digit integers."""

    def __init__(self, base: FiniteSemiring, rank: int, basis_names=None):
        if rank < 0:
            raise ParameterError("rank must be >= 0")
        self.base = base
        self.rank = rank
        self.size = base.size**rank
        self.zero = 0
        if basis_names is None:
            basis_names = tuple(f"x{k}" for k in range(rank))
        if len(basis_names) != rank:
            raise MalformedInputError("need one basis name per rank")
        self.basis_names = tuple(basis_names)
        # zmod2 addition is plain xor on the encoded integer
        self._xor = base.size == 2 and base.zero == 0 and base.add[1][1] == 0

    def digits(self, i: int) -> tuple[int, ...]:
        if self.base.size == 2:
            return tuple((i >> k) & 1 for k in range(self.rank))
        q, out = i, []
        for _ in range(self.rank):
            q, r = divmod(q, self.base.size)
            out.append(r)
        return tuple(out)

    def from_digits(self, ds) -> int:
        out = 0
        for d in reversed(tuple(ds)):
            out = out * self.base.size + d
        return out

    def basis_element(self, k: int) -> int:
        return self.base.one * self.base.size**k

    def basis(self) -> list[int]:
        return [self.basis_element(k) for k in range(self.rank)]

    def add(self, i, j):
        if self._xor:
            return i ^ j
        tbl = self.base.add
        return self.from_digits(tbl[a][b] for a, b in zip(self.digits(i), self.digits(j)))

    def act(self, s, i):
        if self._xor:
            return i if s else 0
        tbl = self.base.mul
        return self.from_digits(tbl[s][d] for d in self.digits(i))

    def neg(self, i):
        minus_one = self.base.neg(self.base.one)
        if minus_one is not None:
            return self.act(minus_one, i)
        return super().neg(i)

    def scaled_terms(self, i: int):
        """Nonzero digits as (coefficient, position) pairs."""
        if self.base.size == 2 and self.base.zero == 0:
            out = []
            while i:
                low = i & -i
                out.append((1, low.bit_length() - 1))
                i ^= low
            return out
        return [(c, k) for k, c in enumerate(self.digits(i)) if c != self.base.zero]

    def element_name(self, i):
        terms = []
        for c, k in self.scaled_terms(i):
            nm = self.basis_names[k] if self.rank else ""
            terms.append(nm if c == self.base.one else f"{c}*{nm}")
        return " + ".join(terms) if terms else "0"

    def describe(self):
        return f"free module of rank {self.rank} (size {self.size}) over {self.base.name}"


def free(base: FiniteSemiring, rank: int, cap: int = DEFAULT_CAP, basis_names=None) -> FreeSemimodule:
    """Free module of the given rank, subject to the carrier cap."""
    if rank < 0:
        raise ParameterError("rank must be >= 0")
    if base.size**rank > cap:
        raise ResourceCapError("free module construction", base.size**rank, cap)
    return FreeSemimodule(base, rank, basis_names)


def unit_module(base: FiniteSemiring) -> FreeSemimodule:
    """The rank-1 free module: the monoidal unit.  Indices are scalar indices."""
    return FreeSemimodule(base, 1, ("1",))


class Hom:
    """A semimodule homomorphism.

    Backed by a dense table, by basis images on a free source (linear
    extension), or by a cached callable.  All three answer ``__call__``.
    """

    def __init__(self, source, target, table=None, fn=None, basis_images=None):
        self.source = source
        self.target = target
        given = sum(x is not None for x in (table, fn, basis_images))
        if given != 1:
            raise ParameterError("Hom needs exactly one of table / fn / basis_images")
        if table is not None:
            table = tuple(table)
            if len(table) != source.size:
                raise MalformedInputError("hom table length must equal the source size")
        if basis_images is not None:
            if not isinstance(source, FreeSemimodule):
                raise ParameterError("basis_images requires a free source")
            basis_images = tuple(basis_images)
            if len(basis_images) != source.rank:
                raise MalformedInputError("need one image per basis element")
        self._table = table
        self._fn = fn
        self._basis_images = basis_images
        self._cache: dict[int, int] = {}

    @classmethod
    def from_table(cls, source, target, table) -> "Hom":
        return cls(source, target, table=table)

    @classmethod
    def from_fn(cls, source, target, fn) -> "Hom":
        return cls(source, target, fn=fn)

    @classmethod
    def linear(cls, source: FreeSemimodule, target, basis_images) -> "Hom":
        return cls(source, target, basis_images=basis_images)

    @classmethod
    def zero_map(cls, source, target) -> "Hom":
        return cls(source, target, fn=lambda _i: target.zero)

    @classmethod
    def identity(cls, module) -> "Hom":
        return cls(module, module, fn=lambda i: i)

    def __call__(self, i: int) -> int:
        if self._table is not None:
            return self._table[i]
        hit = self._cache.get(i)
        if hit is not None:
            return hit
        if self._basis_images is not None:
            src, tgt = self.source, self.target
            out = tgt.zero
            for c, k in src.scaled_terms(i):
                out = tgt.add(out, tgt.act(c, self._basis_images[k]))
        else:
            out = self._fn(i)
        self._cache[i] = out
        return out

    def table(self, limit: int = ENUM_LIMIT) -> tuple[int, ...]:
        if self._table is None:
            self._table = tuple(self(i) for i in self.source.elements(limit))
        return self._table

    def then(self, g: "Hom") -> "Hom":
        """Composition: first self, then g."""
        if isinstance(self.source, FreeSemimodule) and self._basis_images is not None:
            return Hom.linear(self.source, g.target, tuple(g(v) for v in self._basis_images))
        return Hom.from_fn(self.source, g.target, lambda i: g(self(i)))

    def check(self, limit: int = ENUM_LIMIT, pair_budget: int = PAIR_BUDGET) -> ValidationReport:
        """Preservation of zero, addition and scalar action.

        Exhaustive over all pairs when affordable; otherwise checks a
        generating set, which is exact for maps already known to be linear.
        """
        a, b = self.source, self.target
        rep = ValidationReport("hom")
        rep.record("maps zero to zero", self(a.zero) == b.zero, (a.zero,))
        if a.enumerable(limit) and a.size * a.size <= pair_budget:
            pts = list(a.elements(limit))
            rep.note(f"checked exhaustively over {len(pts)} elements")
        else:
            pts = generating_log(a)[0] if not isinstance(a, FreeSemimodule) else a.basis()
            rep.note(f"checked on a generating set of {len(pts)} elements")
        for x in pts:
            fx = self(x)
            for y in pts:
                if self(a.add(x, y)) != b.add(fx, self(y)):
                    rep.record("preserves addition", False, (x, y))
                    return rep
            for s in a.base.elements():
                if self(a.act(s, x)) != b.act(s, fx):
                    rep.record("preserves scalar action", False, (s, x))
                    return rep
        rep.record("preserves addition", True)
        rep.record("preserves scalar action", True)
        return rep

    def is_valid(self) -> bool:
        return self.check().valid

    def __repr__(self):
        return f"Hom({self.source.describe()} -> {self.target.describe()})"


def homs_equal(f: Hom, g: Hom, limit: int = ENUM_LIMIT) -> bool:
    """Pointwise equality; on non-enumerable free sources compares basis images
    (exact provided both maps are homomorphisms)."""
    if f.source.size != g.source.size or f.target.size != g.target.size:
        return False
    src = f.source
    if src.enumerable(limit):
        return all(f(i) == g(i) for i in src.elements(limit))
    if isinstance(src, FreeSemimodule):
        return all(f(e) == g(e) for e in src.basis())
    raise ResourceCapError("hom comparison", src.size, limit)


def check_semimodule(m: FinSemimodule, triple_budget: int = TRIPLE_BUDGET) -> ValidationReport:
    """Exhaustive commutative-monoid and scalar-action laws with witnesses."""
    rep = ValidationReport(m.describe())
    els = list(m.elements())
    base = m.base

    add_assoc_ok, assoc_witness = True, ()
    if len(els) ** 3 <= triple_budget:
        triples = ((x, y, z) for x in els for y in els for z in els)
        rep.note("associativity checked over all triples")
    else:
        gens, _ = generating_log(m)
        triples = ((x, y, z) for x in gens for y in gens for z in gens)
        rep.note(f"associativity checked over generating triples ({len(gens)} generators)")
    for x, y, z in triples:
        if m.add(m.add(x, y), z) != m.add(x, m.add(y, z)):
            add_assoc_ok, assoc_witness = False, (x, y, z)
            break
    rep.record("addition associative", add_assoc_ok, assoc_witness)

    w = next(((x, y) for x in els for y in els if m.add(x, y) != m.add(y, x)), None)
    rep.record("addition commutative", w is None, w or ())
    w = next(((x,) for x in els if m.add(m.zero, x) != x), None)
    rep.record("zero is additive unit", w is None, w or ())

    w = next(((x,) for x in els if m.act(base.one, x) != x), None)
    rep.record("unit scalar acts as identity", w is None, w or ())
    w = next(
        (
            (s, t, x)
            for s in base.elements()
            for t in base.elements()
            for x in els
            if m.act(s, m.act(t, x)) != m.act(base.mul[s][t], x)
        ),
        None,
    )
    rep.record("action is multiplicative in the scalar", w is None, w or ())
    w = next(
        (
            (s, x, y)
            for s in base.elements()
            for x in els
            for y in els
            if m.act(s, m.add(x, y)) != m.add(m.act(s, x), m.act(s, y))
        ),
        None,
    )
    rep.record("action distributes over addition", w is None, w or ())
    w = next(
        (
            (s, t, x)
            for s in base.elements()
            for t in base.elements()
            for x in els
            if m.act(base.add[s][t], x) != m.add(m.act(s, x), m.act(t, x))
        ),
        None,
    )
    rep.record("action is additive in the scalar", w is None, w or ())
    w = next(((s,) for s in base.elements() if m.act(s, m.zero) != m.zero), None)
    rep.record("scalars fix zero", w is None, w or ())
    w = next(((x,) for x in els if m.act(base.zero, x) != m.zero), None)
    rep.record("zero scalar kills", w is None, w or ())
    return rep


def span_closure(m: FinSemimodule, seed, limit: int = ENUM_LIMIT) -> list[int]:
    """Closure of a set of elements under addition and scalar action (sorted)."""
    known = {m.zero}
    queue = deque()
    for x in seed:
        if x not in known:
            known.add(x)
            queue.append(x)
    while queue:
        if len(known) > limit:
            raise ResourceCapError("span closure", len(known), limit)
        x = queue.popleft()
        for s in m.base.elements():
            y = m.act(s, x)
            if y not in known:
                known.add(y)
                queue.append(y)
        for y in list(known):
            z = m.add(x, y)
            if z not in known:
                known.add(z)
                queue.append(z)
    return sorted(known)


def generating_log(m: FinSemimodule, limit: int = ENUM_LIMIT):
    """Greedy generating set plus a replayable construction log.

    Log entries: ('zero', e), ('gen', k, e), ('add', e, u, v), ('act', e, s, u).
    Replaying the log against images of the generators reconstructs the unique
    structure-compatible extension (see ``extend_from_log``).
    """
    log: list[tuple] = [("zero", m.zero)]
    known = {m.zero}
    order = [m.zero]
    gens: list[int] = []

    def close():
        changed = True
        while changed:
            changed = False
            snapshot = list(order)
            for u in snapshot:
                for s in m.base.elements():
                    w = m.act(s, u)
                    if w not in known:
                        known.add(w)
                        order.append(w)
                        log.append(("act", w, s, u))
                        changed = True
            for u in snapshot:
                for v in order[:]:
                    w = m.add(u, v)
                    if w not in known:
                        known.add(w)
                        order.append(w)
                        log.append(("add", w, u, v))
                        changed = True

    for x in m.elements(limit):
        if x not in known:
            gens.append(x)
            known.add(x)
            order.append(x)
            log.append(("gen", len(gens) - 1, x))
            close()
    return gens, log


def extend_from_log(log, gen_images, target: FinSemimodule) -> dict[int, int]:
    """Replay a generating log, assigning an image to every source element."""
    img: dict[int, int] = {}
    for entry in log:
        kind = entry[0]
        if kind == "zero":
            img[entry[1]] = target.zero
        elif kind == "gen":
            img[entry[2]] = gen_images[entry[1]]
        elif kind == "add":
            _, w, u, v = entry
            img[w] = target.add(img[u], img[v])
        else:
            _, w, s, u = entry
            img[w] = target.act(s, img[u])
    return img


def is_hom_table(a: FinSemimodule, b: FinSemimodule, table) -> bool:
    if table[a.zero] != b.zero:
        return False
    for x in a.elements():
        fx = table[x]
        for y in a.elements():
            if table[a.add(x, y)] != b.add(fx, table[y]):
                return False
        for s in a.base.elements():
            if table[a.act(s, x)] != b.act(s, fx):
                return False
    return True


def enumerate_homs(a: FinSemimodule, b: FinSemimodule, max_candidates: int = 1 << 20) -> list[Hom]:
    """Complete, duplicate-free list of homomorphisms A -> B.

    Candidates are assignments of images to a greedy generating set of A,
    extended by replaying the construction log and then validated in full.
    """
    if a.base != b.base:
        raise ParameterError("hom enumeration needs a common base semiring")
    gens, log = generating_log(a)
    n_candidates = b.size ** len(gens)
    if n_candidates > max_candidates:
        raise ResourceCapError("hom enumeration", n_candidates, max_candidates)
    out = []
    for images in product(range(b.size), repeat=len(gens)):
        mapping = extend_from_log(log, images, b)
        table = tuple(mapping[i] for i in range(a.size))
        if is_hom_table(a, b, table):
            out.append(Hom.from_table(a, b, table))
    out.sort(key=lambda h: h.table())
    return out


@dataclass(frozen=True)
class Biproduct:
    object: TableSemimodule
    inject_left: Hom
    inject_right: Hom
    project_left: Hom
    project_right: Hom


def biproduct(a: FinSemimodule, b: FinSemimodule, cap: int = DEFAULT_CAP) -> Biproduct:
    """A + B = A x B with the usual injections and projections."""
    if a.base != b.base:
        raise ParameterError("biproduct needs a common base semiring")
    size = a.size * b.size
    if size > cap:
        raise ResourceCapError("biproduct construction", size, cap)

    def pair(x, y):
        return x * b.size + y

    add = tuple(
        tuple(pair(a.add(x1, x2), b.add(y1, y2)) for x2 in a.elements() for y2 in b.elements())
        for x1 in a.elements()
        for y1 in b.elements()
    )
    act = tuple(
        tuple(pair(a.act(s, x), b.act(s, y)) for x in a.elements() for y in b.elements())
        for s in a.base.elements()
    )
    names = tuple(
        f"({a.element_name(x)},{b.element_name(y)})" for x in a.elements() for y in b.elements()
    )
    obj = TableSemimodule(a.base, size, add, pair(a.zero, b.zero), act, names)
    return Biproduct(
        obj,
        Hom.from_fn(a, obj, lambda x: pair(x, b.zero)),
        Hom.from_fn(b, obj, lambda y: pair(a.zero, y)),
        Hom.from_fn(obj, a, lambda p: p // b.size),
        Hom.from_fn(obj, b, lambda p: p % b.size),
    )


def submodule(m: FinSemimodule, members, name_prefix: str = "") -> tuple[TableSemimodule, Hom]:
    """The subalgebra on a closed subset, with its embedding.

    The subset must contain zero and be closed under addition and action;
    a violation is a caller bug, not user input, hence the hard error.
    """
    members = sorted(set(members))
    index = {x: i for i, x in enumerate(members)}
    if m.zero not in index:
        raise InternalConsistencyError("submodule carrier must contain zero")
    for x in members:
        for y in members:
            if m.add(x, y) not in index:
                raise InternalConsistencyError(f"subset not closed under addition at ({x}, {y})")
        for s in m.base.elements():
            if m.act(s, x) not in index:
                raise InternalConsistencyError(f"subset not closed under action at ({s}, {x})")
    add = tuple(tuple(index[m.add(x, y)] for y in members) for x in members)
    act = tuple(tuple(index[m.act(s, x)] for x in members) for s in m.base.elements())
    names = tuple(name_prefix + m.element_name(x) for x in members)
    sub = TableSemimodule(m.base, len(members), add, index[m.zero], act, names)
    embed = Hom.from_table(sub, m, tuple(members))
    return sub, embed


def equalizer(f: Hom, g: Hom) -> tuple[TableSemimodule, Hom]:
    """The subobject {x : f(x) = g(x)} with its embedding."""
    if f.source is not g.source or f.target is not g.target:
        raise ParameterError("equalizer needs a parallel pair")
    members = [x for x in f.source.elements() if f(x) == g(x)]
    return submodule(f.source, members)


class Congruence:
    """A partition of a carrier compatible with addition and scalar action."""

    def __init__(self, on: FinSemimodule, block_of):
        self.on = on
        self.block_of = tuple(block_of)
        blocks: dict[int, list[int]] = {}
        for x, b in enumerate(self.block_of):
            blocks.setdefault(b, []).append(x)
        # normalize: blocks ordered by least member, ids reassigned accordingly
        ordered = sorted(blocks.values(), key=lambda blk: blk[0])
        self.blocks = tuple(tuple(sorted(blk)) for blk in ordered)
        renum = {}
        for new_id, blk in enumerate(self.blocks):
            for x in blk:
                renum[x] = new_id
        self.block_of = tuple(renum[x] for x in range(on.size))

    def rep(self, x: int) -> int:
        return self.blocks[self.block_of[x]][0]

    def related(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def __len__(self):
        return len(self.blocks)

    def verify(self) -> ValidationReport:
        """Exhaustive compatibility with addition and action."""
        m = self.on
        rep = ValidationReport("congruence")
        for blk in self.blocks:
            u = blk[0]
            for v in blk[1:]:
                for c in m.elements():
                    if self.block_of[m.add(u, c)] != self.block_of[m.add(v, c)]:
                        rep.record("translation compatible", False, (u, v, c))
                        return rep
                for s in m.base.elements():
                    if self.block_of[m.act(s, u)] != self.block_of[m.act(s, v)]:
                        rep.record("action compatible", False, (u, v, s))
                        return rep
        rep.record("translation compatible", True)
        rep.record("action compatible", True)
        return rep


def _inverse_table(m: FinSemimodule) -> list[int | None]:
    inv: list[int | None] = [None] * m.size
    for x in m.elements():
        for y in range(x, m.size):
            if m.add(x, y) == m.zero:
                inv[x] = y
                inv[y] = x
    return inv


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        self.parent[y] = x
        if self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        return True


def congruence_closure(m: FinSemimodule, seeds, limit: int = ENUM_LIMIT) -> Congruence:
    """Smallest congruence containing the seed pairs.

    On carriers whose every element is invertible the closure is computed as
    coset equivalence of the subobject spanned by the seed differences; the
    general engine is a worklist over a union-find, where every merge enqueues
    all its translates and scalar images.  Both compute the same (unique
    least) fixed point.
    """
    seeds = list(seeds)
    for u, v in seeds:
        if not (0 <= u < m.size and 0 <= v < m.size):
            raise MalformedInputError(f"seed pair ({u}, {v}) out of range")
    if m.size > limit:
        raise ResourceCapError("congruence closure", m.size, limit)

    inv = _inverse_table(m)
    if all(x is not None for x in inv):
        members = [m.add(u, inv[v]) for u, v in seeds]
        while True:
            span = set(span_closure(m, members, limit))
            extra = {inv[x] for x in span} - span
            if not extra:
                break
            members = sorted(span | extra)
        block_of = [-1] * m.size
        n_blocks = 0
        for x in m.elements():
            if block_of[x] == -1:
                for n in span:
                    block_of[m.add(x, n)] = n_blocks
                n_blocks += 1
        return Congruence(m, block_of)

    uf = _UnionFind(m.size)
    pending = deque(seeds)
    while pending:
        u, v = pending.popleft()
        u, v = uf.find(u), uf.find(v)
        if u == v:
            continue
        uf.union(u, v)
        for c in m.elements():
            pending.append((m.add(u, c), m.add(v, c)))
        for s in m.base.elements():
            pending.append((m.act(s, u), m.act(s, v)))
    return Congruence(m, [uf.find(x) for x in m.elements()])


def quotient(m: FinSemimodule, cong: Congruence, verify_budget: int = PAIR_BUDGET) -> tuple[TableSemimodule, Hom]:
    """Quotient carrier on the blocks, plus the surjective projection.

    Blocks are named by their minimal representative.  Compatibility is
    re-verified when affordable (closures are compatible by construction,
    user-supplied partitions may not be).
    """
    if cong.on is not m:
        raise ParameterError("congruence does not live on this carrier")
    if sum(len(b) ** 2 for b in cong.blocks) * (m.size + m.base.size) <= verify_budget * 16:
        vrep = cong.verify()
        if not vrep.valid:
            raise MalformedInputError(f"partition is not a congruence: {vrep.violations[0].render()}")
    n = len(cong.blocks)
    reps = [blk[0] for blk in cong.blocks]
    add = tuple(tuple(cong.block_of[m.add(u, v)] for v in reps) for u in reps)
    act = tuple(tuple(cong.block_of[m.act(s, u)] for u in reps) for s in m.base.elements())
    names = tuple(f"[{m.element_name(u)}]" for u in reps)
    q = TableSemimodule(m.base, n, add, cong.block_of[m.zero], act, names)
    return q, Hom.from_table(m, q, cong.block_of)


def nfold(m: FinSemimodule, n: int, x: int) -> int:
    """The n-fold sum x + ... + x, by doubling."""
    if n < 0:
        raise ParameterError("n must be a natural number")
    acc, addend = m.zero, x
    while n:
        if n & 1:
            acc = m.add(acc, addend)
        addend = m.add(addend, addend)
        n >>= 1
    return acc


@dataclass(frozen=True)
class FreeCoordinates:
    """Free coordinatization of a dense module over a field base."""

    module: FinSemimodule
    free: FreeSemimodule
    to_free: Hom
    from_free: Hom


def free_coordinates(m: FinSemimodule, limit: int = ENUM_LIMIT) -> FreeCoordinates | None:
    """Coordinates of a module as a free module, when available.

    Free modules coordinatize as themselves.  Dense modules over a field base
    always succeed (they are finite vector spaces); other bases return None.
    """
    if isinstance(m, FreeSemimodule):
        ident = Hom.identity(m)
        return FreeCoordinates(m, m, ident, ident)
    if not m.base.is_field or not m.enumerable(limit):
        return None
    base = m.base
    basis: list[int] = []
    coords: dict[int, tuple[int, ...]] = {m.zero: ()}
    for x in m.elements(limit):
        if x in coords:
            continue
        basis.append(x)
        grown: dict[int, tuple[int, ...]] = {}
        for e, co in coords.items():
            for s in base.elements():
                e2 = m.add(e, m.act(s, x))
                if e2 in grown:  # pragma: no cover - impossible over a field
                    raise InternalConsistencyError("span collision over a field base")
                grown[e2] = co + (s,)
        coords = grown
    if len(coords) != m.size:  # pragma: no cover - impossible over a field
        raise InternalConsistencyError("span did not exhaust the carrier over a field base")
    rank = len(basis)
    f = FreeSemimodule(base, rank, tuple(m.element_name(b) for b in basis))
    to_free = Hom.from_table(m, f, tuple(f.from_digits(coords[x]) for x in m.elements(limit)))
    from_free = Hom.linear(f, m, tuple(basis))
    return FreeCoordinates(m, f, to_free, from_free)
