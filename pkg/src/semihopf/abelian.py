"""The abelian core: invertible elements, negation, and the group-completion
reflection.

Inv(A) is the largest internal group inside a carrier; the modules all of
whose elements are invertible form a reflective subcategory closed under the
tensor product, with the reflection given by the same pair construction that
completes a commutative monoid to a group.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalConsistencyError, PreconditionError, ResourceCapError
from .report import ValidationReport
from .semiring import DEFAULT_CAP, monoid_completion
from .semimodule import (
    FinSemimodule,
    FreeSemimodule,
    Hom,
    TableSemimodule,
    _inverse_table,
    submodule,
    unit_module,
)
from .tensor import Bimorphism, TensorObject, factor_bimorphism, tensor, tensor_map, unit_left_iso


@dataclass
class InvSubobject:
    """The subalgebra of additively invertible elements, with negation."""

    parent: FinSemimodule
    object: TableSemimodule
    members: tuple[int, ...]
    embedding: Hom
    negation: Hom  # involution on the subobject
    parent_negative: dict[int, int]  # member -> its inverse, in parent indices

    def __post_init__(self):
        self._index = {x: i for i, x in enumerate(self.members)}

    def index_of(self, parent_elt: int) -> int:
        """Subobject index of a parent element (must be a member)."""
        return self._index[parent_elt]


def inv(a: FinSemimodule, limit: int = 1 << 14) -> InvSubobject:
    """The invertible-element subobject with its negation homomorphism."""
    if isinstance(a, FreeSemimodule) and a.base.is_ring:
        minus_one = a.base.neg(a.base.one)
        if a.enumerable(limit):
            members = list(a.elements(limit))
            table = {x: a.act(minus_one, x) for x in members}
        else:
            raise ResourceCapError("invertible-element scan", a.size, limit)
    else:
        if not a.enumerable(limit):
            raise ResourceCapError("invertible-element scan", a.size, limit)
        full = _inverse_table(a)
        members = [x for x in a.elements(limit) if full[x] is not None]
        table = {x: full[x] for x in members}
    obj, embedding = submodule(a, members)
    ordered = tuple(sorted(members))
    index = {x: i for i, x in enumerate(ordered)}
    negation = Hom.from_table(obj, obj, tuple(index[table[x]] for x in ordered))
    return InvSubobject(a, obj, ordered, embedding, negation, table)


def is_abelian(a: FinSemimodule, limit: int = 1 << 14) -> bool:
    """True iff every element is additively invertible."""
    if isinstance(a, FreeSemimodule):
        return a.rank == 0 or a.base.neg(a.base.one) is not None
    if not a.enumerable(limit):
        raise ResourceCapError("invertible-element scan", a.size, limit)
    return all(x is not None for x in _inverse_table(a))


def negative(a: FinSemimodule, x: int) -> int:
    """The additive inverse of an invertible element."""
    y = a.neg(x)
    if y is None:
        raise PreconditionError(f"element {x} has no additive inverse")
    return y


def restrict_hom_to_inv(f: Hom, inv_src: InvSubobject | None = None,
                        inv_tgt: InvSubobject | None = None) -> Hom:
    """A homomorphism restricted and corestricted to the invertible parts.

    Always well-defined; a member whose image is not invertible is a bug trap.
    """
    inv_src = inv_src if inv_src is not None else inv(f.source)
    inv_tgt = inv_tgt if inv_tgt is not None else inv(f.target)
    table = []
    for x in inv_src.members:
        y = f(x)
        try:
            table.append(inv_tgt.index_of(y))
        except KeyError:  # pragma: no cover - Lemma-level guarantee
            raise InternalConsistencyError(
                f"image {y} of invertible element {x} is not invertible"
            ) from None
    return Hom.from_table(inv_src.object, inv_tgt.object, table)


def abelian_reflection(a: FinSemimodule, cap: int = DEFAULT_CAP) -> tuple[TableSemimodule, Hom]:
    """Group completion of a carrier, with the universal map into it.

    The result is the pair construction on (A, +) with componentwise scalar
    action; r sends x to the class of (x, 0).
    """
    if a.size * a.size > 1 << 15:
        raise ResourceCapError("group completion pair enumeration", a.size * a.size, 1 << 15)
    n, class_of, reps = monoid_completion(a.size, a.add, a.zero)
    if n > cap:
        raise ResourceCapError("group completion", n, cap)

    def cls(pair):
        return class_of[pair[0] * a.size + pair[1]]

    add = tuple(
        tuple(cls((a.add(p[0], q[0]), a.add(p[1], q[1]))) for q in reps) for p in reps
    )
    act = tuple(
        tuple(cls((a.act(s, p[0]), a.act(s, p[1]))) for p in reps) for s in a.base.elements()
    )
    names = tuple(f"[{a.element_name(p[0])}-{a.element_name(p[1])}]" for p in reps)
    g = TableSemimodule(a.base, n, add, cls((a.zero, a.zero)), act, names)
    if not is_abelian(g):  # pragma: no cover - completion bug trap
        raise InternalConsistencyError("group completion produced a non-abelian module")
    r = Hom.from_table(a, g, tuple(cls((x, a.zero)) for x in a.elements()))
    return g, r


def check_reflection_square(g: FinSemimodule, cap: int = DEFAULT_CAP) -> ValidationReport:
    """For abelian G: the two routes F1 (x) G -> G agree elementwise.

    Route one is the canonical action isomorphism.  Route two reflects F1
    into the abelian core first and then acts by difference: class(a,b) (x) x
    maps to a.x - b.x, which is well defined precisely because G is a group.
    """
    rep = ValidationReport(f"reflection square on {g.describe()}")
    if not is_abelian(g):
        raise PreconditionError("the reflection square is stated for abelian carriers")
    f1 = unit_module(g.base)
    li = unit_left_iso(g, cap)
    rf1, r = abelian_reflection(f1, cap)
    t_rg = tensor(rf1, g, cap)

    # r (x) id, then the difference action out of the completed unit
    r_id = tensor_map(li.tensor, t_rg, r, Hom.identity(g))
    _, class_of, reps = monoid_completion(f1.size, f1.add, f1.zero)

    def diff_action(c, x):
        p, q = reps[c]
        return g.add(g.act(p, x), negative(g, g.act(q, x)))

    can = factor_bimorphism(t_rg, Bimorphism(rf1, g, g, fn=diff_action))
    w = next(
        ((t,) for t in li.tensor.object.elements()
         if li.to_plain(t) != can(r_id(t))),
        None,
    )
    rep.record("both routes out of F1 (x) G agree", w is None, w or ())
    return rep


def check_tensor_closure(g: FinSemimodule, h: FinSemimodule, cap: int = DEFAULT_CAP) -> ValidationReport:
    """Abelian carriers are closed under the tensor product."""
    if not is_abelian(g) or not is_abelian(h):
        raise PreconditionError("tensor closure is stated for abelian carriers")
    rep = ValidationReport(f"tensor closure of {g.describe()} and {h.describe()}")
    t = tensor(g, h, cap)
    if t.object.enumerable(1 << 14):
        ok = is_abelian(t.object)
        rep.record("every element of the tensor is invertible", ok, ())
    else:
        ok = is_abelian(t.object)  # free over a ring: structural
        rep.record("every element of the tensor is invertible", ok, ())
        rep.note("carrier is free over a ring base; invertibility is structural")
    rep.merge(check_reflection_square(g, cap))
    return rep


def largest_internal_group(a: FinSemimodule, members=None, limit: int = 1 << 12) -> bool:
    """No strictly larger closed subset of invertibles exists: every element
    outside Inv(A) fails invertibility, so Inv is the largest internal group."""
    sub = inv(a, limit)
    outside = set(a.elements(limit)) - set(sub.members)
    return all(a.neg(x) is None for x in outside)
