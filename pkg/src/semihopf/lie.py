"""Lie objects: alternating brackets satisfying the Jacobi identity, and the
bracket a monoid induces on its invertible elements."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegreeOverflowError, InternalConsistencyError
from .report import ValidationReport
from .semimodule import FinSemimodule, Hom, enumerate_homs
from .tensor import Bimorphism
from .abelian import InvSubobject, inv, is_abelian
from .monoidal import MonoidObject, _elements_or_generators


@dataclass
class LieObject:
    carrier: FinSemimodule
    bracket: Bimorphism
    name: str = "lie"

    def __call__(self, x: int, y: int) -> int:
        return self.bracket(x, y)


def check_lie(lie: LieObject, pair_budget: int = 1 << 14, triple_budget: int = 1 << 15) -> ValidationReport:
    """Bimorphism bracket, alternating law, Jacobi identity.

    The alternating law is quadratic, not bilinear, so it always runs over
    the whole carrier; Jacobi is trilinear and falls back to generating
    triples on large carriers (exact by trilinearity).
    """
    rep = ValidationReport(f"{lie.name}: Lie laws")
    l = lie.carrier
    sub = lie.bracket.check()
    rep.record("bracket is a bimorphism", sub.valid,
               sub.violations[0].witness if not sub.valid else ())

    skipped = 0
    ok, witness = True, ()
    for x in l.elements(max(pair_budget, l.size)):
        try:
            if lie(x, x) != l.zero:
                ok, witness = False, (x,)
                break
        except DegreeOverflowError:
            skipped += 1
    rep.record("bracket is alternating", ok, witness)

    pts, exhaustive = _elements_or_generators(l, round(triple_budget ** (1 / 3)) + 1)
    rep.note("Jacobi over all triples" if exhaustive
             else f"Jacobi over generating triples ({len(pts)} generators)")
    ok, witness = True, ()
    for x in pts:
        for y in pts:
            for z in pts:
                try:
                    total = l.sum((lie(x, lie(y, z)), lie(y, lie(z, x)), lie(z, lie(x, y))))
                    if total != l.zero:
                        ok, witness = False, (x, y, z)
                        break
                except DegreeOverflowError:
                    skipped += 1
            if not ok:
                break
        if not ok:
            break
    rep.record("Jacobi identity", ok, witness)
    if skipped:
        rep.note(f"{skipped} checks skipped (degree overflow)")
    return rep


def lie_of_monoid(m: MonoidObject) -> LieObject:
    """The bracket [a, b] = ab - ba on the invertible part of a monoid carrier.

    Products of invertibles are invertible, so the bracket closes on the
    subobject; the result is always abelian.
    """
    invm: InvSubobject = inv(m.carrier)
    obj = invm.object

    def bracket(i: int, j: int) -> int:
        a, b = invm.members[i], invm.members[j]
        ab = m.product(a, b)
        ba = m.product(b, a)
        try:
            val = m.carrier.add(ab, invm.parent_negative[ba])
            return invm.index_of(val)
        except KeyError:  # pragma: no cover - Lemma-level guarantee
            raise InternalConsistencyError(
                f"bracket of invertibles left the invertible part at ({a}, {b})"
            ) from None

    table = tuple(tuple(bracket(i, j) for j in range(obj.size)) for i in range(obj.size))
    out = LieObject(obj, Bimorphism.from_table(obj, obj, obj, table), f"Lie({m.name})")
    if not is_abelian(obj):  # pragma: no cover - structural
        raise InternalConsistencyError("the invertible part failed to be abelian")
    return out


def is_lie_morphism(src: LieObject, tgt: LieObject, f: Hom) -> bool:
    """f([x, y]) = [f x, f y] on all pairs (pairs with undefined brackets skip)."""
    for x in src.carrier.elements():
        for y in src.carrier.elements():
            try:
                if f(src(x, y)) != tgt(f(x), f(y)):
                    return False
            except DegreeOverflowError:
                continue
    return True


def enumerate_lie_morphisms(src: LieObject, tgt: LieObject, max_candidates: int = 1 << 20) -> list[Hom]:
    """Exactly the homomorphisms compatible with both brackets."""
    return [f for f in enumerate_homs(src.carrier, tgt.carrier, max_candidates)
            if is_lie_morphism(src, tgt, f)]
