"""The shipped fixture library.

Every example value in the test suite is reproducible from these objects:
semirings B2 / Z2 / Z3 / NS2, the chain semilattices and free modules over
them, the dual-numbers Hopf object X2, the group-algebra Hopf object G2, the
upper-triangular monoid UT, and the Lie objects L1 / L2 / L3.
"""

from __future__ import annotations

from dataclasses import dataclass

from .semiring import FiniteSemiring, builtin
from .semimodule import FinSemimodule, FreeSemimodule, Hom, TableSemimodule, free, unit_module
from .tensor import Bimorphism, TensorObject, tensor
from .monoidal import BimonoidObject, ComonoidObject, HopfObject, MonoidObject
from .lie import LieObject


def chain_module(base_bool: FiniteSemiring, n: int, names) -> TableSemimodule:
    """The n-chain 0 < ... < top as a join semilattice over the boolean base."""
    add = tuple(tuple(max(i, j) for j in range(n)) for i in range(n))
    act = (tuple(0 for _ in range(n)), tuple(range(n)))
    return TableSemimodule(base_bool, n, add, 0, act, names)


def make_comonoid(carrier, square: TensorObject, comult_terms, counit_table, name) -> ComonoidObject:
    """Comonoid from per-element lists of pure-tensor terms."""
    obj = square.object
    comult = Hom.from_table(
        carrier, obj,
        tuple(obj.sum(square.univ(a, b) for a, b in comult_terms[x]) for x in carrier.elements()),
    )
    counit = Hom.from_table(carrier, unit_module(carrier.base), counit_table)
    return ComonoidObject(carrier, square, comult, counit, name)


@dataclass
class FixtureSet:
    semirings: dict[str, FiniteSemiring]
    modules: dict[str, FinSemimodule]
    monoids: dict[str, MonoidObject]
    bimonoids: dict[str, BimonoidObject]
    hopfs: dict[str, HopfObject]
    lies: dict[str, LieObject]

    def kinds(self):
        yield from (("semiring", k, v) for k, v in self.semirings.items())
        yield from (("semimodule", k, v) for k, v in self.modules.items())
        yield from (("monoid", k, v) for k, v in self.monoids.items())
        yield from (("bimonoid", k, v) for k, v in self.bimonoids.items())
        yield from (("hopf", k, v) for k, v in self.hopfs.items())
        yield from (("lie", k, v) for k, v in self.lies.items())

    def lookup(self, name: str):
        for kind, key, value in self.kinds():
            if key == name:
                return kind, value
        raise KeyError(name)


def _dual_numbers_hopf(z2: FiniteSemiring) -> HopfObject:
    """X2 = zmod2[x]/(x^2) with x primitive and the identity antipode."""
    add = tuple(tuple(i ^ j for j in range(4)) for i in range(4))
    act = ((0, 0, 0, 0), (0, 1, 2, 3))
    carrier = TableSemimodule(z2, 4, add, 0, act, ("0", "1", "x", "1+x"))
    mult = Bimorphism.from_table(
        carrier, carrier, carrier,
        ((0, 0, 0, 0),
         (0, 1, 2, 3),
         (0, 2, 0, 2),
         (0, 3, 2, 1)),
    )
    square = tensor(carrier, carrier)
    comon = make_comonoid(
        carrier, square,
        ([], [(1, 1)], [(2, 1), (1, 2)], [(1, 1), (2, 1), (1, 2)]),
        (0, 1, 0, 1),
        "X2",
    )
    antipode = Hom.from_table(carrier, carrier, (0, 1, 2, 3))
    return HopfObject(MonoidObject(carrier, mult, 1, "X2"), comon, "X2", antipode)


def _group_algebra_hopf(z2: FiniteSemiring) -> HopfObject:
    """G2 = zmod2[C2], the group algebra of the two-element group, grouplike g."""
    add = tuple(tuple(i ^ j for j in range(4)) for i in range(4))
    act = ((0, 0, 0, 0), (0, 1, 2, 3))
    carrier = TableSemimodule(z2, 4, add, 0, act, ("0", "1", "g", "1+g"))
    mult = Bimorphism.from_table(
        carrier, carrier, carrier,
        ((0, 0, 0, 0),
         (0, 1, 2, 3),
         (0, 2, 1, 3),
         (0, 3, 3, 0)),
    )
    square = tensor(carrier, carrier)
    comon = make_comonoid(
        carrier, square,
        ([], [(1, 1)], [(2, 2)], [(1, 1), (2, 2)]),
        (0, 1, 1, 0),
        "G2",
    )
    antipode = Hom.from_table(carrier, carrier, (0, 1, 2, 3))
    return HopfObject(MonoidObject(carrier, mult, 1, "G2"), comon, "G2", antipode)


def _upper_triangular_monoid(z2: FiniteSemiring) -> MonoidObject:
    """2x2 upper-triangular matrices over zmod2; 8 elements, basis a=E11, b=E12, c=E22."""
    add = tuple(tuple(i ^ j for j in range(8)) for i in range(8))
    act = (tuple(0 for _ in range(8)), tuple(range(8)))
    names = []
    for i in range(8):
        terms = [nm for bit, nm in ((1, "a"), (2, "b"), (4, "c")) if i & bit]
        names.append("+".join(terms) if terms else "0")
    carrier = TableSemimodule(z2, 8, add, 0, act, names)

    def mat_mult(i, j):
        a1, b1, c1 = i & 1, (i >> 1) & 1, (i >> 2) & 1
        a2, b2, c2 = j & 1, (j >> 1) & 1, (j >> 2) & 1
        return (a1 & a2) | (((a1 & b2) ^ (b1 & c2)) << 1) | ((c1 & c2) << 2)

    mult = Bimorphism.from_table(
        carrier, carrier, carrier,
        tuple(tuple(mat_mult(i, j) for j in range(8)) for i in range(8)),
    )
    return MonoidObject(carrier, mult, 5, "UT")


def _meet_monoid(c3: TableSemimodule) -> MonoidObject:
    """The 3-chain as an algebra over B2: multiplication is meet, unit the top."""
    mult = Bimorphism.from_table(
        c3, c3, c3, tuple(tuple(min(i, j) for j in range(3)) for i in range(3))
    )
    return MonoidObject(c3, mult, 2, "C3meet")


def _lie_l2(carrier: FreeSemimodule) -> LieObject:
    """Two-dimensional Lie object over zmod2 with [x, y] = y."""
    y = carrier.basis_element(1)

    def bracket(u, v):
        (u0, u1), (v0, v1) = carrier.digits(u), carrier.digits(v)
        return y if (u0 & v1) ^ (u1 & v0) else 0

    table = tuple(tuple(bracket(u, v) for v in range(4)) for u in range(4))
    return LieObject(carrier, Bimorphism.from_table(carrier, carrier, carrier, table), "L2")


def standard_fixtures() -> FixtureSet:
    b2 = builtin("bool")
    z2 = builtin("zmod", 2)
    z3 = builtin("zmod", 3)
    ns2 = builtin("nat_sat", 2)

    c2 = chain_module(b2, 2, ("o", "i"))
    c3 = chain_module(b2, 3, ("o", "m", "t"))
    fb2 = free(b2, 2, basis_names=("p", "q"))
    v1 = free(z2, 1, basis_names=("x",))
    v2 = free(z2, 2, basis_names=("x", "y"))
    w1 = free(z3, 1, basis_names=("t",))
    nsm = unit_module(ns2)

    x2 = _dual_numbers_hopf(z2)
    g2 = _group_algebra_hopf(z2)
    ut = _upper_triangular_monoid(z2)
    c3meet = _meet_monoid(c3)

    l1 = LieObject(v1, Bimorphism.zero_map(v1, v1, v1), "L1")
    l2 = _lie_l2(v2)
    l3 = LieObject(w1, Bimorphism.zero_map(w1, w1, w1), "L3")

    return FixtureSet(
        semirings={"B2": b2, "Z2": z2, "Z3": z3, "NS2": ns2},
        modules={
            "C2": c2, "C3": c3, "FB2": fb2,
            "V1": v1, "V2": v2, "W1": w1, "NSM": nsm,
            "X2m": x2.carrier, "G2m": g2.carrier, "UTm": ut.carrier,
        },
        monoids={"UT": ut, "C3meet": c3meet, "X2mon": x2.monoid, "G2mon": g2.monoid},
        bimonoids={},
        hopfs={"X2": x2, "G2": g2},
        lies={"L1": l1, "L2": l2, "L3": l3},
    )


def densify(mod: FinSemimodule) -> TableSemimodule:
    """A dense copy with file-safe element names (same index order)."""
    if isinstance(mod, TableSemimodule):
        return mod
    names = tuple(mod.element_name(i).replace(" + ", "+").replace("*", "") for i in mod.elements())
    add = tuple(tuple(mod.add(i, j) for j in mod.elements()) for i in mod.elements())
    act = tuple(tuple(mod.act(s, i) for i in mod.elements()) for s in mod.base.elements())
    return TableSemimodule(mod.base, mod.size, add, mod.zero, act, names)


def export_algebra_files() -> dict[str, str]:
    """Canonical text of the shipped fixture files, regenerated from code."""
    from .algfile import AlgebraFile, Block, serialize

    fx = standard_fixtures()
    dense = {name: densify(mod) for name, mod in fx.modules.items()}

    def relie(lie: LieObject, carrier: TableSemimodule) -> LieObject:
        table = tuple(tuple(lie(i, j) for j in range(carrier.size)) for i in range(carrier.size))
        return LieObject(carrier, Bimorphism.from_table(carrier, carrier, carrier, table), lie.name)

    def remonoid(mon: MonoidObject, carrier: TableSemimodule) -> MonoidObject:
        return MonoidObject(carrier, mon.mult, mon.unit, mon.name)

    files: dict[str, list[Block]] = {
        "b2.alg": [
            Block("semiring", "B2", None, fx.semirings["B2"]),
            Block("semimodule", "C2", "B2", dense["C2"]),
            Block("semimodule", "C3", "B2", dense["C3"]),
            Block("semimodule", "FB2", "B2", dense["FB2"]),
            Block("monoid", "C3meet", "C3", fx.monoids["C3meet"]),
        ],
        "zmod2.alg": [
            Block("semiring", "Z2", None, fx.semirings["Z2"]),
            Block("semimodule", "V1", "Z2", dense["V1"]),
            Block("semimodule", "V2", "Z2", dense["V2"]),
            Block("semimodule", "X2m", "Z2", dense["X2m"]),
            Block("semimodule", "G2m", "Z2", dense["G2m"]),
            Block("semimodule", "UTm", "Z2", dense["UTm"]),
            Block("monoid", "UT", "UTm", fx.monoids["UT"]),
            Block("hopf", "X2", "X2m", fx.hopfs["X2"]),
            Block("hopf", "G2", "G2m", fx.hopfs["G2"]),
            Block("lie", "L1", "V1", relie(fx.lies["L1"], dense["V1"])),
            Block("lie", "L2", "V2", relie(fx.lies["L2"], dense["V2"])),
        ],
        "zmod3.alg": [
            Block("semiring", "Z3", None, fx.semirings["Z3"]),
            Block("semimodule", "W1", "Z3", dense["W1"]),
            Block("lie", "L3", "W1", relie(fx.lies["L3"], dense["W1"])),
        ],
        "natsat2.alg": [
            Block("semiring", "NS2", None, fx.semirings["NS2"]),
            Block("semimodule", "NSM", "NS2", dense["NSM"]),
        ],
    }
    return {fn: serialize(AlgebraFile(blocks)) for fn, blocks in files.items()}
