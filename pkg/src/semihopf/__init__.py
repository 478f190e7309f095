"""semihopf: exact finite computation of Hopf and Lie structure over
commutative semirings.

Everything is table-driven and deterministic: semirings and semimodules are
finite index sets with explicit operation tables, tensor products are built
from their universal property, and every categorical law the package claims
is verified by enumeration.
"""

from .errors import (
    DegreeOverflowError,
    InternalConsistencyError,
    MalformedInputError,
    ParameterError,
    PreconditionError,
    ResourceCapError,
    SemihopfError,
    UnsupportedStructureError,
)
from .report import ValidationReport, Violation
from .semiring import (
    DEFAULT_CAP,
    FiniteSemiring,
    SemiringHom,
    builtin,
    check_semiring,
    enumerate_semiring_homs,
    ring_reflection,
)
from .semimodule import (
    Congruence,
    FinSemimodule,
    FreeSemimodule,
    Hom,
    TableSemimodule,
    biproduct,
    check_semimodule,
    congruence_closure,
    enumerate_homs,
    equalizer,
    free,
    free_coordinates,
    homs_equal,
    nfold,
    quotient,
    span_closure,
    submodule,
    unit_module,
)
from .tensor import (
    Bimorphism,
    TensorObject,
    canonical_isos,
    element_insertions,
    factor_bimorphism,
    hom_object,
    primitive_coproduct,
    tensor,
    tensor_map,
)
from .monoidal import (
    BimonoidObject,
    ComonoidObject,
    HopfObject,
    MonoidObject,
    check_bimonoid,
    check_comonoid,
    check_hopf,
    check_monoid,
    convolution,
)
from .abelian import (
    InvSubobject,
    abelian_reflection,
    check_reflection_square,
    check_tensor_closure,
    inv,
    is_abelian,
    restrict_hom_to_inv,
)
from .lie import LieObject, check_lie, enumerate_lie_morphisms, lie_of_monoid

__all__ = [name for name in dir() if not name.startswith("_")]
