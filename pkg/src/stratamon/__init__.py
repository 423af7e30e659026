"""Exact computations on affine semigroups: Hilbert bases, Apery sets,
extraction grades, strong atoms and layered unique representations."""
from .arith import LatticeBasis, lattice_basis, lattice_member, solve_rational_system
from .block import GroupSpec, ZeroSumSequence, block_to_congruence, is_elementary
from .errors import ConsistencyError, InputError, StratamonError, UnsupportedInstance
from .extraction import (
    AtomClassification,
    classify_atom,
    cone_facets,
    coordinates,
    extraction_grade,
    in_D,
    is_inside_factorial_base,
    mu,
)
from .hilbert import AperySet, HilbertBasis, apery, hilbert_basis, primary_representation
from .monoid import (
    CongruenceSystem,
    GeneratedSemigroup,
    Monoid,
    elliott_monoid,
    group_lattice,
    is_root_closed,
    membership,
    monoid_from_json,
)
from .stratify import (
    Parametrization,
    Relation,
    Representation,
    Stratification,
    check_S3,
    decompose,
    parametrize,
    peel_strong_atoms,
    stratify,
    verify_bijection,
)

__version__ = "0.1.0"
