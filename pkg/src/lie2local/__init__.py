"""Exact-arithmetic Lie algebra toolkit: Killing forms, root data, and 2-local automorphisms."""

from .core import (
    LieAlgebra,
    Subspace,
    bracket,
    build,
    build_abelian,
    build_filiform,
    build_heisenberg,
    build_sl,
    center,
    commutator_subalgebra,
    derived_series,
    dump_algebra,
    is_nilpotent,
    is_solvable,
    load_algebra,
    lower_central_series,
)
from .forms import ad_matrix, form_radical, is_semisimple, killing, killing_gram
from .maps import (
    LinearMap,
    derivation_space,
    exp_nilpotent,
    inner_automorphism,
    is_automorphism,
    is_derivation,
    torus_automorphism,
)
from .roots import find_strongly_regular, is_regular_semisimple, root_decomposition
from .twolocal import (
    certify_two_local,
    default_f,
    killing_additivity_defect,
    make_counterexample,
    refute_automorphism,
    witness_automorphism,
    witness_derivation,
)

__version__ = "0.1.0"
