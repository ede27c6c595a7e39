"""Exact graded Lie algebra computations for partially commutative Lie algebras
and the relator ideal of Formanek-Procesi extensions."""

from .core_lie import (
    Alphabet,
    Generator,
    HallBasis,
    LieElement,
    LieHom,
    LieMonomial,
    free_subalgebra,
    graded_rank,
    hall_basis,
    left_normed,
    rewrite_bracket,
    weighted_witt,
    witt_necklace,
)
from .errors import DegreeOverflowError, InapplicableError, InvalidArgument, TorsionError
from .fp_ideal import (
    FPPresentation,
    OmegaAlgebra,
    corollary_split,
    decompose_J,
    fp_graded_ranks,
    fp_relators,
    psi_map,
    theta_empty_case,
)
from .freeness import check_freeness, gamma2
from .pcommute import (
    GradedIdeal,
    PartialCommutation,
    eliminate,
    ideal_generate,
    raag_ideal,
    raag_ranks,
    rearrange,
    validate,
)
from .zmodule import Lattice, hnf, is_saturated, snf

__version__ = "0.1.0"
