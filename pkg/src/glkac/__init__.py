"""Composition-factor multiplicities, Kazhdan-Lusztig polynomials and characters for gl(m/n)."""

__version__ = "0.1.0"

from .errors import ConjectureFalsified, GlkacError  # noqa: E402
from .weights import (  # noqa: E402
    Superalgebra,
    Weight,
    bilinear_form,
    dominant_rep,
    dot_dominant,
    enumerate_interval,
    format_weight,
    is_dominant,
    parse_weight,
    partial_leq,
    rho_tilde,
    two_rho_one,
)
from .atypicality import (  # noqa: E402
    OddRoot,
    atypicality_matrix,
    delta_set,
    delta_set_oracle,
    gamma_chain,
    mu_zero,
    nabla_profile,
    odd_reflection_walk,
)
from .multiplicity import column, column_q, lambda_theta, row  # noqa: E402
from .qpoly import QPolynomial  # noqa: E402
from .klmatrix import (  # noqa: E402
    assemble_Aq,
    invert_unitriangular,
    kl_zero_closed_form,
    specialize,
    sym_decomposition,
    verify_identities,
)
from .characters import (  # noqa: E402
    CharacterMap,
    char_g0,
    char_kac,
    char_simple,
    decompose_g0,
    odd_factor,
    verify_kac_decomposition,
)
