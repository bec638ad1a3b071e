"""Exact computations with finite-dimensional Lie superalgebras over Q.

Structure constants, series and nilradicals, superderivations, maximal tori
and the solvable extensions they generate.
"""

from .algebra import (
    Parity,
    SuperAlgebra,
    ValidationReport,
    ad_matrix,
    bracket,
    center,
    change_basis,
    inner_derivation,
    span_labels,
    subspace_bracket,
    validate,
)
from .derivations import (
    Derivation,
    der_bracket,
    derivation_space,
    is_characteristically_nilpotent,
    is_superderivation,
    leibniz_power_check,
    weight_decomposition_single,
)
from .errors import *  # noqa: F401,F403
from .extension import (
    SolvableModel,
    VerificationReport,
    attach_torus,
    check_odd_roots_distinct,
    check_odd_square_collapse,
    maximal_solvable_extension,
    model_from_algebra,
    split_q,
    verify_model,
)
from .linalg import Matrix, Subspace, all_nilpotent_space, jordan_chevalley
from .sla import load_bundled, parse, parse_text, serialize
from .structure import (
    c_sequences,
    central_series,
    derived_series,
    describe_subspace,
    generator_space,
    is_nilpotent,
    is_solvable,
    nilindex,
    nilradical_solvable,
    square,
)
from .torus import (
    RootSystem,
    Torus,
    build_root_system,
    is_maximal_rank,
    maximal_torus,
    rank_and_torus_dim,
    weight_decomposition,
)

__version__ = "0.1.0"
