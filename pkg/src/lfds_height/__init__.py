"""Transient lengths (heights) of linear finite dynamical systems (Z_n^m, A)."""

from .bounds import (
    BoundsReport,
    all_bounds,
    bound_omega,
    bound_thm_a,
    bound_thm_b,
    bound_xu_zou,
    is_fixed_point_system,
)
from .errors import CapacityError, ConfigError, LfdsError, ParseError, UsageError
from .factorize import Factorization, alpha_max, big_omega, factor, is_prime
from .height import (
    FittingSplit,
    HeightReport,
    fitting_split,
    height_mod_p,
    height_mod_p_power,
    system_height,
)
from .ring import (
    MatrixModN,
    image_cardinality,
    mat_mul,
    mat_pow,
    rank_mod_p,
    snf_diagonal,
)
from .system import (
    PrimaryComponent,
    SystemSpec,
    load_system,
    parse_system,
    primary_components,
    quotient_system,
    reduce_mod,
    submodule_system,
)

__version__ = "0.1.0"
