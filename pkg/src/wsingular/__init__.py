"""Exact Jack functions and closed-form singular vectors of W_N algebras in Fock modules."""

from .heisenberg import (
    FockVector,
    Weight,
    bilinear,
    conformal_weight,
    miura_mode,
    svweight,
    virasoro_mode,
    w3_mode_unnormalized,
    w3_weight_unnormalized,
)
from .partition import Partition, parse_partition, partitions
from .scalar import SYMBOLIC, PointField, RationalFunction, Scalar, parse_scalar, specialize
from .screening import ScreeningSpec, example3_enumerate, parse_spec, singular_vector
from .symfunc import SymFunc, dual_norm_b, integral_norm_c, jack, skew_jack
from .verify import brute_force_kernel, check_singular, kernel_certificate

__version__ = "0.1.0"
