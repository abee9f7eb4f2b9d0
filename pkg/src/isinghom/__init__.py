"""Homogenized surface tension of periodic two-phase Ising bond systems."""

from .bounds import (
    BoundPair,
    MembershipVerdict,
    averaging_bounds,
    mixture_upper_bound,
    projection_bounds,
    theorem_membership,
)
from .homogenize import (
    PhiEstimate,
    SurfaceTensionProfile,
    convexity_report,
    crossing_cost,
    direction_fan,
    phi_direction,
    phi_profile,
    profile_from_function,
    weighted_l1_profile,
)
from .lattice import (
    BondField,
    FieldError,
    VolumeFractions,
    new_bond_field,
    parse,
    random_mixture,
    scale,
    serialize,
    transpose,
    volume_fractions,
)
from .microgeometry import SpecialSpec, laminate, prop_special_field, realize
from .spin_oracle import SpinWindow, min_interface_energy, spin_energy
from .wulff import WulffPolygon, admissible, contains_admissible_rectangle, envelope, wulff_shape

__version__ = "0.1.0"
