"""Exact computations on S-adic solenoids R_S / Delta_S(Z_S)."""
from .approx import BlPoint, Character, ClPoint, FiniteLevel, char_eval, cl_coord, line_approximation, pi_l
from .errors import DomainError, InputError, ResourceError, SolenoidError
from .geometry import Exponents, MetricValue, SPoint, delta_embed, dist_S, dist_Sa, point_add, point_mul
from .measure import (
    BoxRegion,
    box_count,
    box_measure,
    haar_ball_p,
    hausdorff_dim,
    metric_ball_measure,
    mu_scaling,
    sample_haar,
)
from .padic import PrimeSet, abs_p, crt_solve, residue_mod_pl, valuation
from .quotient import SolenoidPoint, coset_eq, is_in_ZS, is_S_unit, quotient_dist, reduce, solenoid_add, solenoid_neg
from .torus import MapClass, SMatrix, TorusPoint, act, classify, det, induced_circle_map, inverse_act, orbit

__version__ = "0.1.0"
