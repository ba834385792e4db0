"""Exact linear differential algebra: characteristic sets, dimension
polynomials, and tangent-space classification over Q(t1..tm)."""

from .errors import (BadDerivation, ConfigMismatch, DiffAlgError,
                     DivisionByZero, NotAntichain, OrderlyRequired,
                     ParseError, PointNotOnVariety, UnsupportedForPartial,
                     ZeroElement)
from .field import DiffFieldConfig, MPoly, RatFun, mpoly_gcd, normalize
from .ore import OrePoly, ore_apply, ore_divmod, ore_mul
from .diffmodule import (AutoreducedSet, CharSet, ModElement, Ranking,
                         autoreduce, characteristic_set, compare_autoreduced,
                         elimination_ranking, eval_point, leader, member,
                         monic, orderly_ranking, reduce)
from .numpoly import (Antichain, NumericalPolynomial, ZERO_TYPE, brute_count,
                      count_cofilter, eval_numpoly, type_and_heights)
from .dimension import (DimensionReport, diff_dimension, dimension_polynomial,
                        dimension_report, free_split, leader_antichain)
from .normalform import (Diagonalization, OreMatrix, TangentClass,
                         classify_tangent, diagonalize)
from .variety import (DiffPoly, VarietyPoint, eval_diffpoly, formal_derive,
                      linearize_at_point, tangent_pipeline)

__version__ = "0.1.0"
