"""Lipschitz and Hölder constants on finite pointed metric spaces, with
little-Hölder approximants (cone maxima, Bernstein polynomials, Fejér means)
and numerical certificates for their constants and convergence."""

__version__ = "0.1.0"

from .metric import (MetricError, NetCover, PointedMetricSpace, build_space,
                     diameter, greedy_net, snowflake)
from .lipschitz import (FlatnessProfile, SampledFunction, de_leeuw,
                        flatness_profile, lip_constant, sup_distance)
from .cone import (ConeApproximant, ConeParams, cone_interpolant, cone_params,
                   little_approx_sequence, min_value_lemma)
from .bernstein import (BernsteinApproximant, bernstein_build,
                        bernstein_density_check, bernstein_eval)
from .fejer import (FejerMean, TorusGrid, fejer_density_check, fejer_kernel,
                    fejer_mean, fourier_coeffs)
from .trace import ConvergenceTrace, TraceRecord, Verdict

__all__ = [
    "MetricError", "NetCover", "PointedMetricSpace", "build_space", "diameter",
    "greedy_net", "snowflake", "FlatnessProfile", "SampledFunction", "de_leeuw",
    "flatness_profile", "lip_constant", "sup_distance", "ConeApproximant",
    "ConeParams", "cone_interpolant", "cone_params", "little_approx_sequence",
    "min_value_lemma", "BernsteinApproximant", "bernstein_build",
    "bernstein_density_check", "bernstein_eval", "FejerMean", "TorusGrid",
    "fejer_density_check", "fejer_kernel", "fejer_mean", "fourier_coeffs",
    "ConvergenceTrace", "TraceRecord", "Verdict",
]
