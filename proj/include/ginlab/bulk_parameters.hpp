#pragma once

#include "ginlab/deformation_model.hpp"

namespace ginlab {

/// Local rescaling constants at a bulk point z0.
struct BulkParameters {
    cplx z0;
    double t0 = 0.0;
    cplx p0;                   ///< sum c_a (a_a - z0) / (f_a + t0)^2
    double p1 = 0.0;           ///< sum c_a / (f_a + t0)^2
    double sigma_sq = 0.0;     ///< t0 p1 + |p0|^2 / p1
    double predicted_density = 0.0;  ///< sigma_sq / pi, the limiting density divided by N
};

/// g(t) = sum tau c_a / (f_a + t) - 1 with f_a = |a_a - z0|^2.
double fixed_point_residual(const ValidatedSpec& spec, cplx z0, double t);

/// Unique root of g on (0, tau]: bisection to width 1e-15, then three Newton
/// steps kept inside the final bracket. Throws NotBulkError unless z0 is a
/// bulk point.
double solve_t0(const ValidatedSpec& spec, cplx z0);

/// P0, P1 and sigma^2 at t0. `t0_override`, when positive, replaces the
/// solved t0 (used to inject faults in verification tests).
BulkParameters bulk_parameters(const ValidatedSpec& spec, cplx z0, double t0_override = 0.0);

/// sqrt(N * sigma^2): the map z -> sqrt(N sigma^2) (z - z0) to local units.
double rescale_factor(const BulkParameters& bp, int N);

}  // namespace ginlab
