#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ginlab/deformation_model.hpp"

namespace ginlab {

/// Limiting bulk correlation kernel of the complex Ginibre ensemble,
/// K(z, w) = exp(-|z|^2/2 - |w|^2/2 + z conj(w)) / pi, assembled in log space.
cplx ginibre_kernel(cplx z, cplx w);

struct KernelPrediction {
    std::vector<cplx> points;
    Eigen::MatrixXcd kernel_matrix;
    double correlation = 0.0;  ///< det(kernel_matrix), clamped at 0 from below
};

/// Values of det in [-kClampTolerance, 0) are reported as 0.
inline constexpr double kClampTolerance = 1e-12;

KernelPrediction kernel_prediction(const std::vector<cplx>& points);

/// n-point correlation det[K(z_i, z_j)] of the limiting process.
double npoint_correlation(const std::vector<cplx>& points);

/// Normalized two-point function g(r) = 1 - exp(-r^2).
double predicted_pair_correlation(double r);

}  // namespace ginlab
