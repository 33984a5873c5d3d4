#include "ginlab/kernel_theory.hpp"

#include <cmath>
#include <numbers>

#include "ginlab/errors.hpp"

namespace ginlab {

cplx ginibre_kernel(cplx z, cplx w) {
    const cplx exponent = -0.5 * std::norm(z) - 0.5 * std::norm(w) + z * std::conj(w);
    return std::exp(exponent) / std::numbers::pi;
}

KernelPrediction kernel_prediction(const std::vector<cplx>& points) {
    if (points.empty()) throw ValidationError("npoint_correlation needs at least one point");
    const int n = static_cast<int>(points.size());
    KernelPrediction out;
    out.points = points;
    out.kernel_matrix.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.kernel_matrix(i, j) = ginibre_kernel(points[i], points[j]);

    // LU with partial pivoting; the Gram determinant is real up to rounding.
    const double det = Eigen::PartialPivLU<Eigen::MatrixXcd>(out.kernel_matrix).determinant().real();
    out.correlation = (det < 0.0 && det >= -kClampTolerance) ? 0.0 : det;
    return out;
}

double npoint_correlation(const std::vector<cplx>& points) {
    return kernel_prediction(points).correlation;
}

double predicted_pair_correlation(double r) {
    return -std::expm1(-r * r);
}

}  // namespace ginlab
