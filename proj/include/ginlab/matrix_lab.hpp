#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ginlab/deformation_model.hpp"
#include "ginlab/rng.hpp"

namespace ginlab {

/// Spectrum of one sampled matrix with provenance.
struct SpectrumSample {
    std::vector<cplx> eigenvalues;  ///< sorted by real part, then imaginary part
    int N = 0;
    std::uint64_t seed = 0;
    int trial_index = 0;
    double trace_residual = 0.0;   ///< |sum lambda - Tr X|
    double trace2_residual = 0.0;  ///< |sum lambda^2 - Tr X^2|
    double sample_seconds = 0.0;   ///< wall clock; not part of equality
    double solve_seconds = 0.0;

    bool operator==(const SpectrumSample& o) const {
        return eigenvalues == o.eigenvalues && N == o.N && seed == o.seed &&
               trial_index == o.trial_index && trace_residual == o.trace_residual &&
               trace2_residual == o.trace2_residual;
    }
};

/// Fills an n x m matrix with i.i.d. complex Gaussians of variance E|g|^2 =
/// `variance`, row-major draw order, one Box-Muller pair per entry.
Eigen::MatrixXcd complex_gaussian(Rng& rng, int rows, int cols, double variance);

/// X = X0 + G, E|G_jk|^2 = tau/N. Deterministic in (seed, trial).
Eigen::MatrixXcd sample_matrix(const ValidatedSpec& spec, cplx z0, int N, std::uint64_t seed,
                               int trial);

/// All eigenvalues via LAPACK zgeev (balancing, Hessenberg reduction, shifted
/// QR). Throws ConvergenceError when QR fails to converge and ResidualError
/// when the trace identities are violated.
SpectrumSample eigenvalues(const Eigen::MatrixXcd& X);

/// sample_matrix + eigenvalues with provenance filled in.
SpectrumSample sample_spectrum(const ValidatedSpec& spec, cplx z0, int N, std::uint64_t seed,
                               int trial);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with R's diagonal
/// made positive.
Eigen::MatrixXcd haar_unitary(int n, Rng& rng);
Eigen::MatrixXcd haar_unitary(int n, std::uint64_t seed);

}  // namespace ginlab
