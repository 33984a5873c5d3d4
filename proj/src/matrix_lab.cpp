#include "ginlab/matrix_lab.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "ginlab/errors.hpp"
#include "ginlab/numerics.hpp"

namespace ginlab {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Eigen::MatrixXcd complex_gaussian(Rng& rng, int rows, int cols, double variance) {
    // Each part has variance/2.
    const double scale = std::sqrt(variance / 2.0);
    Eigen::MatrixXcd g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = scale * rng.normal_pair();
    return g;
}

Eigen::MatrixXcd sample_matrix(const ValidatedSpec& spec, cplx z0, int N, std::uint64_t seed,
                               int trial) {
    const Eigen::VectorXcd mean = build_mean_matrix(spec, N, z0);
    Rng rng(stream_seed(seed, static_cast<std::uint64_t>(trial)));
    Eigen::MatrixXcd x = complex_gaussian(rng, N, N, spec.tau() / N);
    x.diagonal() += mean;
    return x;
}

SpectrumSample eigenvalues(const Eigen::MatrixXcd& X) {
    if (X.rows() != X.cols()) throw DimensionError("eigenvalues: matrix must be square");
    if (!X.allFinite()) throw ValidationError("eigenvalues: matrix has non-finite entries");
    const auto start = std::chrono::steady_clock::now();
    const int n = static_cast<int>(X.rows());

    SpectrumSample out;
    out.N = n;
    if (n == 0) return out;

    Eigen::MatrixXcd work = X;
    std::vector<cplx> w(n);
    // zhseqr's internal limit is 30 * max(10, n) QR sweeps; info > 0 reports it.
    const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, w.data(),
                                          nullptr, 1, nullptr, 1);
    if (info > 0) {
        std::ostringstream os;
        os << "QR iteration failed to converge (" << info << " eigenvalues unresolved)";
        throw ConvergenceError(os.str());
    }
    if (info < 0) throw ValidationError("zgeev rejected argument " + std::to_string(-info));

    CompensatedComplexSum sum1, sum2, tr1, tr2;
    for (const cplx& l : w) {
        sum1.add(l);
        sum2.add(l * l);
    }
    for (int i = 0; i < n; ++i) {
        tr1.add(X(i, i));
        for (int j = 0; j < n; ++j) tr2.add(X(i, j) * X(j, i));
    }
    out.trace_residual = std::abs(sum1.value() - tr1.value());
    out.trace2_residual = std::abs(sum2.value() - tr2.value());
    const double bound1 = 1e-8 * n * (1.0 + std::abs(tr1.value()));
    const double bound2 = 1e-6 * n * (1.0 + std::abs(tr2.value()));
    if (!(out.trace_residual <= bound1) || !(out.trace2_residual <= bound2)) {
        std::ostringstream os;
        os << "trace identity violated: |sum l - Tr X| = " << out.trace_residual << " (bound "
           << bound1 << "), |sum l^2 - Tr X^2| = " << out.trace2_residual << " (bound " << bound2
           << ")";
        throw ResidualError(os.str());
    }

    std::sort(w.begin(), w.end(), [](const cplx& a, const cplx& b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    out.eigenvalues = std::move(w);
    out.solve_seconds = seconds_since(start);
    return out;
}

SpectrumSample sample_spectrum(const ValidatedSpec& spec, cplx z0, int N, std::uint64_t seed,
                               int trial) {
    const auto start = std::chrono::steady_clock::now();
    const Eigen::MatrixXcd x = sample_matrix(spec, z0, N, seed, trial);
    const double sample_time = seconds_since(start);
    SpectrumSample s = eigenvalues(x);
    s.seed = seed;
    s.trial_index = trial;
    s.sample_seconds = sample_time;
    return s;
}

Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
    if (n < 1) throw DimensionError("haar_unitary: n must be positive");
    const Eigen::MatrixXcd g = complex_gaussian(rng, n, n, 1.0);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd& r = qr.matrixQR();
    for (int k = 0; k < n; ++k) {
        const cplx d = r(k, k);
        const double m = std::abs(d);
        if (m > 0.0) q.col(k) *= d / m;
    }
    return q;
}

Eigen::MatrixXcd haar_unitary(int n, std::uint64_t seed) {
    Rng rng(seed);
    return haar_unitary(n, rng);
}

}  // namespace ginlab
