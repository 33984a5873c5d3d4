#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ginlab/errors.hpp"
#include "ginlab/matrix_lab.hpp"
#include "ginlab/rng.hpp"
#include "helpers.hpp"

using namespace ginlab;

namespace {

// Durand-Kerner iteration for a monic polynomial given by coefficients c[0] + c[1] x + ...
std::vector<cplx> polynomial_roots(const std::vector<double>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<cplx> z(n);
    for (int i = 0; i < n; ++i) z[i] = std::pow(cplx(0.4, 0.9), i);
    auto p = [&](cplx x) {
        cplx acc = 0.0;
        for (int k = n; k >= 0; --k) acc = acc * x + c[k];
        return acc;
    };
    for (int it = 0; it < 500; ++it) {
        for (int i = 0; i < n; ++i) {
            cplx denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= z[i] - z[j];
            z[i] -= p(z[i]) / denom;
        }
    }
    std::sort(z.begin(), z.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    return z;
}

bool lex_sorted(const std::vector<cplx>& v) {
    return std::is_sorted(v.begin(), v.end(), [](cplx a, cplx b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
}

}  // namespace

TEST_CASE("stream seeds are distinct and deterministic") {
    static_assert(stream_seed(1, 0) == stream_seed(1, 0));
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t m = 0; m < 4; ++m)
        for (std::uint64_t t = 0; t < 256; ++t) seeds.push_back(stream_seed(m, t));
    std::sort(seeds.begin(), seeds.end());
    CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
}

TEST_CASE("sample_matrix second moment and mean") {
    const ValidatedSpec s = testing::single_atom(1.0, 0.0, 0);
    const int draws = 100000;
    double m2 = 0.0;
    cplx mean = 0.0;
    for (int t = 0; t < draws; ++t) {
        const Eigen::MatrixXcd X = sample_matrix(s, 0.0, 2, 42, t);
        m2 += std::norm(X(0, 0));
        mean += X(0, 1);
    }
    m2 /= draws;
    mean /= static_cast<double>(draws);
    CHECK(m2 > 0.49);
    CHECK(m2 < 0.51);
    // each part has variance tau / (2N) = 0.25
    const double bound = 4.0 * 0.5 / std::sqrt(static_cast<double>(draws));
    CHECK(std::abs(mean.real()) < bound);
    CHECK(std::abs(mean.imag()) < bound);
}

TEST_CASE("sample_matrix mean equals the deformation") {
    const ValidatedSpec s = testing::two_atom(2.0, 4);
    const int N = 8, draws = 20000;
    const Eigen::VectorXcd d = build_mean_matrix(s, N);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(N, N);
    for (int t = 0; t < draws; ++t) acc += sample_matrix(s, 0.0, N, 3, t);
    acc /= static_cast<double>(draws);
    const double part_sd = std::sqrt(2.0 / (2.0 * N));
    const double bound = 4.0 * part_sd / std::sqrt(static_cast<double>(draws));
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            const cplx target = i == j ? d[i] : cplx(0.0, 0.0);
            CHECK(std::abs((acc(i, j) - target).real()) < bound);
            CHECK(std::abs((acc(i, j) - target).imag()) < bound);
        }
    }
}

TEST_CASE("sample_matrix is deterministic per (seed, trial)") {
    const ValidatedSpec s = validate_spec(testing::three_atom_raw());
    const Eigen::MatrixXcd a = sample_matrix(s, cplx(0.4, 0.3), 40, 99, 5);
    const Eigen::MatrixXcd b = sample_matrix(s, cplx(0.4, 0.3), 40, 99, 5);
    const Eigen::MatrixXcd c = sample_matrix(s, cplx(0.4, 0.3), 40, 99, 6);
    CHECK(a == b);
    CHECK(a != c);
    CHECK_THROWS_AS(sample_matrix(s, cplx(0.4, 0.3), 5, 1, 0), DimensionError);
}

TEST_CASE("eigenvalues of small matrices") {
    {
        Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(3, 3);
        X(0, 0) = 1.0;
        X(1, 1) = cplx(0.0, 2.0);
        X(2, 2) = -3.0;
        const SpectrumSample s = eigenvalues(X);
        REQUIRE(s.eigenvalues.size() == 3);
        CHECK(std::abs(s.eigenvalues[0] - cplx(-3.0, 0.0)) < 1e-14);
        CHECK(std::abs(s.eigenvalues[1] - cplx(0.0, 2.0)) < 1e-14);
        CHECK(std::abs(s.eigenvalues[2] - cplx(1.0, 0.0)) < 1e-14);
    }
    {
        Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(2, 2);
        X(0, 1) = 1.0;
        const SpectrumSample s = eigenvalues(X);
        for (const cplx& l : s.eigenvalues) CHECK(std::abs(l) < 1e-14);
    }
    {
        Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(3, 3);
        C(0, 0) = 6.0;
        C(0, 1) = -11.0;
        C(0, 2) = 6.0;
        C(1, 0) = 1.0;
        C(2, 1) = 1.0;
        const std::vector<cplx> oracle = polynomial_roots({-6.0, 11.0, -6.0, 1.0});
        const SpectrumSample s = eigenvalues(C);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(s.eigenvalues[i] - oracle[i]) < 1e-10);
            CHECK(std::abs(s.eigenvalues[i] - cplx(i + 1.0, 0.0)) < 1e-10);
        }
    }
    CHECK_THROWS_AS(eigenvalues(Eigen::MatrixXcd::Zero(2, 3)), DimensionError);
}

TEST_CASE("eigenvalue residuals, ordering and permutation invariance") {
    const ValidatedSpec s = validate_spec(testing::three_atom_raw());
    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::MatrixXcd X = sample_matrix(s, cplx(0.4, 0.3), 60, 12, trial);
        const SpectrumSample a = eigenvalues(X);
        CHECK(lex_sorted(a.eigenvalues));
        const cplx tr = X.trace();
        const cplx tr2 = (X * X).trace();
        CHECK(a.trace_residual <= 1e-8 * 60 * (1.0 + std::abs(tr)));
        CHECK(a.trace2_residual <= 1e-6 * 60 * (1.0 + std::abs(tr2)));

        std::vector<int> perm(60);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), gen);
        Eigen::MatrixXcd Y(60, 60);
        for (int i = 0; i < 60; ++i)
            for (int j = 0; j < 60; ++j) Y(i, j) = X(perm[i], perm[j]);
        const SpectrumSample b = eigenvalues(Y);
        // match as multisets by greedy nearest pairing
        std::vector<cplx> rest = b.eigenvalues;
        double worst = 0.0;
        for (const cplx& l : a.eigenvalues) {
            auto it = std::min_element(rest.begin(), rest.end(), [&](cplx p, cplx q) {
                return std::abs(p - l) < std::abs(q - l);
            });
            worst = std::max(worst, std::abs(*it - l));
            rest.erase(it);
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("sample_spectrum is deterministic") {
    const ValidatedSpec s = testing::two_atom(2.0);
    const SpectrumSample a = sample_spectrum(s, 0.0, 64, 5, 3);
    const SpectrumSample b = sample_spectrum(s, 0.0, 64, 5, 3);
    CHECK(a == b);
    CHECK(a.trial_index == 3);
    CHECK(a.N == 64);
}

TEST_CASE("pure Ginibre spectral radius") {
    const ValidatedSpec s = testing::single_atom(1.0);
    for (int trial = 0; trial < 4; ++trial) {
        const SpectrumSample sp = sample_spectrum(s, 0.0, 512, 2024, trial);
        double rmax = 0.0;
        for (const cplx& l : sp.eigenvalues) rmax = std::max(rmax, std::abs(l));
        CHECK(rmax >= 0.9);
        CHECK(rmax <= 1.2);
    }
}

TEST_CASE("haar_unitary") {
    const Eigen::MatrixXcd u1 = haar_unitary(1, 7);
    CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) < 1e-14);
    const Eigen::MatrixXcd u3 = haar_unitary(3, 8);
    CHECK((u3.adjoint() * u3 - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(haar_unitary(3, 8) == u3);

    Rng rng(123);
    double m = 0.0;
    const int draws = 100000;
    for (int k = 0; k < draws; ++k) m += std::norm(haar_unitary(4, rng)(0, 0));
    m /= draws;
    CHECK(std::abs(m - 0.25) < 0.01);
}
