#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ginlab/bulk_parameters.hpp"

namespace ginlab {

struct MaxCheckResult {
    std::vector<double> argmax_found;
    std::vector<double> argmax_expected;
    double value_found = 0.0;
    double value_expected = 0.0;  ///< objective at the expected maximizer
    double max_gap = 0.0;         ///< value_expected - value_found
    double tolerance = 0.0;
    bool passed = false;
};

/// phi(h) = sum c_a log(f_a + h) - h / tau for scalar h >= 0.
double lemma_y_objective(const ValidatedSpec& spec, cplx z0, double h);

/// Maximizes phi over [0, 10 tau] by golden section (to 1e-10) and checks
/// the maximizer is t0 within 1e-6 and that phi(t0 +- 0.1) < phi(t0).
/// `t0_override` > 0 replaces the solved t0 (negative control).
MaxCheckResult check_lemma_maximum_y(const ValidatedSpec& spec, cplx z0, double t0_override = 0.0);

/// Scalar (n = 1, l1 = l2 = 1) objective of the constrained maximum lemma in
/// the squared variables s_a = T_a^2, a = |A|^2, b = |B|^2:
///   sum (tau c_a log s_a - f_a s_a) + |z0|^2 (sum s_a + a + b) - b |z0 - D|^2.
double lemma_j_objective(const ValidatedSpec& spec, cplx z0, cplx d,
                         const std::vector<double>& s, double a, double b);

/// Closed-form maximum: sum tau c_a log(tau c_a / (f_a + t0)) + t0 + |z0|^2 - tau.
double lemma_j_bound(const ValidatedSpec& spec, cplx z0, double t0);

/// Maximizes J_1 over {T_a, |A|, |B| >= 0, sum T_a^2 + |A|^2 + |B|^2 <= 1}
/// with a coarse grid (pitch `grid_resolution` in T, |A|, |B|) then
/// coordinate-wise golden-section refinement. Expected maximizer is
/// T_a = sqrt(tau c_a / (f_a + t0)), A = B = 0. Argmax vectors are reported
/// as (T_1..T_t, |A|, |B|).
/// D defaults to z0 + 1.
MaxCheckResult check_lemma_jn(const ValidatedSpec& spec, cplx z0, double grid_resolution = 0.05,
                              std::optional<cplx> d = std::nullopt, double t0_override = 0.0);

struct HcizResult {
    double monte_carlo = 0.0;
    double closed_form = 0.0;
    double relative_error = 0.0;
};

/// Haar average of exp(l Tr(A U B U^*)) for diagonal A, B versus the
/// Harish-Chandra-Itzykson-Zuber closed form, n in {1, 2}.
HcizResult check_hciz(int n, const std::vector<double>& a_diag, const std::vector<double>& b_diag,
                      double l, long mc_samples, std::uint64_t seed);

/// Closed form alone.
double hciz_closed_form(const std::vector<double>& a_diag, const std::vector<double>& b_diag,
                        double l);

}  // namespace ginlab
