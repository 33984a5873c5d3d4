#pragma once

#include <limits>
#include <string>

#include <cstddef>
#include <vector>

#include "ginlab/bulk_parameters.hpp"
#include "ginlab/matrix_lab.hpp"

namespace ginlab {

/// Rescaled eigenvalues near z0, one list per trial (trial_index order).
struct LocalStatistics {
    std::vector<std::vector<cplx>> rescaled_points;
    double window_radius = 0.0;
    int n_trials = 0;
    int N = 0;
    double sigma_sq = 0.0;
};

struct Histogram {
    std::vector<double> centers;
    std::vector<double> values;
    std::vector<long> counts;
};

struct Ecdf {
    std::vector<double> x;    ///< sorted sample
    std::vector<double> cdf;  ///< (i + 1) / n
};

/// { sqrt(N sigma^2)(lambda - z0) : |.| <= rho }.
std::vector<cplx> extract_local(const SpectrumSample& sample, const BulkParameters& bp, double rho);

/// Extracts every sample (sorted by trial_index first) into LocalStatistics.
LocalStatistics collect_local(std::vector<SpectrumSample> samples, const BulkParameters& bp,
                              double rho);

/// Points within the guard band |z| <= rho/2 per unit area per trial.
/// Throws InsufficientDataError with fewer than 50 points.
double density_estimate(const LocalStatistics& stats);

/// Counts used by density_estimate.
long density_count(const LocalStatistics& stats);

/// Unrescaled density near z0 (eigenvalues per unit area per trial within
/// `radius` of z0). Comparable with N * sigma^2 / pi.
double raw_density_estimate(const std::vector<SpectrumSample>& samples, cplx z0, double radius);

/// Pair correlation estimate with edge correction: ordered pairs whose first
/// point lies in |z| <= rho - r_max, binned by separation, normalized by
/// annulus area times the theoretical density 1/pi times the number of
/// first points. Throws InsufficientDataError below 200 pairs.
Histogram pair_correlation_estimate(const LocalStatistics& stats, double r_max, int n_bins);

/// Nearest-neighbour distances of points in |z| <= rho - 2, neighbours
/// searched over the full window; trial order, then point order.
std::vector<double> nn_spacings(const LocalStatistics& stats);

Ecdf make_ecdf(std::vector<double> values);

/// ECDF of nn_spacings. Throws InsufficientDataError below `min_points`.
Ecdf nn_spacing_ecdf(const LocalStatistics& stats, std::size_t min_points = 200);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_distance(const Ecdf& a, const Ecdf& b);

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Metrics without enough data stay NaN and the reason is listed in insufficient_data.
struct ComparisonReport {
    double density_hat = kNaN;
    double density_theory = 0.0;
    double density_rel_err = kNaN;
    Histogram g_of_r;
    double g_max_abs_dev = kNaN;  ///< over bins with at least min_pairs_per_bin pairs
    int g_bins_compared = 0;
    double ks_spacing_vs_ginibre = kNaN;
    long total_points = 0;
    long density_points = 0;
    long pair_count = 0;
    long spacing_count = 0;
    long baseline_spacing_count = 0;
    std::vector<std::string> insufficient_data;
};

/// Assembles the comparison of `stats` against the Ginibre bulk prediction.
/// The spacing comparison uses `baseline` (pure Ginibre, same N), truncated
/// to matched counts.
ComparisonReport compare_with_theory(const LocalStatistics& stats, const LocalStatistics& baseline,
                                     double r_max, int n_bins, long min_pairs_per_bin = 500);

}  // namespace ginlab
