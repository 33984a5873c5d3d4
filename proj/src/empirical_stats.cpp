#include "ginlab/empirical_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ginlab/errors.hpp"
#include "ginlab/kernel_theory.hpp"

namespace ginlab {

std::vector<cplx> extract_local(const SpectrumSample& sample, const BulkParameters& bp,
                                double rho) {
    if (!(rho > 0.0)) throw ValidationError("window radius must be positive");
    const double scale = rescale_factor(bp, sample.N);
    std::vector<cplx> out;
    for (const cplx& l : sample.eigenvalues) {
        const cplx z = scale * (l - bp.z0);
        if (std::abs(z) <= rho) out.push_back(z);
    }
    return out;
}

LocalStatistics collect_local(std::vector<SpectrumSample> samples, const BulkParameters& bp,
                              double rho) {
    std::sort(samples.begin(), samples.end(),
              [](const SpectrumSample& a, const SpectrumSample& b) {
                  return a.trial_index < b.trial_index;
              });
    LocalStatistics stats;
    stats.window_radius = rho;
    stats.n_trials = static_cast<int>(samples.size());
    stats.N = samples.empty() ? 0 : samples.front().N;
    stats.sigma_sq = bp.sigma_sq;
    for (const SpectrumSample& s : samples) {
        if (s.N != stats.N) throw ValidationError("collect_local: mixed matrix sizes");
        stats.rescaled_points.push_back(extract_local(s, bp, rho));
    }
    return stats;
}

long density_count(const LocalStatistics& stats) {
    const double inner = stats.window_radius / 2.0;
    long count = 0;
    for (const auto& trial : stats.rescaled_points)
        for (const cplx& z : trial)
            if (std::abs(z) <= inner) ++count;
    return count;
}

double density_estimate(const LocalStatistics& stats) {
    if (stats.n_trials < 1) throw InsufficientDataError("density_estimate needs at least one trial");
    const long count = density_count(stats);
    if (count < 50) {
        std::ostringstream os;
        os << "density_estimate: only " << count << " points in the inner window (need 50)";
        throw InsufficientDataError(os.str());
    }
    const double inner = stats.window_radius / 2.0;
    return count / (std::numbers::pi * inner * inner * stats.n_trials);
}

double raw_density_estimate(const std::vector<SpectrumSample>& samples, cplx z0, double radius) {
    if (samples.empty()) throw InsufficientDataError("raw_density_estimate needs samples");
    if (!(radius > 0.0)) throw ValidationError("radius must be positive");
    long count = 0;
    for (const SpectrumSample& s : samples)
        for (const cplx& l : s.eigenvalues)
            if (std::abs(l - z0) <= radius) ++count;
    return count / (std::numbers::pi * radius * radius * static_cast<double>(samples.size()));
}

Histogram pair_correlation_estimate(const LocalStatistics& stats, double r_max, int n_bins) {
    if (n_bins < 4) throw ValidationError("pair_correlation_estimate: n_bins must be >= 4");
    if (!(r_max > 0.0) || r_max > stats.window_radius / 2.0 + 1e-12)
        throw ValidationError("pair_correlation_estimate: need 0 < r_max <= rho/2");
    const double inner = stats.window_radius - r_max;
    const double width = r_max / n_bins;

    Histogram h;
    h.counts.assign(n_bins, 0);
    long centres = 0;
    long pairs = 0;
    for (const auto& trial : stats.rescaled_points) {
        for (std::size_t i = 0; i < trial.size(); ++i) {
            if (std::abs(trial[i]) > inner) continue;
            ++centres;
            for (std::size_t j = 0; j < trial.size(); ++j) {
                if (j == i) continue;
                const double d = std::abs(trial[i] - trial[j]);
                if (d >= r_max) continue;
                const int b = std::min(n_bins - 1, static_cast<int>(d / width));
                ++h.counts[b];
                ++pairs;
            }
        }
    }
    if (pairs < 200) {
        std::ostringstream os;
        os << "pair_correlation_estimate: only " << pairs << " pairs (need 200)";
        throw InsufficientDataError(os.str());
    }
    for (int b = 0; b < n_bins; ++b) {
        const double lo = b * width;
        const double hi = (b + 1) * width;
        const double area = std::numbers::pi * (hi * hi - lo * lo);
        h.centers.push_back(lo + width / 2.0);
        h.values.push_back(h.counts[b] / (area * (1.0 / std::numbers::pi) * centres));
    }
    return h;
}

std::vector<double> nn_spacings(const LocalStatistics& stats) {
    const double inner = stats.window_radius - 2.0;
    std::vector<double> out;
    for (const auto& trial : stats.rescaled_points) {
        for (std::size_t i = 0; i < trial.size(); ++i) {
            if (std::abs(trial[i]) > inner) continue;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < trial.size(); ++j)
                if (j != i) best = std::min(best, std::abs(trial[i] - trial[j]));
            if (std::isfinite(best)) out.push_back(best);
        }
    }
    return out;
}

Ecdf make_ecdf(std::vector<double> values) {
    Ecdf e;
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    e.cdf.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) e.cdf.push_back((i + 1) / n);
    e.x = std::move(values);
    return e;
}

Ecdf nn_spacing_ecdf(const LocalStatistics& stats, std::size_t min_points) {
    std::vector<double> s = nn_spacings(stats);
    if (s.size() < std::max<std::size_t>(min_points, 1)) {
        std::ostringstream os;
        os << "nn_spacing_ecdf: only " << s.size() << " spacings (need " << min_points << ")";
        throw InsufficientDataError(os.str());
    }
    return make_ecdf(std::move(s));
}

double ks_distance(const Ecdf& a, const Ecdf& b) {
    if (a.x.empty() || b.x.empty()) throw ValidationError("ks_distance: empty ECDF");
    const double na = static_cast<double>(a.x.size());
    const double nb = static_cast<double>(b.x.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    // Evaluate both step functions right after every jump location.
    while (i < a.x.size() || j < b.x.size()) {
        double x;
        if (j >= b.x.size() || (i < a.x.size() && a.x[i] <= b.x[j]))
            x = a.x[i];
        else
            x = b.x[j];
        while (i < a.x.size() && a.x[i] <= x) ++i;
        while (j < b.x.size() && b.x[j] <= x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

ComparisonReport compare_with_theory(const LocalStatistics& stats, const LocalStatistics& baseline,
                                     double r_max, int n_bins, long min_pairs_per_bin) {
    ComparisonReport r;
    for (const auto& trial : stats.rescaled_points) r.total_points += static_cast<long>(trial.size());
    r.density_points = density_count(stats);
    r.density_theory = 1.0 / std::numbers::pi;
    try {
        r.density_hat = density_estimate(stats);
        r.density_rel_err = std::abs(r.density_hat - r.density_theory) / r.density_theory;
    } catch (const InsufficientDataError& e) {
        r.insufficient_data.push_back(e.what());
    }

    try {
        r.g_of_r = pair_correlation_estimate(stats, r_max, n_bins);
        r.g_max_abs_dev = 0.0;
        for (std::size_t b = 0; b < r.g_of_r.counts.size(); ++b) {
            r.pair_count += r.g_of_r.counts[b];
            if (r.g_of_r.counts[b] < min_pairs_per_bin) continue;
            ++r.g_bins_compared;
            r.g_max_abs_dev = std::max(
                r.g_max_abs_dev,
                std::abs(r.g_of_r.values[b] - predicted_pair_correlation(r.g_of_r.centers[b])));
        }
        if (r.g_bins_compared == 0) {
            r.g_max_abs_dev = kNaN;
            std::ostringstream os;
            os << "pair correlation: no bin has " << min_pairs_per_bin << " pairs";
            r.insufficient_data.push_back(os.str());
        }
    } catch (const InsufficientDataError& e) {
        r.insufficient_data.push_back(e.what());
    }

    std::vector<double> s = nn_spacings(stats);
    std::vector<double> base = nn_spacings(baseline);
    const std::size_t matched = std::min(s.size(), base.size());
    s.resize(matched);
    base.resize(matched);
    r.spacing_count = static_cast<long>(matched);
    r.baseline_spacing_count = static_cast<long>(matched);
    if (matched < 200) {
        std::ostringstream os;
        os << "spacing comparison: only " << matched << " matched spacings (need 200)";
        r.insufficient_data.push_back(os.str());
    } else {
        r.ks_spacing_vs_ginibre = ks_distance(make_ecdf(std::move(s)), make_ecdf(std::move(base)));
    }
    return r;
}

}  // namespace ginlab
