#include "ginlab/bulk_parameters.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ginlab/errors.hpp"
#include "ginlab/numerics.hpp"

namespace ginlab {

namespace {

void require_bulk(const ValidatedSpec& spec, cplx z0) {
    const PointClass pc = classify_point(spec, z0);
    if (pc.tag != PointTag::Bulk) {
        std::ostringstream os;
        os.precision(17);
        os << "z0=" << z0 << " is " << to_string(pc.tag) << " (p00=" << pc.p00
           << ", 1/tau=" << 1.0 / spec.tau() << ")";
        if (pc.tag == PointTag::Edge) os << ": edge-not-supported";
        throw NotBulkError(os.str());
    }
}

double residual_derivative(const ValidatedSpec& spec, cplx z0, double t) {
    CompensatedSum sum;
    for (const Atom& atom : spec.atoms()) {
        const double d = std::norm(atom.a - z0) + t;
        sum.add(-spec.tau() * atom.c / (d * d));
    }
    return sum.value();
}

}  // namespace

double fixed_point_residual(const ValidatedSpec& spec, cplx z0, double t) {
    CompensatedSum sum;
    for (const Atom& atom : spec.atoms())
        sum.add(spec.tau() * atom.c / (std::norm(atom.a - z0) + t));
    sum.add(-1.0);
    return sum.value();
}

double solve_t0(const ValidatedSpec& spec, cplx z0) {
    require_bulk(spec, z0);
    // g is strictly decreasing, g(0) = tau p00 - 1 > 0 and g(tau) <= 0.
    double lo = 0.0;
    double hi = spec.tau();
    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (fixed_point_residual(spec, z0, mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double t = 0.5 * (lo + hi);
    for (int step = 0; step < 3; ++step) {
        const double g = fixed_point_residual(spec, z0, t);
        const double dg = residual_derivative(spec, z0, t);
        if (g == 0.0 || dg == 0.0) break;
        const double next = t - g / dg;
        if (!(next > 0.0) || !std::isfinite(next)) break;
        t = next;
    }
    const double residual = std::abs(fixed_point_residual(spec, z0, t));
    if (!(residual < 1e-12)) {
        std::ostringstream os;
        os << "fixed-point residual " << residual << " exceeds 1e-12 at z0=" << z0;
        throw ConvergenceError(os.str());
    }
    return t;
}

BulkParameters bulk_parameters(const ValidatedSpec& spec, cplx z0, double t0_override) {
    BulkParameters bp;
    bp.z0 = z0;
    bp.t0 = t0_override > 0.0 ? (require_bulk(spec, z0), t0_override) : solve_t0(spec, z0);

    CompensatedComplexSum p0;
    CompensatedSum p1;
    for (const Atom& atom : spec.atoms()) {
        const double d = std::norm(atom.a - z0) + bp.t0;
        const double w = atom.c / (d * d);
        p0.add(w * (atom.a - z0));
        p1.add(w);
    }
    bp.p0 = p0.value();
    bp.p1 = p1.value();
    bp.sigma_sq = bp.t0 * bp.p1 + std::norm(bp.p0) / bp.p1;
    bp.predicted_density = bp.sigma_sq / std::numbers::pi;
    return bp;
}

double rescale_factor(const BulkParameters& bp, int N) {
    return std::sqrt(static_cast<double>(N) * bp.sigma_sq);
}

}  // namespace ginlab
