#include "ginlab/deformation_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "ginlab/errors.hpp"
#include "ginlab/numerics.hpp"

namespace ginlab {

ValidatedSpec validate_spec(DeformationSpec spec) {
    if (!(spec.tau > 0.0) || !std::isfinite(spec.tau))
        throw NonpositiveParamError("tau must be positive and finite");
    if (spec.atoms.empty()) throw NonpositiveParamError("at least one atom is required");
    if (spec.r0 < 0 || spec.R0 < 0)
        throw NonpositiveParamError("block sizes r0 and R0 must be nonnegative");

    CompensatedSum total;
    for (std::size_t i = 0; i < spec.atoms.size(); ++i) {
        const Atom& atom = spec.atoms[i];
        if (!(atom.c > 0.0) || !std::isfinite(atom.c)) {
            std::ostringstream os;
            os << "atom " << i << " has nonpositive weight c=" << atom.c;
            throw NonpositiveParamError(os.str());
        }
        if (!std::isfinite(atom.a.real()) || !std::isfinite(atom.a.imag()))
            throw NonpositiveParamError("atom locations must be finite");
        for (std::size_t j = 0; j < i; ++j) {
            if (spec.atoms[j].a == atom.a) {
                std::ostringstream os;
                os << "atoms " << j << " and " << i << " coincide at " << atom.a;
                throw DuplicateAtomError(os.str());
            }
        }
        total.add(atom.c);
    }
    if (std::abs(total.value() - 1.0) > 1e-12) {
        std::ostringstream os;
        os.precision(17);
        os << "atom weights sum to " << total.value() << ", expected 1";
        throw WeightSumError(os.str());
    }
    for (const cplx& v : spec.finite_block) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NonpositiveParamError("finite_block entries must be finite");
    }
    return ValidatedSpec(std::move(spec));
}

double p00(const ValidatedSpec& spec, cplx z0) {
    CompensatedSum sum;
    for (const Atom& atom : spec.atoms()) {
        const double f = std::norm(atom.a - z0);
        if (f == 0.0) {
            std::ostringstream os;
            os << "test point " << z0 << " coincides with an atom";
            throw AtomCollisionError(os.str());
        }
        sum.add(atom.c / f);
    }
    return sum.value();
}

PointClass classify_point(const ValidatedSpec& spec, cplx z0) {
    const double value = p00(spec, z0);
    const double threshold = 1.0 / spec.tau();
    PointClass out;
    out.p00 = value;
    if (value > threshold + kEdgeEpsilon)
        out.tag = PointTag::Bulk;
    else if (std::abs(value - threshold) <= kEdgeEpsilon)
        out.tag = PointTag::Edge;
    else
        out.tag = PointTag::Exterior;
    return out;
}

const char* to_string(PointTag tag) {
    switch (tag) {
        case PointTag::Bulk: return "bulk";
        case PointTag::Edge: return "edge";
        case PointTag::Exterior: return "exterior";
    }
    return "unknown";
}

namespace {

// p00 - 1/tau, with atoms mapped to +infinity.
double level_function(const ValidatedSpec& spec, cplx z) {
    CompensatedSum sum;
    for (const Atom& atom : spec.atoms()) {
        const double f = std::norm(atom.a - z);
        if (f == 0.0) return std::numeric_limits<double>::infinity();
        sum.add(atom.c / f);
    }
    return sum.value() - 1.0 / spec.tau();
}

cplx refine_on_edge(const ValidatedSpec& spec, cplx p, double fp, cplx q) {
    // Invariant: level_function(lo) and level_function(hi) have opposite signs.
    cplx lo = p;
    cplx hi = q;
    const bool lo_positive = fp > 0.0;
    cplx best = 0.5 * (lo + hi);
    double best_residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 200; ++it) {
        const cplx mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = level_function(spec, mid);
        if (std::abs(fm) < best_residual) {
            best_residual = std::abs(fm);
            best = mid;
        }
        if (best_residual < kBoundaryResidual * 1e-2) break;
        if ((fm > 0.0) == lo_positive)
            lo = mid;
        else
            hi = mid;
    }
    return best;
}

}  // namespace

BoundaryCurve trace_boundary(const ValidatedSpec& spec, const Window& window, double resolution) {
    if (!(resolution > 0.0)) throw ValidationError("resolution must be positive");
    const double width = window.x_max - window.x_min;
    const double height = window.y_max - window.y_min;
    if (!(width > 0.0) || !(height > 0.0)) throw ValidationError("window must have positive extent");

    const int nx = std::max(1, static_cast<int>(std::ceil(width / resolution - 1e-9)));
    const int ny = std::max(1, static_cast<int>(std::ceil(height / resolution - 1e-9)));
    const double hx = width / nx;
    const double hy = height / ny;
    const int stride = nx + 1;

    auto node = [&](int i, int j) { return cplx(window.x_min + i * hx, window.y_min + j * hy); };

    std::vector<double> values(static_cast<std::size_t>(stride) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) values[j * stride + i] = level_function(spec, node(i, j));
    auto value = [&](int i, int j) { return values[j * stride + i]; };
    auto positive = [&](int i, int j) { return value(i, j) > 0.0; };

    // Edge ids: 2*node for the edge to the right, 2*node+1 for the edge upward.
    auto h_edge = [&](int i, int j) { return 2L * (j * stride + i); };
    auto v_edge = [&](int i, int j) { return 2L * (j * stride + i) + 1; };

    std::unordered_map<long, std::vector<long>> adjacency;
    auto link = [&](long a, long b) {
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    };

    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const bool s0 = positive(i, j), s1 = positive(i + 1, j);
            const bool s2 = positive(i + 1, j + 1), s3 = positive(i, j + 1);
            const long bottom = h_edge(i, j), top = h_edge(i, j + 1);
            const long left = v_edge(i, j), right = v_edge(i + 1, j);
            std::vector<long> crossed;
            if (s0 != s1) crossed.push_back(bottom);
            if (s1 != s2) crossed.push_back(right);
            if (s3 != s2) crossed.push_back(top);
            if (s0 != s3) crossed.push_back(left);
            if (crossed.size() == 2) {
                link(crossed[0], crossed[1]);
            } else if (crossed.size() == 4) {
                // Saddle: the cell centre decides which diagonal is connected.
                const bool centre = level_function(spec, node(i, j) + cplx(hx / 2, hy / 2)) > 0.0;
                if (centre == s0) {
                    link(bottom, right);
                    link(top, left);
                } else {
                    link(bottom, left);
                    link(right, top);
                }
            }
        }
    }
    if (adjacency.empty()) throw EmptyLevelSetError("no sign change of p00 - 1/tau inside the window");

    std::unordered_map<long, cplx> vertex;
    auto vertex_of = [&](long id) {
        auto it = vertex.find(id);
        if (it != vertex.end()) return it->second;
        const long n = id / 2;
        const int i = static_cast<int>(n % stride);
        const int j = static_cast<int>(n / stride);
        const int i2 = (id % 2 == 0) ? i + 1 : i;
        const int j2 = (id % 2 == 0) ? j : j + 1;
        const cplx v = refine_on_edge(spec, node(i, j), value(i, j), node(i2, j2));
        vertex.emplace(id, v);
        return v;
    };

    // Deterministic traversal order.
    std::vector<long> ids;
    ids.reserve(adjacency.size());
    for (const auto& [id, nbrs] : adjacency) ids.push_back(id);
    std::sort(ids.begin(), ids.end());

    BoundaryCurve curve;
    curve.grid_resolution = std::max(hx, hy);
    std::unordered_map<long, bool> visited;

    auto walk = [&](long start) {
        BoundaryCurve::Polyline line;
        long prev = -1;
        long cur = start;
        while (true) {
            visited[cur] = true;
            line.points.push_back(vertex_of(cur));
            long next = -1;
            for (long nb : adjacency[cur]) {
                if (nb != prev && !visited[nb]) {
                    next = nb;
                    break;
                }
            }
            if (next < 0) {
                // Closed if the start is a neighbour of the last vertex.
                const auto& nbrs = adjacency[cur];
                line.closed = line.points.size() > 2 &&
                              std::find(nbrs.begin(), nbrs.end(), start) != nbrs.end();
                break;
            }
            prev = cur;
            cur = next;
        }
        curve.polylines.push_back(std::move(line));
    };

    for (long id : ids)  // open chains start at window-boundary endpoints
        if (!visited[id] && adjacency[id].size() == 1) walk(id);
    for (long id : ids)
        if (!visited[id]) walk(id);
    return curve;
}

std::vector<int> atom_multiplicities(const ValidatedSpec& spec, int N) {
    const auto& s = spec.spec();
    const int fixed = s.r0 + static_cast<int>(s.finite_block.size()) + s.R0;
    const int t = static_cast<int>(s.atoms.size());
    if (N < fixed + t) {
        std::ostringstream os;
        os << "N=" << N << " leaves no room for every atom (need N >= " << fixed + t << ")";
        throw DimensionError(os.str());
    }
    const int M = N - fixed;
    std::vector<int> r(t);
    std::vector<double> frac(t);
    int assigned = 0;
    for (int a = 0; a < t; ++a) {
        const double exact = s.atoms[a].c * M;
        r[a] = static_cast<int>(std::floor(exact));
        frac[a] = exact - r[a];
        assigned += r[a];
    }
    std::vector<int> order(t);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return frac[x] > frac[y]; });
    // Weights sum to 1 within 1e-12, so the remainder is small but may in
    // principle be negative by one; absorb it at the tail of the order.
    int remainder = M - assigned;
    for (int k = 0; remainder > 0; k = (k + 1) % t, --remainder) ++r[order[k]];
    for (int k = t - 1; remainder < 0; k = (k + t - 1) % t) {
        if (r[order[k]] > 0) {
            --r[order[k]];
            ++remainder;
        }
    }
    return r;
}

Eigen::VectorXcd build_mean_matrix(const ValidatedSpec& spec, int N, cplx z0) {
    const auto& s = spec.spec();
    const std::vector<int> r = atom_multiplicities(spec, N);
    Eigen::VectorXcd diag(N);
    int k = 0;
    for (std::size_t a = 0; a < r.size(); ++a)
        for (int m = 0; m < r[a]; ++m) diag[k++] = s.atoms[a].a;
    for (int m = 0; m < s.r0; ++m) diag[k++] = z0;
    for (const cplx& v : s.finite_block) diag[k++] = v;
    for (int m = 0; m < s.R0; ++m) diag[k++] = 0.0;
    return diag;
}

}  // namespace ginlab
