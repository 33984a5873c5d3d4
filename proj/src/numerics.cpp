#include "ginlab/numerics.hpp"

#include <algorithm>

namespace ginlab {

GoldenResult golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    // 200 iterations shrink any finite bracket below double resolution.
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    GoldenResult best{0.5 * (a + b), 0.0};
    best.fx = f(best.x);
    // Endpoint maxima (monotone functions) are legitimate results.
    for (double x : {lo, hi, c, d}) {
        const double fx = f(x);
        if (fx > best.fx) best = {x, fx};
    }
    return best;
}

}  // namespace ginlab
