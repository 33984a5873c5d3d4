#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "ginlab/deformation_model.hpp"

namespace testing {

using ginlab::cplx;

inline ginlab::ValidatedSpec single_atom(double tau, cplx a = {}, int R0 = 8) {
    ginlab::DeformationSpec s;
    s.tau = tau;
    s.atoms = {{a, 1.0}};
    s.R0 = R0;
    return ginlab::validate_spec(s);
}

inline ginlab::ValidatedSpec two_atom(double tau, int R0 = 4) {
    ginlab::DeformationSpec s;
    s.tau = tau;
    s.atoms = {{cplx(1.0, 0.0), 0.5}, {cplx(-1.0, 0.0), 0.5}};
    s.R0 = R0;
    return ginlab::validate_spec(s);
}

inline ginlab::DeformationSpec three_atom_raw() {
    ginlab::DeformationSpec s;
    s.tau = 1.5;
    s.atoms = {{cplx(0.0, 0.0), 0.5}, {cplx(1.0, 1.0), 0.3}, {cplx(-1.5, 0.0), 0.2}};
    s.r0 = 1;
    s.finite_block = {cplx(3.0, -1.0), cplx(-2.0, 2.0)};
    s.R0 = 4;
    return s;
}

// Plain bisection on sum tau c / (f + t) = 1 in long double, 300 halvings.
inline double oracle_t0(const ginlab::DeformationSpec& s, cplx z0) {
    auto g = [&](long double t) {
        long double acc = 0.0L;
        for (const auto& a : s.atoms) {
            const long double f = std::norm(a.a - z0);
            acc += static_cast<long double>(s.tau) * a.c / (f + t);
        }
        return acc - 1.0L;
    };
    long double lo = 0.0L, hi = s.tau;
    for (int i = 0; i < 300; ++i) {
        const long double mid = 0.5L * (lo + hi);
        (g(mid) > 0.0L ? lo : hi) = mid;
    }
    return static_cast<double>(0.5L * (lo + hi));
}

}  // namespace testing
