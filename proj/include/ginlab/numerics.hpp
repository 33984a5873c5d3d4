#pragma once

#include <cmath>
#include <complex>
#include <functional>

namespace ginlab {

/// Kahan-Babuska-Neumaier accumulator. Works for double and std::complex<double>
/// (the complex case compensates real and imaginary parts independently).
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(std::complex<double> x) {
        re_.add(x.real());
        im_.add(x.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

struct GoldenResult {
    double x;
    double fx;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
/// Stops once the bracket is narrower than `tol`.
GoldenResult golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                double tol);

}  // namespace ginlab
