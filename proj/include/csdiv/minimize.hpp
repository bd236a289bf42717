#pragma once

#include <cmath>
#include <functional>
#include <utility>

namespace csdiv {

/// Golden-section minimization of a unimodal function on [lo, hi], run until
/// the bracket is shorter than tol.  Returns (argmin, min value).
inline std::pair<double, double> golden_section_min(const std::function<double(double)>& fn,
                                                    double lo, double hi, double tol) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = fn(x2);
        }
    }
    return (f1 < f2) ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

inline std::pair<double, double> golden_section_max(const std::function<double(double)>& fn,
                                                    double lo, double hi, double tol) {
    auto [x, negv] = golden_section_min([&fn](double u) { return -fn(u); }, lo, hi, tol);
    return {x, -negv};
}

}  // namespace csdiv
