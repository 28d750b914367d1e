#pragma once

#include <functional>

namespace qnl {

struct MinimizeResult {
    double x = 0.0;
    double fx = 0.0;
    int evaluations = 0;
};

/// Golden-section search for the minimum of f on [lo, hi].
MinimizeResult golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double xtol, int max_iter = 200);

/// Bisection root of a monotone or sign-changing f on [lo, hi]; f(lo) and
/// f(hi) must have opposite signs.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double xtol, int max_iter = 300);

}  // namespace qnl
