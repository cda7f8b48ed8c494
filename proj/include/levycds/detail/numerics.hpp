#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>

namespace levycds::detail {

/// Bisection for a function that changes sign once on (lo, hi). `increasing`
/// tells which side is negative; only interior points are evaluated, so the
/// endpoints may be poles or +-infinity limits. Runs until the midpoint
/// coincides with an endpoint in floating point.
template <class F>
double bisect(F&& f, double lo, double hi, bool increasing, int* iterations = nullptr) {
    int it = 0;
    for (; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double v = f(mid);
        if (v == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((v < 0.0) == increasing) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (iterations != nullptr) *iterations = it;
    return 0.5 * (lo + hi);
}

/// (exp(a*y) - 1) / a, continuous through a = 0.
inline double expm1_over(double a, double y) {
    if (a == 0.0) return y;
    return std::expm1(a * y) / a;
}

/// Pairwise summation; deterministic for a fixed input order.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace levycds::detail
