#pragma once

// Deterministic one-dimensional searches. Both run a fixed, input-independent
// sequence of evaluations, so repeated calls are bit-reproducible.

#include <cmath>
#include <utility>

namespace sepbound {

/// Largest x in [lo, hi] with pred(x) true, assuming pred is monotone
/// (true below some threshold, false above) and pred(lo) holds. Returns the
/// last point known to satisfy pred. Stops when hi - lo <= abs_tol or after
/// max_iters halvings.
template <class Pred>
double bisect_last_true(Pred&& pred, double lo, double hi, double abs_tol, int max_iters = 200) {
    for (int i = 0; i < max_iters && hi - lo > abs_tol; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (pred(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

/// Smallest x in [lo, hi] with pred(x) true, assuming pred is false below
/// some threshold and true above, and pred(hi) holds.
template <class Pred>
double bisect_first_true(Pred&& pred, double lo, double hi, double abs_tol, int max_iters = 200) {
    for (int i = 0; i < max_iters && hi - lo > abs_tol; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (pred(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

struct Maximum {
    double x;
    double value;
};

/// Golden-section search for the maximum of a unimodal function on [a, b].
/// The endpoints are evaluated too, so monotone functions return their
/// boundary maximum.
template <class F>
Maximum golden_section_maximize(F&& f, double a, double b, double tol, int max_iters = 200) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < max_iters && b - a > tol; ++i) {
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
    Maximum best = fc >= fd ? Maximum{c, fc} : Maximum{d, fd};
    for (double x : {a, b}) {
        const double v = f(x);
        if (v > best.value) best = {x, v};
    }
    return best;
}

}  // namespace sepbound
