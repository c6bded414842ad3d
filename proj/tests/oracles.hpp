// Test-side oracles, independent of the numeric root-finding path: exact
// bisection on integer polynomials via exact sign evaluation at rationals.
#ifndef ENTROPYFORGE_TESTS_ORACLES_HPP
#define ENTROPYFORGE_TESTS_ORACLES_HPP

#include "entropyforge/spectral/intpoly.hpp"

namespace ef_test {

/// Largest real root of p located by exact sign bisection.  The bracket is
/// found by scanning unit steps down from the Cauchy bound.
inline double bisect_largest_real_root(const entropyforge::spectral::IntPoly& p, int iters = 120) {
    using entropyforge::Rat;
    double bound = 1;
    for (int i = 0; i < p.degree(); ++i) {
        bound = std::max(bound, std::abs(p.coeff(i).to_double() / p.coeff(p.degree()).to_double()));
    }
    long hi = static_cast<long>(bound) + 2;
    int sign_hi = p.sign_at(Rat(hi));
    long lo = hi - 1;
    while (lo > -static_cast<long>(bound) - 2) {
        int s = p.sign_at(Rat(lo));
        if (s == 0) return static_cast<double>(lo);
        if (s != sign_hi) break;
        hi = lo;
        sign_hi = s;
        --lo;
    }
    Rat a(lo), b(hi);
    for (int i = 0; i < iters; ++i) {
        Rat mid = (a + b) / Rat(2);
        int sm = p.sign_at(mid);
        if (sm == 0) return mid.to_double();
        if (sm == sign_hi)
            b = mid;
        else
            a = mid;
    }
    return ((a + b) / Rat(2)).to_double();
}

/// Exact count of sign changes of p over integer sample points in [lo, hi].
inline int sign_changes_on_integers(const entropyforge::spectral::IntPoly& p, long lo, long hi) {
    using entropyforge::Rat;
    int changes = 0;
    int prev = 0;
    for (long x = lo; x <= hi; ++x) {
        int s = p.sign_at(Rat(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

}  // namespace ef_test

#endif
