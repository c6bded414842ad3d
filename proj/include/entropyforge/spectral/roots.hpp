/*
   Copyright 2026 The entropyforge authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ENTROPYFORGE_SPECTRAL_ROOTS_HPP
#define ENTROPYFORGE_SPECTRAL_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "entropyforge/spectral/intpoly.hpp"

namespace entropyforge::spectral {

struct Root {
    std::complex<double> value;
    int multiplicity = 1;
    double residual = 0.0;     // |p(value)| on the monic normalization
    double error_bound = 0.0;  // first-order bound residual / |p'(value)|
};

class RootFindingError : public Error {
  public:
    RootFindingError(std::string what, std::vector<Root> partial)
        : Error(ErrorKind::internal, std::move(what)), partial_(std::move(partial)) {}
    const std::vector<Root>& partial() const { return partial_; }

  private:
    std::vector<Root> partial_;
};

namespace roots_detail {

inline ZPoly derivative(const ZPoly& p) {
    if (p.size() <= 1) return {};
    ZPoly d(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
    return d;
}

/// Yun's square-free decomposition over the integers: returns (factor,
/// multiplicity) pairs with every factor primitive and square-free.
inline std::vector<std::pair<ZPoly, int>> squarefree_decompose(const ZPoly& p) {
    std::vector<std::pair<ZPoly, int>> out;
    ZPoly a = zx::primitive_part(p);
    if (zx::deg(a) < 1) return out;
    ZPoly da = derivative(a);
    ZPoly g = zx::gcd_primitive(a, zx::primitive_part(da));
    if (zx::deg(g) == 0) {
        out.emplace_back(a, 1);
        return out;
    }
    ZPoly w = zx::divexact(a, g);
    ZPoly y = zx::divexact(da, g);
    int i = 1;
    while (zx::deg(w) > 0) {
        ZPoly z = zx::sub(y, derivative(w));
        ZPoly h = zx::gcd_primitive(w, zx::is_zero(z) ? w : zx::primitive_part(z));
        if (zx::is_zero(z)) h = w;
        if (zx::deg(h) > 0) out.emplace_back(zx::primitive_part(h), i);
        w = zx::divexact(w, h);
        y = zx::is_zero(z) ? derivative(w) : zx::divexact(z, h);
        ++i;
    }
    return out;
}

using CL = std::complex<long double>;

inline CL eval_poly(const std::vector<CL>& c, CL x) {
    CL acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

/// Aberth-Ehrlich simultaneous iteration on a square-free polynomial.
inline std::vector<CL> aberth(const std::vector<CL>& monic) {
    int n = static_cast<int>(monic.size()) - 1;
    std::vector<CL> dc(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) dc[static_cast<size_t>(i - 1)] = monic[static_cast<size_t>(i)] * static_cast<long double>(i);

    long double radius = 0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(monic[static_cast<size_t>(i)]));
    radius = 1 + radius;

    std::vector<CL> z(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        long double th = 2.0L * 3.14159265358979323846L * i / n + 0.7L;
        z[static_cast<size_t>(i)] = radius * CL(std::cos(th), std::sin(th));
    }
    for (int iter = 0; iter < 400; ++iter) {
        long double worst = 0;
        for (int i = 0; i < n; ++i) {
            CL zi = z[static_cast<size_t>(i)];
            CL p = eval_poly(monic, zi);
            CL dp = eval_poly(dc, zi);
            if (std::abs(dp) == 0) {
                z[static_cast<size_t>(i)] = zi + CL(1e-8L, 1e-8L);
                worst = 1;
                continue;
            }
            CL ratio = p / dp;
            CL sum = 0;
            for (int j = 0; j < n; ++j) {
                if (j != i) sum += CL(1) / (zi - z[static_cast<size_t>(j)]);
            }
            CL w = ratio / (CL(1) - ratio * sum);
            z[static_cast<size_t>(i)] = zi - w;
            worst = std::max(worst, std::abs(w) / (1 + std::abs(zi)));
        }
        if (worst < 1e-19L) break;
    }
    // Newton polish
    for (int i = 0; i < n; ++i) {
        for (int it = 0; it < 3; ++it) {
            CL p = eval_poly(monic, z[static_cast<size_t>(i)]);
            CL dp = eval_poly(dc, z[static_cast<size_t>(i)]);
            if (std::abs(dp) == 0) break;
            z[static_cast<size_t>(i)] -= p / dp;
        }
    }
    return z;
}

/// Enforces closure under conjugation: snaps near-real roots and averages
/// conjugate pairs.
inline void symmetrize(std::vector<CL>& z) {
    for (auto& r : z) {
        if (std::abs(r.imag()) < 1e-12L * (1 + std::abs(r))) r = CL(r.real(), 0);
    }
    std::vector<bool> used(z.size(), false);
    for (size_t i = 0; i < z.size(); ++i) {
        if (used[i] || z[i].imag() <= 0) continue;
        long double best = 1e30L;
        size_t match = z.size();
        for (size_t j = 0; j < z.size(); ++j) {
            if (used[j] || j == i || z[j].imag() >= 0) continue;
            long double d = std::abs(z[j] - std::conj(z[i]));
            if (d < best) {
                best = d;
                match = j;
            }
        }
        if (match < z.size()) {
            CL avg = (z[i] + std::conj(z[match])) / CL(2);
            z[i] = avg;
            z[match] = std::conj(avg);
            used[i] = used[match] = true;
        }
    }
}

}  // namespace roots_detail

/// Numerical roots with exact square-free preprocessing, so multiple roots
/// come out with exact multiplicities.  Residuals are checked against
/// tol * (coefficient magnitude scale).
inline std::vector<Root> find_roots(const IntPoly& p, double tol = 1e-12) {
    if (p.degree() < 1) throw Error(ErrorKind::invalid_input, "find_roots: degree must be >= 1");
    if (tol <= 0) throw Error(ErrorKind::invalid_input, "find_roots: tol must be positive");

    std::vector<Root> out;
    for (const auto& [factor, mult] : roots_detail::squarefree_decompose(p.c)) {
        int n = zx::deg(factor);
        std::vector<roots_detail::CL> monic(static_cast<size_t>(n) + 1);
        long double lc = static_cast<long double>(factor.back().to_double());
        for (int i = 0; i <= n; ++i)
            monic[static_cast<size_t>(i)] =
                static_cast<long double>(factor[static_cast<size_t>(i)].to_double()) / lc;

        std::vector<roots_detail::CL> z;
        if (n == 1) {
            z = {-monic[0]};
        } else if (n == 2) {
            roots_detail::CL b = monic[1], c = monic[0];
            roots_detail::CL disc = std::sqrt(b * b - roots_detail::CL(4) * c);
            roots_detail::CL r1 = (-b - disc) / roots_detail::CL(2);
            roots_detail::CL r2 = (-b + disc) / roots_detail::CL(2);
            if (std::abs(r1) < std::abs(r2)) std::swap(r1, r2);
            // compute the smaller root from the product to dodge cancellation
            z = {r1, std::abs(r1) > 0 ? c / r1 : r2};
        } else {
            z = roots_detail::aberth(monic);
        }
        roots_detail::symmetrize(z);

        for (const auto& r : z) {
            Root root;
            root.value = std::complex<double>(static_cast<double>(r.real()), static_cast<double>(r.imag()));
            root.multiplicity = mult;
            long double scale = 0, ax = std::abs(r);
            long double xp = 1;
            for (size_t i = 0; i < monic.size(); ++i) {
                scale += std::abs(monic[i]) * xp;
                xp *= ax;
            }
            root.residual = static_cast<double>(std::abs(roots_detail::eval_poly(monic, r)));
            long double dp = std::abs(roots_detail::eval_poly(
                [&] {
                    std::vector<roots_detail::CL> d(monic.size() - 1);
                    for (size_t i = 1; i < monic.size(); ++i) d[i - 1] = monic[i] * static_cast<long double>(i);
                    return d;
                }(),
                r));
            root.error_bound = dp > 0 ? static_cast<double>(root.residual / dp) : root.residual;
            if (root.residual > tol * std::max(1.0, static_cast<double>(scale))) {
                throw RootFindingError("find_roots: residual " + fmt_double(root.residual) +
                                           " exceeds tolerance at root " + fmt_double(root.value.real()),
                                       out);
            }
            out.push_back(root);
        }
    }

    // cluster within 10*tol (multiplicities add)
    std::vector<Root> merged;
    std::vector<bool> used(out.size(), false);
    for (size_t i = 0; i < out.size(); ++i) {
        if (used[i]) continue;
        Root acc = out[i];
        for (size_t j = i + 1; j < out.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(out[j].value - acc.value) <= 10 * tol) {
                acc.multiplicity += out[j].multiplicity;
                used[j] = true;
            }
        }
        merged.push_back(acc);
    }
    std::sort(merged.begin(), merged.end(), [](const Root& a, const Root& b) {
        double ma = std::abs(a.value), mb = std::abs(b.value);
        if (ma != mb) return ma > mb;
        if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
        return a.value.imag() > b.value.imag();
    });
    return merged;
}

}  // namespace entropyforge::spectral

#endif
