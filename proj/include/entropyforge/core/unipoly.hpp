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

#ifndef ENTROPYFORGE_CORE_UNIPOLY_HPP
#define ENTROPYFORGE_CORE_UNIPOLY_HPP

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "entropyforge/core/field.hpp"
#include "entropyforge/core/zpoly.hpp"

namespace entropyforge {

namespace detail {
template <class F>
struct is_fp : std::false_type {};
template <uint64_t P>
struct is_fp<Fp<P>> : std::true_type {};
}  // namespace detail

/// Univariate polynomial over an exact field, coefficients lowest degree
/// first.  The zero polynomial has an empty coefficient vector; otherwise the
/// leading coefficient is nonzero and degree() is the index of the last
/// nonzero coefficient.
template <ExactFieldElement F>
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(F c) { c_.push_back(std::move(c)), trim_(); }
    explicit UniPoly(std::vector<F> c) : c_(std::move(c)) { trim_(); }
    UniPoly(std::initializer_list<F> c) : c_(c) { trim_(); }

    static UniPoly x() { return UniPoly({F(0), F(1)}); }
    static UniPoly monomial(F c, int k) {
        std::vector<F> v(static_cast<size_t>(k) + 1, F(0));
        v.back() = std::move(c);
        return UniPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<F>& coeffs() const { return c_; }

    F coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return F(0);
        return c_[static_cast<size_t>(i)];
    }
    const F& leading() const { return c_.back(); }

    F eval(const F& at) const {
        F acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
        return acc;
    }

    UniPoly& operator+=(const UniPoly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), F(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim_();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), F(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim_();
        return *this;
    }

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator-(UniPoly a) {
        for (F& c : a.c_) c = -c;
        return a;
    }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if constexpr (detail::is_fp<F>::value) {
            // column accumulation in a 128-bit register
            std::vector<F> r(a.c_.size() + b.c_.size() - 1);
            for (size_t k = 0; k < r.size(); ++k) {
                __uint128_t acc = 0;
                size_t ilo = k >= b.c_.size() - 1 ? k - (b.c_.size() - 1) : 0;
                size_t ihi = std::min(k, a.c_.size() - 1);
                for (size_t i = ilo; i <= ihi; ++i) {
                    acc += static_cast<__uint128_t>(a.c_[i].value()) * b.c_[k - i].value();
                }
                r[k] = F::from_raw(static_cast<uint64_t>(acc % F::modulus));
            }
            UniPoly out;
            out.c_ = std::move(r);
            out.trim_();
            return out;
        } else {
            std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
            for (size_t i = 0; i < a.c_.size(); ++i) {
                if (a.c_[i].is_zero()) continue;
                for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
            }
            UniPoly out;
            out.c_ = std::move(r);
            out.trim_();
            return out;
        }
    }

    friend UniPoly operator*(UniPoly a, const F& s) {
        if (s.is_zero()) return {};
        for (F& c : a.c_) c = c * s;
        return a;
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    UniPoly monic() const {
        if (is_zero()) return {};
        UniPoly r = *this;
        F inv = F(1) / c_.back();
        for (F& c : r.c_) c = c * inv;
        return r;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<F> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * F(static_cast<int>(i));
        UniPoly out;
        out.c_ = std::move(r);
        out.trim_();
        return out;
    }

    static void set_coeff(std::vector<F>& v, size_t i, F c) {
        if (v.size() <= i) v.resize(i + 1, F(0));
        v[i] = std::move(c);
    }

  private:
    void trim_() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<F> c_;
};

/// Quotient and remainder over a field.
template <ExactFieldElement F>
std::pair<UniPoly<F>, UniPoly<F>> divrem(const UniPoly<F>& a, const UniPoly<F>& b) {
    if (b.is_zero()) throw Error(ErrorKind::invalid_input, "UniPoly: division by zero polynomial");
    if (a.degree() < b.degree()) return {UniPoly<F>(), a};
    std::vector<F> rem(a.coeffs());
    std::vector<F> q(static_cast<size_t>(a.degree() - b.degree()) + 1, F(0));
    F inv_lb = F(1) / b.leading();
    for (int i = a.degree() - b.degree(); i >= 0; --i) {
        F lead = rem[static_cast<size_t>(i + b.degree())];
        if (lead.is_zero()) continue;
        F qi = lead * inv_lb;
        for (int j = 0; j <= b.degree(); ++j) {
            rem[static_cast<size_t>(i + j)] = rem[static_cast<size_t>(i + j)] - qi * b.coeff(j);
        }
        q[static_cast<size_t>(i)] = std::move(qi);
    }
    return {UniPoly<F>(std::move(q)), UniPoly<F>(std::move(rem))};
}

/// Conversion ZPoly <-> UniPoly<Rat>.  `scale` is the common denominator.
inline std::pair<ZPoly, Int> to_zpoly(const UniPoly<Rat>& p) {
    Int L(1);
    for (const Rat& c : p.coeffs()) L = lcm(L, c.den());
    ZPoly z(p.coeffs().size());
    for (size_t i = 0; i < z.size(); ++i) {
        const Rat& c = p.coeffs()[static_cast<int>(i)];
        z[i] = divexact(L, c.den()) * c.num();
    }
    zx::trim(z);
    return {std::move(z), std::move(L)};
}

inline UniPoly<Rat> from_zpoly(const ZPoly& z, const Int& den = Int(1)) {
    std::vector<Rat> c(z.size());
    for (size_t i = 0; i < z.size(); ++i) c[i] = Rat(z[i], den);
    return UniPoly<Rat>(std::move(c));
}

/// Monic gcd over a field.  For rationals this routes through the integer
/// kernel; the generic path is plain Euclid with per-step monic reduction.
template <ExactFieldElement F>
UniPoly<F> gcd(const UniPoly<F>& a, const UniPoly<F>& b) {
    if constexpr (std::is_same_v<F, Rat>) {
        if (a.is_zero()) return b.monic();
        if (b.is_zero()) return a.monic();
        ZPoly za = to_zpoly(a).first;
        ZPoly zb = to_zpoly(b).first;
        ZPoly g = zx::gcd_primitive(zx::primitive_part(za), zx::primitive_part(zb));
        return from_zpoly(g).monic();
    } else {
        UniPoly<F> x = a, y = b;
        while (!y.is_zero()) {
            auto [q, r] = divrem(x, y);
            (void)q;
            x = std::move(y);
            y = std::move(r);
        }
        return x.monic();
    }
}

template <ExactFieldElement F>
UniPoly<F> pow(const UniPoly<F>& a, unsigned k) {
    UniPoly<F> acc(F(1));
    UniPoly<F> base = a;
    while (k) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

}  // namespace entropyforge

#endif
