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

#ifndef ENTROPYFORGE_CORE_LAURENT_HPP
#define ENTROPYFORGE_CORE_LAURENT_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "entropyforge/core/field.hpp"

namespace entropyforge {

/// Default number of terms kept beyond the lead when an inversion forces
/// truncation.  Grown automatically when a trace runs out of precision.
inline constexpr int kDefaultLaurentPrec = 16;

namespace detail {
inline thread_local int tl_laurent_prec = kDefaultLaurentPrec;
}

inline int laurent_working_prec() { return detail::tl_laurent_prec; }

/// Scoped override of the inversion depth used by Laurent arithmetic on the
/// current thread.
class LaurentPrecGuard {
  public:
    explicit LaurentPrecGuard(int prec) : old_(detail::tl_laurent_prec) { detail::tl_laurent_prec = prec; }
    ~LaurentPrecGuard() { detail::tl_laurent_prec = old_; }
    LaurentPrecGuard(const LaurentPrecGuard&) = delete;
    LaurentPrecGuard& operator=(const LaurentPrecGuard&) = delete;

  private:
    int old_;
};

/// Truncated Laurent series in a formal small quantity.  A series knows its
/// coefficients on a window [lo, lo + #coeffs); below the window everything
/// is exactly zero, above it terms are unknown unless the series is `exact`
/// (a finite Laurent polynomial), in which case they are exactly zero too.
///
/// Degenerate states: empty coefficients + exact  -> the zero series;
/// empty coefficients + !exact -> "zero to truncation" (all stored terms
/// vanished; nothing provable at or beyond lo()).
template <ExactFieldElement F>
class Laurent {
  public:
    Laurent() : lo_(0), exact_(true) {}
    explicit Laurent(F c) : lo_(0), exact_(true) {
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    Laurent(long order, F c) : lo_(order), exact_(true) {
        if (!c.is_zero())
            c_.push_back(std::move(c));
        else
            lo_ = 0;
    }
    Laurent(long lo, std::vector<F> coeffs, bool exact) : lo_(lo), c_(std::move(coeffs)), exact_(exact) {
        normalize_();
    }

    static Laurent eps(long order = 1) { return Laurent(order, F(1)); }
    static Laurent from_rational(const Rat& q) { return Laurent(entropyforge::from_rational<F>(q)); }

    bool is_exact() const { return exact_; }
    bool is_exact_zero() const { return exact_ && c_.empty(); }
    bool is_zero_to_trunc() const { return !exact_ && c_.empty(); }

    /// Lead order of the first provably nonzero term.
    std::optional<long> order() const {
        if (c_.empty()) return std::nullopt;
        return lo_;
    }

    /// One past the last known order (meaningful when !exact).
    long trunc() const { return lo_ + static_cast<long>(c_.size()); }
    long lo() const { return lo_; }

    /// Coefficient at a given order; orders at or above the truncation of a
    /// non-exact series are not queryable.
    F coeff(long k) const {
        if (k < lo_) return F(0);
        long idx = k - lo_;
        if (idx < static_cast<long>(c_.size())) return c_[static_cast<size_t>(idx)];
        if (exact_) return F(0);
        throw Error(ErrorKind::precision_exhausted, "Laurent: coefficient beyond truncation");
    }

    bool knows(long k) const { return exact_ || k < trunc(); }

    friend Laurent operator-(Laurent a) {
        for (F& c : a.c_) c = -c;
        return a;
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        if (a.is_exact_zero()) return b;
        if (b.is_exact_zero()) return a;
        bool exact = a.exact_ && b.exact_;
        long hi;
        if (exact) {
            hi = std::max(a.trunc(), b.trunc());
        } else {
            hi = std::min(a.exact_ ? std::numeric_limits<long>::max() : a.trunc(),
                          b.exact_ ? std::numeric_limits<long>::max() : b.trunc());
        }
        long lo = std::min(a.effective_lo_(), b.effective_lo_());
        if (lo > hi) lo = hi;
        std::vector<F> c(static_cast<size_t>(hi - lo), F(0));
        for (long k = lo; k < hi; ++k) {
            F v(0);
            if (a.in_window_(k)) v = v + a.coeff(k);
            if (b.in_window_(k)) v = v + b.coeff(k);
            c[static_cast<size_t>(k - lo)] = std::move(v);
        }
        return Laurent(lo, std::move(c), exact);
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        if (a.is_exact_zero() || b.is_exact_zero()) return Laurent();
        if (a.c_.empty() || b.c_.empty()) {
            // zero-to-truncation times anything: all provable terms vanish
            long bound = a.effective_lo_() + b.effective_lo_();
            return Laurent(bound, std::vector<F>{}, false);
        }
        bool exact = a.exact_ && b.exact_;
        long lo = a.lo_ + b.lo_;
        long hi;
        if (exact) {
            hi = a.trunc() + b.trunc() - 1;
        } else {
            hi = std::numeric_limits<long>::max();
            if (!a.exact_) hi = std::min(hi, a.trunc() + b.lo_);
            if (!b.exact_) hi = std::min(hi, b.trunc() + a.lo_);
        }
        std::vector<F> c(static_cast<size_t>(hi - lo), F(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            long oa = a.lo_ + static_cast<long>(i);
            for (size_t j = 0; j < b.c_.size(); ++j) {
                long k = oa + b.lo_ + static_cast<long>(j);
                if (k >= hi) break;
                c[static_cast<size_t>(k - lo)] = c[static_cast<size_t>(k - lo)] + a.c_[i] * b.c_[j];
            }
        }
        return Laurent(lo, std::move(c), exact);
    }

    friend Laurent operator*(Laurent a, const F& s) {
        if (s.is_zero()) return a.exact_ ? Laurent() : Laurent(a.trunc(), std::vector<F>{}, false);
        for (F& c : a.c_) c = c * s;
        return a;
    }

    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.exact_ == b.exact_ && a.lo_ == b.lo_ && a.c_ == b.c_;
    }

    friend Laurent operator/(const Laurent& a, const Laurent& b) { return a * b.invert(); }

    /// Multiplicative inverse.  `prec` bounds the number of computed terms
    /// when the input is exact (the inverse of a polynomial is an infinite
    /// series).
    Laurent invert(int prec = -1) const {
        if (prec < 0) prec = laurent_working_prec();
        if (is_exact_zero())
            throw Error(ErrorKind::invalid_input, "Laurent: inverse of the zero series");
        if (is_zero_to_trunc())
            throw Error(ErrorKind::singular_series,
                        "Laurent: inverse of a series that is zero to truncation");
        long width = exact_ ? static_cast<long>(prec)
                            : static_cast<long>(c_.size());
        if (exact_ && static_cast<long>(c_.size()) == 1) width = 1;  // exact monomial inverse
        std::vector<F> inv(static_cast<size_t>(width), F(0));
        F inv0 = F(1) / c_[0];
        inv[0] = inv0;
        for (long k = 1; k < width; ++k) {
            F s(0);
            for (long j = 1; j <= k; ++j) {
                F aj = j < static_cast<long>(c_.size()) ? c_[static_cast<size_t>(j)] : F(0);
                if (aj.is_zero()) continue;
                s = s + aj * inv[static_cast<size_t>(k - j)];
            }
            inv[static_cast<size_t>(k)] = -(s * inv0);
        }
        bool exact = exact_ && c_.size() == 1;
        return Laurent(-lo_, std::move(inv), exact);
    }

    Laurent pow(long k, int prec = -1) const {
        if (k == 0) return Laurent(F(1));
        Laurent base = k < 0 ? invert(prec) : *this;
        if (k < 0) k = -k;
        Laurent acc(F(1));
        while (k) {
            if (k & 1) acc = acc * base;
            k >>= 1;
            if (k) base = base * base;
        }
        return acc;
    }

    std::string str(const char* sym = "e") const {
        if (is_exact_zero()) return "0";
        if (is_zero_to_trunc()) return "O(" + std::string(sym) + "^" + std::to_string(lo_) + ")";
        std::string out;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c_[i].str() + ")";
            long k = lo_ + static_cast<long>(i);
            if (k != 0) out += "*" + std::string(sym) + "^" + std::to_string(k);
        }
        if (out.empty()) out = "0";
        if (!exact_) out += " + O(" + std::string(sym) + "^" + std::to_string(trunc()) + ")";
        return out;
    }

    /// Zeroes the coefficient at a given order (used when imposing derived
    /// vanishing conditions before continuing an iteration).
    Laurent with_coeff_zeroed(long k) const {
        Laurent r = *this;
        if (k >= r.lo_ && k < r.trunc()) {
            r.c_[static_cast<size_t>(k - r.lo_)] = F(0);
            r.normalize_();
        }
        return r;
    }

  private:
    long effective_lo_() const { return lo_; }  // for empty windows lo_ is the truncation bound
    bool in_window_(long k) const { return exact_ || k < trunc(); }

    void normalize_() {
        size_t skip = 0;
        while (skip < c_.size() && c_[skip].is_zero()) ++skip;
        if (skip) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(skip));
            lo_ += static_cast<long>(skip);
        }
        if (exact_) {
            while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
            if (c_.empty()) lo_ = 0;
        }
    }

    long lo_;
    std::vector<F> c_;
    bool exact_;
};

/// Lead order of the first provably nonzero term, or nullopt when the series
/// is zero to truncation (or identically zero).
template <ExactFieldElement F>
std::optional<long> laurent_order(const Laurent<F>& a) {
    return a.order();
}

}  // namespace entropyforge

#endif
