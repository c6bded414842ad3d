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

#ifndef ENTROPYFORGE_CORE_RATIONAL_FUNCTION_HPP
#define ENTROPYFORGE_CORE_RATIONAL_FUNCTION_HPP

#include <utility>

#include "entropyforge/core/unipoly.hpp"

namespace entropyforge {

/// Reduced ratio of univariate polynomials over a field: denominator monic,
/// gcd(num, den) = 1.
template <ExactFieldElement F>
class RatFunc {
  public:
    RatFunc() : num_(), den_(F(1)) {}
    explicit RatFunc(F c) : num_(std::move(c)), den_(F(1)) {}
    RatFunc(UniPoly<F> num, UniPoly<F> den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw Error(ErrorKind::invalid_input, "RatFunc: zero denominator");
        reduce_();
    }

    static RatFunc from_rational(const Rat& q) { return RatFunc(entropyforge::from_rational<F>(q)); }
    static RatFunc variable() { return RatFunc(UniPoly<F>::x(), UniPoly<F>(F(1))); }

    const UniPoly<F>& num() const { return num_; }
    const UniPoly<F>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    int degree() const { return std::max(num_.degree(), den_.degree()); }

    friend RatFunc operator-(RatFunc a) {
        a.num_ = -std::move(a.num_);
        return a;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        UniPoly<F> g = gcd(a.den_, b.den_);
        auto [d1, r1] = divrem(a.den_, g);
        auto [d2, r2] = divrem(b.den_, g);
        UniPoly<F> n = a.num_ * d2 + b.num_ * d1;
        UniPoly<F> h = gcd(n, g);
        RatFunc out;
        out.num_ = divrem(n, h).first;
        out.den_ = divrem(d1 * b.den_, h).first;
        out.normalize_monic_();
        return out;
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        UniPoly<F> g1 = gcd(a.num_, b.den_);
        UniPoly<F> g2 = gcd(b.num_, a.den_);
        RatFunc out;
        out.num_ = divrem(a.num_, g1).first * divrem(b.num_, g2).first;
        out.den_ = divrem(a.den_, g2).first * divrem(b.den_, g1).first;
        out.normalize_monic_();
        return out;
    }

    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw Error(ErrorKind::invalid_input, "RatFunc: division by zero");
        RatFunc binv;
        binv.num_ = b.den_;
        binv.den_ = b.num_;
        binv.normalize_monic_();
        return a * binv;
    }

    RatFunc pow(long k) const {
        if (k == 0) return RatFunc(F(1));
        RatFunc base = *this;
        if (k < 0) {
            if (is_zero()) throw Error(ErrorKind::invalid_input, "RatFunc: inverse of zero");
            std::swap(base.num_, base.den_);
            base.normalize_monic_();
            k = -k;
        }
        // powers of a reduced fraction stay reduced
        RatFunc out(F(1));
        out.num_ = entropyforge::pow(base.num_, static_cast<unsigned>(k));
        out.den_ = entropyforge::pow(base.den_, static_cast<unsigned>(k));
        out.normalize_monic_();
        return out;
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

  private:
    void reduce_() {
        if (num_.is_zero()) {
            den_ = UniPoly<F>(F(1));
            return;
        }
        UniPoly<F> g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divrem(num_, g).first;
            den_ = divrem(den_, g).first;
        }
        normalize_monic_();
    }
    void normalize_monic_() {
        if (num_.is_zero()) {
            den_ = UniPoly<F>(F(1));
            return;
        }
        if (!(den_.leading() == F(1))) {
            F inv = F(1) / den_.leading();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    UniPoly<F> num_, den_;
};

/// The reduce operation on raw numerator/denominator pairs.
template <ExactFieldElement F>
RatFunc<F> reduce_rational_function(UniPoly<F> num, UniPoly<F> den) {
    if (den.is_zero()) {
        throw Error(ErrorKind::invalid_input, "reduce_rational_function: zero denominator");
    }
    return RatFunc<F>(std::move(num), std::move(den));
}

// ---------------------------------------------------------------------------
// QxFrac: rational function over Q in integer-kernel representation
// ---------------------------------------------------------------------------

/// Element of Q(w) stored as a ratio of integer polynomials with
///   - gcd of primitive parts trivial,
///   - coprime contents,
///   - positive leading coefficient on the denominator.
/// This keeps all heavy arithmetic inside Z[x] where Kronecker multiplication
/// and modular gcd apply.  Degrees match the monic-denominator form exactly.
class QxFrac {
  public:
    QxFrac() : num_(), den_{Int(1)} {}
    explicit QxFrac(const Rat& q) : num_(), den_() {
        num_ = q.is_zero() ? ZPoly{} : ZPoly{q.num()};
        den_ = ZPoly{q.den()};
    }
    QxFrac(ZPoly num, ZPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.empty()) throw Error(ErrorKind::invalid_input, "QxFrac: zero denominator");
        reduce_();
    }

    static QxFrac from_rational(const Rat& q) { return QxFrac(q); }
    static QxFrac variable() { return QxFrac(ZPoly{Int(0), Int(1)}, ZPoly{Int(1)}); }

    const ZPoly& num() const { return num_; }
    const ZPoly& den() const { return den_; }
    bool is_zero() const { return num_.empty(); }
    int degree() const { return std::max(zx::deg(num_), zx::deg(den_)); }

    friend QxFrac operator-(QxFrac a) {
        a.num_ = zx::neg(std::move(a.num_));
        return a;
    }

    friend QxFrac operator+(const QxFrac& a, const QxFrac& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        ZPoly g = zx::gcd(a.den_, b.den_);
        ZPoly d1 = zx::divexact(a.den_, g);
        ZPoly d2 = zx::divexact(b.den_, g);
        ZPoly n = zx::add(zx::mul(a.num_, d2), zx::mul(b.num_, d1));
        if (n.empty()) return QxFrac();
        ZPoly h = zx::gcd(n, g);
        QxFrac out;
        out.num_ = zx::divexact(n, h);
        out.den_ = zx::mul(d1, zx::divexact(b.den_, h));
        out.normalize_sign_();
        return out;
    }
    friend QxFrac operator-(const QxFrac& a, const QxFrac& b) { return a + (-b); }

    friend QxFrac operator*(const QxFrac& a, const QxFrac& b) {
        if (a.is_zero() || b.is_zero()) return QxFrac();
        ZPoly g1 = zx::gcd(a.num_, b.den_);
        ZPoly g2 = zx::gcd(b.num_, a.den_);
        QxFrac out;
        out.num_ = zx::mul(zx::divexact(a.num_, g1), zx::divexact(b.num_, g2));
        out.den_ = zx::mul(zx::divexact(a.den_, g2), zx::divexact(b.den_, g1));
        out.normalize_sign_();
        return out;
    }

    friend QxFrac operator/(const QxFrac& a, const QxFrac& b) {
        if (b.is_zero()) throw Error(ErrorKind::invalid_input, "QxFrac: division by zero");
        QxFrac binv;
        binv.num_ = b.den_;
        binv.den_ = b.num_;
        binv.normalize_sign_();
        return a * binv;
    }

    QxFrac pow(long k) const {
        if (k == 0) return QxFrac(Rat(1));
        QxFrac base = *this;
        if (k < 0) {
            if (is_zero()) throw Error(ErrorKind::invalid_input, "QxFrac: inverse of zero");
            std::swap(base.num_, base.den_);
            base.normalize_sign_();
            k = -k;
        }
        QxFrac out;
        out.num_ = zx::pow(base.num_, static_cast<unsigned>(k));
        out.den_ = zx::pow(base.den_, static_cast<unsigned>(k));
        return out;  // coprimality is preserved by powers
    }

    friend bool operator==(const QxFrac& a, const QxFrac& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    /// Monic-denominator view, the form the library presents externally.
    RatFunc<Rat> to_ratfunc() const {
        return RatFunc<Rat>(from_zpoly(num_), from_zpoly(den_));
    }

  private:
    void reduce_() {
        if (num_.empty()) {
            den_ = ZPoly{Int(1)};
            return;
        }
        Int cn = zx::content(num_);
        Int cd = zx::content(den_);
        ZPoly pn = zx::divexact_scalar(num_, cn);
        ZPoly pd = zx::divexact_scalar(den_, cd);
        ZPoly g = zx::gcd_primitive(pn, pd);
        if (zx::deg(g) > 0) {
            pn = zx::divexact(pn, g);
            pd = zx::divexact(pd, g);
        }
        Int ic = gcd(cn, cd);
        cn = divexact(cn, ic);
        cd = divexact(cd, ic);
        if (cd.sign() < 0) {
            cd = -cd;
            cn = -cn;
        }
        num_ = zx::mul_scalar(std::move(pn), cn);
        den_ = zx::mul_scalar(std::move(pd), cd);
    }
    void normalize_sign_() {
        // operands reduced => results of the gcd-split ops are reduced; only
        // the denominator sign can drift
        if (!den_.empty() && den_.back().sign() < 0) {
            den_ = zx::neg(std::move(den_));
            num_ = zx::neg(std::move(num_));
        }
        if (num_.empty()) den_ = ZPoly{Int(1)};
    }

    ZPoly num_, den_;
};

}  // namespace entropyforge

#endif
