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

#ifndef ENTROPYFORGE_CORE_SYMBOL_FIELD_HPP
#define ENTROPYFORGE_CORE_SYMBOL_FIELD_HPP

#include <string>
#include <vector>

#include "entropyforge/core/multipoly.hpp"
#include "entropyforge/errors.hpp"

namespace entropyforge {

/// Names the symbols of a derivation run: symbol i is `base[n+shift_i]`.
struct SymbolTable {
    std::string base = "a";
    std::vector<int> shifts;

    int index_of(int shift) const {
        for (size_t i = 0; i < shifts.size(); ++i)
            if (shifts[i] == shift) return static_cast<int>(i);
        return -1;
    }
    std::vector<std::string> names() const {
        std::vector<std::string> out;
        out.reserve(shifts.size());
        for (int s : shifts) {
            std::string idx = s == 0 ? "n" : (s > 0 ? "n+" + std::to_string(s) : "n" + std::to_string(s));
            out.push_back(base + "[" + idx + "]");
        }
        return out;
    }
};

/// Element of the field of rational functions in the declared symbols over
/// the rationals.  Fractions of expanded multivariate polynomials, reduced by
/// common monomial factors and rational content only; no factorization is
/// attempted (vanishing tests do not need it).
class SymElem {
  public:
    SymElem() : num_(), den_(1) {}
    SymElem(int v) : num_(v), den_(1) {}  // NOLINT: implicit by design
    explicit SymElem(Rat v) : num_(std::move(v)), den_(1) {}
    SymElem(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw Error(ErrorKind::invalid_input, "SymElem: zero denominator");
        reduce_();
    }

    static SymElem from_rational(const Rat& q) { return SymElem(q); }
    static SymElem symbol(int index) { return SymElem(MultiPoly::variable(index), MultiPoly(1)); }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_rational() const { return num_.is_constant() && den_.is_constant(); }

    Rat to_rational() const {
        if (!is_rational()) throw Error(ErrorKind::internal, "SymElem: not a rational constant");
        return num_.constant_value() / den_.constant_value();
    }

    friend SymElem operator-(SymElem a) {
        a.num_ = -std::move(a.num_);
        return a;
    }
    friend SymElem operator+(const SymElem& a, const SymElem& b) {
        if (a.den_ == b.den_) return SymElem(a.num_ + b.num_, a.den_);
        return SymElem(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend SymElem operator-(const SymElem& a, const SymElem& b) {
        if (a.den_ == b.den_) return SymElem(a.num_ - b.num_, a.den_);
        return SymElem(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend SymElem operator*(const SymElem& a, const SymElem& b) {
        return SymElem(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend SymElem operator/(const SymElem& a, const SymElem& b) {
        if (b.is_zero()) throw Error(ErrorKind::invalid_input, "SymElem: division by zero");
        return SymElem(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const SymElem& a, const SymElem& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const SymElem& a, const SymElem& b) { return !(a == b); }

    SymElem pow(long k) const {
        if (k == 0) return SymElem(1);
        SymElem base = *this;
        if (k < 0) {
            if (is_zero()) throw Error(ErrorKind::invalid_input, "SymElem: inverse of zero");
            base = SymElem(den_, num_);
            k = -k;
        }
        SymElem acc(1);
        while (k) {
            if (k & 1) acc = acc * base;
            k >>= 1;
            if (k) base = base * base;
        }
        return acc;
    }

    std::string str(const std::vector<std::string>& names = {}) const {
        std::string out = "(" + num_.str(names) + ")";
        if (!(den_.is_constant() && den_.constant_value().is_one())) out += "/(" + den_.str(names) + ")";
        return out;
    }
    std::string str() const { return str({}); }

  private:
    void reduce_() {
        if (num_.is_zero()) {
            den_ = MultiPoly(1);
            return;
        }
        Monomial gm = num_.monomial_gcd();
        Monomial dm = den_.monomial_gcd();
        Monomial common(std::min(gm.size(), dm.size()), 0);
        for (size_t i = 0; i < common.size(); ++i) common[i] = std::min(gm[i], dm[i]);
        mono_trim(common);
        if (!common.empty()) {
            num_ = num_.divide_monomial(common);
            den_ = den_.divide_monomial(common);
        }
        Rat c = den_.content();
        if (den_.leading_coeff().sign() < 0) c = -c;
        Rat inv = Rat(1) / c;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }

    MultiPoly num_, den_;
};

}  // namespace entropyforge

#endif
