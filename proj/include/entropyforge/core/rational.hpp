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

#ifndef ENTROPYFORGE_CORE_RATIONAL_HPP
#define ENTROPYFORGE_CORE_RATIONAL_HPP

#include <gmp.h>

#include <string>
#include <utility>

#include "entropyforge/core/int.hpp"
#include "entropyforge/errors.hpp"

namespace entropyforge {

/// Arbitrary-precision rational, always kept in canonical (reduced) form.
class Rat {
  public:
    Rat() { mpq_init(q_); }
    Rat(long v) {  // NOLINT: implicit by design
        mpq_init(q_);
        mpq_set_si(q_, v, 1);
    }
    Rat(int v) : Rat(static_cast<long>(v)) {}
    Rat(long num, long den) {
        if (den == 0) throw Error(ErrorKind::invalid_input, "Rat: zero denominator");
        mpq_init(q_);
        mpq_set_si(q_, num, 1);
        mpq_t d;
        mpq_init(d);
        mpq_set_si(d, den, 1);
        mpq_div(q_, q_, d);
        mpq_clear(d);
    }
    Rat(const Int& num, const Int& den) {
        if (den.is_zero()) throw Error(ErrorKind::invalid_input, "Rat: zero denominator");
        mpq_init(q_);
        mpz_set(mpq_numref(q_), num.raw());
        mpz_set(mpq_denref(q_), den.raw());
        mpq_canonicalize(q_);
    }
    explicit Rat(const Int& v) {
        mpq_init(q_);
        mpz_set(mpq_numref(q_), v.raw());
    }
    /// Parses "p" or "p/q".
    explicit Rat(const std::string& s) {
        mpq_init(q_);
        if (mpq_set_str(q_, s.c_str(), 10) != 0 || mpz_sgn(mpq_denref(q_)) == 0) {
            mpq_clear(q_);
            throw Error(ErrorKind::invalid_input, "Rat: cannot parse \"" + s + "\"");
        }
        mpq_canonicalize(q_);
    }
    Rat(const Rat& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rat(Rat&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rat& operator=(const Rat& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rat& operator=(Rat&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rat() { mpq_clear(q_); }

    mpq_srcptr raw() const { return q_; }

    Int num() const {
        Int r;
        mpz_set(r.raw(), mpq_numref(q_));
        return r;
    }
    Int den() const {
        Int r;
        mpz_set(r.raw(), mpq_denref(q_));
        return r;
    }

    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_one() const { return mpq_cmp_ui(q_, 1, 1) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    int sign() const { return mpq_sgn(q_); }
    double to_double() const { return mpq_get_d(q_); }

    static Rat from_rational(const Rat& q) { return q; }
    Rat pow(long e) const;

    std::string str() const {
        std::string s = num().str();
        if (!is_integer()) s += "/" + den().str();
        return s;
    }

    Rat& operator+=(const Rat& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }
    Rat& operator-=(const Rat& o) {
        mpq_sub(q_, q_, o.q_);
        return *this;
    }
    Rat& operator*=(const Rat& o) {
        mpq_mul(q_, q_, o.q_);
        return *this;
    }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw Error(ErrorKind::invalid_input, "Rat: division by zero");
        mpq_div(q_, q_, o.q_);
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(Rat a) {
        mpq_neg(a.q_, a.q_);
        return a;
    }

    friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

    friend void swap(Rat& a, Rat& b) noexcept { mpq_swap(a.q_, b.q_); }

  private:
    mpq_t q_;
};

inline Rat inverse(const Rat& a) {
    if (a.is_zero()) throw Error(ErrorKind::invalid_input, "Rat: inverse of zero");
    Rat r;
    mpq_inv(const_cast<mpq_ptr>(r.raw()), a.raw());
    return r;
}

inline Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }

inline Rat pow(const Rat& a, long e) {
    if (e == 0) return Rat(1);
    bool neg = e < 0;
    unsigned long ue = neg ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
    Rat base = neg ? inverse(a) : a;
    Rat acc(1);
    while (ue) {
        if (ue & 1) acc *= base;
        base *= base;
        ue >>= 1;
    }
    return acc;
}

inline Rat Rat::pow(long e) const { return entropyforge::pow(*this, e); }

}  // namespace entropyforge

#endif
