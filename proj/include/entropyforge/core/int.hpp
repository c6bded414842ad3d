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

#ifndef ENTROPYFORGE_CORE_INT_HPP
#define ENTROPYFORGE_CORE_INT_HPP

#include <gmp.h>

#include <cstdint>
#include <string>
#include <utility>

#include "entropyforge/errors.hpp"

namespace entropyforge {

/// Arbitrary-precision integer, a value-semantic wrapper around GMP's mpz.
class Int {
  public:
    Int() { mpz_init(z_); }
    Int(long v) { mpz_init_set_si(z_, v); }  // NOLINT: implicit by design
    Int(int v) : Int(static_cast<long>(v)) {}
    explicit Int(unsigned long v) { mpz_init_set_ui(z_, v); }
    explicit Int(const std::string& s) {
        if (mpz_init_set_str(z_, s.c_str(), 10) != 0) {
            mpz_clear(z_);
            throw Error(ErrorKind::invalid_input, "Int: cannot parse \"" + s + "\"");
        }
    }
    Int(const Int& o) { mpz_init_set(z_, o.z_); }
    Int(Int&& o) noexcept {
        mpz_init(z_);
        mpz_swap(z_, o.z_);
    }
    Int& operator=(const Int& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    Int& operator=(Int&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~Int() { mpz_clear(z_); }

    mpz_srcptr raw() const { return z_; }
    mpz_ptr raw() { return z_; }

    bool is_zero() const { return mpz_sgn(z_) == 0; }
    bool is_one() const { return mpz_cmp_ui(z_, 1) == 0; }
    int sign() const { return mpz_sgn(z_); }
    size_t bits() const { return mpz_sizeinbase(z_, 2); }
    bool fits_long() const { return mpz_fits_slong_p(z_) != 0; }
    long to_long() const { return mpz_get_si(z_); }
    double to_double() const { return mpz_get_d(z_); }

    std::string str() const {
        char* s = mpz_get_str(nullptr, 10, z_);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

    Int& operator+=(const Int& o) {
        mpz_add(z_, z_, o.z_);
        return *this;
    }
    Int& operator-=(const Int& o) {
        mpz_sub(z_, z_, o.z_);
        return *this;
    }
    Int& operator*=(const Int& o) {
        mpz_mul(z_, z_, o.z_);
        return *this;
    }
    Int& operator*=(long v) {
        mpz_mul_si(z_, z_, v);
        return *this;
    }

    friend Int operator+(Int a, const Int& b) { return a += b; }
    friend Int operator-(Int a, const Int& b) { return a -= b; }
    friend Int operator*(Int a, const Int& b) { return a *= b; }
    friend Int operator*(Int a, long b) { return a *= b; }
    friend Int operator-(Int a) {
        mpz_neg(a.z_, a.z_);
        return a;
    }

    /// Truncated division (quotient rounded toward zero).
    friend Int operator/(const Int& a, const Int& b) {
        Int q;
        mpz_tdiv_q(q.z_, a.z_, b.z_);
        return q;
    }
    friend Int operator%(const Int& a, const Int& b) {
        Int r;
        mpz_tdiv_r(r.z_, a.z_, b.z_);
        return r;
    }

    friend bool operator==(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) == 0; }
    friend bool operator==(const Int& a, long b) { return mpz_cmp_si(a.z_, b) == 0; }
    friend bool operator!=(const Int& a, const Int& b) { return !(a == b); }
    friend bool operator<(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) < 0; }
    friend bool operator<=(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) <= 0; }
    friend bool operator>(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) > 0; }
    friend bool operator>=(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) >= 0; }

    friend void swap(Int& a, Int& b) noexcept { mpz_swap(a.z_, b.z_); }

  private:
    mpz_t z_;
};

inline Int abs(const Int& a) {
    Int r;
    mpz_abs(r.raw(), a.raw());
    return r;
}

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.raw(), a.raw(), b.raw());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.raw(), a.raw(), b.raw());
    return r;
}

/// Exact division; quotient is only meaningful when b divides a.
inline Int divexact(const Int& a, const Int& b) {
    Int r;
    mpz_divexact(r.raw(), a.raw(), b.raw());
    return r;
}

inline bool divides(const Int& d, const Int& a) { return mpz_divisible_p(a.raw(), d.raw()) != 0; }

inline Int pow(const Int& a, unsigned long e) {
    Int r;
    mpz_pow_ui(r.raw(), a.raw(), e);
    return r;
}

inline Int pow2(unsigned long e) {
    Int r;
    mpz_setbit(r.raw(), e);
    return r;
}

inline uint64_t mod_u64(const Int& a, uint64_t p) {
    // p < 2^63 throughout this library
    uint64_t r = mpz_fdiv_ui(a.raw(), static_cast<unsigned long>(p));
    return r;
}

}  // namespace entropyforge

#endif
