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

#ifndef ENTROPYFORGE_CORE_PRIME_FIELD_HPP
#define ENTROPYFORGE_CORE_PRIME_FIELD_HPP

#include <cstdint>
#include <string>

#include "entropyforge/core/rational.hpp"
#include "entropyforge/errors.hpp"

namespace entropyforge {

namespace detail {

constexpr uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

constexpr uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
constexpr bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Extended Euclid inverse mod p.
constexpr uint64_t invmod_u64(uint64_t a, uint64_t p) {
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a % p);
    while (newr != 0) {
        int64_t q = r / newr;
        int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += static_cast<int64_t>(p);
    return static_cast<uint64_t>(t);
}

}  // namespace detail

/// Prime field Z/P for a compile-time prime P.  The modulus must exceed 2^20
/// so that accidental cancellations in modular degree runs stay unlikely, and
/// stay below 2^31 so products fit in a 64-bit word.
template <uint64_t P>
class Fp {
    static_assert(detail::is_prime_u64(P), "Fp modulus must be prime");
    static_assert(P > (1ull << 20), "Fp modulus must exceed 2^20");
    static_assert(P < (1ull << 31), "Fp modulus must fit products in uint64");

  public:
    static constexpr uint64_t modulus = P;

    constexpr Fp() : v_(0) {}
    constexpr Fp(long v) {  // NOLINT: implicit by design
        long m = v % static_cast<long>(P);
        if (m < 0) m += static_cast<long>(P);
        v_ = static_cast<uint64_t>(m);
    }
    constexpr Fp(int v) : Fp(static_cast<long>(v)) {}
    static constexpr Fp from_raw(uint64_t v) {
        Fp r;
        r.v_ = v % P;
        return r;
    }
    static Fp from_rational(const Rat& q) {
        uint64_t n = mod_u64(q.num(), P);
        uint64_t d = mod_u64(q.den(), P);
        if (d == 0) throw Error(ErrorKind::invalid_input, "Fp: denominator divisible by modulus");
        return from_raw(detail::mulmod_u64(n, detail::invmod_u64(d, P), P));
    }

    constexpr uint64_t value() const { return v_; }
    constexpr bool is_zero() const { return v_ == 0; }
    constexpr bool is_one() const { return v_ == 1; }

    constexpr Fp& operator+=(Fp o) {
        v_ += o.v_;
        if (v_ >= P) v_ -= P;
        return *this;
    }
    constexpr Fp& operator-=(Fp o) {
        v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + P - o.v_;
        return *this;
    }
    constexpr Fp& operator*=(Fp o) {
        v_ = (v_ * o.v_) % P;  // both < 2^31
        return *this;
    }
    Fp& operator/=(Fp o) {
        if (o.is_zero()) throw Error(ErrorKind::invalid_input, "Fp: division by zero");
        v_ = (v_ * detail::invmod_u64(o.v_, P)) % P;
        return *this;
    }

    friend constexpr Fp operator+(Fp a, Fp b) { return a += b; }
    friend constexpr Fp operator-(Fp a, Fp b) { return a -= b; }
    friend constexpr Fp operator*(Fp a, Fp b) { return a *= b; }
    friend Fp operator/(Fp a, Fp b) { return a /= b; }
    friend constexpr Fp operator-(Fp a) { return Fp::from_raw(a.v_ == 0 ? 0 : P - a.v_); }
    friend constexpr bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
    friend constexpr bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

    std::string str() const { return std::to_string(v_); }

  private:
    uint64_t v_;
};

template <uint64_t P>
Fp<P> inverse(Fp<P> a) {
    if (a.is_zero()) throw Error(ErrorKind::invalid_input, "Fp: inverse of zero");
    return Fp<P>::from_raw(detail::invmod_u64(a.value(), P));
}

/// The two fixed moduli used by modular degree runs.
inline constexpr uint64_t kModularPrimeA = 2147483647ull;  // 2^31 - 1
inline constexpr uint64_t kModularPrimeB = 2147483629ull;

}  // namespace entropyforge

#endif
