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

#ifndef ENTROPYFORGE_CORE_ZPOLY_HPP
#define ENTROPYFORGE_CORE_ZPOLY_HPP

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <optional>
#include <vector>

#include "entropyforge/core/int.hpp"
#include "entropyforge/core/prime_field.hpp"
#include "entropyforge/errors.hpp"

namespace entropyforge {

/// Dense integer polynomial, lowest degree first, no trailing zeros.
/// The empty vector is the zero polynomial.
using ZPoly = std::vector<Int>;

namespace zx {

inline void trim(ZPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline int deg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }
inline bool is_zero(const ZPoly& p) { return p.empty(); }

inline ZPoly from_long(long v) {
    ZPoly p;
    if (v != 0) p.emplace_back(v);
    return p;
}

inline ZPoly neg(ZPoly p) {
    for (Int& c : p) c = -c;
    return p;
}

inline ZPoly add(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    trim(r);
    return r;
}

inline ZPoly sub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
    }
    trim(r);
    return r;
}

inline ZPoly mul_scalar(ZPoly a, const Int& s) {
    if (s.is_zero()) return {};
    for (Int& c : a) c *= s;
    return a;
}

inline ZPoly mul_schoolbook(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            mpz_addmul(r[i + j].raw(), a[i].raw(), b[j].raw());
        }
    }
    trim(r);
    return r;
}

namespace detail {

inline size_t max_bits(const ZPoly& p) {
    size_t b = 1;
    for (const Int& c : p) b = std::max(b, c.bits());
    return b;
}

/// Packs a nonnegative-coefficient polynomial into one big integer with
/// limb-aligned slots of `words` 64-bit words each.
inline Int pack_nonneg(const ZPoly& p, size_t words) {
    std::vector<uint64_t> buf(p.size() * words, 0);
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i].is_zero()) continue;
        size_t cnt = 0;
        mpz_export(&buf[i * words], &cnt, -1, sizeof(uint64_t), 0, 0, p[i].raw());
    }
    Int v;
    mpz_import(v.raw(), buf.size(), -1, sizeof(uint64_t), 0, 0, buf.empty() ? &words : buf.data());
    if (buf.empty()) v = Int(0);
    return v;
}

/// Inverse of pack_nonneg for a nonnegative packed value.
inline void unpack_nonneg(const Int& v, size_t words, size_t slots, std::vector<Int>& out) {
    out.assign(slots, Int(0));
    std::vector<uint64_t> buf(slots * words + 1, 0);
    size_t cnt = 0;
    mpz_export(buf.data(), &cnt, -1, sizeof(uint64_t), 0, 0, v.raw());
    for (size_t i = 0; i < slots; ++i) {
        size_t off = i * words;
        if (off >= cnt) break;
        size_t take = std::min(words, cnt - off);
        mpz_import(out[i].raw(), take, -1, sizeof(uint64_t), 0, 0, &buf[off]);
    }
}

inline void split_signs(const ZPoly& p, ZPoly& pos, ZPoly& negp) {
    pos.assign(p.size(), Int(0));
    negp.assign(p.size(), Int(0));
    bool anyp = false, anyn = false;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i].sign() > 0) {
            pos[i] = p[i];
            anyp = true;
        } else if (p[i].sign() < 0) {
            negp[i] = -p[i];
            anyn = true;
        }
    }
    if (!anyp) pos.clear();
    if (!anyn) negp.clear();
}

}  // namespace detail

/// Multiplication via Kronecker substitution: pack, one (or three) big GMP
/// multiplications, unpack.  Coefficient signs are handled by the identity
/// a*b = 2(a+ b+ + a- b-) - |a||b| on slotwise-nonnegative packings.
inline ZPoly mul_kronecker(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    size_t slots = a.size() + b.size() - 1;
    size_t nbits = 0;
    for (size_t m = std::min(a.size(), b.size()); m; m >>= 1) ++nbits;
    size_t slot_bits = detail::max_bits(a) + detail::max_bits(b) + nbits + 2;
    size_t words = (slot_bits + 63) / 64;

    ZPoly ap, an, bp, bn;
    detail::split_signs(a, ap, an);
    detail::split_signs(b, bp, bn);

    std::vector<Int> digits;
    bool a_single = ap.empty() || an.empty();
    bool b_single = bp.empty() || bn.empty();
    if (a_single || b_single) {
        // One operand has a single sign: pack it once and multiply against
        // both sign parts of the other.
        const ZPoly& u = a_single ? (ap.empty() ? an : ap) : (bp.empty() ? bn : bp);
        bool uneg = a_single ? ap.empty() : bp.empty();
        const ZPoly& vpos = a_single ? bp : ap;
        const ZPoly& vneg = a_single ? bn : an;
        Int ku = detail::pack_nonneg(u, words);
        std::vector<Int> d1, d2;
        bool have1 = false, have2 = false;
        if (!vpos.empty()) {
            Int p1 = ku * detail::pack_nonneg(vpos, words);
            detail::unpack_nonneg(p1, words, slots, d1);
            have1 = true;
        }
        if (!vneg.empty()) {
            Int p2 = ku * detail::pack_nonneg(vneg, words);
            detail::unpack_nonneg(p2, words, slots, d2);
            have2 = true;
        }
        digits.assign(slots, Int(0));
        for (size_t i = 0; i < slots; ++i) {
            if (have1) digits[i] += d1[i];
            if (have2) digits[i] -= d2[i];
            if (uneg) digits[i] = -digits[i];
        }
    } else {
        // Mixed signs on both sides: three products.
        ZPoly aa(a.size()), ba(b.size());
        for (size_t i = 0; i < a.size(); ++i) aa[i] = abs(a[i]);
        for (size_t i = 0; i < b.size(); ++i) ba[i] = abs(b[i]);
        Int u = detail::pack_nonneg(ap, words) * detail::pack_nonneg(bp, words) +
                detail::pack_nonneg(an, words) * detail::pack_nonneg(bn, words);
        Int v = detail::pack_nonneg(aa, words) * detail::pack_nonneg(ba, words);
        std::vector<Int> du, dv;
        detail::unpack_nonneg(u, words, slots, du);
        detail::unpack_nonneg(v, words, slots, dv);
        digits.assign(slots, Int(0));
        for (size_t i = 0; i < slots; ++i) {
            digits[i] = du[i] + du[i] - dv[i];
        }
    }

    ZPoly r(std::move(digits));
    trim(r);
    return r;
}

inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    size_t n = std::min(a.size(), b.size());
    if (n < 24 || a.size() * b.size() < 1024) return mul_schoolbook(a, b);
    return mul_kronecker(a, b);
}

inline ZPoly shift_up(ZPoly p, int k) {
    if (p.empty() || k == 0) return p;
    p.insert(p.begin(), static_cast<size_t>(k), Int(0));
    return p;
}

/// Content: gcd of coefficients, with the sign of the leading coefficient.
/// content(0) = 0.
inline Int content(const ZPoly& p) {
    Int g(0);
    for (const Int& c : p) {
        g = gcd(g, c);
        if (g.is_one()) break;
    }
    if (!p.empty() && p.back().sign() < 0) g = -g;
    return g;
}

inline ZPoly divexact_scalar(ZPoly p, const Int& s) {
    for (Int& c : p) c = divexact(c, s);
    return p;
}

inline ZPoly primitive_part(const ZPoly& p) {
    if (p.empty()) return {};
    Int c = content(p);
    if (c.is_one()) return p;
    return divexact_scalar(p, c);
}

/// Exact division: returns the quotient if b divides a exactly, nullopt
/// otherwise.  Coefficient-level exactness is checked at every step.
inline std::optional<ZPoly> divexact_checked(const ZPoly& a, const ZPoly& b) {
    if (b.empty()) throw Error(ErrorKind::invalid_input, "ZPoly: division by zero polynomial");
    if (a.empty()) return ZPoly{};
    if (deg(a) < deg(b)) return std::nullopt;
    ZPoly rem = a;
    const Int& lb = b.back();
    int dq = deg(a) - deg(b);
    ZPoly q(static_cast<size_t>(dq) + 1, Int(0));
    for (int i = dq; i >= 0; --i) {
        const Int& lead = rem[static_cast<size_t>(i + deg(b))];
        if (lead.is_zero()) continue;
        if (!divides(lb, lead)) return std::nullopt;
        Int qi = divexact(lead, lb);
        // rem -= qi * b * x^i
        for (size_t j = 0; j < b.size(); ++j) {
            mpz_submul(rem[i + j].raw(), qi.raw(), b[j].raw());
        }
        q[static_cast<size_t>(i)] = std::move(qi);
    }
    for (const Int& c : rem)
        if (!c.is_zero()) return std::nullopt;
    trim(q);
    return q;
}

inline ZPoly divexact(const ZPoly& a, const ZPoly& b) {
    auto q = divexact_checked(a, b);
    if (!q) throw Error(ErrorKind::internal, "ZPoly: division expected to be exact was not");
    return *q;
}

// ---------------------------------------------------------------------------
// Modular GCD
// ---------------------------------------------------------------------------

namespace detail {

/// Lazily grown pool of 31-bit primes used for modular images.
inline const std::vector<uint64_t>& prime_pool(size_t at_least) {
    static std::vector<uint64_t> pool;
    static std::mutex mtx;
    static uint64_t cursor = (1ull << 31) - 1;
    std::lock_guard<std::mutex> lock(mtx);
    while (pool.size() < at_least) {
        while (!entropyforge::detail::is_prime_u64(cursor)) cursor -= 2;
        pool.push_back(cursor);
        cursor -= 2;
    }
    return pool;
}

using ModPoly = std::vector<uint64_t>;

inline void mp_trim(ModPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline ModPoly to_mod(const ZPoly& a, uint64_t p) {
    ModPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        r[i] = mod_u64(a[i], p);  // floor remainder, already in [0, p)
    }
    mp_trim(r);
    return r;
}

inline void mp_make_monic(ModPoly& a, uint64_t p) {
    if (a.empty()) return;
    uint64_t inv = entropyforge::detail::invmod_u64(a.back(), p);
    for (uint64_t& c : a) c = entropyforge::detail::mulmod_u64(c, inv, p);
}

/// In-place a mod b over Z/p; b must be nonzero.
inline void mp_rem(ModPoly& a, const ModPoly& b, uint64_t p) {
    uint64_t inv_lb = entropyforge::detail::invmod_u64(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        uint64_t q = entropyforge::detail::mulmod_u64(a.back(), inv_lb, p);
        if (q != 0) {
            size_t off = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) {
                uint64_t t = entropyforge::detail::mulmod_u64(q, b[j], p);
                uint64_t& c = a[off + j];
                c = c >= t ? c - t : c + p - t;
            }
        }
        a.pop_back();
        mp_trim(a);
    }
}

inline ModPoly mp_gcd(ModPoly a, ModPoly b, uint64_t p) {
    mp_trim(a);
    mp_trim(b);
    while (!b.empty()) {
        mp_rem(a, b, p);
        std::swap(a, b);
    }
    mp_make_monic(a, p);
    return a;
}

}  // namespace detail

/// gcd of primitive integer polynomials by modular images with CRT lifting
/// and exact trial-division verification.  Always returns a primitive
/// polynomial with positive leading coefficient.
inline ZPoly gcd_primitive(const ZPoly& a, const ZPoly& b) {
    if (a.empty()) return primitive_part(b);
    if (b.empty()) return primitive_part(a);
    const ZPoly& lo = deg(a) <= deg(b) ? a : b;
    const ZPoly& hi = deg(a) <= deg(b) ? b : a;
    Int gamma = gcd(lo.back(), hi.back());

    std::vector<Int> crt;        // symmetric-range lifted candidate
    Int modulus(1);
    int best_deg = deg(lo) + 1;
    bool stable = false;
    size_t prime_idx = 0;
    for (size_t guard = 0; guard < 4096; ++guard) {
        const auto& pool = detail::prime_pool(prime_idx + 1);
        uint64_t p = pool[prime_idx++];
        if (mod_u64(lo.back(), p) == 0 || mod_u64(hi.back(), p) == 0) continue;
        detail::ModPoly gp = detail::mp_gcd(detail::to_mod(lo, p), detail::to_mod(hi, p), p);
        int dg = static_cast<int>(gp.size()) - 1;
        if (dg == 0) return ZPoly{Int(1)};
        if (dg > best_deg) continue;  // unlucky prime
        if (dg < best_deg) {
            best_deg = dg;
            crt.assign(gp.size(), Int(0));
            modulus = Int(1);
            stable = false;
        }
        // scale to leading coefficient gamma mod p, then CRT into crt[]
        uint64_t gmod = mod_u64(gamma, p);
        bool changed = false;
        Int new_modulus = modulus * Int(static_cast<long>(p));
        for (size_t i = 0; i < gp.size(); ++i) {
            uint64_t target = entropyforge::detail::mulmod_u64(gp[i], gmod, p);
            // solve x == crt[i] mod modulus, x == target mod p, symmetric range
            uint64_t cur = mod_u64(crt[i], p);
            uint64_t diff = target >= cur ? target - cur : target + p - cur;
            if (diff != 0) {
                uint64_t minv = entropyforge::detail::invmod_u64(mod_u64(modulus, p), p);
                uint64_t t = entropyforge::detail::mulmod_u64(diff, minv, p);
                Int x = crt[i] + modulus * Int(static_cast<long>(t));
                changed = true;
                crt[i] = std::move(x);
            }
        }
        modulus = new_modulus;
        // map into symmetric range
        Int half = modulus / Int(2);
        for (Int& c : crt) {
            Int m = c % modulus;
            if (m.sign() < 0) m += modulus;
            if (m > half) m -= modulus;
            if (!(m == c)) {
                c = std::move(m);
                changed = true;
            }
        }
        if (!changed && stable) {
            ZPoly cand(crt.begin(), crt.end());
            trim(cand);
            cand = primitive_part(cand);
            if (!cand.empty() && divexact_checked(lo, cand) && divexact_checked(hi, cand)) {
                if (cand.back().sign() < 0) cand = neg(std::move(cand));
                return cand;
            }
            stable = false;  // verification failed, keep adding primes
        } else {
            stable = !changed;
        }
    }
    throw Error(ErrorKind::internal, "ZPoly: modular gcd failed to stabilize");
}

/// Full integer gcd: gcd of contents times gcd of primitive parts.
inline ZPoly gcd(const ZPoly& a, const ZPoly& b) {
    if (a.empty()) return b.empty() ? ZPoly{} : mul_scalar(primitive_part(b), abs(content(b)));
    if (b.empty()) return mul_scalar(primitive_part(a), abs(content(a)));
    Int ca = abs(content(a)), cb = abs(content(b));
    ZPoly g = gcd_primitive(divexact_scalar(a, content(a)), divexact_scalar(b, content(b)));
    return mul_scalar(std::move(g), entropyforge::gcd(ca, cb));
}

inline ZPoly pow(const ZPoly& a, unsigned k) {
    ZPoly acc{Int(1)};
    ZPoly base = a;
    while (k) {
        if (k & 1) acc = mul(acc, base);
        k >>= 1;
        if (k) base = mul(base, base);
    }
    return acc;
}

}  // namespace zx
}  // namespace entropyforge

#endif
