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

#ifndef ENTROPYFORGE_SPECTRAL_INTPOLY_HPP
#define ENTROPYFORGE_SPECTRAL_INTPOLY_HPP

#include <string>
#include <vector>

#include "entropyforge/core/zpoly.hpp"
#include "entropyforge/dsl/defs.hpp"

namespace entropyforge::spectral {

/// Integer characteristic polynomial, lowest degree first.  Content is kept
/// as handed in: constraint recurrences may carry one.
struct IntPoly {
    ZPoly c;

    IntPoly() = default;
    explicit IntPoly(ZPoly z) : c(std::move(z)) { zx::trim(c); }
    IntPoly(std::initializer_list<long> v) {
        for (long x : v) c.emplace_back(x);
        zx::trim(c);
    }

    int degree() const { return zx::deg(c); }
    bool is_zero() const { return c.empty(); }
    const Int& coeff(int i) const { return c[static_cast<size_t>(i)]; }

    bool is_monic() const { return !c.empty() && c.back().is_one(); }

    /// Exact content-free copy (positive leading coefficient).
    IntPoly primitive() const { return IntPoly(zx::primitive_part(c)); }

    Int eval_int(const Int& x) const {
        Int acc(0);
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }

    /// Exact sign of the polynomial at a rational point u/v, v > 0.
    int sign_at(const Rat& q) const {
        if (c.empty()) return 0;
        Int u = q.num(), v = q.den();
        Int acc(0);
        int d = degree();
        for (int i = d; i >= 0; --i) {
            acc = acc * u + c[static_cast<size_t>(i)] * pow(v, static_cast<unsigned long>(d - i));
        }
        return acc.sign();
    }

    double eval_double(double x) const {
        double acc = 0;
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i].to_double();
        return acc;
    }

    /// Exactly palindromic (c_i == c_{d-i}) or anti-palindromic (c_i == -c_{d-i}).
    bool is_reciprocal() const {
        if (c.empty()) return false;
        int d = degree();
        bool pal = true, anti = true;
        for (int i = 0; i <= d; ++i) {
            const Int& x = c[static_cast<size_t>(i)];
            const Int& y = c[static_cast<size_t>(d - i)];
            if (!(x == y)) pal = false;
            if (!(x == -y)) anti = false;
        }
        return pal || anti;
    }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) { return IntPoly(zx::mul(a.c, b.c)); }
    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) { return IntPoly(zx::add(a.c, b.c)); }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return IntPoly(zx::sub(a.c, b.c)); }
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c == b.c; }

    std::string str(const char* sym = "L") const {
        if (c.empty()) return "0";
        std::string out;
        for (size_t i = c.size(); i-- > 0;) {
            if (c[i].is_zero()) continue;
            std::string term = c[i].str();
            if (i > 0) {
                if (term == "1") term.clear();
                if (term == "-1") term = "-";
                term += sym;
                if (i > 1) term += "^" + std::to_string(i);
            }
            if (!out.empty() && term[0] != '-') out += " + ";
            if (!out.empty() && term[0] == '-') {
                out += " - ";
                term = term.substr(1);
            }
            out += term;
        }
        return out;
    }
};

inline IntPoly monomial(long coeff, int k) {
    ZPoly z(static_cast<size_t>(k) + 1, Int(0));
    z.back() = Int(coeff);
    IntPoly p(std::move(z));
    return p;
}

/// Characteristic polynomial of a linear or log-linearized coefficient
/// recurrence.  Additive terms sum c_i * a[n+s_i] = 0 to sum c_i L^{s_i-min};
/// a multiplicative product a[n+s_i]^{e_i} = 1 log-linearizes with exponents
/// as coefficients.
inline IntPoly charpoly_of_recurrence(dsl::CoeffConstraint::Kind kind,
                                      const std::vector<std::pair<int, long>>& terms) {
    if (terms.size() < 2)
        throw Error(ErrorKind::invalid_input, "charpoly_of_recurrence: need at least two terms");
    (void)kind;  // additive and multiplicative reduce to the same polynomial after log-linearization
    int min_shift = terms.front().first;
    for (const auto& [s, c] : terms) min_shift = std::min(min_shift, s);
    for (size_t i = 0; i < terms.size(); ++i) {
        for (size_t j = i + 1; j < terms.size(); ++j) {
            if (terms[i].first == terms[j].first)
                throw Error(ErrorKind::invalid_input, "charpoly_of_recurrence: shifts must be distinct");
        }
    }
    ZPoly z;
    bool all_zero = true;
    for (const auto& [s, c] : terms) {
        if (c != 0) all_zero = false;
        size_t idx = static_cast<size_t>(s - min_shift);
        if (z.size() <= idx) z.resize(idx + 1, Int(0));
        z[idx] += Int(c);
    }
    if (all_zero) throw Error(ErrorKind::invalid_input, "charpoly_of_recurrence: all coefficients zero");
    IntPoly p(std::move(z));
    if (p.is_zero())
        throw Error(ErrorKind::invalid_input, "charpoly_of_recurrence: terms cancel identically");
    return p;
}

inline IntPoly charpoly_of_constraint(const dsl::CoeffConstraint& c) {
    return charpoly_of_recurrence(c.kind, c.terms);
}

/// Characteristic polynomial of the reduced five-term coefficient relation:
/// the full product (L^{l+1} + 1) * (L^{l+1} - k L^l - k L + 1) and the
/// second factor P_l separately.
struct ReductionCharpoly {
    IntPoly full;
    IntPoly p_factor;  // P_l
};

inline ReductionCharpoly reduction_charpoly(long k, long l) {
    if (k < 2 || l < 2)
        throw Error(ErrorKind::invalid_input, "reduction_charpoly requires k >= 2 and l >= 2");
    IntPoly cyclo = monomial(1, static_cast<int>(l) + 1) + IntPoly({1});
    IntPoly p = monomial(1, static_cast<int>(l) + 1) - monomial(k, static_cast<int>(l)) -
                IntPoly({0, k}) + IntPoly({1});
    return {cyclo * p, p};
}

}  // namespace entropyforge::spectral

#endif
