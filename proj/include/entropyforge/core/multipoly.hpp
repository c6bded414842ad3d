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

#ifndef ENTROPYFORGE_CORE_MULTIPOLY_HPP
#define ENTROPYFORGE_CORE_MULTIPOLY_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "entropyforge/core/rational.hpp"

namespace entropyforge {

/// Exponent vector; trailing zeros are trimmed so representations are
/// canonical.  Variables are identified by position.
using Monomial = std::vector<int>;

inline void mono_trim(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    mono_trim(r);
    return r;
}

/// Sparse multivariate polynomial over the rationals.  Term order is the
/// std::map order on exponent vectors (graded-free lex on positions), which
/// is stable and canonical for printing and equality.
class MultiPoly {
  public:
    MultiPoly() = default;
    explicit MultiPoly(Rat c) {
        if (!c.is_zero()) t_[Monomial{}] = std::move(c);
    }
    MultiPoly(int c) : MultiPoly(Rat(c)) {}

    static MultiPoly variable(int index) {
        MultiPoly p;
        Monomial m(static_cast<size_t>(index) + 1, 0);
        m.back() = 1;
        p.t_[std::move(m)] = Rat(1);
        return p;
    }

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
    size_t term_count() const { return t_.size(); }
    const std::map<Monomial, Rat>& terms() const { return t_; }

    Rat constant_value() const {
        auto it = t_.find(Monomial{});
        return it == t_.end() ? Rat(0) : it->second;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [m, c] : t_) {
            int s = 0;
            for (int e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [m, c] : o.t_) add_term_(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        for (const auto& [m, c] : o.t_) add_term_(m, -c);
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator-(MultiPoly a) {
        for (auto& [m, c] : a.t_) c = -c;
        return a;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r;
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) r.add_term_(mono_mul(ma, mb), ca * cb);
        return r;
    }

    friend MultiPoly operator*(MultiPoly a, const Rat& s) {
        if (s.is_zero()) return MultiPoly();
        for (auto& [m, c] : a.t_) c = c * s;
        return a;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.t_.size() != b.t_.size()) return false;
        auto ia = a.t_.begin();
        auto ib = b.t_.begin();
        for (; ia != a.t_.end(); ++ia, ++ib) {
            if (ia->first != ib->first || !(ia->second == ib->second)) return false;
        }
        return true;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    /// Componentwise minimum of all exponent vectors (the common monomial
    /// factor).  Zero polynomial yields the empty monomial.
    Monomial monomial_gcd() const {
        if (t_.empty()) return {};
        Monomial g = t_.begin()->first;
        for (const auto& [m, c] : t_) {
            for (size_t i = 0; i < g.size(); ++i) {
                int e = i < m.size() ? m[i] : 0;
                g[i] = std::min(g[i], e);
            }
        }
        mono_trim(g);
        return g;
    }

    MultiPoly divide_monomial(const Monomial& g) const {
        MultiPoly r;
        for (const auto& [m, c] : t_) {
            Monomial q(std::max(m.size(), g.size()), 0);
            for (size_t i = 0; i < q.size(); ++i) {
                int e = (i < m.size() ? m[i] : 0) - (i < g.size() ? g[i] : 0);
                q[i] = e;
            }
            mono_trim(q);
            r.t_[std::move(q)] = c;
        }
        return r;
    }

    /// Positive rational c such that (*this)/c has coprime integer
    /// coefficients.  Zero polynomial yields 1.
    Rat content() const {
        if (t_.empty()) return Rat(1);
        Int g(0), l(1);
        for (const auto& [m, c] : t_) {
            g = gcd(g, c.num());
            l = lcm(l, c.den());
        }
        return Rat(abs(g), l);
    }

    const Rat& leading_coeff() const { return t_.rbegin()->second; }

    /// Divides out the common monomial and the rational content and fixes the
    /// sign of the leading term positive: the canonical representative of a
    /// vanishing condition.
    MultiPoly normalized_primitive() const {
        if (t_.empty()) return {};
        MultiPoly r = divide_monomial(monomial_gcd());
        Rat c = r.content();
        if (r.leading_coeff().sign() < 0) c = -c;
        Rat inv = Rat(1) / c;
        for (auto& [m, v] : r.t_) v = v * inv;
        return r;
    }

    std::string str(const std::vector<std::string>& names = {}) const {
        if (t_.empty()) return "0";
        std::string out;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            std::string term = it->second.str();
            for (size_t i = 0; i < it->first.size(); ++i) {
                if (it->first[i] == 0) continue;
                std::string v = i < names.size() ? names[i] : "s" + std::to_string(i);
                term += "*" + v;
                if (it->first[i] != 1) term += "^" + std::to_string(it->first[i]);
            }
            out += term;
        }
        return out;
    }

  private:
    void add_term_(const Monomial& m, const Rat& c) {
        if (c.is_zero()) return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    std::map<Monomial, Rat> t_;
};

}  // namespace entropyforge

#endif
