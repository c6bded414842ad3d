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

#ifndef ENTROPYFORGE_LATTICE_CONDITIONS_HPP
#define ENTROPYFORGE_LATTICE_CONDITIONS_HPP

#include "entropyforge/lattice/evolve.hpp"

namespace entropyforge::lattice {

struct ConditionReport {
    std::string id;  // "a/b ratio", "additive", "diagonal sign", "d from c", "five-term c"
    bool applicable = false;
    bool holds = false;
    std::optional<Site> first_fail;
    std::string detail;
};

/// Evaluates the coefficient confinement identities pointwise over the
/// rectangle's interior and reports the first failing site per condition.
inline std::vector<ConditionReport> check_confinement_conditions(const dsl::LatticeDef& def,
                                                                 const Rect& rect) {
    std::vector<ConditionReport> out;
    bool has_a = def.coeffs.count("a"), has_b = def.coeffs.count("b");
    bool has_c = def.coeffs.count("c"), has_d = def.coeffs.count("d");
    bool kdv_like = def.family == "kdv_lattice";
    bool kmt_like = def.family.rfind("kmt", 0) == 0 || (!kdv_like && def.k >= 2);
    long k = def.k;

    auto run = [&](const std::string& id, bool applicable, auto&& identity) {
        ConditionReport r;
        r.id = id;
        r.applicable = applicable;
        if (applicable) {
            r.holds = true;
            for (int m = rect.m0; m <= rect.m1 && r.holds; ++m) {
                for (int n = rect.n0; n <= rect.n1 && r.holds; ++n) {
                    if (!identity(m, n)) {
                        r.holds = false;
                        r.first_fail = Site{m, n};
                    }
                }
            }
        }
        out.push_back(std::move(r));
    };

    // a/b depends on m-n only, written multiplicatively to avoid division
    run("a/b ratio", has_a && has_b, [&](int m, int n) {
        const auto& a = def.coeff_field("a");
        const auto& b = def.coeff_field("b");
        return a.at(m + 1, n + 1) * b.at(m, n) == a.at(m, n) * b.at(m + 1, n + 1);
    });

    // additive condition in the equal-coefficient gauge
    run("additive", has_a && kdv_like, [&](int m, int n) {
        const auto& a = def.coeff_field("a");
        return (a.at(m + 1, n + 1) - a.at(m + 1, n) - a.at(m, n + 1) + a.at(m, n)).is_zero();
    });

    // diagonal sign conditions for the power-k equation
    run("diagonal sign", has_a && kmt_like, [&](int m, int n) {
        const auto& a = def.coeff_field("a");
        Rat lhs = a.at(m + 1, n + 1);
        Rat rhs = k % 2 == 0 ? a.at(m, n) : -a.at(m, n);
        bool ok = lhs == rhs;
        if (ok && has_b) {
            const auto& b = def.coeff_field("b");
            Rat bl = b.at(m + 1, n + 1);
            Rat br = k % 2 == 0 ? b.at(m, n) : -b.at(m, n);
            ok = bl == br;
        }
        return ok;
    });

    // d determined by c
    run("d from c", has_c && has_d && k >= 1, [&](int m, int n) {
        const auto& c = def.coeff_field("c");
        const auto& d = def.coeff_field("d");
        Rat expect = (c.at(m + 1, n) + c.at(m, n - 1)) * Rat(1, k) - c.at(m + 1, n - 1);
        return d.at(m, n) == expect;
    });

    // five-term relation on c
    run("five-term c", has_c && k >= 1, [&](int m, int n) {
        const auto& c = def.coeff_field("c");
        Rat v = c.at(m + 1, n + 1) + c.at(m, n) * Rat(2) + c.at(m - 1, n - 1) -
                (c.at(m + 1, n) + c.at(m, n - 1) + c.at(m - 1, n) + c.at(m, n + 1)) * Rat(k);
        return v.is_zero();
    });

    return out;
}

// ---------------------------------------------------------------------------
// Gauge normalization
// ---------------------------------------------------------------------------

struct GaugeResult {
    dsl::LatticeDef normalized;  // a = b on the region
    std::map<int, Rat> phi;      // diagonal gauge x -> phi(m-n) x
};

/// Normalizes coefficient fields to a = b by a diagonal gauge.  Requires the
/// ratio a/b to depend on m-n only; the two free scales (even/odd diagonals)
/// are fixed to 1 at the top.  The transformation is verified by re-evolving
/// a generic sample and comparing with the gauge-mapped original values.
inline GaugeResult gauge_normalize(const dsl::LatticeDef& def, const Rect& rect,
                                   uint64_t seed = kDefaultSeed) {
    const auto& a = def.coeff_field("a");
    const auto& b = def.coeff_field("b");
    const long k = def.k;

    // f on each diagonal, with consistency (and nonvanishing) checks
    std::map<int, Rat> f;
    for (int m = rect.m0 - 1; m <= rect.m1 + 1; ++m) {
        for (int n = rect.n0 - 1; n <= rect.n1 + 1; ++n) {
            Rat av = a.at(m, n), bv = b.at(m, n);
            if (av.is_zero() || bv.is_zero())
                throw Error(ErrorKind::not_gauge_equivalent,
                            "coefficient vanishes at site (" + std::to_string(m) + ", " +
                                std::to_string(n) + ")");
            Rat ratio = av / bv;
            int d = m - n;
            auto it = f.find(d);
            if (it == f.end()) {
                f[d] = ratio;
            } else if (!(it->second == ratio)) {
                throw Error(ErrorKind::not_gauge_equivalent,
                            "a/b does not depend on m-n only (fails at (" + std::to_string(m) +
                                ", " + std::to_string(n) + "))");
            }
        }
    }

    // phi(d-1) = f(d) phi(d+1), anchored to 1 on the two topmost diagonals
    int dmax = rect.m1 + 1 - (rect.n0 - 1);
    int dmin = rect.m0 - 1 - (rect.n1 + 1);
    std::map<int, Rat> phi;
    phi[dmax + 1] = Rat(1);
    phi[dmax] = Rat(1);
    for (int d = dmax - 1; d >= dmin - 1; --d) {
        phi[d] = f.at(d + 1) * phi.at(d + 2);
    }

    // transformed fields: the x below a coefficient sits one diagonal above
    // its consumer, so a'(m,n) = a(m,n) / (phi(m-n-1) phi(m-n)^k), and
    // b'(m,n) = b(m,n) / (phi(m-n+1) phi(m-n)^k)
    GaugeResult res;
    res.normalized = def;
    res.phi = phi;
    auto tabulate = [&](const dsl::CoeffField2D& src, int dshift, long kk) {
        std::map<std::pair<int, int>, Rat> t;
        for (int m = rect.m0 - 1; m <= rect.m1 + 1; ++m) {
            for (int n = rect.n0 - 1; n <= rect.n1 + 1; ++n) {
                int d = m - n;
                t[{m, n}] = src.at(m, n) / (phi.at(d + dshift) * pow(phi.at(d), kk));
            }
        }
        return dsl::CoeffField2D::tabulated(std::move(t));
    };
    res.normalized.coeffs["a"] = tabulate(a, -1, k);
    res.normalized.coeffs["b"] = tabulate(b, +1, k);
    if (def.coeffs.count("c")) res.normalized.coeffs["c"] = tabulate(def.coeff_field("c"), -1, 1);
    if (def.coeffs.count("d")) res.normalized.coeffs["d"] = tabulate(def.coeff_field("d"), +1, 1);

    // a' == b' on the region
    for (int m = rect.m0; m <= rect.m1; ++m) {
        for (int n = rect.n0; n <= rect.n1; ++n) {
            if (!(res.normalized.coeff_field("a").at(m, n) == res.normalized.coeff_field("b").at(m, n)))
                throw Error(ErrorKind::internal, "gauge normalization failed to equalize a and b");
        }
    }

    // verification: evolving the normalized system from gauge-mapped initial
    // data reproduces the gauge-mapped original evolution
    {
        auto path = lshape_path(rect);
        auto orig_init = generic_staircase(path, seed);
        StaircaseInit<Rat> new_init;
        new_init.path = path;
        for (const auto& [s, v] : orig_init.values) new_init.values[s] = v / phi.at(s.m - s.n);
        auto orig = evolve(def, orig_init, rect);
        auto transformed = evolve(res.normalized, new_init, rect);
        for (const Site& s : orig.computed) {
            if (!transformed.has(s)) continue;
            if (!(transformed.at(s) * phi.at(s.m - s.n) == orig.at(s)))
                throw Error(ErrorKind::internal,
                            "gauge verification failed at site " + s.str());
        }
    }
    return res;
}

}  // namespace entropyforge::lattice

#endif
