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

#ifndef ENTROPYFORGE_SPECTRAL_CLASSIFY_HPP
#define ENTROPYFORGE_SPECTRAL_CLASSIFY_HPP

#include <cmath>
#include <string>

#include "entropyforge/io/format.hpp"
#include "entropyforge/spectral/roots.hpp"

namespace entropyforge::spectral {

/// Root-based classification of an integer characteristic polynomial.
/// Everything that can be decided exactly is decided exactly: the palindrome
/// test, the integer trace of a quadratic factor, root multiplicities (via
/// square-free decomposition).  Numerics only enter through root moduli.
struct RootClassification {
    std::vector<Root> roots;
    double largest_root_modulus = 0;
    double dynamical_degree = 0;
    double entropy = 0;

    bool reciprocal = false;            // palindromic or anti-palindromic, exact
    bool all_roots_of_unity = false;    // Kronecker criterion at unit_tol
    bool quadratic_reciprocal = false;  // largest root's minimal factor is L^2 - tL + 1
    bool salem = false;
    bool pisot = false;
    bool none_of_these = false;

    bool monic_after_content = true;
    long quadratic_trace = 0;  // t, when quadratic_reciprocal
    std::string note;
    double unit_tol = 1e-9;
};

namespace classify_detail {

/// Exact divisibility of p by the monic quadratic L^2 - tL + 1.
inline bool divisible_by_quadratic(const IntPoly& p, long t) {
    ZPoly q{Int(1), Int(-t), Int(1)};
    return zx::divexact_checked(p.c, q).has_value();
}

}  // namespace classify_detail

inline RootClassification classify(const IntPoly& p, double unit_tol = 1e-9,
                                   double root_tol = 1e-12) {
    if (p.degree() < 1) throw Error(ErrorKind::invalid_input, "classify: degree must be >= 1");
    RootClassification rc;
    rc.unit_tol = unit_tol;
    rc.reciprocal = p.is_reciprocal();

    IntPoly q = p.primitive();
    rc.monic_after_content = q.is_monic();

    rc.roots = find_roots(q, root_tol);
    for (const auto& r : rc.roots) rc.largest_root_modulus = std::max(rc.largest_root_modulus, std::abs(r.value));
    rc.dynamical_degree = rc.largest_root_modulus;
    rc.entropy = rc.largest_root_modulus > 0 ? std::log(rc.largest_root_modulus) : 0.0;

    if (!rc.monic_after_content) {
        rc.none_of_these = true;
        rc.note = "polynomial is not monic after content removal; integer-root classes do not apply";
        return rc;
    }

    int borderline = 0;
    for (const auto& r : rc.roots) {
        double m = std::abs(r.value);
        if (std::abs(m - 1.0) <= unit_tol && std::abs(m - 1.0) > 0) ++borderline;
    }
    if (borderline > 0) {
        rc.note = std::to_string(borderline) +
                  " root(s) inside the unit-modulus tolerance band were treated as on the circle";
    }

    // Kronecker criterion: monic, nonzero constant term, all moduli <= 1+tol
    bool nonzero_const = !q.c.empty() && !q.c.front().is_zero();
    rc.all_roots_of_unity = nonzero_const && rc.largest_root_modulus <= 1.0 + unit_tol;

    // the largest real root, if any
    const Root* lead = nullptr;
    for (const auto& r : rc.roots) {
        if (r.value.imag() == 0 && r.value.real() > 1.0) {
            if (!lead || r.value.real() > lead->value.real()) lead = &r;
        }
    }

    if (!rc.all_roots_of_unity && lead) {
        double lam = lead->value.real();
        // quadratic-factor probe: integer trace candidates near lam + 1/lam
        double that = lam + 1.0 / lam;
        long t = std::lround(that);
        if (std::abs(that - static_cast<double>(t)) < 1e-6 &&
            classify_detail::divisible_by_quadratic(q, t)) {
            rc.quadratic_reciprocal = true;
            rc.quadratic_trace = t;
        }

        if (!rc.quadratic_reciprocal && rc.reciprocal) {
            // Salem test: reciprocal of the lead present, everything else on the circle
            bool recip_present = false;
            bool others_on_circle = true;
            int on_circle = 0;
            for (const auto& r : rc.roots) {
                if (&r == lead) continue;
                double m = std::abs(r.value);
                if (std::abs(m * lam - 1.0) <= unit_tol * lam && r.value.imag() == 0) {
                    recip_present = true;
                    continue;
                }
                if (std::abs(m - 1.0) <= unit_tol) {
                    ++on_circle;
                } else {
                    others_on_circle = false;
                }
            }
            rc.salem = recip_present && others_on_circle && on_circle >= 1 && lead->multiplicity == 1;
        }

        if (!rc.salem) {
            // Pisot test: exactly one root outside the closed unit disc, real,
            // all the others strictly inside
            int outside = 0;
            bool others_inside = true;
            for (const auto& r : rc.roots) {
                double m = std::abs(r.value);
                if (m > 1.0) {
                    outside += r.multiplicity;
                } else if (&r != lead && m >= 1.0 - unit_tol) {
                    others_inside = false;
                }
            }
            rc.pisot = outside == 1 && lead->multiplicity == 1 && others_inside;
        }
    }

    rc.none_of_these = !(rc.all_roots_of_unity || rc.quadratic_reciprocal || rc.salem || rc.pisot);
    return rc;
}

inline std::string classification_to_json(const IntPoly& p, const RootClassification& rc) {
    std::string out = "{\n  \"schemaVersion\": 1,\n  \"coefficients\": [";
    for (size_t i = 0; i < p.c.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + p.c[i].str() + "\"";
    }
    out += "],\n  \"roots\": [";
    for (size_t i = 0; i < rc.roots.size(); ++i) {
        const Root& r = rc.roots[i];
        if (i) out += ",";
        out += "\n    {\"re\": " + fmt_double(r.value.real()) + ", \"im\": " + fmt_double(r.value.imag()) +
               ", \"modulus\": " + fmt_double(std::abs(r.value)) +
               ", \"multiplicity\": " + std::to_string(r.multiplicity) +
               ", \"errorBound\": " + fmt_double(r.error_bound) + "}";
    }
    out += "\n  ],\n";
    out += "  \"largestRootModulus\": " + fmt_double(rc.largest_root_modulus) + ",\n";
    out += "  \"dynamicalDegree\": " + fmt_double(rc.dynamical_degree) + ",\n";
    out += "  \"entropy\": " + fmt_double(rc.entropy) + ",\n";
    out += "  \"flags\": {";
    out += "\"reciprocal\": " + std::string(rc.reciprocal ? "true" : "false");
    out += ", \"allRootsOfUnity\": " + std::string(rc.all_roots_of_unity ? "true" : "false");
    out += ", \"quadraticReciprocal\": " + std::string(rc.quadratic_reciprocal ? "true" : "false");
    out += ", \"salem\": " + std::string(rc.salem ? "true" : "false");
    out += ", \"pisot\": " + std::string(rc.pisot ? "true" : "false");
    out += ", \"noneOfThese\": " + std::string(rc.none_of_these ? "true" : "false");
    out += "},\n";
    out += "  \"unitTolerance\": " + fmt_double(rc.unit_tol);
    if (!rc.note.empty()) out += ",\n  \"note\": \"" + json_escape(rc.note) + "\"";
    out += "\n}\n";
    return out;
}

}  // namespace entropyforge::spectral

#endif
