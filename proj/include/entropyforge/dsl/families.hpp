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

#ifndef ENTROPYFORGE_DSL_FAMILIES_HPP
#define ENTROPYFORGE_DSL_FAMILIES_HPP

#include <string>
#include <vector>

#include "entropyforge/dsl/parser.hpp"

namespace entropyforge::dsl {

/// Named equation families.  Each carries confinement-compatible default
/// coefficients, the known coefficient constraint, and the iterate value at
/// which its basic singularity is entered.
inline std::vector<std::string> builtin_family_names() {
    return {"qrt_example", "mult_example",  "hv",           "hv_full",          "kdv_lattice",
            "kmt_lattice", "kmt_full",      "kmt_reduction", "kmt_reduction_full"};
}

namespace family_detail {

inline Rat param(const std::map<std::string, Rat>& params, const std::string& name, Rat def) {
    auto it = params.find(name);
    return it == params.end() ? def : it->second;
}

inline long int_param(const std::map<std::string, Rat>& params, const std::string& name, long def) {
    auto it = params.find(name);
    if (it == params.end()) return def;
    if (!it->second.is_integer())
        throw Error(ErrorKind::invalid_input, "parameter " + name + " must be an integer");
    return it->second.num().to_long();
}

inline void require_kmt_exponent(long k) {
    if (k < 2)
        throw Error(ErrorKind::invalid_input,
                    "kmt families require k >= 2 (k = 1 is the gauge-equivalent lattice KdV case)");
}

inline void require_reduction_order(long l) {
    if (l < 2)
        throw Error(ErrorKind::invalid_input,
                    "kmt_reduction requires l >= 2: for l = 1 the two coefficient terms coincide "
                    "and the singularity structure changes");
}

/// Default a-sequence satisfying a[n+l+1] = (-1)^k a[n].
inline CoeffSpec default_reduction_coeff(long k, long l) {
    if (k % 2 == 0) return CoeffSpec::constant(Rat(1));
    if (l % 2 == 1) return CoeffSpec::sign_pattern(Rat(1), static_cast<int>(l) + 1);
    return CoeffSpec::periodic({Rat(1), Rat(-1)});
}

inline CoeffConstraint reduction_constraint(long k, long l, const std::string& name) {
    CoeffConstraint c;
    c.kind = CoeffConstraint::Kind::Additive;
    c.coeff_name = name;
    long sign = k % 2 == 0 ? 1 : -1;
    c.terms = {{static_cast<int>(l) + 1, 1}, {0, -sign}};
    return c;
}

/// The five-term relation obeyed by the added-term coefficient after
/// reduction, as an additive recurrence.
inline CoeffConstraint full_deauto_constraint(long k, long l) {
    CoeffConstraint c;
    c.kind = CoeffConstraint::Kind::Additive;
    c.coeff_name = "c";
    int L = static_cast<int>(l);
    c.terms = {{L + 1, 1}, {0, 2}, {-L - 1, 1}, {1, -k}, {-L, -k}, {L, -k}, {-1, -k}};
    return c;
}

inline DerivedCoeffRule full_deauto_d_rule(long k, long l) {
    DerivedCoeffRule r;
    r.target = "d";
    r.source = "c";
    int L = static_cast<int>(l);
    r.terms = {{L, Rat(1, k)}, {-L, Rat(1, k)}, {L - 1, Rat(-1)}};
    return r;
}

}  // namespace family_detail

inline ParsedDef builtin_family(const std::string& name, const std::map<std::string, Rat>& params = {}) {
    using namespace family_detail;

    if (name == "qrt_example") {
        Rat a = param(params, "a", Rat(1));
        if (a.is_zero()) throw Error(ErrorKind::invalid_input, "qrt_example requires a != 0");
        MappingDef def = parse_mapping_1d("x[n+1]*x[n-1] = 1 - a[n]/x[n]\na: const 1");
        def.coeffs["a"] = CoeffSpec::constant(a);
        def.family = name;
        def.params = params;
        def.singular_entry = a;
        def.singular_entry_coeff = "a";
        CoeffConstraint c;
        c.kind = CoeffConstraint::Kind::Multiplicative;
        c.coeff_name = "a";
        c.terms = {{3, 1}, {-2, 1}, {2, -1}, {-1, -1}};
        def.constraints = {c};
        return def;
    }

    if (name == "mult_example") {
        Rat a = param(params, "a", Rat(1));
        if (a.is_zero()) throw Error(ErrorKind::invalid_input, "mult_example requires a != 0");
        MappingDef def = parse_mapping_1d("x[n+1]*x[n-1] = x[n] - a[n]^2/x[n]\na: const 1");
        def.coeffs["a"] = CoeffSpec::constant(a);
        def.family = name;
        def.params = params;
        def.singular_entry = a;
        def.singular_entry_coeff = "a";
        CoeffConstraint c;
        c.kind = CoeffConstraint::Kind::Multiplicative;
        c.coeff_name = "a";
        c.terms = {{3, 2}, {-3, 2}, {2, -4}, {-2, -4}};
        def.constraints = {c};
        return def;
    }

    if (name == "hv") {
        MappingDef def = parse_mapping_1d("x[n+1] + x[n-1] = x[n] + 1/x[n]^2");
        def.family = name;
        def.singular_entry = Rat(0);
        return def;
    }

    if (name == "hv_full") {
        MappingDef def = parse_mapping_1d("x[n+1] + x[n-1] = x[n] + a[n]/x[n] + 1/x[n]^2\na: const 1");
        def.coeffs["a"] = CoeffSpec::periodic({Rat(1), Rat(-1)});
        def.family = name;
        def.params = params;
        def.singular_entry = Rat(0);
        CoeffConstraint c;
        c.kind = CoeffConstraint::Kind::Additive;
        c.coeff_name = "a";
        c.terms = {{3, 1}, {2, -2}, {1, -2}, {0, 1}};
        def.constraints = {c};
        return def;
    }

    if (name == "kdv_lattice") {
        LatticeDef def =
            parse_lattice(
            "x[m,n] = x[m-1,n-1] + a[m,n-1]/x[m,n-1] - b[m-1,n]/x[m-1,n]\n"
            "a: const 1\nb: const 1");
        def.k = 1;
        def.coeffs["a"] = CoeffField2D::constant(param(params, "a", Rat(1)));
        def.coeffs["b"] = CoeffField2D::constant(param(params, "b", Rat(1)));
        def.family = name;
        def.params = params;
        return def;
    }

    if (name == "kmt_lattice" || name == "kmt_full") {
        long k = int_param(params, "k", 2);
        require_kmt_exponent(k);
        std::string ks = std::to_string(k);
        std::string text;
        if (name == "kmt_lattice") {
            text = "x[m,n] = -x[m-1,n-1] + a[m,n-1]/x[m,n-1]^" + ks + " + b[m-1,n]/x[m-1,n]^" + ks +
                   "\na: const 1\nb: const 1";
        } else {
            text = "x[m,n] = -x[m-1,n-1] + a[m,n-1]/x[m,n-1]^" + ks + " + a[m-1,n]/x[m-1,n]^" + ks +
                   " + c[m,n-1]/x[m,n-1] + d[m-1,n]/x[m-1,n]" +
                   "\na: const 1\nc: const 1\nd: const 1";
        }
        LatticeDef def = parse_lattice(text);
        def.k = static_cast<int>(k);
        CoeffField2D ab = k % 2 == 0 ? CoeffField2D::constant(Rat(1))
                                     : CoeffField2D::periodic(CoeffField2D::Kind::PeriodicN,
                                                              {Rat(1), Rat(-1)});
        def.coeffs["a"] = ab;
        if (name == "kmt_lattice") def.coeffs["b"] = ab;
        if (name == "kmt_full") {
            CoeffField2D cd =
                CoeffField2D::periodic(CoeffField2D::Kind::PeriodicN, {Rat(1), Rat(-1)});
            def.coeffs["c"] = cd;
            def.coeffs["d"] = cd;
        }
        def.family = name;
        def.params = params;
        return def;
    }

    if (name == "kmt_reduction" || name == "kmt_reduction_full") {
        long k = int_param(params, "k", 2);
        long l = int_param(params, "l", 2);
        require_kmt_exponent(k);
        require_reduction_order(l);
        bool violate = int_param(params, "violate_constraint", 0) != 0;
        std::string ks = std::to_string(k);
        std::string ls = std::to_string(l);
        std::string lm1 = std::to_string(l - 1);
        std::string text = "x[n+" + ls + "] = -x[n-1] + a[n+" + lm1 + "]/x[n+" + lm1 + "]^" + ks +
                           " + a[n]/x[n]^" + ks;
        if (name == "kmt_reduction_full") {
            text += " + c[n+" + lm1 + "]/x[n+" + lm1 + "] + d[n]/x[n]";
            text += "\nc: const 1\nd: const 1";
        }
        text += "\na: const 1";
        MappingDef def = parse_mapping_1d(text);
        def.coeffs["a"] = violate ? CoeffSpec::constant(Rat(1)) : default_reduction_coeff(k, l);
        def.family = name;
        def.params = params;
        def.singular_entry = Rat(0);
        def.constraints = {reduction_constraint(k, l, "a")};
        if (name == "kmt_reduction_full") {
            CoeffSpec c = CoeffSpec::sign_pattern(Rat(1), static_cast<int>(l) + 1);
            DerivedCoeffRule rule = full_deauto_d_rule(k, l);
            long period = 2 * (l + 1);
            std::vector<Rat> dvals;
            dvals.reserve(static_cast<size_t>(period));
            for (long n = 0; n < period; ++n) dvals.push_back(rule.eval(c, n));
            def.coeffs["c"] = c;
            def.coeffs["d"] = CoeffSpec::periodic(std::move(dvals));
            def.constraints.push_back(full_deauto_constraint(k, l));
            def.derived_coeffs = {rule};
        }
        return def;
    }

    throw Error(ErrorKind::invalid_input, "unknown builtin family \"" + name + "\"");
}

inline MappingDef builtin_mapping(const std::string& name,
                                  const std::map<std::string, Rat>& params = {}) {
    ParsedDef d = builtin_family(name, params);
    if (!std::holds_alternative<MappingDef>(d))
        throw Error(ErrorKind::invalid_input, "family \"" + name + "\" is a lattice equation");
    return std::get<MappingDef>(d);
}

inline LatticeDef builtin_lattice(const std::string& name,
                                  const std::map<std::string, Rat>& params = {}) {
    ParsedDef d = builtin_family(name, params);
    if (!std::holds_alternative<LatticeDef>(d))
        throw Error(ErrorKind::invalid_input, "family \"" + name + "\" is a 1D mapping");
    return std::get<LatticeDef>(d);
}

}  // namespace entropyforge::dsl

#endif
