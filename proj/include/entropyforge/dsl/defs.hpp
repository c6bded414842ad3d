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

#ifndef ENTROPYFORGE_DSL_DEFS_HPP
#define ENTROPYFORGE_DSL_DEFS_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "entropyforge/dsl/coeff.hpp"
#include "entropyforge/dsl/expr.hpp"

namespace entropyforge::dsl {

/// A linear or multiplicative recurrence a coefficient sequence must satisfy
/// for singularities to confine.  Additive: sum of coef * a[n+shift] == 0.
/// Multiplicative: product of a[n+shift]^coef == 1.
struct CoeffConstraint {
    enum class Kind { Additive, Multiplicative };
    Kind kind = Kind::Additive;
    std::string coeff_name = "a";
    std::vector<std::pair<int, long>> terms;  // (shift, coefficient-or-exponent)

    std::string str() const {
        std::string out;
        for (const auto& [s, c] : terms) {
            if (!out.empty()) out += kind == Kind::Additive ? " + " : " * ";
            std::string idx = s == 0 ? "n" : (s > 0 ? "n+" + std::to_string(s) : "n" + std::to_string(s));
            if (kind == Kind::Additive) {
                out += std::to_string(c) + "*" + coeff_name + "[" + idx + "]";
            } else {
                out += coeff_name + "[" + idx + "]^" + std::to_string(c);
            }
        }
        out += kind == Kind::Additive ? " == 0" : " == 1";
        return out;
    }
};

/// One coefficient sequence defined pointwise from another:
/// target[n] = sum of coef * source[n+shift].
struct DerivedCoeffRule {
    std::string target = "d";
    std::string source = "c";
    std::vector<std::pair<int, Rat>> terms;

    Rat eval(const CoeffSpec& source_spec, long n) const {
        Rat v(0);
        for (const auto& [s, c] : terms) v += c * source_spec.at(n + s);
        return v;
    }
};

/// Parsed 1D recurrence in explicit-update form: x[n+hi_shift] = rhs, with
/// rhs over shifted iterates x[n+j] (lo_shift <= j < hi_shift), coefficient
/// symbols, and rational constants.  Shifts are normalized so the lowest one
/// is x[n-1].
struct MappingDef {
    int hi_shift = 1;
    int lo_shift = -1;
    ExprPtr rhs;
    std::map<std::string, CoeffSpec> coeffs;

    // family metadata
    std::string family;
    std::map<std::string, Rat> params;
    std::vector<CoeffConstraint> constraints;
    std::vector<DerivedCoeffRule> derived_coeffs;
    std::optional<Rat> singular_entry;  // iterate value that enters the basic singularity
    std::optional<std::string> singular_entry_coeff;  // when the singular value is a coefficient

    int order() const { return hi_shift - lo_shift; }

    const CoeffSpec& coeff_spec(const std::string& name) const {
        auto it = coeffs.find(name);
        if (it == coeffs.end())
            throw Error(ErrorKind::unbound_symbol, "no coefficient spec bound for \"" + name + "\"");
        return it->second;
    }

    bool has_symbolic_coeff() const {
        for (const auto& [k, v] : coeffs)
            if (v.is_symbolic()) return true;
        return false;
    }

    /// Shift range of each coefficient symbol as used in the rhs.
    std::map<std::string, std::pair<int, int>> coeff_shift_ranges() const {
        std::map<std::string, std::pair<int, int>> r;
        visit(rhs, [&](const Expr& e) {
            if (e.kind != Expr::Kind::Coeff) return;
            auto it = r.find(e.name);
            if (it == r.end()) {
                r[e.name] = {e.shift, e.shift};
            } else {
                it->second.first = std::min(it->second.first, e.shift);
                it->second.second = std::max(it->second.second, e.shift);
            }
        });
        return r;
    }
};

/// Parsed quad-lattice rule: x[m,n] = rhs over the three southwestern
/// neighbours x[m-1,n-1], x[m,n-1], x[m-1,n] and 2D coefficient fields,
/// evolving in the northeastern direction.
struct LatticeDef {
    ExprPtr rhs;
    int k = 1;  // exponent parameter of the 1/x^k terms, when the family has one
    std::map<std::string, CoeffField2D> coeffs;

    std::string family;
    std::map<std::string, Rat> params;

    const CoeffField2D& coeff_field(const std::string& name) const {
        auto it = coeffs.find(name);
        if (it == coeffs.end())
            throw Error(ErrorKind::unbound_symbol, "no coefficient field bound for \"" + name + "\"");
        return it->second;
    }
};

using ParsedDef = std::variant<MappingDef, LatticeDef>;

// ---------------------------------------------------------------------------
// Pretty printer (canonical text; reparses to a structurally identical def)
// ---------------------------------------------------------------------------

namespace detail {

inline std::string idx1(int shift) {
    if (shift == 0) return "n";
    if (shift > 0) return "n+" + std::to_string(shift);
    return "n" + std::to_string(shift);
}

inline std::string idx2(int dm, int dn) {
    auto one = [](const char* base, int d) {
        std::string s(base);
        if (d > 0) s += "+" + std::to_string(d);
        if (d < 0) s += std::to_string(d);
        return s;
    };
    return one("m", dm) + "," + one("n", dn);
}

inline int prec_of(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

inline std::string print_expr(const ExprPtr& e, int parent_prec = 0) {
    int my = prec_of(e->kind);
    std::string s;
    switch (e->kind) {
        case Expr::Kind::Number: {
            s = e->number.str();
            if (e->number.sign() < 0 || !e->number.is_integer()) my = 2;  // may need parens
            break;
        }
        case Expr::Kind::Var: s = "x[" + idx1(e->shift) + "]"; break;
        case Expr::Kind::Var2D: s = "x[" + idx2(e->dm, e->dn) + "]"; break;
        case Expr::Kind::Coeff: s = e->name + "[" + idx1(e->shift) + "]"; break;
        case Expr::Kind::Coeff2D: s = e->name + "[" + idx2(e->dm, e->dn) + "]"; break;
        case Expr::Kind::Add: s = print_expr(e->a, 1) + " + " + print_expr(e->b, 2); break;
        case Expr::Kind::Sub: s = print_expr(e->a, 1) + " - " + print_expr(e->b, 2); break;
        case Expr::Kind::Mul: s = print_expr(e->a, 2) + "*" + print_expr(e->b, 3); break;
        case Expr::Kind::Div: s = print_expr(e->a, 2) + "/" + print_expr(e->b, 3); break;
        case Expr::Kind::Neg: s = "-" + print_expr(e->a, 3); break;
        case Expr::Kind::Pow: s = print_expr(e->a, 4) + "^" + std::to_string(e->expo); break;
    }
    if (my < parent_prec) s = "(" + s + ")";
    return s;
}

inline std::string print_spec(const CoeffSpec& s) {
    switch (s.kind) {
        case CoeffSpec::Kind::Constant: return "const " + s.value.str();
        case CoeffSpec::Kind::Periodic: {
            std::string out = "periodic(";
            for (size_t i = 0; i < s.values.size(); ++i) {
                if (i) out += ", ";
                out += s.values[i].str();
            }
            return out + ")";
        }
        case CoeffSpec::Kind::Tabulated: {
            std::string out = "values@" + std::to_string(s.table_start) + "(";
            for (size_t i = 0; i < s.values.size(); ++i) {
                if (i) out += ", ";
                out += s.values[i].str();
            }
            return out + ")";
        }
        case CoeffSpec::Kind::Symbolic:
            return "symbolic(" + std::to_string(s.sym_lo) + ".." + std::to_string(s.sym_hi) + ")";
    }
    return "";
}

inline std::string print_field(const CoeffField2D& f) {
    auto list = [&] {
        std::string out = "(";
        for (size_t i = 0; i < f.values.size(); ++i) {
            if (i) out += ", ";
            out += f.values[i].str();
        }
        return out + ")";
    };
    switch (f.kind) {
        case CoeffField2D::Kind::Constant: return "const " + f.value.str();
        case CoeffField2D::Kind::PeriodicM: return "periodic@m" + list();
        case CoeffField2D::Kind::PeriodicN: return "periodic@n" + list();
        case CoeffField2D::Kind::PeriodicDiff: return "periodic@m-n" + list();
        case CoeffField2D::Kind::PeriodicSum: return "periodic@m+n" + list();
        case CoeffField2D::Kind::Tabulated: {
            std::string out = "grid";
            for (const auto& [mn, v] : f.table) {
                out += " " + std::to_string(mn.first) + "," + std::to_string(mn.second) + "=" + v.str();
            }
            return out;
        }
    }
    return "";
}

}  // namespace detail

inline std::string to_text(const MappingDef& d) {
    std::string out = "x[" + detail::idx1(d.hi_shift) + "] = " + detail::print_expr(d.rhs);
    for (const auto& [name, spec] : d.coeffs) {
        out += "\n" + name + ": " + detail::print_spec(spec);
    }
    return out;
}

inline std::string to_text(const LatticeDef& d) {
    std::string out = "x[m,n] = " + detail::print_expr(d.rhs);
    for (const auto& [name, f] : d.coeffs) {
        out += "\n" + name + ": " + detail::print_field(f);
    }
    return out;
}

inline std::string to_text(const ParsedDef& d) {
    return std::holds_alternative<MappingDef>(d) ? to_text(std::get<MappingDef>(d))
                                                 : to_text(std::get<LatticeDef>(d));
}

}  // namespace entropyforge::dsl

#endif
