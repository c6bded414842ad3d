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

#ifndef ENTROPYFORGE_SING_DERIVE_HPP
#define ENTROPYFORGE_SING_DERIVE_HPP

#include <algorithm>
#include <set>

#include "entropyforge/core/symbol_field.hpp"
#include "entropyforge/sing/trace.hpp"

namespace entropyforge::sing {

/// A polynomial vanishing condition among shifted values of one coefficient
/// sequence, in shift-normal form (the lowest shift present is n).
struct Relation {
    std::string coeff_name = "a";
    MultiPoly poly;            // variable i is coeff[n + shifts[i]]
    std::vector<int> shifts;   // per variable index

    bool is_linear() const {
        for (const auto& [m, c] : poly.terms()) {
            int total = 0;
            for (int e : m) total += e;
            if (total != 1) return false;
        }
        return !poly.is_zero();
    }

    bool is_binomial() const { return poly.term_count() == 2; }

    /// Converts to the additive/multiplicative recurrence consumed by the
    /// characteristic-polynomial builder.
    dsl::CoeffConstraint to_constraint() const {
        dsl::CoeffConstraint c;
        c.coeff_name = coeff_name;
        if (is_linear()) {
            c.kind = dsl::CoeffConstraint::Kind::Additive;
            for (const auto& [m, v] : poly.terms()) {
                for (size_t i = 0; i < m.size(); ++i) {
                    if (m[i] == 1) {
                        if (!v.is_integer())
                            throw Error(ErrorKind::internal, "relation coefficients not integral");
                        c.terms.emplace_back(shifts[i], v.num().to_long());
                    }
                }
            }
            return c;
        }
        if (is_binomial()) {
            auto it = poly.terms().begin();
            const auto& [m1, c1] = *it;
            ++it;
            const auto& [m2, c2] = *it;
            if (!((c1 + c2).is_zero()))
                throw Error(ErrorKind::invalid_input,
                            "binomial relation is not convertible to a multiplicative recurrence");
            // m_hi - m_lo exponent differences, signed by which side is positive
            const Monomial& pos = c1.sign() > 0 ? m1 : m2;
            const Monomial& neg = c1.sign() > 0 ? m2 : m1;
            c.kind = dsl::CoeffConstraint::Kind::Multiplicative;
            size_t arity = std::max(pos.size(), neg.size());
            for (size_t i = 0; i < arity; ++i) {
                long e = (i < pos.size() ? pos[i] : 0) - (i < neg.size() ? neg[i] : 0);
                if (e != 0) c.terms.emplace_back(shifts[i], e);
            }
            return c;
        }
        throw Error(ErrorKind::invalid_input,
                    "relation is neither linear nor binomial; no recurrence form");
    }

    std::string str() const {
        std::vector<std::string> names;
        names.reserve(shifts.size());
        for (int s : shifts) {
            std::string idx = s == 0 ? "n" : (s > 0 ? "n+" + std::to_string(s) : "n" + std::to_string(s));
            names.push_back(coeff_name + "[" + idx + "]");
        }
        return poly.str(names) + " == 0";
    }
};

struct DeriveOptions {
    uint64_t seed = kDefaultSeed;
    // symbolic coefficients are expensive; start shallow, the precision
    // doubles automatically when a window runs dry
    int base_prec = 6;
    int max_prec = 512;
    int max_reseeds = 3;
};

struct DeriveResult {
    std::vector<Relation> relations;
    std::vector<long> reference_orders;  // required orders, entry position onward
    int exit_step = 0;
    bool reference_used_zero_coeff = false;  // reference trace took the symbolic term absent
};

namespace derive_detail {

/// Shift-normalizes a relation: variables renumbered so the lowest shift
/// present in the polynomial becomes 0, content/sign canonicalized.
inline Relation normalize(const std::string& name, const MultiPoly& raw,
                          const std::vector<int>& shifts) {
    // collect the shifts that actually occur
    std::set<int> used;
    for (const auto& [m, c] : raw.terms()) {
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) used.insert(shifts[i]);
    }
    Relation r;
    r.coeff_name = name;
    if (used.empty()) return r;
    int base = *used.begin();
    std::vector<int> new_shifts(used.begin(), used.end());
    for (int& s : new_shifts) s -= base;
    // remap monomials
    MultiPoly out;
    std::vector<int> index_of(shifts.size(), -1);
    {
        int k = 0;
        for (int s : used) {
            for (size_t i = 0; i < shifts.size(); ++i)
                if (shifts[i] == s) index_of[i] = k;
            ++k;
        }
    }
    for (const auto& [m, c] : raw.terms()) {
        MultiPoly term(c);
        for (size_t i = 0; i < m.size(); ++i) {
            for (int e = 0; e < m[i]; ++e) term = term * MultiPoly::variable(index_of[i]);
        }
        out += term;
    }
    r.poly = out.normalized_primitive();
    r.shifts = std::move(new_shifts);
    return r;
}

inline bool same_relation(const Relation& a, const Relation& b) {
    return a.coeff_name == b.coeff_name && a.shifts == b.shifts && a.poly == b.poly;
}

}  // namespace derive_detail

/// Derives the coefficient constraints a second-order full-deautonomisation
/// must satisfy for its singularity pattern to match the autonomous one.
/// The symbolic coefficient's window must cover at least twice the autonomous
/// pattern length.
inline DeriveResult derive_coefficient_constraints(const dsl::MappingDef& map,
                                                   const PerturbationSpec& entry = {},
                                                   const DeriveOptions& opt = {}) {
    const int order = map.order();

    // locate the symbolic coefficient
    std::string sym_name;
    int n_symbolic = 0;
    for (const auto& [name, spec] : map.coeffs) {
        if (spec.is_symbolic()) {
            sym_name = name;
            ++n_symbolic;
        }
    }
    if (n_symbolic == 0) {
        // fully numeric: nothing to derive, but the map must confine
        auto tr = confinement_verdict(map);
        if (!tr.pattern.verdict.confined())
            throw Error(ErrorKind::invalid_input,
                        "derive: the mapping does not confine, and has no symbolic coefficient to constrain");
        DeriveResult res;
        res.reference_orders = tr.orders;
        res.exit_step = tr.pattern.verdict.exit_step;
        return res;
    }
    if (n_symbolic > 1)
        throw Error(ErrorKind::invalid_input, "derive: exactly one symbolic coefficient is supported");
    if (order != 2)
        throw Error(ErrorKind::invalid_input,
                    "derive: constraint derivation covers second-order mappings only; higher orders "
                    "are verified, not derived");

    const dsl::CoeffSpec sym_spec = map.coeff_spec(sym_name);
    const int entry_slot = entry.entry_index < 0 ? order - 1 : entry.entry_index;

    // ---- reference trace: the symbolic coefficient replaced by a constant,
    // or by zero when the constant choice does not confine
    auto with_coeff = [&](const Rat& v) {
        dsl::MappingDef m2 = map;
        m2.coeffs[sym_name] = dsl::CoeffSpec::constant(v);
        return m2;
    };
    TraceResult ref;
    bool used_zero = false;
    {
        TraceOptions topt;
        topt.seed = opt.seed;
        topt.bits_budget = size_t(1) << 19;  // reference only needs the basic pattern
        PerturbationSpec ref_entry = entry;
        bool ok = false;
        Rat c0(2);
        try {
            ref = trace_pattern(with_coeff(c0), ref_entry, topt);
            ok = ref.pattern.verdict.confined();
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) {
            ref = trace_pattern(with_coeff(Rat(0)), ref_entry, topt);
            used_zero = true;
            if (!ref.pattern.verdict.confined())
                throw Error(ErrorKind::invalid_input,
                            "derive: no confining autonomous reference for this mapping");
        }
    }
    const int exit_step = ref.pattern.verdict.exit_step;
    // Conditions can only arise while the pattern is being enforced, i.e. up
    // to and including the first post-pattern (exit) step; anything later is
    // an index shift of an earlier condition and is deduplicated anyway.
    // Stopping here also keeps the unreduced symbol-field fractions small.
    const int steps_needed = exit_step;
    const int pattern_len = static_cast<int>(ref.pattern.tokens.size());

    // ---- symbolic window validation
    auto ranges = map.coeff_shift_ranges();
    int smin = 0, smax = 0;
    if (ranges.count(sym_name)) {
        smin = ranges[sym_name].first;
        smax = ranges[sym_name].second;
    }
    // absolute coefficient indices consumed while computing positions
    // 1..steps_needed (entry at absolute index entry_slot)
    int lo_needed = order - map.hi_shift + smin - entry_slot;
    int hi_needed = (entry_slot + steps_needed) - map.hi_shift + smax - entry_slot;
    if (map.singular_entry_coeff && *map.singular_entry_coeff == sym_name) lo_needed = std::min(lo_needed, 0);
    int window_required = 2 * pattern_len;
    if (sym_spec.sym_hi - sym_spec.sym_lo + 1 < window_required || sym_spec.sym_lo > lo_needed ||
        sym_spec.sym_hi < hi_needed) {
        throw Error(ErrorKind::window,
                    "derive: symbolic window [" + std::to_string(sym_spec.sym_lo) + ".." +
                        std::to_string(sym_spec.sym_hi) + "] too small; need at least [" +
                        std::to_string(std::min(lo_needed, sym_spec.sym_lo)) + ".." +
                        std::to_string(std::max(hi_needed, window_required + lo_needed)) +
                        "] covering twice the pattern length (" + std::to_string(window_required) +
                        " indices)");
    }

    // ---- symbol table over the window
    SymbolTable table;
    table.base = sym_name;
    for (int s = sym_spec.sym_lo; s <= sym_spec.sym_hi; ++s) table.shifts.push_back(s);
    auto symbol_at = [&](int shift) {
        int idx = table.index_of(shift);
        if (idx < 0)
            throw Error(ErrorKind::unbound_symbol,
                        "derive: coefficient index outside the symbolic window");
        return SymElem::symbol(idx);
    };

    // entry series: symbol-valued entry for coefficient-entered singularities,
    // otherwise the numeric singular value
    Laurent<SymElem> entry_series = [&] {
        std::vector<SymElem> cs;
        if (map.singular_entry_coeff && *map.singular_entry_coeff == sym_name) {
            cs = {symbol_at(0), SymElem(entry.scale)};
        } else {
            Rat v = entry.value ? *entry.value
                                : (map.singular_entry ? *map.singular_entry : Rat(0));
            cs = {SymElem(v), SymElem(entry.scale)};
        }
        return Laurent<SymElem>(0, cs, true);
    }();

    // ---- symbolic runs with imposition of the vanishing conditions
    auto run_once = [&](uint64_t seed, std::vector<Relation>& rels_out) {
        RandomStream rng(seed);
        std::vector<Rat> exclude = {Rat(0)};
        if (map.singular_entry) exclude.push_back(*map.singular_entry);
        std::vector<Laurent<SymElem>> seq;
        for (int i = 0; i < order; ++i) {
            if (i == entry_slot) {
                seq.push_back(entry_series);
            } else {
                Rat g = rng.next_small_rational(exclude);
                exclude.push_back(g);
                seq.push_back(Laurent<SymElem>(SymElem(g)));
            }
        }
        for (int j = order; j <= entry_slot + steps_needed; ++j) {
            const int n = j - map.hi_shift;
            auto var = [&](int s) -> Laurent<SymElem> { return seq[static_cast<size_t>(n + s)]; };
            auto coeff = [&](const std::string& nm, int s) -> Laurent<SymElem> {
                if (nm == sym_name) return Laurent<SymElem>(symbol_at(n + s - entry_slot));
                return Laurent<SymElem>(SymElem(map.coeff_spec(nm).at(n + s)));
            };
            Laurent<SymElem> next = dsl::eval1d<Laurent<SymElem>>(*map.rhs, var, coeff);

            const int pos = j - entry_slot;
            long required = pos < static_cast<int>(ref.orders.size()) ? ref.orders[static_cast<size_t>(pos)] : 0;
            // impose vanishing of everything below the reference order
            for (;;) {
                auto o = next.order();
                if (!o)
                    throw Error(ErrorKind::precision_exhausted,
                                "derive: series zero to truncation during imposition");
                if (*o >= required) break;
                SymElem c = next.coeff(*o);
                MultiPoly numerator = c.num();
                rels_out.push_back(derive_detail::normalize(sym_name, numerator, table.shifts));
                next = next.with_coeff_zeroed(*o);
            }
            seq.push_back(std::move(next));
        }
        // exit steps must remember the initial data; with one generic slot a
        // direct check: the limit involves that slot's value, verified by the
        // cross-run comparison below
        return seq;
    };

    for (int prec = opt.base_prec; prec <= opt.max_prec; prec *= 2) {
        LaurentPrecGuard guard(prec);
        uint64_t seed_a = opt.seed;
        for (int attempt = 0; attempt <= opt.max_reseeds; ++attempt) {
            uint64_t seed_b = RandomStream(seed_a).next_u64();
            try {
                std::vector<Relation> ra, rb;
                auto seq_a = run_once(seed_a, ra);
                auto seq_b = run_once(seed_b, rb);

                auto dedupe = [](std::vector<Relation>& rs) {
                    std::vector<Relation> out;
                    for (auto& r : rs) {
                        if (r.poly.is_zero()) continue;
                        bool seen = false;
                        for (const auto& o : out)
                            if (derive_detail::same_relation(o, r)) seen = true;
                        if (!seen) out.push_back(std::move(r));
                    }
                    return out;
                };
                ra = dedupe(ra);
                rb = dedupe(rb);
                bool same = ra.size() == rb.size();
                for (size_t i = 0; same && i < ra.size(); ++i)
                    same = derive_detail::same_relation(ra[i], rb[i]);
                if (!same) {
                    seed_a = RandomStream(seed_b).next_u64();
                    continue;
                }

                // exit dependence: the limit at the exit step must differ
                // across the two initializations
                bool dependent = false;
                {
                    size_t idx = static_cast<size_t>(entry_slot + exit_step);
                    if (idx < seq_a.size() && seq_a[idx].order() && *seq_a[idx].order() == 0 &&
                        seq_b[idx].order() && *seq_b[idx].order() == 0) {
                        if (!(seq_a[idx].coeff(0) == seq_b[idx].coeff(0))) dependent = true;
                    }
                }
                if (!dependent && !ra.empty()) {
                    seed_a = RandomStream(seed_b).next_u64();
                    continue;
                }

                DeriveResult res;
                res.relations = std::move(ra);
                res.reference_orders = ref.orders;
                res.exit_step = exit_step;
                res.reference_used_zero_coeff = used_zero;
                return res;
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::precision_exhausted || e.kind() == ErrorKind::singular_series)
                    break;  // deepen
                if (e.kind() == ErrorKind::invalid_input || e.kind() == ErrorKind::degenerate_orbit) {
                    if (attempt == opt.max_reseeds) throw;
                    seed_a = RandomStream(seed_b).next_u64();
                    continue;
                }
                throw;
            }
        }
    }
    throw Error(ErrorKind::precision_exhausted, "derive: precision cap reached");
}

// ---------------------------------------------------------------------------
// verify_constraint
// ---------------------------------------------------------------------------

struct VerifyOptions {
    uint64_t seed = kDefaultSeed;
    int depth = -1;
    int range_margin = 8;
};

struct VerifyResult {
    bool ok = false;
    SingularityPattern compliant_pattern;
    SingularityPattern violating_pattern;
};

namespace verify_detail {

/// Generic rational solution of the recurrence on a finite index range.
inline dsl::CoeffSpec generic_solution(const dsl::CoeffConstraint& c, long lo, long hi,
                                       uint64_t seed) {
    if (c.terms.size() < 2)
        throw Error(ErrorKind::invalid_constraint, "constraint admits no nonzero solution");
    auto terms = c.terms;
    std::sort(terms.begin(), terms.end());
    int smin = terms.front().first, smax = terms.back().first;
    long lead = terms.back().second;
    if (lead == 0) throw Error(ErrorKind::invalid_constraint, "leading coefficient of the recurrence is zero");
    if (c.kind == dsl::CoeffConstraint::Kind::Multiplicative && std::abs(lead) != 1)
        throw Error(ErrorKind::invalid_constraint,
                    "multiplicative constraint with non-unit leading exponent has no generic "
                    "rational solution");

    RandomStream rng(seed);
    int span = smax - smin;
    std::map<long, Rat> vals;
    for (int i = 0; i < span; ++i) vals[lo + i] = rng.next_small_rational();
    for (long n = lo + span; n <= hi; ++n) {
        if (c.kind == dsl::CoeffConstraint::Kind::Additive) {
            Rat acc(0);
            for (const auto& [s, coef] : terms) {
                if (s == smax) continue;
                acc += Rat(coef) * vals[n - smax + s];
            }
            vals[n] = -acc / Rat(lead);
        } else {
            Rat acc(1);
            for (const auto& [s, coef] : terms) {
                if (s == smax) continue;
                acc *= pow(vals[n - smax + s], coef);
            }
            vals[n] = pow(acc, -lead);  // lead is +-1
            if (vals[n].is_zero())
                throw Error(ErrorKind::invalid_constraint, "constraint forced a zero coefficient");
        }
    }
    std::vector<Rat> seq;
    for (long n = lo; n <= hi; ++n) {
        if (vals[n].is_zero()) throw Error(ErrorKind::degenerate_orbit, "solution hit zero");
        seq.push_back(vals[n]);
    }
    return dsl::CoeffSpec::tabulated(std::move(seq), static_cast<int>(lo));
}

/// A random sequence that genuinely violates the recurrence somewhere.
inline dsl::CoeffSpec violating_sequence(const dsl::CoeffConstraint& c, long lo, long hi,
                                         uint64_t seed) {
    RandomStream rng(seed);
    for (int tries = 0; tries < 16; ++tries) {
        std::vector<Rat> seq;
        for (long n = lo; n <= hi; ++n) seq.push_back(rng.next_small_rational());
        // check violation at some index
        auto terms = c.terms;
        int smin = c.terms.front().first, smax = c.terms.front().first;
        for (const auto& [s, coef] : c.terms) {
            smin = std::min(smin, s);
            smax = std::max(smax, s);
        }
        bool violates = false;
        for (long n = lo - smin; n + smax <= hi; ++n) {
            if (c.kind == dsl::CoeffConstraint::Kind::Additive) {
                Rat acc(0);
                for (const auto& [s, coef] : c.terms) acc += Rat(coef) * seq[static_cast<size_t>(n + s - lo)];
                if (!acc.is_zero()) violates = true;
            } else {
                Rat acc(1);
                for (const auto& [s, coef] : c.terms) acc *= pow(seq[static_cast<size_t>(n + s - lo)], coef);
                if (!(acc == Rat(1))) violates = true;
            }
        }
        if (violates) return dsl::CoeffSpec::tabulated(std::move(seq), static_cast<int>(lo));
    }
    throw Error(ErrorKind::invalid_constraint, "could not construct a violating sequence");
}

}  // namespace verify_detail

/// True iff a generic solution of the constraint confines and a generic
/// violation does not.
inline VerifyResult verify_constraint(const dsl::MappingDef& map, const dsl::CoeffConstraint& constraint,
                                      const VerifyOptions& opt = {}) {
    const int order = map.order();
    const int depth = opt.depth > 0 ? opt.depth : 6 * order + 12;

    // coefficient index range consumed by a trace of this depth
    auto ranges = map.coeff_shift_ranges();
    if (!ranges.count(constraint.coeff_name))
        throw Error(ErrorKind::invalid_input,
                    "verify_constraint: coefficient \"" + constraint.coeff_name +
                        "\" does not occur in the mapping");
    long lo = order - map.hi_shift + ranges[constraint.coeff_name].first - opt.range_margin;
    long hi = order + depth - map.hi_shift + ranges[constraint.coeff_name].second + opt.range_margin;

    auto substituted = [&](const dsl::CoeffSpec& spec) {
        dsl::MappingDef m2 = map;
        m2.coeffs[constraint.coeff_name] = spec;
        // rebuild coefficients that are defined pointwise from this one
        for (const auto& rule : map.derived_coeffs) {
            if (rule.source != constraint.coeff_name) continue;
            std::vector<Rat> dv;
            long margin = 0;
            for (const auto& [s, cr] : rule.terms) margin = std::max(margin, static_cast<long>(std::abs(s)));
            for (long n = lo + margin; n <= hi - margin; ++n) dv.push_back(rule.eval(spec, n));
            m2.coeffs[rule.target] = dsl::CoeffSpec::tabulated(std::move(dv), static_cast<int>(lo + margin));
        }
        return m2;
    };

    TraceOptions topt;
    topt.seed = opt.seed;
    topt.depth = depth;

    auto trace_with = [&](const dsl::CoeffSpec& spec) {
        dsl::MappingDef m2 = substituted(spec);
        PerturbationSpec entry;  // entry value resolves through singular_entry_coeff when set
        return trace_pattern(m2, entry, topt);
    };

    VerifyResult res;
    auto good = verify_detail::generic_solution(constraint, lo, hi, opt.seed);
    auto tr_good = trace_with(good);
    res.compliant_pattern = tr_good.pattern;

    auto bad = verify_detail::violating_sequence(constraint, lo, hi, RandomStream(opt.seed).next_u64());
    auto tr_bad = trace_with(bad);
    res.violating_pattern = tr_bad.pattern;

    res.ok = tr_good.pattern.verdict.confined() && !tr_bad.pattern.verdict.confined();
    return res;
}

}  // namespace entropyforge::sing

#endif
