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

#ifndef ENTROPYFORGE_SING_TRACE_HPP
#define ENTROPYFORGE_SING_TRACE_HPP

#include <functional>

#include "entropyforge/core/laurent.hpp"
#include "entropyforge/core/random_stream.hpp"
#include "entropyforge/dsl/defs.hpp"
#include "entropyforge/sing/pattern.hpp"

namespace entropyforge::sing {

struct TraceOptions {
    int depth = -1;  // computed steps; -1 picks 6*order + 12
    uint64_t seed = kDefaultSeed;
    int base_prec = kDefaultLaurentPrec;
    int max_prec = 512;
    int max_reseeds = 3;
    int phase = 0;  // shifts all coefficient lookups: patterns depend only on phase mod period
    // Growth guard per iterate.  Exact coefficients of regular stretches grow
    // geometrically; once an orbit has shown its singular structure and still
    // outgrows this budget without a confinement window, the verdict is
    // nonconfined at the observed depth.
    size_t bits_budget = size_t(1) << 23;
};

struct TraceResult {
    SingularityPattern pattern;
    std::vector<long> orders;      // per position >= 0 (entry onward); order 0 for regular steps
    std::vector<Rat> exit_limits;  // limits of the confined window (empty otherwise)
    std::vector<Rat> initial_values;  // the generic initial data of the first run
    int order = 0;                    // mapping order
};

namespace trace_detail {

template <class F>
size_t value_bits(const Laurent<F>& s) {
    if constexpr (std::is_same_v<F, Rat>) {
        if (!s.order()) return 0;
        size_t bits = 0;
        long top = s.is_exact() ? s.trunc() : s.trunc();
        for (long k = s.lo(); k < top; ++k) {
            Rat c = s.coeff(k);
            bits += c.num().bits() + c.den().bits();
        }
        return bits;
    } else {
        return 0;
    }
}

/// Incrementally grown orbit of Laurent iterates for one initialization.
template <class F>
struct Orbit {
    const dsl::MappingDef* map;
    std::function<F(const std::string&, long)> coeff_at;
    std::vector<Laurent<F>> seq;  // absolute positions: 0..order-1 initial, then computed
    size_t bits_budget = size_t(1) << 24;

    void step() {
        const int j = static_cast<int>(seq.size());
        const int n = j - map->hi_shift;
        auto var = [&](int s) -> Laurent<F> { return seq[static_cast<size_t>(n + s)]; };
        auto coeff = [&](const std::string& nm, int s) -> Laurent<F> {
            return Laurent<F>(coeff_at(nm, n + s));
        };
        Laurent<F> next = dsl::eval1d<Laurent<F>>(*map->rhs, var, coeff);
        if (value_bits(next) > bits_budget)
            throw Error(ErrorKind::resource,
                        "trace: iterate size exceeds the growth budget; the orbit neither confines "
                        "nor re-enters a singularity");
        seq.push_back(std::move(next));
    }

    /// Order of the iterate at an absolute position, stepping as needed.
    long order_at(size_t idx) {
        while (seq.size() <= idx) step();
        if (seq[idx].is_exact_zero())
            throw Error(ErrorKind::degenerate_orbit, "orbit value is identically zero");
        auto o = seq[idx].order();
        if (!o)
            throw Error(ErrorKind::precision_exhausted,
                        "iterate is zero to truncation; deeper precision needed");
        return *o;
    }

    Rat limit_at(size_t idx) {
        while (seq.size() <= idx) step();
        return seq[idx].coeff(0);
    }
};

}  // namespace trace_detail

/// Laurent-series singularity trace of a 1D mapping.  The perturbed slot is
/// set to value + scale*eps; the remaining initial slots take generic
/// rationals.  Confinement is decided by the two-initialization test: a
/// window of `order` consecutive order-zero steps whose limits differ across
/// independent generic initializations.  The trace stops as soon as the
/// verdict is decided, which keeps exact coefficient growth bounded.
inline TraceResult trace_pattern(const dsl::MappingDef& map, const PerturbationSpec& entry = {},
                                 const TraceOptions& opt = {}) {
    const int order = map.order();
    const int entry_slot = entry.entry_index < 0 ? order - 1 : entry.entry_index;
    if (entry_slot < 0 || entry_slot >= order)
        throw Error(ErrorKind::invalid_input, "trace_pattern: entry index outside the initial window");
    std::optional<Rat> value = entry.value;
    if (!value && map.singular_entry_coeff) {
        const auto& spec = map.coeff_spec(*map.singular_entry_coeff);
        if (spec.is_numeric()) value = spec.at(entry_slot + opt.phase);
    }
    if (!value) value = map.singular_entry;
    if (!value)
        throw Error(ErrorKind::invalid_input,
                    "trace_pattern: no singular entry value known for this mapping; specify one");
    if (entry.scale.is_zero()) throw Error(ErrorKind::invalid_input, "trace_pattern: scale must be nonzero");
    const int depth = opt.depth > 0 ? opt.depth : 6 * order + 12;
    if (depth < order) throw Error(ErrorKind::invalid_input, "trace_pattern: depth below mapping order");

    std::vector<Rat> entry_coeffs = {*value, entry.scale};
    Laurent<Rat> entry_series(0, entry_coeffs, true);

    auto coeff_at = [&map, phase = opt.phase](const std::string& nm, long n) -> Rat {
        return map.coeff_spec(nm).at(n + phase);
    };

    auto draw = [&](uint64_t s) {
        RandomStream rng(s);
        std::vector<Rat> exclude = {*value};
        if (map.singular_entry) exclude.push_back(*map.singular_entry);
        std::vector<Rat> out;
        for (int i = 0; i + 1 < order; ++i) {
            Rat r = rng.next_small_rational(exclude);
            exclude.push_back(r);
            out.push_back(r);
        }
        return out;
    };

    auto make_orbit = [&](const std::vector<Rat>& generic) {
        trace_detail::Orbit<Rat> orb;
        orb.map = &map;
        orb.coeff_at = coeff_at;
        orb.bits_budget = opt.bits_budget;
        size_t gi = 0;
        for (int i = 0; i < order; ++i) {
            if (i == entry_slot)
                orb.seq.push_back(entry_series);
            else
                orb.seq.push_back(Laurent<Rat>(generic[gi++]));
        }
        return orb;
    };

    for (int prec = opt.base_prec; prec <= opt.max_prec; prec *= 2) {
        LaurentPrecGuard guard(prec);
        uint64_t seed_a = opt.seed;
        for (int attempt = 0; attempt <= opt.max_reseeds; ++attempt) {
            uint64_t seed_b = RandomStream(seed_a).next_u64();
            uint64_t seed_c = RandomStream(seed_b ^ 0x5bd1e995u).next_u64();
            std::vector<Rat> ga = draw(seed_a), gb = draw(seed_b);
            try {
                auto orb_a = make_orbit(ga);
                auto orb_b = make_orbit(gb);
                std::optional<trace_detail::Orbit<Rat>> orb_c;

                auto dependent = [&](size_t idx) -> bool {
                    if (!(orb_a.limit_at(idx) == orb_b.limit_at(idx))) return true;
                    if (!orb_c) orb_c = make_orbit(draw(seed_c));
                    return !(orb_a.limit_at(idx) == orb_c->limit_at(idx));
                };

                const int last_pos = (order - 1 - entry_slot) + depth;
                std::vector<long> orders;
                orders.reserve(static_cast<size_t>(last_pos) + 1);
                int last_singular = -1;
                bool mismatch = false;
                bool budget_hit = false;
                std::optional<int> confined_at;

                for (int p = 0; p <= last_pos && !mismatch && !confined_at; ++p) {
                    size_t idx = static_cast<size_t>(entry_slot + p);
                    long oa, ob;
                    try {
                        oa = orb_a.order_at(idx);
                        ob = orb_b.order_at(idx);
                    } catch (const Error& e) {
                        if (e.kind() == ErrorKind::resource && last_singular >= 0) {
                            budget_hit = true;
                            break;
                        }
                        throw;
                    }
                    if (oa != ob) {
                        mismatch = true;
                        break;
                    }
                    orders.push_back(oa);
                    if (oa != 0) last_singular = p;
                    // earliest full window of regular, data-dependent steps
                    // strictly after the last singular position
                    int w = p - order + 1;
                    if (w > last_singular && w >= 0) {
                        bool ok = true;
                        try {
                            for (int t = 0; t < order && ok; ++t) {
                                int q = w + t;
                                if (orders[static_cast<size_t>(q)] != 0 ||
                                    !dependent(static_cast<size_t>(entry_slot + q)))
                                    ok = false;
                            }
                        } catch (const Error& e) {
                            if (e.kind() != ErrorKind::resource) throw;
                            budget_hit = true;
                            break;
                        }
                        if (ok) confined_at = w;
                    }
                }
                (void)budget_hit;  // folded into the nonconfined verdict below
                if (mismatch) {
                    seed_a = RandomStream(seed_b).next_u64();
                    continue;  // non-generic data: order structures must agree
                }

                TraceResult res;
                res.order = order;
                res.initial_values = ga;
                res.orders = orders;

                int first_singular = -1;
                for (size_t p = 0; p < orders.size(); ++p) {
                    if (orders[p] != 0) {
                        first_singular = static_cast<int>(p);
                        break;
                    }
                }
                if (first_singular < 0) {
                    res.pattern.verdict = {Verdict::Kind::Collapsed, -1, depth};
                    return res;
                }
                res.pattern.pattern_start = first_singular;
                for (int p = first_singular; p <= last_singular; ++p) {
                    long o = orders[static_cast<size_t>(p)];
                    if (o > 0)
                        res.pattern.tokens.push_back(Token::zero(o));
                    else if (o < 0)
                        res.pattern.tokens.push_back(Token::pole(-o));
                    else
                        res.pattern.tokens.push_back(Token::finite());
                }
                if (confined_at) {
                    res.pattern.verdict = {Verdict::Kind::Confined, *confined_at, depth};
                    for (int t = 0; t < order; ++t)
                        res.exit_limits.push_back(
                            orb_a.limit_at(static_cast<size_t>(entry_slot + *confined_at + t)));
                } else {
                    res.pattern.verdict = {Verdict::Kind::Nonconfined, -1, depth};
                }
                return res;
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::precision_exhausted || e.kind() == ErrorKind::singular_series) {
                    break;  // deepen the working precision
                }
                if (e.kind() == ErrorKind::invalid_input || e.kind() == ErrorKind::degenerate_orbit) {
                    if (attempt == opt.max_reseeds) {
                        // structurally singular for every generic choice: the
                        // pattern has degenerated
                        TraceResult res;
                        res.order = order;
                        res.pattern.verdict = {Verdict::Kind::Collapsed, -1, depth};
                        return res;
                    }
                    seed_a = RandomStream(seed_b).next_u64();
                    continue;
                }
                throw;
            }
        }
    }
    throw Error(ErrorKind::precision_exhausted,
                "trace_pattern: precision cap reached without a classifiable trace");
}

/// Convenience wrapper: verdict and pattern for the basic entry
/// x = singular value + eps.
inline TraceResult confinement_verdict(const dsl::MappingDef& map, int depth = -1,
                                       uint64_t seed = kDefaultSeed) {
    TraceOptions opt;
    opt.depth = depth;
    opt.seed = seed;
    return trace_pattern(map, {}, opt);
}

}  // namespace entropyforge::sing

#endif
