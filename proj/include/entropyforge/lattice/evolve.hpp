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

#ifndef ENTROPYFORGE_LATTICE_EVOLVE_HPP
#define ENTROPYFORGE_LATTICE_EVOLVE_HPP

#include "entropyforge/core/laurent.hpp"
#include "entropyforge/core/random_stream.hpp"
#include "entropyforge/io/format.hpp"
#include "entropyforge/lattice/grid.hpp"
#include "entropyforge/sing/pattern.hpp"

namespace entropyforge::lattice {

/// Evolves the lattice rule northeast of the staircase over the given
/// rectangle, sweeping anti-diagonals in dependency order.
template <class V>
LatticeState<V> evolve(const dsl::LatticeDef& def, const StaircaseInit<V>& init, const Rect& rect) {
    init.validate();
    LatticeState<V> state;
    state.def = def;
    state.values = init.values;

    int dlo = rect.m0 + rect.n0, dhi = rect.m1 + rect.n1;
    for (int d = dlo; d <= dhi; ++d) {
        for (int m = rect.m0; m <= rect.m1; ++m) {
            int n = d - m;
            Site s{m, n};
            if (n < rect.n0 || n > rect.n1 || state.values.count(s)) continue;
            Site sw{m - 1, n - 1}, so{m, n - 1}, we{m - 1, n};
            if (state.unresolved.count(sw) || state.unresolved.count(so) || state.unresolved.count(we)) {
                state.unresolved.insert(s);
                continue;
            }
            if (!state.values.count(sw) || !state.values.count(so) || !state.values.count(we)) {
                continue;  // outside the staircase's shadow
            }
            auto var = [&](int dm, int dn) -> V { return state.values.at({m + dm, n + dn}); };
            auto coeff = [&](const std::string& nm, int dm, int dn) -> V {
                return V::from_rational(def.coeff_field(nm).at(m + dm, n + dn));
            };
            try {
                state.values.emplace(s, dsl::eval2d<V>(*def.rhs, var, coeff));
                state.computed.insert(s);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::invalid_input) {
                    state.unresolved.insert(s);  // exact zero divisor at this site
                } else {
                    throw Error(e.kind(), std::string(e.what()) + " at site " + s.str());
                }
            }
        }
    }
    return state;
}

/// Generic staircase values drawn from a deterministic stream.
inline StaircaseInit<Rat> generic_staircase(const std::vector<Site>& path, uint64_t seed,
                                            const std::vector<Rat>& exclude = {}) {
    StaircaseInit<Rat> init;
    init.path = path;
    RandomStream rng(seed);
    std::vector<Rat> ex = exclude;
    ex.push_back(Rat(0));
    for (const Site& s : path) init.values[s] = rng.next_small_rational(ex);
    return init;
}

// ---------------------------------------------------------------------------
// 2D singularity tracing
// ---------------------------------------------------------------------------

struct LatticeTraceOptions {
    uint64_t seed = kDefaultSeed;
    int base_prec = kDefaultLaurentPrec;
    int max_prec = 256;
    int max_reseeds = 3;
    int frontier_margin = 2;  // clear anti-diagonals required beyond the pattern
};

struct LatticeTraceResult {
    std::map<Site, sing::Token> grid;  // per computed site (and seed sites)
    sing::Verdict verdict;
    int frontier = 0;  // last anti-diagonal carrying a singular site
};

/// Traces the singularity seeded at staircase sites (value scale * eps each)
/// through the rectangle.  Orders follow from exact Laurent bookkeeping; the
/// verdict is confined when every site beyond the pattern's northeastern
/// frontier is order-zero and remembers the initial data (two independent
/// initializations, third to break ties).
inline LatticeTraceResult trace_lattice_singularity(const dsl::LatticeDef& def,
                                                    const std::vector<Site>& path,
                                                    const std::vector<std::pair<Site, Rat>>& seeds,
                                                    const Rect& rect,
                                                    const LatticeTraceOptions& opt = {}) {
    using LS = Laurent<Rat>;
    for (const auto& [site, scale] : seeds) {
        bool on_path = false;
        for (const Site& p : path) on_path = on_path || p == site;
        if (!on_path)
            throw Error(ErrorKind::invalid_input, "seed site " + site.str() + " is not on the staircase");
        if (scale.is_zero()) throw Error(ErrorKind::invalid_input, "seed scale must be nonzero");
    }

    auto build = [&](uint64_t seed) {
        StaircaseInit<LS> init;
        init.path = path;
        RandomStream rng(seed);
        for (const Site& s : path) {
            bool seeded = false;
            for (const auto& [site, scale] : seeds) {
                if (site == s) {
                    init.values[s] = LS(1, scale);  // scale * eps
                    seeded = true;
                }
            }
            if (!seeded) init.values[s] = LS(rng.next_small_rational());
        }
        return init;
    };

    for (int prec = opt.base_prec; prec <= opt.max_prec; prec *= 2) {
        LaurentPrecGuard guard(prec);
        uint64_t seed_a = opt.seed;
        for (int attempt = 0; attempt <= opt.max_reseeds; ++attempt) {
            uint64_t seed_b = RandomStream(seed_a).next_u64();
            try {
                auto state_a = evolve(def, build(seed_a), rect);
                auto state_b = evolve(def, build(seed_b), rect);
                if (!state_a.unresolved.empty())
                    throw Error(ErrorKind::degenerate_orbit, "exact zero during lattice trace");

                LatticeTraceResult res;
                int frontier = std::numeric_limits<int>::min();
                bool need_deepen = false;
                for (const Site& s : state_a.computed) {
                    auto oa = state_a.at(s).order();
                    auto ob = state_b.at(s).order();
                    if (!oa || !ob) {
                        need_deepen = true;
                        break;
                    }
                    if (*oa != *ob) throw Error(ErrorKind::degenerate_orbit, "order mismatch across runs");
                    long o = *oa;
                    if (o > 0)
                        res.grid[s] = sing::Token::zero(o);
                    else if (o < 0)
                        res.grid[s] = sing::Token::pole(-o);
                    else
                        res.grid[s] = sing::Token::finite();
                    if (o != 0) frontier = std::max(frontier, s.m + s.n);
                }
                if (need_deepen) break;  // deepen precision
                for (const auto& [site, scale] : seeds) res.grid[site] = sing::Token::zero(1);

                std::optional<StaircaseInit<LS>> init_c;
                std::optional<LatticeState<LS>> state_c;
                auto dependent = [&](const Site& s) {
                    if (!(state_a.at(s).coeff(0) == state_b.at(s).coeff(0))) return true;
                    if (!state_c) {
                        uint64_t seed_c = RandomStream(seed_b ^ 0x9e3779b9u).next_u64();
                        state_c = evolve(def, build(seed_c), rect);
                    }
                    return !(state_a.at(s).coeff(0) == state_c->at(s).coeff(0));
                };

                if (frontier == std::numeric_limits<int>::min()) {
                    // no singular site at all: the pattern collapsed
                    res.verdict = {sing::Verdict::Kind::Collapsed, -1, 0};
                    return res;
                }
                res.frontier = frontier;
                int last_diag = rect.m1 + rect.n1;
                if (frontier + opt.frontier_margin > last_diag) {
                    res.verdict = {sing::Verdict::Kind::Nonconfined, -1, last_diag - frontier};
                    return res;
                }
                bool all_regular_dependent = true;
                for (const Site& s : state_a.computed) {
                    if (s.m + s.n <= frontier) continue;
                    const auto& tok = res.grid.at(s);
                    if (tok.singular() || !dependent(s)) {
                        all_regular_dependent = false;
                        break;
                    }
                    res.grid[s] = sing::Token::regular();
                }
                res.verdict = all_regular_dependent
                                  ? sing::Verdict{sing::Verdict::Kind::Confined, frontier + 1, 0}
                                  : sing::Verdict{sing::Verdict::Kind::Nonconfined, -1, 0};
                return res;
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::precision_exhausted || e.kind() == ErrorKind::singular_series)
                    break;
                if (e.kind() == ErrorKind::degenerate_orbit || e.kind() == ErrorKind::invalid_input) {
                    if (attempt == opt.max_reseeds) throw;
                    seed_a = RandomStream(seed_b).next_u64();
                    continue;
                }
                throw;
            }
        }
    }
    throw Error(ErrorKind::precision_exhausted, "lattice trace: precision cap reached");
}

// ---------------------------------------------------------------------------
// Exports
// ---------------------------------------------------------------------------

inline std::string state_to_csv(const LatticeState<Rat>& state) {
    std::string out = "m,n,value\n";
    for (const auto& [s, v] : state.values) {
        out += std::to_string(s.m) + "," + std::to_string(s.n) + "," + v.str() + "\n";
    }
    return out;
}

inline std::string grid_to_csv(const LatticeTraceResult& res) {
    std::string out = "m,n,token\n";
    for (const auto& [s, t] : res.grid) {
        out += std::to_string(s.m) + "," + std::to_string(s.n) + "," + t.str() + "\n";
    }
    return out;
}

inline std::string grid_to_json(const LatticeTraceResult& res) {
    std::string out = "{\n  \"schemaVersion\": 1,\n  \"sites\": [";
    bool first = true;
    for (const auto& [s, t] : res.grid) {
        if (!first) out += ",";
        first = false;
        out += "\n    {\"m\": " + std::to_string(s.m) + ", \"n\": " + std::to_string(s.n) +
               ", \"token\": \"" + t.str() + "\"}";
    }
    out += "\n  ],\n  \"verdict\": \"" + res.verdict.str() + "\"\n}\n";
    return out;
}

}  // namespace entropyforge::lattice

#endif
