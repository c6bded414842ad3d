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

#ifndef ENTROPYFORGE_LATTICE_REDUCE_HPP
#define ENTROPYFORGE_LATTICE_REDUCE_HPP

#include "entropyforge/dsl/families.hpp"
#include "entropyforge/lattice/grid.hpp"

namespace entropyforge::lattice {

/// Result of the periodic reduction x[m, n+l] = x[m+1, n]: an order-(l+1)
/// mapping plus the explicit index bijection j = l*m + n used to read 1D
/// slices off the lattice.
struct ReducedMapping {
    dsl::MappingDef map;
    long k = 0;
    long ell = 0;

    long index_of(Site s) const { return ell * s.m + s.n; }
};

namespace reduce_detail {

/// 1D coefficient sequence equivalent to a reduction-compatible 2D field.
inline dsl::CoeffSpec reduce_field(const dsl::CoeffField2D& f, long l) {
    using K = dsl::CoeffField2D::Kind;
    switch (f.kind) {
        case K::Constant: return dsl::CoeffSpec::constant(f.value);
        case K::PeriodicN: {
            long p = static_cast<long>(f.values.size());
            if (l % p != 0)
                throw Error(ErrorKind::invalid_input,
                            "coefficient field incompatible with the reduction: period " +
                                std::to_string(p) + " does not divide l");
            return dsl::CoeffSpec::periodic(f.values);
        }
        case K::PeriodicDiff: {
            long p = static_cast<long>(f.values.size());
            if ((l + 1) % p != 0)
                throw Error(ErrorKind::invalid_input,
                            "coefficient field incompatible with the reduction: diagonal period " +
                                std::to_string(p) + " does not divide l+1");
            // value depends on (m-n) mod p == (-j) mod p with j = l m + n
            std::vector<Rat> seq;
            for (long j = 0; j < p; ++j) seq.push_back(f.values[static_cast<size_t>(((-j) % p + p) % p)]);
            return dsl::CoeffSpec::periodic(std::move(seq));
        }
        case K::Tabulated: {
            // verify compatibility on the table and key values by j = l m + n
            std::map<long, Rat> by_index;
            for (const auto& [mn, v] : f.table) {
                long j = l * mn.first + mn.second;
                auto it = by_index.find(j);
                if (it == by_index.end()) {
                    by_index[j] = v;
                } else if (!(it->second == v)) {
                    throw Error(ErrorKind::invalid_input,
                                "coefficient field incompatible with the reduction: table values "
                                "disagree along the identification");
                }
            }
            if (by_index.empty())
                throw Error(ErrorKind::invalid_input, "empty coefficient table");
            long lo = by_index.begin()->first, hi = by_index.rbegin()->first;
            std::vector<Rat> seq;
            for (long j = lo; j <= hi; ++j) {
                auto it = by_index.find(j);
                if (it == by_index.end())
                    throw Error(ErrorKind::invalid_input,
                                "coefficient table leaves gaps along the identification");
                seq.push_back(it->second);
            }
            return dsl::CoeffSpec::tabulated(std::move(seq), static_cast<int>(lo));
        }
        default:
            throw Error(ErrorKind::invalid_input,
                        "coefficient field incompatible with the reduction");
    }
}

}  // namespace reduce_detail

/// Lifts a 1D coefficient sequence to the reduction-compatible lattice field
/// a(m, n) = seq(l*m + n), tabulated over the rectangle (plus a margin).
inline dsl::CoeffField2D lattice_field_from_sequence(const dsl::CoeffSpec& seq, long l,
                                                     const Rect& rect, int margin = 2) {
    std::map<std::pair<int, int>, Rat> t;
    for (int m = rect.m0 - margin; m <= rect.m1 + margin; ++m) {
        for (int n = rect.n0 - margin; n <= rect.n1 + margin; ++n) {
            t[{m, n}] = seq.at(l * m + n);
        }
    }
    return dsl::CoeffField2D::tabulated(std::move(t));
}

/// Reduces the power-k lattice equation under x[m, n+l] = x[m+1, n] to the
/// order-(l+1) mapping, carrying over the coefficient fields (which must be
/// compatible with the identification) and attaching the known constraints.
inline ReducedMapping reduce_to_mapping(const dsl::LatticeDef& def, long l, bool full = false) {
    if (l < 2)
        throw Error(ErrorKind::invalid_input,
                    "reduce_to_mapping requires l >= 2: for l = 1 the two coefficient terms "
                    "coincide and the singularity structure changes");
    bool is_kmt = def.family == "kmt_lattice" || def.family == "kmt_full";
    if (!is_kmt)
        throw Error(ErrorKind::invalid_input,
                    "reduce_to_mapping supports the power-k lattice families only");
    if (full && def.family != "kmt_full")
        throw Error(ErrorKind::invalid_input, "full reduction requires the fully deautonomised lattice");

    long k = def.k;
    std::map<std::string, Rat> params = {{"k", Rat(k)}, {"l", Rat(l)}};
    ReducedMapping out;
    out.k = k;
    out.ell = l;
    out.map = dsl::builtin_mapping(full ? "kmt_reduction_full" : "kmt_reduction", params);
    // carry the lattice's own coefficient choices through the identification
    out.map.coeffs["a"] = reduce_detail::reduce_field(def.coeff_field("a"), l);
    if (full) {
        out.map.coeffs["c"] = reduce_detail::reduce_field(def.coeff_field("c"), l);
        out.map.coeffs["d"] = reduce_detail::reduce_field(def.coeff_field("d"), l);
    }
    return out;
}

/// KdV reduction x[m+p, n] = x[m, n+q] realized as a 1D mapping.  The case
/// p = q = 1 is rejected: its singularity pattern collapses entirely and the
/// degree analysis does not apply.
inline dsl::MappingDef kdv_reduction_mapping(int p, int q, const Rat& a = Rat(1),
                                             const Rat& b = Rat(1)) {
    if (p < 1 || q < 1)
        throw Error(ErrorKind::invalid_input, "kdv reduction requires positive p and q");
    if (p == 1 && q == 1)
        throw Error(ErrorKind::invalid_input,
                    "kdv reduction with p = q = 1 is rejected: the singularity pattern collapses");
    int P = p + q - 1, Q = q - 1, R = p - 1;
    auto idx = [](int s) {
        return s == 0 ? std::string("n") : "n+" + std::to_string(s);
    };
    std::string text = "x[" + idx(P) + "] = x[n-1] + a[" + idx(Q) + "]/x[" + idx(Q) + "] - b[" +
                       idx(R) + "]/x[" + idx(R) + "]\na: const 1\nb: const 1";
    dsl::MappingDef def = dsl::parse_mapping_1d(text);
    def.coeffs["a"] = dsl::CoeffSpec::constant(a);
    def.coeffs["b"] = dsl::CoeffSpec::constant(b);
    def.family = "kdv_reduction";
    def.params = {{"p", Rat(p)}, {"q", Rat(q)}};
    def.singular_entry = Rat(0);
    return def;
}

// ---------------------------------------------------------------------------
// Orbits and the conserved quantity
// ---------------------------------------------------------------------------

/// Iterates the mapping on plain field values.
inline std::vector<Rat> iterate_values(const dsl::MappingDef& map, std::vector<Rat> window,
                                       int count) {
    const int order = map.order();
    if (static_cast<int>(window.size()) != order)
        throw Error(ErrorKind::invalid_input, "iterate_values: window size must equal the order");
    std::vector<Rat> orbit = window;
    for (int j = order; j < order + count; ++j) {
        const int n = j - map.hi_shift;
        auto var = [&](int s) -> Rat { return orbit[static_cast<size_t>(n + s)]; };
        auto coeff = [&](const std::string& nm, int s) -> Rat { return map.coeff_spec(nm).at(n + s); };
        orbit.push_back(dsl::eval1d<Rat>(*map.rhs, var, coeff));
    }
    return orbit;
}

/// Generic orbit of the mapping from seeded initial data, reseeding away from
/// exact singularities.
inline std::vector<Rat> generic_orbit(const dsl::MappingDef& map, int count,
                                      uint64_t seed = kDefaultSeed, int max_reseeds = 5) {
    for (int attempt = 0;; ++attempt) {
        RandomStream rng(seed);
        std::vector<Rat> exclude = {Rat(0)};
        if (map.singular_entry) exclude.push_back(*map.singular_entry);
        std::vector<Rat> window;
        for (int i = 0; i < map.order(); ++i) window.push_back(rng.next_small_rational(exclude));
        try {
            return iterate_values(map, std::move(window), count);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::invalid_input || attempt >= max_reseeds)
                throw Error(ErrorKind::degenerate_orbit, e.what());
            seed = RandomStream(seed).next_u64();
        }
    }
}

/// The alternating-sum first integral of the even-order reductions:
///   Q_n = (-1)^n [ sum_{j=0}^{l} (-1)^j x_{n+j-1}
///                  - sum_{j=0}^{l-2} (-1)^j a_{n+j} / x_{n+j}^k ].
/// Q is exactly constant along orbits; the list of values is returned so the
/// caller can assert it.
inline std::vector<Rat> conserved_quantity(const dsl::MappingDef& map, const std::vector<Rat>& orbit) {
    if (!map.params.count("k") || !map.params.count("l") || !map.coeffs.count("a"))
        throw Error(ErrorKind::invalid_input,
                    "conserved_quantity: mapping must be a power-k reduction with parameters k, l");
    long k = map.params.at("k").num().to_long();
    long l = map.params.at("l").num().to_long();
    if (l % 2 != 0)
        throw Error(ErrorKind::invalid_input,
                    "conserved_quantity: defined for even l only (odd l was rejected)");
    if (static_cast<long>(orbit.size()) < l + 2)
        throw Error(ErrorKind::insufficient_data, "conserved_quantity: orbit shorter than l + 2");
    const auto& a = map.coeff_spec("a");

    std::vector<Rat> out;
    // orbit[i] is x_i; Q_n needs x_{n-1} .. x_{n+l-1}
    for (long n = 1; n + l - 1 < static_cast<long>(orbit.size()); ++n) {
        Rat acc(0);
        for (long j = 0; j <= l; ++j) {
            Rat term = orbit[static_cast<size_t>(n + j - 1)];
            acc += (j % 2 == 0) ? term : -term;
        }
        for (long j = 0; j + 2 <= l; ++j) {
            const Rat& x = orbit[static_cast<size_t>(n + j)];
            if (x.is_zero()) throw Error(ErrorKind::degenerate_orbit, "singular orbit value");
            Rat term = a.at(n + j) / pow(x, k);
            acc -= (j % 2 == 0) ? term : -term;
        }
        out.push_back(n % 2 == 0 ? acc : -acc);
    }
    return out;
}

}  // namespace entropyforge::lattice

#endif
