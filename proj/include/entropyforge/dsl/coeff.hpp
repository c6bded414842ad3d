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

#ifndef ENTROPYFORGE_DSL_COEFF_HPP
#define ENTROPYFORGE_DSL_COEFF_HPP

#include <map>
#include <string>
#include <vector>

#include "entropyforge/core/rational.hpp"
#include "entropyforge/errors.hpp"

namespace entropyforge::dsl {

/// Nonautonomous coefficient sequence for 1D recurrences.  Sign-pattern
/// choices (k consecutive values of one sign followed by k of the other) are
/// encoded as explicit periodic lists.
struct CoeffSpec {
    enum class Kind { Constant, Periodic, Tabulated, Symbolic };

    Kind kind = Kind::Constant;
    Rat value = Rat(1);          // Constant
    std::vector<Rat> values;     // Periodic (nonempty) / Tabulated
    int table_start = 0;         // Tabulated: index of values[0]
    int sym_lo = 0, sym_hi = 0;  // Symbolic window, inclusive

    static CoeffSpec constant(Rat v) {
        CoeffSpec s;
        s.kind = Kind::Constant;
        s.value = std::move(v);
        return s;
    }
    static CoeffSpec periodic(std::vector<Rat> vs) {
        if (vs.empty()) throw Error(ErrorKind::invalid_input, "periodic coefficient list is empty");
        CoeffSpec s;
        s.kind = Kind::Periodic;
        s.values = std::move(vs);
        return s;
    }
    /// base, -base in alternating runs of `run` values: the sign-pattern choice.
    static CoeffSpec sign_pattern(const Rat& base, int run) {
        if (run < 1) throw Error(ErrorKind::invalid_input, "sign pattern run must be positive");
        std::vector<Rat> vs;
        vs.reserve(2 * static_cast<size_t>(run));
        for (int i = 0; i < run; ++i) vs.push_back(base);
        for (int i = 0; i < run; ++i) vs.push_back(-base);
        return periodic(std::move(vs));
    }
    static CoeffSpec tabulated(std::vector<Rat> vs, int start) {
        CoeffSpec s;
        s.kind = Kind::Tabulated;
        s.values = std::move(vs);
        s.table_start = start;
        return s;
    }
    static CoeffSpec symbolic(int lo, int hi) {
        if (lo > hi) throw Error(ErrorKind::invalid_input, "symbolic window is empty");
        CoeffSpec s;
        s.kind = Kind::Symbolic;
        s.sym_lo = lo;
        s.sym_hi = hi;
        return s;
    }

    bool is_symbolic() const { return kind == Kind::Symbolic; }
    bool is_numeric() const { return kind != Kind::Symbolic; }

    /// Value at index n; periodic specs wrap exactly, tabulated and symbolic
    /// specs are bounded.
    Rat at(long n) const {
        switch (kind) {
            case Kind::Constant: return value;
            case Kind::Periodic: {
                long p = static_cast<long>(values.size());
                long i = ((n % p) + p) % p;
                return values[static_cast<size_t>(i)];
            }
            case Kind::Tabulated: {
                long i = n - table_start;
                if (i < 0 || i >= static_cast<long>(values.size()))
                    throw Error(ErrorKind::unbound_symbol,
                                "tabulated coefficient has no value at index " + std::to_string(n));
                return values[static_cast<size_t>(i)];
            }
            case Kind::Symbolic:
                throw Error(ErrorKind::unbound_symbol,
                            "symbolic coefficient cannot be evaluated numerically at index " +
                                std::to_string(n));
        }
        throw Error(ErrorKind::internal, "CoeffSpec: bad kind");
    }

    bool operator==(const CoeffSpec& o) const {
        return kind == o.kind && value == o.value && values == o.values &&
               table_start == o.table_start && sym_lo == o.sym_lo && sym_hi == o.sym_hi;
    }
};

/// Realizes a spec on a finite index interval [lo, hi].
inline std::vector<Rat> instantiate_coefficients(const CoeffSpec& spec, long lo, long hi) {
    if (hi < lo) throw Error(ErrorKind::invalid_input, "instantiate_coefficients: empty range");
    std::vector<Rat> out;
    out.reserve(static_cast<size_t>(hi - lo + 1));
    for (long n = lo; n <= hi; ++n) out.push_back(spec.at(n));
    return out;
}

/// Coefficient field over the (m, n) lattice.  Everything the analysis needs
/// is constant, periodic in one of m, n, m-n, m+n (checkerboards included),
/// or an explicitly tabulated grid.
struct CoeffField2D {
    enum class Kind { Constant, PeriodicM, PeriodicN, PeriodicDiff, PeriodicSum, Tabulated };

    Kind kind = Kind::Constant;
    Rat value = Rat(1);
    std::vector<Rat> values;
    std::map<std::pair<int, int>, Rat> table;

    static CoeffField2D constant(Rat v) {
        CoeffField2D f;
        f.kind = Kind::Constant;
        f.value = std::move(v);
        return f;
    }
    static CoeffField2D periodic(Kind axis, std::vector<Rat> vs) {
        if (vs.empty()) throw Error(ErrorKind::invalid_input, "periodic coefficient list is empty");
        CoeffField2D f;
        f.kind = axis;
        f.values = std::move(vs);
        return f;
    }
    static CoeffField2D tabulated(std::map<std::pair<int, int>, Rat> t) {
        CoeffField2D f;
        f.kind = Kind::Tabulated;
        f.table = std::move(t);
        return f;
    }
    template <class Fn>
    static CoeffField2D tabulate(int m0, int m1, int n0, int n1, const Fn& fn) {
        std::map<std::pair<int, int>, Rat> t;
        for (int m = m0; m <= m1; ++m)
            for (int n = n0; n <= n1; ++n) t[{m, n}] = fn(m, n);
        return tabulated(std::move(t));
    }

    Rat at(int m, int n) const {
        auto wrap = [this](long i) {
            long p = static_cast<long>(values.size());
            return values[static_cast<size_t>(((i % p) + p) % p)];
        };
        switch (kind) {
            case Kind::Constant: return value;
            case Kind::PeriodicM: return wrap(m);
            case Kind::PeriodicN: return wrap(n);
            case Kind::PeriodicDiff: return wrap(static_cast<long>(m) - n);
            case Kind::PeriodicSum: return wrap(static_cast<long>(m) + n);
            case Kind::Tabulated: {
                auto it = table.find({m, n});
                if (it == table.end())
                    throw Error(ErrorKind::unbound_symbol, "coefficient undefined at site (" +
                                                               std::to_string(m) + ", " +
                                                               std::to_string(n) + ")");
                return it->second;
            }
        }
        throw Error(ErrorKind::internal, "CoeffField2D: bad kind");
    }

    bool operator==(const CoeffField2D& o) const {
        return kind == o.kind && value == o.value && values == o.values && table == o.table;
    }
};

}  // namespace entropyforge::dsl

#endif
