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

#ifndef ENTROPYFORGE_LATTICE_GRID_HPP
#define ENTROPYFORGE_LATTICE_GRID_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "entropyforge/dsl/defs.hpp"

namespace entropyforge::lattice {

struct Site {
    int m = 0, n = 0;
    friend bool operator<(const Site& a, const Site& b) {
        return a.m != b.m ? a.m < b.m : a.n < b.n;
    }
    friend bool operator==(const Site& a, const Site& b) { return a.m == b.m && a.n == b.n; }
    std::string str() const { return "(" + std::to_string(m) + ", " + std::to_string(n) + ")"; }
};

struct Rect {
    int m0 = 0, m1 = 0, n0 = 0, n1 = 0;
    bool contains(Site s) const { return s.m >= m0 && s.m <= m1 && s.n >= n0 && s.n <= n1; }
    int width() const { return m1 - m0 + 1; }
    int height() const { return n1 - n0 + 1; }
};

/// Monotone staircase from northwest to southeast: each step moves east
/// (m+1) or south (n-1).  Values are prescribed on every path site.
template <class V>
struct StaircaseInit {
    std::vector<Site> path;
    std::map<Site, V> values;

    void validate() const {
        if (path.empty()) throw Error(ErrorKind::invalid_input, "staircase path is empty");
        for (size_t i = 1; i < path.size(); ++i) {
            int dm = path[i].m - path[i - 1].m;
            int dn = path[i].n - path[i - 1].n;
            bool east = dm == 1 && dn == 0;
            bool south = dm == 0 && dn == -1;
            if (!east && !south)
                throw Error(ErrorKind::invalid_input,
                            "staircase must move east or south at every step (site " +
                                path[i].str() + ")");
        }
        for (const Site& s : path) {
            if (!values.count(s))
                throw Error(ErrorKind::invalid_input, "staircase site " + s.str() + " has no value");
        }
    }
};

/// The standard double-diagonal staircase along anti-diagonal c: sites
/// (m, c-m) and (m, c-m-1) for m in [mlo, mhi].
inline std::vector<Site> zigzag_path(int c, int mlo, int mhi) {
    std::vector<Site> out;
    for (int m = mlo; m <= mhi; ++m) {
        out.push_back({m, c - m});
        out.push_back({m, c - m - 1});
    }
    return out;
}

/// L-shaped staircase covering the southwestern boundary of a rectangle:
/// the column m0-1 from n1 down to n0-1, then the row n0-1 east to m1.
inline std::vector<Site> lshape_path(const Rect& r) {
    std::vector<Site> out;
    for (int n = r.n1; n >= r.n0 - 1; --n) out.push_back({r.m0 - 1, n});
    for (int m = r.m0; m <= r.m1; ++m) out.push_back({m, r.n0 - 1});
    return out;
}

/// Values computed northeast of a staircase.  Every stored site satisfies the
/// lattice rule exactly given its three southwestern neighbours; sites whose
/// evaluation divided by an exact zero are flagged unresolved (along with
/// every site depending on them).
template <class V>
struct LatticeState {
    std::map<Site, V> values;        // staircase values plus computed sites
    std::set<Site> computed;         // subset of rect actually evaluated
    std::set<Site> unresolved;       // exact-zero divisions and their dependents
    dsl::LatticeDef def;

    const V& at(Site s) const {
        auto it = values.find(s);
        if (it == values.end())
            throw Error(ErrorKind::invalid_input, "no value at site " + s.str());
        return it->second;
    }
    bool has(Site s) const { return values.count(s) != 0; }
};

}  // namespace entropyforge::lattice

#endif
