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

#ifndef ENTROPYFORGE_SING_LATE_CONFINEMENT_HPP
#define ENTROPYFORGE_SING_LATE_CONFINEMENT_HPP

#include "entropyforge/spectral/intpoly.hpp"

namespace entropyforge::sing {

/// Characteristic polynomials of the late-confinement pattern family for the
/// k = 3, l = 3 reduction: confinement postponed by four extra steps per
/// increment of m.  m = 1 is the basic confinement pattern.
inline spectral::IntPoly late_confinement_polynomial(long k, long l, int m) {
    if (m < 1) throw Error(ErrorKind::invalid_input, "late_confinement_polynomial: m must be >= 1");
    if (k != 3 || l != 3)
        throw Error(ErrorKind::invalid_input,
                    "late_confinement_polynomial: the finite-m family is exact for (k, l) = (3, 3) "
                    "only; other parameters have only the limit polynomial");
    // P_m = 1 + sum_{j=1}^m L^{4j-3} (L^3 - 3L^2 - 3)
    spectral::IntPoly base({-3, 0, -3, 1});
    spectral::IntPoly acc({1});
    for (int j = 1; j <= m; ++j) {
        acc = acc + spectral::monomial(1, 4 * j - 3) * base;
    }
    return acc;
}

/// The same family evaluated from its closed form
/// 1 + L (L^{4m} - 1)/(L^4 - 1) (L^3 - 3L^2 - 3); used as a consistency
/// cross-check of the summation form.
inline spectral::IntPoly late_confinement_polynomial_closed(int m) {
    if (m < 1) throw Error(ErrorKind::invalid_input, "late_confinement_polynomial_closed: m must be >= 1");
    // (L^{4m} - 1)/(L^4 - 1) = sum_{i<m} L^{4i}, exact division
    ZPoly num(static_cast<size_t>(4 * m) + 1, Int(0));
    num[0] = Int(-1);
    num.back() = Int(1);
    ZPoly den{Int(-1), Int(0), Int(0), Int(0), Int(1)};
    spectral::IntPoly geo(zx::divexact(num, den));
    spectral::IntPoly base({-3, 0, -3, 1});
    return spectral::IntPoly({1}) + spectral::IntPoly({0, 1}) * geo * base;
}

struct LimitPolynomial {
    spectral::IntPoly poly;
    bool extrapolated;  // true outside the published k = 3, l in {3,4,5} cases
};

/// Nonconfining limit polynomial L^l - k L^{l-1} - k.  Published for k = 3
/// with l in {3, 4, 5}; every other parameter choice is an extrapolation and
/// is flagged as such.
inline LimitPolynomial late_confinement_limit(long k, long l) {
    if (k < 2 || l < 2)
        throw Error(ErrorKind::invalid_input, "late_confinement_limit requires k >= 2 and l >= 2");
    spectral::IntPoly p = spectral::monomial(1, static_cast<int>(l)) -
                          spectral::monomial(k, static_cast<int>(l) - 1) - spectral::IntPoly({k});
    bool published = k == 3 && (l == 3 || l == 4 || l == 5);
    return {p, !published};
}

}  // namespace entropyforge::sing

#endif
