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

#ifndef ENTROPYFORGE_CORE_FIELD_HPP
#define ENTROPYFORGE_CORE_FIELD_HPP

#include <concepts>
#include <type_traits>

#include "entropyforge/core/prime_field.hpp"
#include "entropyforge/core/rational.hpp"

namespace entropyforge {

/// An exact field element type: default-constructs to zero, constructs from
/// small integers, and supports the four operations with exact equality.
template <class F>
concept ExactFieldElement = requires(F a, F b) {
    { F() } -> std::same_as<F>;
    { F(1) } -> std::same_as<F>;
    { a + b } -> std::convertible_to<F>;
    { a - b } -> std::convertible_to<F>;
    { a* b } -> std::convertible_to<F>;
    { a / b } -> std::convertible_to<F>;
    { -a } -> std::convertible_to<F>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
};

template <class F>
struct field_ops {
    static F from_rational(const Rat& q) { return F::from_rational(q); }
};

template <>
struct field_ops<Rat> {
    static Rat from_rational(const Rat& q) { return q; }
};

template <class F>
F from_rational(const Rat& q) {
    return field_ops<F>::from_rational(q);
}

template <class F>
F field_pow(F base, long e) {
    if (e == 0) return F(1);
    if (e < 0) {
        base = F(1) / base;
        e = -e;
    }
    F acc(1);
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

}  // namespace entropyforge

#endif
