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

#ifndef ENTROPYFORGE_DSL_EXPR_HPP
#define ENTROPYFORGE_DSL_EXPR_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "entropyforge/core/rational.hpp"
#include "entropyforge/errors.hpp"

namespace entropyforge::dsl {

/// Rational expression tree for recurrence right-hand sides.  Variables are
/// shifted iterates: x[n+shift] in one dimension, x[m+dm, n+dn] on the
/// lattice.  Coefficient references carry a name plus the same shifts.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, Var, Var2D, Coeff, Coeff2D, Add, Sub, Mul, Div, Neg, Pow };

    Kind kind;
    Rat number;        // Number
    int shift = 0;     // Var / Coeff
    int dm = 0, dn = 0;  // Var2D / Coeff2D
    std::string name;  // Coeff / Coeff2D
    ExprPtr a, b;
    long expo = 0;  // Pow

    static ExprPtr number_of(Rat v) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Number;
        e->number = std::move(v);
        return e;
    }
    static ExprPtr var(int shift) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Var;
        e->shift = shift;
        return e;
    }
    static ExprPtr var2d(int dm, int dn) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Var2D;
        e->dm = dm;
        e->dn = dn;
        return e;
    }
    static ExprPtr coeff(std::string name, int shift) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Coeff;
        e->name = std::move(name);
        e->shift = shift;
        return e;
    }
    static ExprPtr coeff2d(std::string name, int dm, int dn) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Coeff2D;
        e->name = std::move(name);
        e->dm = dm;
        e->dn = dn;
        return e;
    }
    static ExprPtr binary(Kind k, ExprPtr a, ExprPtr b) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->a = std::move(a);
        e->b = std::move(b);
        return e;
    }
    static ExprPtr neg(ExprPtr a) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Neg;
        e->a = std::move(a);
        return e;
    }
    static ExprPtr pow(ExprPtr a, long k) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Pow;
        e->a = std::move(a);
        e->expo = k;
        return e;
    }
};

/// Walks an expression, invoking fn on every node.
inline void visit(const ExprPtr& e, const std::function<void(const Expr&)>& fn) {
    if (!e) return;
    fn(*e);
    visit(e->a, fn);
    visit(e->b, fn);
}

/// Structural equality (used by the reparse round-trip checks).
inline bool equal(const ExprPtr& x, const ExprPtr& y) {
    if (!x || !y) return !x && !y;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
        case Expr::Kind::Number: return x->number == y->number;
        case Expr::Kind::Var: return x->shift == y->shift;
        case Expr::Kind::Var2D: return x->dm == y->dm && x->dn == y->dn;
        case Expr::Kind::Coeff: return x->name == y->name && x->shift == y->shift;
        case Expr::Kind::Coeff2D: return x->name == y->name && x->dm == y->dm && x->dn == y->dn;
        case Expr::Kind::Pow: return x->expo == y->expo && equal(x->a, y->a);
        case Expr::Kind::Neg: return equal(x->a, y->a);
        default: return equal(x->a, y->a) && equal(x->b, y->b);
    }
}

/// Evaluates an expression over any value type supporting field arithmetic
/// plus pow.  `VarFn(shift)`, `CoeffFn(name, shift)` supply the environment;
/// 2D nodes use `(dm, dn)` arguments instead.
template <class V, class VarFn, class CoeffFn>
V eval1d(const Expr& e, const VarFn& var, const CoeffFn& coeff) {
    switch (e.kind) {
        case Expr::Kind::Number: return V::from_rational(e.number);
        case Expr::Kind::Var: return var(e.shift);
        case Expr::Kind::Coeff: return coeff(e.name, e.shift);
        case Expr::Kind::Var2D:
        case Expr::Kind::Coeff2D:
            throw Error(ErrorKind::internal, "eval1d: lattice node in a 1D expression");
        case Expr::Kind::Add: return eval1d<V>(*e.a, var, coeff) + eval1d<V>(*e.b, var, coeff);
        case Expr::Kind::Sub: return eval1d<V>(*e.a, var, coeff) - eval1d<V>(*e.b, var, coeff);
        case Expr::Kind::Mul: return eval1d<V>(*e.a, var, coeff) * eval1d<V>(*e.b, var, coeff);
        case Expr::Kind::Div: return eval1d<V>(*e.a, var, coeff) / eval1d<V>(*e.b, var, coeff);
        case Expr::Kind::Neg: return -eval1d<V>(*e.a, var, coeff);
        case Expr::Kind::Pow: return eval1d<V>(*e.a, var, coeff).pow(e.expo);
    }
    throw Error(ErrorKind::internal, "eval1d: unknown node");
}

template <class V, class VarFn, class CoeffFn>
V eval2d(const Expr& e, const VarFn& var, const CoeffFn& coeff) {
    switch (e.kind) {
        case Expr::Kind::Number: return V::from_rational(e.number);
        case Expr::Kind::Var2D: return var(e.dm, e.dn);
        case Expr::Kind::Coeff2D: return coeff(e.name, e.dm, e.dn);
        case Expr::Kind::Var:
        case Expr::Kind::Coeff:
            throw Error(ErrorKind::internal, "eval2d: 1D node in a lattice expression");
        case Expr::Kind::Add: return eval2d<V>(*e.a, var, coeff) + eval2d<V>(*e.b, var, coeff);
        case Expr::Kind::Sub: return eval2d<V>(*e.a, var, coeff) - eval2d<V>(*e.b, var, coeff);
        case Expr::Kind::Mul: return eval2d<V>(*e.a, var, coeff) * eval2d<V>(*e.b, var, coeff);
        case Expr::Kind::Div: return eval2d<V>(*e.a, var, coeff) / eval2d<V>(*e.b, var, coeff);
        case Expr::Kind::Neg: return -eval2d<V>(*e.a, var, coeff);
        case Expr::Kind::Pow: return eval2d<V>(*e.a, var, coeff).pow(e.expo);
    }
    throw Error(ErrorKind::internal, "eval2d: unknown node");
}

}  // namespace entropyforge::dsl

#endif
