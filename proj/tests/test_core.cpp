#include <doctest.h>

#include "entropyforge/core/laurent.hpp"
#include "entropyforge/core/multipoly.hpp"
#include "entropyforge/core/random_stream.hpp"
#include "entropyforge/core/rational_function.hpp"
#include "entropyforge/core/symbol_field.hpp"

using namespace entropyforge;

using F31 = Fp<kModularPrimeA>;

TEST_CASE("Int and Rat basics") {
    Int a(12), b(18);
    CHECK(gcd(a, b) == Int(6));
    CHECK(lcm(a, b) == Int(36));
    CHECK((a * b).str() == "216");
    Int big = pow(Int(10), 40) + Int(7);
    CHECK(big.str() == "10000000000000000000000000000000000000007");

    Rat q(6, -4);
    CHECK(q.str() == "-3/2");
    CHECK((q + Rat(1, 2)) == Rat(-1));
    CHECK(pow(Rat(2, 3), -2) == Rat(9, 4));
    CHECK_THROWS_AS(Rat(1, 0), Error);
}

TEST_CASE("prime field ring axioms on random samples") {
    RandomStream rng(42);
    for (int i = 0; i < 1000; ++i) {
        F31 a = F31::from_raw(rng.next_u64());
        F31 b = F31::from_raw(rng.next_u64());
        F31 c = F31::from_raw(rng.next_u64());
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a + b) + c == a + (b + c));
        if (!b.is_zero()) CHECK(a / b * b == a);
    }
    CHECK(inverse(F31(7)) * F31(7) == F31(1));
}

TEST_CASE("ZPoly kronecker multiplication agrees with schoolbook") {
    RandomStream rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        size_t na = 1 + rng.next_u64() % 60;
        size_t nb = 1 + rng.next_u64() % 60;
        ZPoly a(na), b(nb);
        for (auto& c : a) c = Int(rng.next_in(-1000000, 1000000)) * pow(Int(10), rng.next_u64() % 12);
        for (auto& c : b) c = Int(rng.next_in(-1000000, 1000000)) * pow(Int(10), rng.next_u64() % 12);
        zx::trim(a);
        zx::trim(b);
        ZPoly s = zx::mul_schoolbook(a, b);
        ZPoly k = zx::mul_kronecker(a, b);
        CHECK(s == k);
    }
}

TEST_CASE("ZPoly kronecker sign-split cases (single-signed operands)") {
    RandomStream rng(19);
    // every combination of {positive, negative, mixed} x {positive, negative, mixed}
    for (int sa = 0; sa < 3; ++sa) {
        for (int sb = 0; sb < 3; ++sb) {
            for (int trial = 0; trial < 4; ++trial) {
                auto rand_poly = [&](int mode) {
                    size_t n = 40 + rng.next_u64() % 80;
                    ZPoly p(n);
                    for (auto& c : p) {
                        long v = rng.next_in(1, 1000000);
                        if (mode == 1) v = -v;
                        if (mode == 2 && rng.next_u64() % 2) v = -v;
                        c = Int(v) * pow(Int(7), rng.next_u64() % 20);
                    }
                    return p;
                };
                ZPoly a = rand_poly(sa), b = rand_poly(sb);
                CHECK(zx::mul_kronecker(a, b) == zx::mul_schoolbook(a, b));
            }
        }
    }
}

TEST_CASE("ZPoly modular gcd: divisor recovery and cofactor coprimality") {
    RandomStream rng(11);
    for (int trial = 0; trial < 15; ++trial) {
        auto rand_poly = [&](size_t n) {
            ZPoly p(n + 1);
            for (auto& c : p) c = Int(rng.next_in(-50, 50));
            zx::trim(p);
            if (p.empty()) p = ZPoly{Int(1)};
            return p;
        };
        ZPoly g = rand_poly(3 + rng.next_u64() % 4);
        ZPoly a = zx::mul(g, rand_poly(5));
        ZPoly b = zx::mul(g, rand_poly(6));
        ZPoly h = zx::gcd(a, b);
        // gcd divides both, and the cofactors are coprime
        CHECK(zx::divexact_checked(a, h).has_value());
        CHECK(zx::divexact_checked(b, h).has_value());
        CHECK(zx::divexact_checked(h, zx::gcd(h, g)).has_value());
        ZPoly ca = zx::divexact(a, h);
        ZPoly cb = zx::divexact(b, h);
        ZPoly g2 = zx::gcd(ca, cb);
        CHECK(zx::deg(g2) == 0);
    }
}

TEST_CASE("reduce_rational_function examples") {
    using P = UniPoly<Rat>;
    P w = P::x();

    SUBCASE("common factor w-1") {
        // (w^2 - 1) / (w - 1) -> (w + 1) / 1
        P num({Rat(-1), Rat(0), Rat(1)});
        P den({Rat(-1), Rat(1)});
        auto rf = reduce_rational_function(num, den);
        CHECK(rf.num() == P({Rat(1), Rat(1)}));
        CHECK(rf.den() == P(Rat(1)));
    }
    SUBCASE("identity cancellation") {
        auto rf = reduce_rational_function(w, w);
        CHECK(rf.num() == P(Rat(1)));
        CHECK(rf.den() == P(Rat(1)));
    }
    SUBCASE("content normalization over the rationals") {
        // (3w^2 + 3w) / (6w) -> (w + 1) / 2, i.e. (w/2 + 1/2) / 1 monic form
        P num({Rat(0), Rat(3), Rat(3)});
        P den({Rat(0), Rat(6)});
        auto rf = reduce_rational_function(num, den);
        CHECK(rf.num() == P({Rat(1, 2), Rat(1, 2)}));
        CHECK(rf.den() == P(Rat(1)));
    }
    SUBCASE("zero denominator rejected") {
        CHECK_THROWS_AS(reduce_rational_function(w, P()), Error);
    }
}

TEST_CASE("reduce is invariant under common nonzero factors") {
    RandomStream rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        auto rand_upoly = [&](int d) {
            std::vector<Rat> c(static_cast<size_t>(d) + 1);
            for (auto& x : c) x = Rat(rng.next_in(-9, 9), rng.next_in(1, 9));
            UniPoly<Rat> p(std::move(c));
            return p.is_zero() ? UniPoly<Rat>(Rat(1)) : p;
        };
        UniPoly<Rat> n = rand_upoly(4), d = rand_upoly(3), g = rand_upoly(2);
        auto base = reduce_rational_function(n, d);
        auto scaled = reduce_rational_function(n * g, d * g);
        CHECK(base.num() == scaled.num());
        CHECK(base.den() == scaled.den());
    }
}

TEST_CASE("QxFrac arithmetic mirrors RatFunc over Q") {
    RandomStream rng(17);
    for (int trial = 0; trial < 8; ++trial) {
        auto rand_q = [&]() { return Rat(rng.next_in(-8, 8), rng.next_in(1, 8)); };
        QxFrac w = QxFrac::variable();
        QxFrac f = (w * w + QxFrac(rand_q())) / (w + QxFrac(rand_q()));
        QxFrac h = f.pow(2) - f + QxFrac(rand_q()) / f;
        RatFunc<Rat> W = RatFunc<Rat>::variable();
        // recompute with the generic type and compare via the monic view
        auto conv = [&](const QxFrac& x) { return x.to_ratfunc(); };
        RatFunc<Rat> F1 = conv(f);
        RatFunc<Rat> H = F1.pow(2) - F1 + conv(QxFrac(Rat(0))) + RatFunc<Rat>(Rat(0));
        (void)W;
        (void)H;
        // degree sanity and exact equality of the two routes for h's pieces
        CHECK(conv(f.pow(2)) == F1.pow(2));
        CHECK(conv(f + f) == F1 + F1);
        CHECK(conv(f * f - f) == F1 * F1 - F1);
        CHECK(h.degree() >= 0);
    }
}

TEST_CASE("Laurent arithmetic examples") {
    using L = Laurent<Rat>;

    SUBCASE("invert geometric series") {
        // 1/(e + e^2) = e^-1 - 1 + e - e^2 + ...
        L a(1, {Rat(1), Rat(1)}, true);
        L inv = a.invert(4);
        CHECK(inv.order() == -1);
        CHECK(inv.coeff(-1) == Rat(1));
        CHECK(inv.coeff(0) == Rat(-1));
        CHECK(inv.coeff(1) == Rat(1));
        CHECK(inv.coeff(2) == Rat(-1));
    }
    SUBCASE("pow binomial") {
        // (e^-1 + 1)^2 = e^-2 + 2 e^-1 + 1
        L a(-1, {Rat(1), Rat(1)}, true);
        L sq = a.pow(2);
        CHECK(sq.is_exact());
        CHECK(sq.coeff(-2) == Rat(1));
        CHECK(sq.coeff(-1) == Rat(2));
        CHECK(sq.coeff(0) == Rat(1));
        CHECK(sq.coeff(1) == Rat(0));
    }
    SUBCASE("mul of exact monomial and short series") {
        // (2 e^-3) * (3 e^3 + e^4) = 6 + 2 e
        L a(-3, {Rat(2)}, true);
        L b(3, {Rat(3), Rat(1)}, true);
        L p = a * b;
        CHECK(p.is_exact());
        CHECK(p.coeff(0) == Rat(6));
        CHECK(p.coeff(1) == Rat(2));
    }
    SUBCASE("order examples") {
        CHECK(L(-2, {Rat(1), Rat(0), Rat(5)}, true).order() == -2);
        CHECK(L(0, {Rat(7), Rat(1)}, true).order() == 0);
        L ztt(6, {}, false);
        CHECK(!ztt.order().has_value());
        CHECK(ztt.is_zero_to_trunc());
    }
    SUBCASE("invert of zero-to-truncation is a singular series") {
        L ztt(6, {}, false);
        CHECK_THROWS_AS(ztt.invert(), Error);
    }
}

TEST_CASE("Laurent order additivity under mul (random, prime field)") {
    using L = Laurent<F31>;
    RandomStream rng(23);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        long la = rng.next_in(-6, 6), lb = rng.next_in(-6, 6);
        std::vector<F31> ca(1 + rng.next_u64() % 5), cb(1 + rng.next_u64() % 5);
        for (auto& c : ca) c = F31::from_raw(rng.next_u64());
        for (auto& c : cb) c = F31::from_raw(rng.next_u64());
        ca[0] = F31::from_raw(1 + rng.next_u64() % (kModularPrimeA - 1));
        cb[0] = F31::from_raw(1 + rng.next_u64() % (kModularPrimeA - 1));
        L a(la, ca, rng.next_u64() % 2 == 0);
        L b(lb, cb, rng.next_u64() % 2 == 0);
        if (!a.order() || !b.order()) continue;
        L p = a * b;
        REQUIRE(p.order().has_value());
        CHECK(*p.order() == *a.order() + *b.order());
        ++checked;
    }
    CHECK(checked > 900);
}

TEST_CASE("Laurent invert round trip on the common window") {
    using L = Laurent<Rat>;
    RandomStream rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        long lo = rng.next_in(-4, 4);
        std::vector<Rat> c(3 + rng.next_u64() % 4);
        for (auto& x : c) x = Rat(rng.next_in(-9, 9), rng.next_in(1, 9));
        c[0] = Rat(rng.next_in(1, 9));
        L a(lo, c, false);
        L back = a.invert().invert();
        for (long k = a.lo(); k < std::min(a.trunc(), back.trunc()); ++k) {
            CHECK(back.coeff(k) == a.coeff(k));
        }
    }
}

TEST_CASE("MultiPoly and SymElem basics") {
    MultiPoly x = MultiPoly::variable(0);
    MultiPoly y = MultiPoly::variable(1);
    MultiPoly p = x * y + x * x * y * Rat(2);
    CHECK(p.monomial_gcd() == Monomial({1, 1}));
    MultiPoly n = p.normalized_primitive();
    // x*y + 2x^2*y -> 1 + 2x after monomial/content removal
    CHECK(n == MultiPoly(1) + MultiPoly::variable(0) * Rat(2));

    SymElem a = SymElem::symbol(0);
    SymElem b = SymElem::symbol(1);
    SymElem r = (a * a - b * b) / (a + b);
    SymElem s = a - b;
    CHECK(r == s);  // equality is cross-multiplied, not factored
    CHECK((r - s).is_zero());
    CHECK_THROWS_AS(a / SymElem(0), Error);
}
