#include <doctest.h>

#include "entropyforge/sing/late_confinement.hpp"
#include "entropyforge/spectral/classify.hpp"
#include "oracles.hpp"

using namespace entropyforge;
using namespace entropyforge::spectral;
using Kind = dsl::CoeffConstraint::Kind;

// High-precision evaluations of the printed radical expressions for the
// largest roots (the golden oracle for root values).
static constexpr double kP2k2 = 2.6180339887498949;  // (3+sqrt5)/2
static constexpr double kP3k2 = 2.2966302628865382;  // (1+sqrt3+sqrt(2sqrt3))/2
static constexpr double kP4k2 = 2.1537213755417679;  // (3+sqrt5+sqrt(6sqrt5-2))/4
static constexpr double kP5k2 = 2.0810189966245356;  // (1+sqrt17+sqrt(2sqrt17+2))/4
static constexpr double kP2k3 = 3.7320508075688772;  // 2+sqrt3
static constexpr double kP3k3 = 3.2542636339047497;  // (3+sqrt17+sqrt(10+6sqrt17))/4
static constexpr double kP4k3 = 3.0906578508522448;  // (2+sqrt2+sqrt(4sqrt2+2))/2
static constexpr double kP5k3 = 3.0316111600458357;  // largest root of L^6-3L^5-3L+1
static constexpr double kCubic = 3.2790187861665936;   // L^3-3L^2-3
static constexpr double kQuartic = 3.1006392800164886; // L^4-3L^3-3
static constexpr double kQuintic = 3.0353419694476949; // L^5-3L^4-3

TEST_CASE("charpoly_of_recurrence on the published constraints") {
    SUBCASE("multiplicative relation of the QRT deautonomisation") {
        // a[n+3] a[n-2] = a[n+2] a[n-1]
        IntPoly p = charpoly_of_recurrence(Kind::Multiplicative, {{3, 1}, {-2, 1}, {2, -1}, {-1, -1}});
        CHECK(p == IntPoly({1, -1, 0, 0, -1, 1}));
        auto rc = classify(p);
        CHECK(rc.all_roots_of_unity);
        CHECK(rc.largest_root_modulus == doctest::Approx(1.0).epsilon(1e-9));
        // exact double root at 1 via square-free multiplicities
        bool double_one = false;
        for (const auto& r : rc.roots)
            if (std::abs(r.value - std::complex<double>(1, 0)) < 1e-9 && r.multiplicity == 2)
                double_one = true;
        CHECK(double_one);
    }
    SUBCASE("squared multiplicative relation") {
        // a[n+3]^2 a[n-3]^2 = a[n+2]^4 a[n-2]^4, content-normalized exponents
        IntPoly p = charpoly_of_recurrence(Kind::Multiplicative, {{3, 1}, {-3, 1}, {2, -2}, {-2, -2}});
        CHECK(p == IntPoly({1, -2, 0, 0, 0, -2, 1}));
        CHECK(classify(p).dynamical_degree == doctest::Approx(kP5k2).epsilon(1e-9));
    }
    SUBCASE("additive relation of the full H-V deautonomisation") {
        // a[n+3] - 2a[n+2] - 2a[n+1] + a[n] = 0
        IntPoly p = charpoly_of_recurrence(Kind::Additive, {{3, 1}, {2, -2}, {1, -2}, {0, 1}});
        CHECK(p == IntPoly({1, -2, -2, 1}));
        auto roots = find_roots(p);
        CHECK(std::abs(roots.front().value.real() - kP2k2) < 1e-9);
    }
    SUBCASE("lattice reduction compatibility relation has a double zero at 1") {
        for (long q = 2; q <= 10; ++q) {
            IntPoly p = charpoly_of_recurrence(
                Kind::Additive,
                {{static_cast<int>(q) + 1, 1}, {static_cast<int>(q), -1}, {1, -1}, {0, 1}});
            // (L - 1)(L^q - 1) exactly
            ZPoly lq(static_cast<size_t>(q) + 1, Int(0));
            lq[0] = Int(-1);
            lq.back() = Int(1);
            IntPoly expect = IntPoly({-1, 1}) * IntPoly(lq);
            CHECK(p == expect);
            auto rc = classify(p);
            CHECK(rc.all_roots_of_unity);
            bool double_one = false;
            for (const auto& r : rc.roots)
                if (std::abs(r.value - std::complex<double>(1, 0)) < 1e-9 && r.multiplicity == 2)
                    double_one = true;
            CHECK(double_one);
        }
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(charpoly_of_recurrence(Kind::Additive, {{0, 1}}), Error);
        CHECK_THROWS_AS(charpoly_of_recurrence(Kind::Additive, {{0, 1}, {0, 1}}), Error);
        CHECK_THROWS_AS(charpoly_of_recurrence(Kind::Additive, {{0, 0}, {1, 0}}), Error);
    }
}

TEST_CASE("reduction charpoly identities") {
    for (long k = 2; k <= 12; ++k) {
        for (long l = 2; l <= 12; ++l) {
            auto rc = reduction_charpoly(k, l);
            // factorization identity: full == (L^{l+1}+1) * P_l
            IntPoly cyclo = monomial(1, static_cast<int>(l) + 1) + IntPoly({1});
            CHECK(rc.full == cyclo * rc.p_factor);
            // reciprocity of P_l
            CHECK(rc.p_factor.is_reciprocal());
        }
    }
    // P_2 = (L + 1)(L^2 - (k+1)L + 1) exactly
    for (long k = 2; k <= 12; ++k) {
        auto rc = reduction_charpoly(k, 2);
        IntPoly expect = IntPoly({1, 1}) * IntPoly({1, -(k + 1), 1});
        CHECK(rc.p_factor == expect);
    }
    CHECK_THROWS_AS(reduction_charpoly(1, 3), Error);
    CHECK_THROWS_AS(reduction_charpoly(2, 1), Error);
}

TEST_CASE("P_l root structure") {
    for (long k = 2; k <= 12; ++k) {
        for (long l = 3; l <= 12; ++l) {
            auto p = reduction_charpoly(k, l).p_factor;
            auto roots = find_roots(p);
            // reciprocal pairing: for each root some root approximates 1/r
            for (const auto& r : roots) {
                std::complex<double> inv = 1.0 / r.value;
                double best = 1e9;
                for (const auto& s : roots) best = std::min(best, std::abs(s.value - inv));
                CHECK(best < 1e-8);
            }
            // real-root structure: two reciprocal reals for odd l, plus -1 for even l
            int reals = 0;
            bool minus_one = false;
            for (const auto& r : roots) {
                if (r.value.imag() == 0) {
                    reals += r.multiplicity;
                    if (std::abs(r.value.real() + 1) < 1e-9) minus_one = true;
                }
            }
            if (l % 2 == 1) {
                CHECK(reals == 2);
            } else {
                CHECK(reals == 3);
                CHECK(minus_one);
            }
            // exact sign-change bracket: P_l(k) < 0 < P_l(k+1), so lambda* > k
            CHECK(p.sign_at(Rat(k)) < 0);
            CHECK(p.sign_at(Rat(k + 1)) > 0);
            double lam = ef_test::bisect_largest_real_root(p);
            CHECK(lam > static_cast<double>(k));
            // all non-real roots on the unit circle to 1e-9
            for (const auto& r : roots) {
                if (r.value.imag() != 0) CHECK(std::abs(std::abs(r.value) - 1.0) < 1e-9);
            }
        }
    }
}

TEST_CASE("find_roots basics") {
    SUBCASE("quadratic") {
        auto roots = find_roots(IntPoly({1, -3, 1}));
        REQUIRE(roots.size() == 2);
        CHECK(roots[0].value.real() == doctest::Approx(kP2k2).epsilon(1e-12));
        CHECK(roots[1].value.real() == doctest::Approx(1.0 / kP2k2).epsilon(1e-10));
    }
    SUBCASE("pisot cubic") {
        auto roots = find_roots(IntPoly({-3, 0, -3, 1}));
        CHECK(std::abs(roots.front().value.real() - kCubic) < 1e-9);
    }
    SUBCASE("exact double root via square-free decomposition") {
        // (L - 1)^2
        auto roots = find_roots(IntPoly({1, -2, 1}));
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].multiplicity == 2);
        CHECK(roots[0].value.real() == doctest::Approx(1.0));
        CHECK(roots[0].value.imag() == 0.0);
    }
    SUBCASE("guards") {
        CHECK_THROWS_AS(find_roots(IntPoly({5})), Error);
        CHECK_THROWS_AS(find_roots(IntPoly({1, -3, 1}), -1.0), Error);
    }
}

TEST_CASE("root goldens against the radical-expression oracle") {
    struct Golden {
        long k, l;
        double value;
        double tol;
    };
    const Golden goldens[] = {
        {2, 2, kP2k2, 1e-6}, {2, 3, kP3k2, 1e-6}, {2, 4, kP4k2, 1e-6}, {2, 5, kP5k2, 1e-6},
        {3, 2, kP2k3, 1e-6}, {3, 3, kP3k3, 1e-6}, {3, 4, kP4k3, 1e-6}, {3, 5, kP5k3, 1e-4},
    };
    for (const auto& g : goldens) {
        auto p = reduction_charpoly(g.k, g.l).p_factor;
        auto rc = classify(p);
        CHECK(std::abs(rc.dynamical_degree - g.value) < g.tol);
        // and the independent exact-bisection oracle agrees
        CHECK(std::abs(ef_test::bisect_largest_real_root(p) - g.value) < 1e-9);
    }
    CHECK(std::abs(ef_test::bisect_largest_real_root(IntPoly({-3, 0, -3, 1})) - kCubic) < 1e-9);
    CHECK(std::abs(ef_test::bisect_largest_real_root(IntPoly({-3, 0, 0, -3, 1})) - kQuartic) < 1e-9);
    CHECK(std::abs(ef_test::bisect_largest_real_root(IntPoly({-3, 0, 0, 0, -3, 1})) - kQuintic) < 1e-9);
}

TEST_CASE("classification goldens") {
    SUBCASE("salem flags for P_l, l >= 3") {
        for (long k : {2L, 3L}) {
            for (long l : {3L, 4L, 5L}) {
                auto rc = classify(reduction_charpoly(k, l).p_factor);
                CAPTURE(k);
                CAPTURE(l);
                CHECK(rc.salem);
                CHECK(!rc.pisot);
                CHECK(!rc.all_roots_of_unity);
                CHECK(rc.reciprocal);
            }
        }
    }
    SUBCASE("P_2 largest roots are quadratic reciprocal integers") {
        for (long k : {2L, 3L}) {
            auto rc = classify(reduction_charpoly(k, 2).p_factor);
            CHECK(rc.quadratic_reciprocal);
            CHECK(rc.quadratic_trace == k + 1);
            CHECK(!rc.salem);
        }
        auto rc = classify(IntPoly({1, -3, 1}));
        CHECK(rc.quadratic_reciprocal);
        CHECK(rc.dynamical_degree == doctest::Approx(kP2k2));
    }
    SUBCASE("pisot and non-pisot limit polynomials") {
        auto cubic = classify(IntPoly({-3, 0, -3, 1}));
        CHECK(cubic.pisot);
        CHECK(!cubic.salem);
        CHECK(cubic.dynamical_degree == doctest::Approx(kCubic).epsilon(1e-9));

        auto quartic = classify(IntPoly({-3, 0, 0, -3, 1}));
        CHECK(!quartic.pisot);  // a complex pair lies outside the unit circle
        CHECK(quartic.dynamical_degree == doctest::Approx(kQuartic).epsilon(1e-9));

        auto quintic = classify(IntPoly({-3, 0, 0, 0, -3, 1}));
        CHECK(!quintic.pisot);
        CHECK(quintic.dynamical_degree == doctest::Approx(kQuintic).epsilon(1e-9));
    }
    SUBCASE("roots of unity") {
        // (L - 1)(L^4 + 1)
        IntPoly p = IntPoly({-1, 1}) * IntPoly({1, 0, 0, 0, 1});
        auto rc = classify(p);
        CHECK(rc.all_roots_of_unity);
        CHECK(!rc.salem);
        CHECK(!rc.pisot);
    }
    SUBCASE("non-monic after content removal reports none-of-these") {
        auto rc = classify(IntPoly({1, 0, 0, 2}));
        CHECK(!rc.monic_after_content);
        CHECK(rc.none_of_these);
        CHECK(!rc.note.empty());
    }
}

TEST_CASE("late-confinement polynomial family") {
    using namespace entropyforge::sing;
    SUBCASE("m = 1 is the basic confinement polynomial") {
        auto p1 = late_confinement_polynomial(3, 3, 1);
        CHECK(p1 == IntPoly({1, -3, 0, -3, 1}));
        CHECK(p1 == reduction_charpoly(3, 3).p_factor);
    }
    SUBCASE("summation and closed forms agree, and P_m(1) = 1 - 5m") {
        for (int m = 1; m <= 6; ++m) {
            auto a = late_confinement_polynomial(3, 3, m);
            auto b = late_confinement_polynomial_closed(m);
            CHECK(a == b);
            CHECK(a.eval_int(Int(1)) == Int(1 - 5 * m));
        }
    }
    SUBCASE("largest roots increase strictly in m toward the limit") {
        double prev = 0;
        for (int m = 1; m <= 6; ++m) {
            double lam = ef_test::bisect_largest_real_root(late_confinement_polynomial(3, 3, m));
            CHECK(lam > prev);
            CHECK(lam < kCubic);
            prev = lam;
        }
        auto lim = late_confinement_limit(3, 3);
        CHECK(!lim.extrapolated);
        CHECK(lim.poly == IntPoly({-3, 0, -3, 1}));
        CHECK(std::abs(ef_test::bisect_largest_real_root(lim.poly) - kCubic) < 1e-9);
    }
    SUBCASE("limit family and extrapolation flags") {
        CHECK(late_confinement_limit(3, 4).poly == IntPoly({-3, 0, 0, -3, 1}));
        CHECK(!late_confinement_limit(3, 4).extrapolated);
        CHECK(!late_confinement_limit(3, 5).extrapolated);
        CHECK(late_confinement_limit(2, 4).extrapolated);
        CHECK(late_confinement_limit(3, 6).extrapolated);
        CHECK_THROWS_AS(late_confinement_polynomial(3, 3, 0), Error);
        CHECK_THROWS_AS(late_confinement_polynomial(2, 3, 1), Error);
    }
}

TEST_CASE("classification JSON export") {
    IntPoly p({-3, 0, -3, 1});
    auto rc = classify(p);
    std::string js = classification_to_json(p, rc);
    CHECK(js.find("\"schemaVersion\": 1") != std::string::npos);
    CHECK(js.find("\"pisot\": true") != std::string::npos);
    CHECK(js.find("\"dynamicalDegree\": 3.27901878") != std::string::npos);
}
