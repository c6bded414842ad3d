#include <doctest.h>

#include "entropyforge/dsl/families.hpp"

using namespace entropyforge;
using namespace entropyforge::dsl;

TEST_CASE("parse explicit and product-form recurrences") {
    SUBCASE("product on the left is solved for the highest iterate") {
        auto def = parse_mapping_1d("x[n+1]*x[n-1] = 1 - a[n]/x[n]\na: const 1");
        CHECK(def.order() == 2);
        CHECK(def.hi_shift == 1);
        CHECK(def.lo_shift == -1);
        CHECK(def.coeffs.at("a") == CoeffSpec::constant(Rat(1)));
    }
    SUBCASE("sum on the left") {
        auto def = parse_mapping_1d("x[n+1] + x[n-1] = x[n] + 1/x[n]^2");
        CHECK(def.order() == 2);
    }
    SUBCASE("shift normalization moves the lowest iterate to n-1") {
        auto def = parse_mapping_1d("x[n+2] = x[n+1] + a[n]/x[n]\na: const 3");
        CHECK(def.hi_shift == 1);
        CHECK(def.lo_shift == -1);
        // coefficient shift translated along with the iterates
        bool saw = false;
        visit(def.rhs, [&](const Expr& e) {
            if (e.kind == Expr::Kind::Coeff) {
                CHECK(e.shift == -1);
                saw = true;
            }
        });
        CHECK(saw);
    }
    SUBCASE("lattice rule") {
        auto def = parse_lattice("x[m,n] = x[m-1,n-1] + a[m,n-1]/x[m,n-1] - b[m-1,n]/x[m-1,n]\n"
                                 "a: const 1\nb: const 1");
        CHECK(def.coeffs.count("a") == 1);
        CHECK(def.coeffs.count("b") == 1);
    }
}

TEST_CASE("parse errors carry positions and kinds") {
    SUBCASE("syntax error at unclosed bracket") {
        try {
            parse_mapping("x[n+1] = x[n");
            FAIL("expected a syntax error");
        } catch (const SyntaxError& e) {
            CHECK(e.line() == 1);
            CHECK(e.col() >= 10);
        }
    }
    SUBCASE("unbound coefficient symbol") {
        try {
            parse_mapping("x[n+1] = a[n]/x[n]");
            FAIL("expected an unbound-symbol error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::unbound_symbol);
        }
    }
    SUBCASE("non-integer exponent") {
        CHECK_THROWS_WITH_AS(parse_mapping("x[n+1] = x[n]^y + x[n-1]"),
                             doctest::Contains("non-integer exponent"), SyntaxError);
    }
    SUBCASE("defining iterate on the right-hand side") {
        CHECK_THROWS_AS(parse_mapping("x[n+1]*x[n+1] = x[n]"), SyntaxError);
    }
    SUBCASE("lattice neighbours limited to the southwestern stencil") {
        CHECK_THROWS_AS(parse_mapping("x[m,n] = x[m+1,n-1]"), SyntaxError);
    }
}

TEST_CASE("pretty-print round trip for every builtin family") {
    std::vector<std::map<std::string, Rat>> paramsets = {
        {}, {{"k", Rat(2)}, {"l", Rat(3)}}, {{"k", Rat(3)}, {"l", Rat(4)}}};
    for (const auto& name : builtin_family_names()) {
        for (const auto& ps : paramsets) {
            ParsedDef def;
            try {
                def = builtin_family(name, ps);
            } catch (const Error&) {
                continue;  // paramset not applicable to this family
            }
            std::string text = to_text(def);
            CAPTURE(name);
            CAPTURE(text);
            ParsedDef again = parse_mapping(text);
            REQUIRE(def.index() == again.index());
            if (std::holds_alternative<MappingDef>(def)) {
                const auto& d1 = std::get<MappingDef>(def);
                const auto& d2 = std::get<MappingDef>(again);
                CHECK(d1.hi_shift == d2.hi_shift);
                CHECK(equal(d1.rhs, d2.rhs));
                CHECK(d1.coeffs == d2.coeffs);
            } else {
                const auto& d1 = std::get<LatticeDef>(def);
                const auto& d2 = std::get<LatticeDef>(again);
                CHECK(equal(d1.rhs, d2.rhs));
                CHECK(d1.coeffs == d2.coeffs);
            }
        }
    }
}

TEST_CASE("builtin family gates") {
    CHECK_THROWS_AS(builtin_family("kmt_reduction", {{"k", Rat(2)}, {"l", Rat(1)}}), Error);
    CHECK_THROWS_AS(builtin_family("kmt_reduction", {{"k", Rat(1)}, {"l", Rat(3)}}), Error);
    CHECK_THROWS_AS(builtin_family("kmt_lattice", {{"k", Rat(1)}}), Error);
    CHECK_THROWS_AS(builtin_family("no_such_family"), Error);

    auto def = builtin_mapping("kmt_reduction", {{"k", Rat(2)}, {"l", Rat(2)}});
    CHECK(def.order() == 3);
    CHECK(def.coeffs.at("a") == CoeffSpec::constant(Rat(1)));

    auto d33 = builtin_mapping("kmt_reduction", {{"k", Rat(3)}, {"l", Rat(3)}});
    CHECK(d33.coeffs.at("a") ==
          CoeffSpec::periodic({Rat(1), Rat(1), Rat(1), Rat(1), Rat(-1), Rat(-1), Rat(-1), Rat(-1)}));

    auto d34 = builtin_mapping("kmt_reduction", {{"k", Rat(3)}, {"l", Rat(4)}});
    CHECK(d34.coeffs.at("a") == CoeffSpec::periodic({Rat(1), Rat(-1)}));

    auto viol = builtin_mapping("kmt_reduction",
                                {{"k", Rat(3)}, {"l", Rat(3)}, {"violate_constraint", Rat(1)}});
    CHECK(viol.coeffs.at("a") == CoeffSpec::constant(Rat(1)));
}

TEST_CASE("instantiate_coefficients examples") {
    CHECK(instantiate_coefficients(CoeffSpec::periodic({Rat(1), Rat(-1)}), 0, 3) ==
          std::vector<Rat>({Rat(1), Rat(-1), Rat(1), Rat(-1)}));
    CHECK(instantiate_coefficients(CoeffSpec::constant(Rat(1)), 0, 2) ==
          std::vector<Rat>({Rat(1), Rat(1), Rat(1)}));
    // the 4+4 sign pattern wraps exactly
    auto spec = CoeffSpec::sign_pattern(Rat(1), 4);
    auto vals = instantiate_coefficients(spec, 0, 8);
    CHECK(vals == std::vector<Rat>({Rat(1), Rat(1), Rat(1), Rat(1), Rat(-1), Rat(-1), Rat(-1),
                                    Rat(-1), Rat(1)}));
    // negative indices wrap consistently too
    CHECK(spec.at(-1) == Rat(-1));
    CHECK(spec.at(-8) == Rat(1));
    // symbolic specs refuse numeric instantiation
    CHECK_THROWS_AS(instantiate_coefficients(CoeffSpec::symbolic(-3, 3), 0, 1), Error);
}

TEST_CASE("derived coefficient rule for the full reduction") {
    // d is determined by c; check the values satisfy d_n = (c_{n+l} + c_{n-l})/k - c_{n+l-1}
    long k = 2, l = 2;
    auto def = builtin_mapping("kmt_reduction_full", {{"k", Rat(k)}, {"l", Rat(l)}});
    REQUIRE(def.derived_coeffs.size() == 1);
    const auto& rule = def.derived_coeffs[0];
    const auto& c = def.coeffs.at("c");
    const auto& d = def.coeffs.at("d");
    for (long n = -6; n <= 6; ++n) {
        Rat expect = (c.at(n + l) + c.at(n - l)) * Rat(1, k) - c.at(n + l - 1);
        CHECK(d.at(n) == expect);
        CHECK(rule.eval(c, n) == expect);
    }
}
