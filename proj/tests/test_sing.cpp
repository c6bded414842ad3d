#include <doctest.h>

#include "entropyforge/dsl/families.hpp"
#include "entropyforge/sing/derive.hpp"
#include "entropyforge/spectral/classify.hpp"
#include "oracles.hpp"

using namespace entropyforge;
using namespace entropyforge::dsl;
using namespace entropyforge::sing;

namespace {

std::string tokens_str(const SingularityPattern& p) {
    std::string out;
    for (const auto& t : p.tokens) {
        if (!out.empty()) out += " ";
        out += t.str();
    }
    return out;
}

MappingDef kmt(long k, long l, bool violate = false) {
    std::map<std::string, Rat> p = {{"k", Rat(k)}, {"l", Rat(l)}};
    if (violate) p["violate_constraint"] = Rat(1);
    return builtin_mapping("kmt_reduction", p);
}

}  // namespace

TEST_CASE("QRT mapping confines with pattern {0, inf, inf, 0} and memory recovery") {
    auto def = builtin_mapping("qrt_example");
    auto tr = confinement_verdict(def);
    CHECK(tokens_str(tr.pattern) == "0 inf inf 0");
    REQUIRE(tr.pattern.verdict.confined());
    // the entry is at position 0 = the perturbed slot; pattern starts one step later
    CHECK(tr.pattern.pattern_start == 1);
    CHECK(tr.pattern.verdict.exit_step == 6);
    // x at position 6 recovers the pre-singularity value x[n-1] exactly
    REQUIRE(!tr.exit_limits.empty());
    CHECK(tr.exit_limits[0] == tr.initial_values[0]);
}

TEST_CASE("multiplicative example confines exactly when a^4 = 1") {
    SUBCASE("a = 1 confines with {0, inf, inf^2, inf, 0}") {
        auto def = builtin_mapping("mult_example", {{"a", Rat(1)}});
        auto tr = confinement_verdict(def);
        CHECK(tokens_str(tr.pattern) == "0 inf inf^2 inf 0");
        CHECK(tr.pattern.verdict.confined());
    }
    SUBCASE("a = 2 does not confine") {
        auto def = builtin_mapping("mult_example", {{"a", Rat(2)}});
        auto tr = confinement_verdict(def);
        CHECK(!tr.pattern.verdict.confined());
        CHECK(tr.pattern.verdict.kind == Verdict::Kind::Nonconfined);
    }
}

TEST_CASE("H-V mapping and its full deautonomisation share {0, inf^2, inf^2, 0}") {
    auto hv = builtin_mapping("hv");
    auto tr = confinement_verdict(hv);
    CHECK(tokens_str(tr.pattern) == "0 inf^2 inf^2 0");
    CHECK(tr.pattern.verdict.confined());
    CHECK(tr.pattern.pattern_start == 0);  // the perturbed slot itself is the first zero

    auto full = builtin_mapping("hv_full");  // a_n = (-1)^n satisfies the confinement condition
    auto tr2 = confinement_verdict(full);
    CHECK(tokens_str(tr2.pattern) == "0 inf^2 inf^2 0");
    CHECK(tr2.pattern.verdict.confined());
}

TEST_CASE("KMT reductions: pattern {0, inf^k, f.., inf^k, 0} under the coefficient constraint") {
    SUBCASE("k=2 l=2 confines (and integrates to the H-V mapping)") {
        auto tr = confinement_verdict(kmt(2, 2));
        CHECK(tr.pattern.verdict.confined());
        CHECK(tokens_str(tr.pattern) == "0 inf^2 inf^2 0");
    }
    SUBCASE("k=3 l=3 with the compliant sign pattern") {
        auto tr = confinement_verdict(kmt(3, 3));
        CHECK(tokens_str(tr.pattern) == "0 inf^3 f inf^3 0");
        CHECK(tr.pattern.verdict.confined());
    }
    SUBCASE("k=3 l=3 with a == 1 repeats the pattern and never confines") {
        auto tr = confinement_verdict(kmt(3, 3, true), 30);
        CHECK(!tr.pattern.verdict.confined());
        std::string s = tokens_str(tr.pattern);
        CHECK(s.substr(0, 33) == "0 inf^3 f inf^3 0 inf^3 f inf^3 0");
    }
    SUBCASE("k=2 l=3 and l=4 confine with interior finite steps") {
        CHECK(tokens_str(confinement_verdict(kmt(2, 3)).pattern) == "0 inf^2 f inf^2 0");
        CHECK(tokens_str(confinement_verdict(kmt(2, 4)).pattern) == "0 inf^2 f f inf^2 0");
    }
    SUBCASE("k=3 l=5 confines under the block pattern") {
        auto tr = confinement_verdict(kmt(3, 5));
        CHECK(tokens_str(tr.pattern) == "0 inf^3 f f f inf^3 0");
        CHECK(tr.pattern.verdict.confined());
    }
}

TEST_CASE("shift covariance: patterns depend only on the phase mod period") {
    auto def = kmt(3, 3);  // a has period 8
    TraceOptions base;
    auto t0 = trace_pattern(def, {}, base);
    TraceOptions shifted = base;
    shifted.phase = 8;
    auto t8 = trace_pattern(def, {}, shifted);
    CHECK(tokens_str(t0.pattern) == tokens_str(t8.pattern));
    CHECK(t0.pattern.verdict.kind == t8.pattern.verdict.kind);
    CHECK(t0.pattern.verdict.exit_step == t8.pattern.verdict.exit_step);
}

TEST_CASE("trace input validation") {
    auto def = kmt(2, 2);
    PerturbationSpec bad;
    bad.entry_index = 9;
    CHECK_THROWS_AS(trace_pattern(def, bad), Error);
    PerturbationSpec zscale;
    zscale.scale = Rat(0);
    CHECK_THROWS_AS(trace_pattern(def, zscale), Error);
    auto nosing = parse_mapping_1d("x[n+2] = x[n+1] + x[n]");
    CHECK_THROWS_AS(trace_pattern(nosing, {}), Error);  // no singular entry known
}

TEST_CASE("verify_constraint on the reduction coefficient relations") {
    SUBCASE("k=3 l=3: a[n+4] = -a[n]") {
        auto def = kmt(3, 3);
        auto res = verify_constraint(def, def.constraints[0]);
        CHECK(res.ok);
        CHECK(res.compliant_pattern.verdict.confined());
        CHECK(!res.violating_pattern.verdict.confined());
    }
    SUBCASE("k=3 l=5: a[n+6] = -a[n]") {
        auto def = kmt(3, 5);
        CHECK(verify_constraint(def, def.constraints[0]).ok);
    }
    SUBCASE("k=2 l=3: even exponent admits constants") {
        auto def = kmt(2, 3);  // defaults a == 1, constraint a[n+4] = a[n]
        auto res = verify_constraint(def, def.constraints[0]);
        CHECK(res.ok);
        CHECK(res.compliant_pattern.verdict.confined());
    }
    SUBCASE("constraints without nonzero rational solutions are rejected") {
        auto def = kmt(2, 2);
        dsl::CoeffConstraint degenerate;
        degenerate.coeff_name = "a";
        degenerate.kind = dsl::CoeffConstraint::Kind::Additive;
        degenerate.terms = {{0, 1}};
        CHECK_THROWS_AS(verify_constraint(def, degenerate), Error);

        dsl::CoeffConstraint sq;
        sq.coeff_name = "a";
        sq.kind = dsl::CoeffConstraint::Kind::Multiplicative;
        sq.terms = {{3, 2}, {0, -4}};
        CHECK_THROWS_AS(verify_constraint(def, sq), Error);
    }
}

TEST_CASE("derive_coefficient_constraints reproduces the published relations") {
    SUBCASE("QRT deautonomisation: a[n+5] a[n] = a[n+4] a[n+1] in shift-normal form") {
        auto def = parse_mapping_1d("x[n+1]*x[n-1] = 1 - a[n]/x[n]\na: symbolic(-12..12)");
        def.singular_entry_coeff = "a";
        auto res = derive_coefficient_constraints(def);
        REQUIRE(res.relations.size() == 1);
        const auto& r = res.relations[0];
        CHECK(r.is_binomial());
        auto c = r.to_constraint();
        CHECK(c.kind == dsl::CoeffConstraint::Kind::Multiplicative);
        // shift-normal form of a[n+3]a[n-2] = a[n+2]a[n-1]
        std::map<int, long> terms(c.terms.begin(), c.terms.end());
        CHECK(terms == std::map<int, long>({{5, 1}, {0, 1}, {4, -1}, {1, -1}}));
        // its characteristic polynomial has only unit roots
        auto rc = spectral::classify(spectral::charpoly_of_constraint(c));
        CHECK(rc.all_roots_of_unity);
        CHECK(rc.largest_root_modulus == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("full H-V deautonomisation: a[n+3] - 2a[n+2] - 2a[n+1] + a[n] = 0") {
        auto def = parse_mapping_1d(
            "x[n+1] + x[n-1] = x[n] + a[n]/x[n] + 1/x[n]^2\na: symbolic(-12..12)");
        def.singular_entry = Rat(0);
        auto res = derive_coefficient_constraints(def);
        CHECK(res.reference_used_zero_coeff);  // constant a does not confine; a == 0 does
        REQUIRE(res.relations.size() == 1);
        const auto& r = res.relations[0];
        CHECK(r.is_linear());
        auto c = r.to_constraint();
        std::map<int, long> terms(c.terms.begin(), c.terms.end());
        bool direct = terms == std::map<int, long>({{3, 1}, {2, -2}, {1, -2}, {0, 1}});
        bool negated = terms == std::map<int, long>({{3, -1}, {2, 2}, {1, 2}, {0, -1}});
        CHECK((direct || negated));
        auto rc = spectral::classify(spectral::charpoly_of_constraint(c));
        CHECK(std::abs(rc.dynamical_degree - 2.6180339887498949) < 1e-9);
    }
    SUBCASE("constant coefficient: empty relation set") {
        auto def = builtin_mapping("qrt_example");
        auto res = derive_coefficient_constraints(def);
        CHECK(res.relations.empty());
    }
    SUBCASE("window too small names the required size") {
        auto def = parse_mapping_1d("x[n+1]*x[n-1] = 1 - a[n]/x[n]\na: symbolic(0..2)");
        def.singular_entry_coeff = "a";
        try {
            derive_coefficient_constraints(def);
            FAIL("expected a window error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::window);
            CHECK(std::string(e.what()).find("need at least") != std::string::npos);
        }
    }
    SUBCASE("higher-order mappings are rejected for derivation") {
        auto def = kmt(2, 3);
        def.coeffs["a"] = CoeffSpec::symbolic(-12, 12);
        CHECK_THROWS_AS(derive_coefficient_constraints(def), Error);
    }
}

TEST_CASE("pattern JSON export") {
    auto tr = confinement_verdict(kmt(3, 3));
    std::string js = pattern_to_json(tr.pattern);
    CHECK(js.find("\"verdict\": \"confined\"") != std::string::npos);
    CHECK(js.find("\"kind\": \"pole\", \"order\": 3") != std::string::npos);
}
