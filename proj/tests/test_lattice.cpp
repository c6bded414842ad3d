#include <doctest.h>

#include "entropyforge/degree/engine.hpp"
#include "entropyforge/lattice/conditions.hpp"
#include "entropyforge/lattice/reduce.hpp"

using namespace entropyforge;
using namespace entropyforge::dsl;
using namespace entropyforge::lattice;

namespace {

LatticeDef kdv() { return builtin_lattice("kdv_lattice"); }
LatticeDef kmt(long k) { return builtin_lattice("kmt_lattice", {{"k", Rat(k)}}); }

const ConditionReport& report(const std::vector<ConditionReport>& rs, const std::string& id) {
    for (const auto& r : rs)
        if (r.id == id) return r;
    throw std::runtime_error("no condition " + id);
}

}  // namespace

TEST_CASE("evolution on generic data stays finite and nonzero") {
    Rect rect{1, 6, 1, 6};
    auto init = generic_staircase(lshape_path(rect), kDefaultSeed);
    auto state = evolve(kdv(), init, rect);
    CHECK(state.unresolved.empty());
    int count = 0;
    for (int m = 1; m <= 6; ++m) {
        for (int n = 1; n <= 6; ++n) {
            REQUIRE(state.has({m, n}));
            CHECK(!state.at({m, n}).is_zero());
            ++count;
        }
    }
    CHECK(count == 36);
}

TEST_CASE("evolution locality: every computed site satisfies the rule exactly") {
    Rect rect{1, 5, 1, 5};
    auto def = kmt(2);
    auto init = generic_staircase(lshape_path(rect), 42);
    auto state = evolve(def, init, rect);
    for (const Site& s : state.computed) {
        auto var = [&](int dm, int dn) { return state.at({s.m + dm, s.n + dn}); };
        auto coeff = [&](const std::string& nm, int dm, int dn) {
            return def.coeff_field(nm).at(s.m + dm, s.n + dn);
        };
        CHECK(dsl::eval2d<Rat>(*def.rhs, var, coeff) == state.at(s));
    }
}

TEST_CASE("single-seed singularity: basic orders around the entry") {
    // seed at (1,1) on the double-diagonal staircase through c = 2
    auto path = zigzag_path(2, -1, 4);
    Rect rect{0, 4, -2, 3};

    SUBCASE("lattice KdV: orders -1, -1 then +1 at the diagonal successor") {
        auto res = trace_lattice_singularity(kdv(), path, {{{1, 1}, Rat(1)}}, rect);
        CHECK(res.grid.at({2, 1}) == sing::Token::pole(1));
        CHECK(res.grid.at({1, 2}) == sing::Token::pole(1));
        CHECK(res.grid.at({2, 2}) == sing::Token::zero(1));
        CHECK(res.verdict.confined());
    }
    SUBCASE("power-k lattice: orders -k, -k then +1") {
        for (long k : {2L, 3L}) {
            auto res = trace_lattice_singularity(kmt(k), path, {{{1, 1}, Rat(1)}}, rect);
            CHECK(res.grid.at({2, 1}) == sing::Token::pole(k));
            CHECK(res.grid.at({1, 2}) == sing::Token::pole(k));
            CHECK(res.grid.at({2, 2}) == sing::Token::zero(1));
            CHECK(res.verdict.confined());
            // every other computed site is order zero
            for (const auto& [s, t] : res.grid) {
                bool special = (s == Site{1, 1}) || (s == Site{2, 1}) || (s == Site{1, 2}) ||
                               (s == Site{2, 2});
                if (!special) CHECK(!t.singular());
            }
        }
    }
}

TEST_CASE("two adjacent seeds reproduce the longer five-site pattern") {
    // seeds x[m+1,n] = eps and x[m,n+1] = kappa eps for (m,n) = (1,1)
    auto path = zigzag_path(3, -1, 5);
    Rect rect{0, 5, -2, 4};
    for (long k : {2L, 3L}) {
        auto res =
            trace_lattice_singularity(kmt(k), path, {{{2, 1}, Rat(1)}, {{1, 2}, Rat(5, 7)}}, rect);
        CHECK(res.grid.at({3, 1}) == sing::Token::pole(k));
        CHECK(res.grid.at({2, 2}) == sing::Token::pole(k));
        CHECK(res.grid.at({1, 3}) == sing::Token::pole(k));
        CHECK(res.grid.at({3, 2}) == sing::Token::zero(1));
        CHECK(res.grid.at({2, 3}) == sing::Token::zero(1));
        CHECK(res.verdict.confined());
        CHECK(res.grid.at({3, 3}) == sing::Token::regular());
    }
}

TEST_CASE("lengthening the diagonal of initial zeros lengthens the pattern similarly") {
    // three seeds on the diagonal, all on the staircase through c = 4
    auto path = zigzag_path(4, -1, 6);
    Rect rect{0, 6, -3, 5};
    auto res = trace_lattice_singularity(
        kmt(2), path, {{{3, 1}, Rat(1)}, {{2, 2}, Rat(5, 7)}, {{1, 3}, Rat(3, 11)}}, rect);
    CHECK(res.verdict.confined());
    int poles = 0, zeros = 0;
    for (const auto& [s, t] : res.grid) {
        if (t.kind == sing::Token::Kind::Pole) {
            CHECK(t.order == 2);
            CHECK(s.m + s.n == 5);  // all poles sit on the next anti-diagonal
            ++poles;
        }
        if (t.kind == sing::Token::Kind::Zero && !(s.m + s.n == 4)) {
            CHECK(s.m + s.n == 6);
            ++zeros;
        }
    }
    CHECK(poles == 4);
    CHECK(zeros == 3);
    CHECK(res.frontier == 6);
}

TEST_CASE("violating the additive condition leaves the singularity unconfined") {
    auto def = kdv();
    Rect rect{0, 5, -2, 3};
    // a(m,n) = m*n + 7 violates the additive condition
    def.coeffs["a"] = CoeffField2D::tabulate(-4, 9, -8, 9, [](int m, int n) { return Rat(m * n + 7); });
    auto res = trace_lattice_singularity(def, zigzag_path(2, -1, 5), {{{1, 1}, Rat(1)}}, rect);
    CHECK(!res.verdict.confined());
}

TEST_CASE("confinement condition reports") {
    Rect rect{0, 4, 0, 4};
    SUBCASE("additive condition holds for a = g(m) + h(n)") {
        auto def = kdv();
        auto field = CoeffField2D::tabulate(-2, 7, -2, 7,
                                            [](int m, int n) { return Rat(m * m + 3 * n); });
        def.coeffs["a"] = field;
        def.coeffs["b"] = field;
        auto rs = check_confinement_conditions(def, rect);
        CHECK(report(rs, "additive").applicable);
        CHECK(report(rs, "additive").holds);
        CHECK(report(rs, "a/b ratio").holds);
    }
    SUBCASE("even k admits constant coefficients") {
        auto def = kmt(2);
        def.coeffs["a"] = CoeffField2D::constant(Rat(5));
        def.coeffs["b"] = CoeffField2D::constant(Rat(5));
        auto rs = check_confinement_conditions(def, rect);
        CHECK(report(rs, "diagonal sign").holds);
    }
    SUBCASE("odd k rejects constants but accepts the checkerboard") {
        auto def = kmt(3);
        auto rs = check_confinement_conditions(def, rect);  // default (-1)^n fields
        CHECK(report(rs, "diagonal sign").holds);
        def.coeffs["a"] = CoeffField2D::constant(Rat(1));
        def.coeffs["b"] = CoeffField2D::constant(Rat(1));
        auto rs2 = check_confinement_conditions(def, rect);
        CHECK(!report(rs2, "diagonal sign").holds);
        CHECK(report(rs2, "diagonal sign").first_fail.has_value());
    }
    SUBCASE("constant c fails the five-term relation: 1+2+1 - 2*4 = -4") {
        auto def = builtin_lattice("kmt_full", {{"k", Rat(2)}});
        def.coeffs["c"] = CoeffField2D::constant(Rat(1));
        def.coeffs["d"] = CoeffField2D::constant(Rat(1));
        auto rs = check_confinement_conditions(def, rect);
        CHECK(!report(rs, "five-term c").holds);
        // and the defaults do satisfy both added-term conditions, for several k
        for (long k : {2L, 3L, 5L}) {
            auto good = builtin_lattice("kmt_full", {{"k", Rat(k)}});
            auto rs2 = check_confinement_conditions(good, rect);
            CHECK(report(rs2, "five-term c").holds);
            CHECK(report(rs2, "d from c").holds);
            CHECK(report(rs2, "diagonal sign").holds);
        }
    }
}

TEST_CASE("gauge normalization") {
    Rect rect{0, 5, 0, 5};
    SUBCASE("f == 1 leaves coefficients unchanged") {
        auto res = gauge_normalize(kdv(), rect);
        for (const auto& [d, v] : res.phi) CHECK(v == Rat(1));
        for (int m = 0; m <= 5; ++m)
            for (int n = 0; n <= 5; ++n)
                CHECK(res.normalized.coeff_field("a").at(m, n) == Rat(1));
    }
    SUBCASE("constant f == 4 gives the geometric diagonal gauge") {
        auto def = kdv();
        def.coeffs["a"] = CoeffField2D::constant(Rat(4));
        def.coeffs["b"] = CoeffField2D::constant(Rat(1));
        auto res = gauge_normalize(def, rect);
        // phi(s-2) = 4 phi(s) on each parity class: phi(s) ~ 2^{-s}
        for (const auto& [d, v] : res.phi) {
            if (res.phi.count(d + 2)) CHECK(v == Rat(4) * res.phi.at(d + 2));
        }
        for (int m = 0; m <= 5; ++m)
            for (int n = 0; n <= 5; ++n)
                CHECK(res.normalized.coeff_field("a").at(m, n) ==
                      res.normalized.coeff_field("b").at(m, n));
    }
    SUBCASE("ratio depending on m+n is not gauge-equivalent") {
        auto def = kdv();
        def.coeffs["a"] = CoeffField2D::periodic(CoeffField2D::Kind::PeriodicSum, {Rat(1), Rat(3), Rat(9)});
        def.coeffs["b"] = CoeffField2D::constant(Rat(1));
        CHECK_THROWS_AS(gauge_normalize(def, rect), Error);
    }
}

TEST_CASE("power-1 lattice matches lattice KdV under the alternating-sign gauge") {
    auto kmt1 = parse_lattice(
        "x[m,n] = -x[m-1,n-1] + a[m,n-1]/x[m,n-1]^1 + b[m-1,n]/x[m-1,n]^1\n"
        "a: const 1\nb: const 1");
    kmt1.k = 1;
    Rect rect{1, 6, 1, 6};
    auto path = lshape_path(rect);
    auto init_kdv = generic_staircase(path, 77);
    StaircaseInit<Rat> init_kmt;
    init_kmt.path = path;
    for (const auto& [s, v] : init_kdv.values) {
        init_kmt.values[s] = s.m % 2 == 0 ? v : -v;  // x -> (-1)^m x
    }
    auto a = evolve(kdv(), init_kdv, rect);
    auto b = evolve(kmt1, init_kmt, rect);
    for (const Site& s : a.computed) {
        Rat expect = s.m % 2 == 0 ? a.at(s) : -a.at(s);
        CHECK(b.at(s) == expect);
    }
}

TEST_CASE("reduction to the order-(l+1) mapping cross-validates against the lattice") {
    struct Case {
        long k, l;
    };
    for (Case c : {Case{2, 2}, Case{2, 3}, Case{3, 3}}) {
        CAPTURE(c.k);
        CAPTURE(c.l);
        auto map1d = builtin_mapping("kmt_reduction", {{"k", Rat(c.k)}, {"l", Rat(c.l)}});
        // sized so ten fresh 1D indices appear while exact value heights
        // (which grow like k^steps) stay small
        Rect rect{1, 2, 1, static_cast<int>(std::max(c.l + 2, 12 - c.l))};
        // lattice coefficients lifted from the 1D sequence through j = l*m + n
        auto def = kmt(c.k);
        def.coeffs["a"] = lattice_field_from_sequence(map1d.coeff_spec("a"), c.l, rect, 4);
        def.coeffs["b"] = def.coeffs["a"];

        // the reduction of that lattice returns the same coefficient sequence
        auto red = reduce_to_mapping(def, c.l);
        CHECK(red.k == c.k);
        for (long j = 0; j < 2 * (c.l + 1); ++j) {
            CHECK(red.map.coeff_spec("a").at(j) == map1d.coeff_spec("a").at(j));
        }

        // 1D orbit u_j covering exactly the indices the region touches
        long max_index = c.l * rect.m1 + rect.n1;
        auto u = generic_orbit(map1d, static_cast<int>(max_index) + 1 - map1d.order());
        auto path = lshape_path(rect);
        StaircaseInit<Rat> init;
        init.path = path;
        for (const Site& s : path) {
            long j = red.index_of(s);
            REQUIRE(j >= 0);
            init.values[s] = u[static_cast<size_t>(j)];
        }
        auto state = evolve(def, init, rect);
        CHECK(state.unresolved.empty());
        int fresh = 0;
        for (const Site& s : state.computed) {
            long j = red.index_of(s);
            REQUIRE(j < static_cast<long>(u.size()));
            CHECK(state.at(s) == u[static_cast<size_t>(j)]);
            if (j >= map1d.order()) ++fresh;
        }
        CHECK(fresh >= 10);
    }
}

TEST_CASE("reduction guards") {
    CHECK_THROWS_AS(reduce_to_mapping(kmt(2), 1), Error);
    CHECK_THROWS_AS(reduce_to_mapping(kdv(), 2), Error);
    // odd-k checkerboard field is incompatible with odd l
    auto def = kmt(3);
    CHECK_THROWS_AS(reduce_to_mapping(def, 3), Error);
    // but fine for even l
    auto red = reduce_to_mapping(def, 4);
    CHECK(red.map.coeff_spec("a").at(0) == Rat(1));
    CHECK(red.map.coeff_spec("a").at(1) == Rat(-1));
    // full reduction requires the fully deautonomised lattice
    CHECK_THROWS_AS(reduce_to_mapping(kmt(2), 2, true), Error);
    auto full = reduce_to_mapping(builtin_lattice("kmt_full", {{"k", Rat(2)}}), 2, true);
    CHECK(full.map.coeffs.count("c") == 1);
    CHECK(full.map.coeffs.count("d") == 1);
    CHECK(full.map.constraints.size() == 2);
}

TEST_CASE("conserved quantity of the even-order reductions") {
    SUBCASE("l=2, k=2: exactly constant along an 8-step generic orbit") {
        auto map = builtin_mapping("kmt_reduction", {{"k", Rat(2)}, {"l", Rat(2)}});
        auto orbit = generic_orbit(map, 8);
        auto q = conserved_quantity(map, orbit);
        REQUIRE(q.size() >= 6);
        for (size_t i = 1; i < q.size(); ++i) CHECK(q[i] == q[0]);
    }
    SUBCASE("l=4, k=2: constant along a 10-step orbit") {
        auto map = builtin_mapping("kmt_reduction", {{"k", Rat(2)}, {"l", Rat(4)}});
        auto orbit = generic_orbit(map, 10);
        auto q = conserved_quantity(map, orbit);
        REQUIRE(q.size() >= 2);
        for (size_t i = 1; i < q.size(); ++i) CHECK(q[i] == q[0]);
    }
    SUBCASE("odd l is rejected") {
        auto map = builtin_mapping("kmt_reduction", {{"k", Rat(2)}, {"l", Rat(3)}});
        auto orbit = generic_orbit(map, 8);
        CHECK_THROWS_AS(conserved_quantity(map, orbit), Error);
    }
    SUBCASE("orbit too short") {
        auto map = builtin_mapping("kmt_reduction", {{"k", Rat(2)}, {"l", Rat(4)}});
        auto orbit = generic_orbit(map, 2);
        orbit.resize(5);  // below l + 2
        CHECK_THROWS_AS(conserved_quantity(map, orbit), Error);
    }
}

TEST_CASE("KdV reductions grow at most quadratically") {
    using namespace entropyforge::degree;
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {1, 3}}) {
        CAPTURE(p);
        CAPTURE(q);
        auto map = kdv_reduction_mapping(p, q);
        DegreeOptions opt;
        opt.entries = 44;
        auto seq = degree_sequence(map, opt);
        long max_dd = 0;
        for (size_t i = 2; i < seq.degrees.size(); ++i) {
            long dd = seq.degrees[i] - 2 * seq.degrees[i - 1] + seq.degrees[i - 2];
            max_dd = std::max(max_dd, std::abs(dd));
        }
        CHECK(max_dd <= 6);
        CHECK(growth_ratios(seq).back().to_double() == doctest::Approx(1.0).epsilon(0.05));
    }
    CHECK_THROWS_AS(kdv_reduction_mapping(1, 1), Error);
}

TEST_CASE("lattice exports") {
    Rect rect{1, 3, 1, 3};
    auto state = evolve(kdv(), generic_staircase(lshape_path(rect), 5), rect);
    std::string csv = state_to_csv(state);
    CHECK(csv.substr(0, 10) == "m,n,value\n");
    auto res = trace_lattice_singularity(kdv(), zigzag_path(2, -1, 4), {{{1, 1}, Rat(1)}},
                                         Rect{0, 4, -2, 3});
    CHECK(grid_to_csv(res).find("2,2,0\n") != std::string::npos);
    CHECK(grid_to_json(res).find("\"verdict\": \"confined") != std::string::npos);
}
