#include <doctest.h>

#include <random>
#include <set>

#include "ptolemy/ideal.hpp"

using namespace ptolemy;

namespace {

Triangulation m004() { return load_triangulation(std::string(PTOLEMY_DATA_DIR) + "/m004.json"); }

LatticePoint pt(int a, int b, int c, int d) { return {a, b, c, d}; }

}  // namespace

TEST_CASE("relation offsets count") {
    CHECK(relation_offsets(2).size() == 1);
    CHECK(relation_offsets(3).size() == 4);
    CHECK(relation_offsets(4).size() == 10);  // ten relations per tet at n=4
}

TEST_CASE("raw relation points for n=3, s = 1000") {
    // c_{2001} c_{1110} - c_{2010} c_{1101} + c_{2100} c_{1011}
    LatticePoint s{1, 0, 0, 0};
    auto add = [&](LatticePoint e) {
        for (int i = 0; i < 4; ++i) e[i] += s[i];
        return e;
    };
    CHECK(add(pt(1, 0, 0, 1)) == pt(2, 0, 0, 1));
    CHECK(add(pt(0, 1, 1, 0)) == pt(1, 1, 1, 0));
    CHECK(add(pt(1, 0, 1, 0)) == pt(2, 0, 1, 0));
    CHECK(add(pt(0, 1, 0, 1)) == pt(1, 1, 0, 1));
    CHECK(add(pt(1, 1, 0, 0)) == pt(2, 1, 0, 0));
    CHECK(add(pt(0, 0, 1, 1)) == pt(1, 0, 1, 1));
}

TEST_CASE("peripheral multiplier examples") {
    Triangulation tri = m004();
    RegistryPtr primed = primed_symbol_registry(tri);
    VarId mp = primed->id("mp"), lp = primed->id("lp");

    const FacePairingRule& a = tri.rule("a");
    const FacePairingRule& b = tri.rule("b");
    // M_b = (I,I,I,I): multiplier 1 everywhere
    for (const auto& t : integral_points(2))
        CHECK(peripheral_multiplier(tri, primed, b, t) == Monomial::one());
    // M_a = (D_mu', D_lam'^-1, I, D_mu'), t = (1,1,0,0) -> mp lp^-1
    CHECK(peripheral_multiplier(tri, primed, a, pt(1, 1, 0, 0)) ==
          Monomial::var(mp) * Monomial::var(lp, -1));
    // t = (1,0,0,1) -> mp^2
    CHECK(peripheral_multiplier(tri, primed, a, pt(1, 0, 0, 1)) == Monomial::var(mp, 2));

    SUBCASE("n=3 vertex with t_v = 2 dressed by D_mu' gives mp1 mp2") {
        Triangulation t3 = tri;
        t3.n = 3;
        RegistryPtr p3 = primed_symbol_registry(t3);
        Monomial m = peripheral_multiplier(t3, p3, a, pt(2, 0, 0, 1));
        // vertex 0 contributes mp1*mp2, vertex 3 (t_v=1, D_mu') contributes mp1
        CHECK(m == Monomial::var(p3->id("mp1"), 2) * Monomial::var(p3->id("mp2")));
    }
}

TEST_CASE("m004 n=2 enhanced ideal matches the reference relations exactly") {
    Triangulation tri = m004();
    IdealBundle bundle = build_ideal(tri, 2, IdealMode::Enhanced);
    REQUIRE(bundle.generators.size() == 2);
    const RegistryPtr& reg = bundle.registry;
    // the fixture selects x = c01_1 and y = c12_1 as representatives
    REQUIRE(reg->has("c01_1"));
    REQUIRE(reg->has("c12_1"));
    Polynomial r0 = Polynomial::parse(
        reg, "m^4*l*c01_1^2 + m^4*l*c12_1*c01_1 - m^4*c12_1^2");
    Polynomial r1 = Polynomial::parse(
        reg, "-1*c12_1^2 + m^4*l*c01_1^2 - m^2*c01_1*c12_1");
    CHECK(bundle.generators[0] == r0);
    CHECK(bundle.generators[1] == r1);
}

TEST_CASE("standard mode equals the enhanced ideal at m = l = 1") {
    Triangulation tri = m004();
    IdealBundle std_bundle = build_ideal(tri, 2, IdealMode::Standard);
    IdealBundle enh = build_ideal(tri, 2, IdealMode::Enhanced);
    REQUIRE(std_bundle.generators.size() == enh.generators.size());
    // specialize the enhanced generators at m = l = 1 by dropping eigenvalue
    // exponents, then compare in the standard bundle's registry
    MonomialOrder ord = std_bundle.default_order();
    for (std::size_t i = 0; i < enh.generators.size(); ++i) {
        std::vector<Term> terms;
        for (const auto& t : enh.generators[i].terms()) {
            Monomial m;
            for (const auto& [v, e] : t.mono.entries()) {
                if (enh.registry->role(v) == VarRole::Eigenvalue) continue;
                m = m * Monomial::var(std_bundle.registry->id(enh.registry->name(v)), e);
            }
            terms.push_back({m, t.coeff});
        }
        Polynomial specialized = Polynomial::from_terms(std_bundle.registry, terms);
        CHECK(specialized.normalized_content(ord) ==
              std_bundle.generators[i].normalized_content(ord));
    }
}

TEST_CASE("m004 n=3 enhanced: eight generators over the documented variables") {
    Triangulation tri = m004();
    IdealBundle bundle = build_ideal(tri, 3, IdealMode::Enhanced);
    CHECK(bundle.generators.size() == 8);
    auto coords = bundle.coordinate_vars();
    auto eigens = bundle.eigenvalue_vars();
    CHECK(coords.size() == 8);
    CHECK(eigens.size() == 4);
    std::set<std::string> names;
    for (VarId v : eigens) names.insert(bundle.registry->name(v));
    CHECK(names == std::set<std::string>{"m1", "m2", "l1", "l2"});
    // every generator has three quadratic coordinate terms
    for (const auto& g : bundle.generators) {
        CHECK(g.term_count() == 3);
        for (const auto& t : g.terms()) {
            int cdeg = 0;
            for (const auto& [v, e] : t.mono.entries())
                if (bundle.registry->role(v) == VarRole::PtolemyCoord) cdeg += e;
            CHECK(cdeg == 2);
        }
    }
}

TEST_CASE("generators are degree-2 homogeneous in the coordinates before reduction") {
    Triangulation tri = m004();
    for (int n : {2, 3}) {
        IdealBundle bundle = build_ideal(tri, n, IdealMode::Enhanced);
        for (const auto& g : bundle.generators)
            for (const auto& t : g.terms()) {
                int cdeg = 0;
                for (const auto& [v, e] : t.mono.entries())
                    if (bundle.registry->role(v) == VarRole::PtolemyCoord) cdeg += e;
                CHECK(cdeg == 2);
            }
    }
}

TEST_CASE("reduce and saturate") {
    Triangulation tri = m004();
    IdealBundle bundle = build_ideal(tri, 2, IdealMode::Enhanced);

    SUBCASE("fixing y = 1 appends the reduction and the witness") {
        IdealBundle red = reduce_and_saturate(bundle, {"c12_1"});
        CHECK(red.generators.size() == bundle.generators.size() + 2);
        CHECK(red.registry->has("w"));
        const Polynomial& fix = red.generators[bundle.generators.size()];
        CHECK(fix == Polynomial::parse(red.registry, "c12_1 - 1"));
        const Polynomial& sat = red.generators.back();
        CHECK(sat.term_count() == 2);
        CHECK(sat.degree_in(red.registry->id("w")) == 1);
        // witness generator touches every coordinate and eigenvalue
        auto sup = sat.support();
        CHECK(sup.size() == red.registry->size());
    }
    SUBCASE("empty fixes add only the witness") {
        IdealBundle red = reduce_and_saturate(bundle, {});
        CHECK(red.generators.size() == bundle.generators.size() + 1);
    }
    SUBCASE("fixing a non-ptolemy variable is an error") {
        CHECK_THROWS_AS(reduce_and_saturate(bundle, {"m"}), std::invalid_argument);
    }
}

TEST_CASE("diagonal action") {
    Triangulation tri = m004();

    SUBCASE("multiplier of an n=2 edge coordinate is the product of first entries") {
        DiagonalScaling s;
        s.entries = {{Rational(3), Rational(1, 3)}};
        // c_{01}: vertices 0 and 1, both on cusp 0: multiplier 3 * 3
        CHECK(diagonal_multiplier(tri, s, 0, pt(1, 1, 0, 0)) == Rational(9));
        // c_{02} with t = (1,0,1,0): 3 * 3
        CHECK(diagonal_multiplier(tri, s, 0, pt(1, 0, 1, 0)) == Rational(9));
        // full point (1,1,1,1) at n=4 picks up 3^2 * (1/3)^2 per ... product
        CHECK(diagonal_multiplier(tri, s, 0, pt(2, 0, 0, 0)) == Rational(1));
    }

    SUBCASE("identity scaling is the identity map") {
        IdealBundle bundle = build_ideal(tri, 2, IdealMode::Enhanced);
        PointClasses cls = build_point_classes(tri, 2, tri.representative_hint);
        DiagonalScaling s;
        s.entries = {{Rational(1), Rational(1)}};
        std::vector<std::complex<double>> point(bundle.registry->size(), {0.5, 0.25});
        CHECK(diagonal_action(bundle, tri, cls, s, point) == point);
    }

    SUBCASE("non-unimodular scaling is rejected") {
        IdealBundle bundle = build_ideal(tri, 2, IdealMode::Enhanced);
        PointClasses cls = build_point_classes(tri, 2, tri.representative_hint);
        DiagonalScaling s;
        s.entries = {{Rational(2), Rational(1)}};
        std::vector<std::complex<double>> point(bundle.registry->size(), {0.5, 0.25});
        CHECK_THROWS_AS(diagonal_action(bundle, tri, cls, s, point), std::invalid_argument);
    }

    SUBCASE("the three terms of any Ptolemy relation pick up one common multiplier") {
        std::mt19937 rng(5150);
        std::uniform_int_distribution<int> num(1, 5);
        for (int n : {2, 3}) {
            for (int trial = 0; trial < 8; ++trial) {
                // random diagonal scaling with product 1
                std::vector<Rational> diag;
                Rational prod(1);
                for (int j = 0; j < n - 1; ++j) {
                    Rational d(num(rng), num(rng));
                    diag.push_back(d);
                    prod *= d;
                }
                diag.push_back(prod.inverse());
                DiagonalScaling s;
                s.entries = {diag};
                for (int tet = 0; tet < tri.tet_count; ++tet)
                    for (const auto& off : relation_offsets(n)) {
                        auto add = [&](LatticePoint e) {
                            for (int i = 0; i < 4; ++i) e[i] += off[i];
                            return e;
                        };
                        Rational t1 = diagonal_multiplier(tri, s, tet, add(pt(1, 0, 0, 1))) *
                                      diagonal_multiplier(tri, s, tet, add(pt(0, 1, 1, 0)));
                        Rational t2 = diagonal_multiplier(tri, s, tet, add(pt(1, 0, 1, 0))) *
                                      diagonal_multiplier(tri, s, tet, add(pt(0, 1, 0, 1)));
                        Rational t3 = diagonal_multiplier(tri, s, tet, add(pt(1, 1, 0, 0))) *
                                      diagonal_multiplier(tri, s, tet, add(pt(0, 0, 1, 1)));
                        CHECK(t1 == t2);
                        CHECK(t2 == t3);
                    }
            }
        }
    }
}

TEST_CASE("export formats") {
    Triangulation tri = m004();
    IdealBundle bundle = reduce_and_saturate(build_ideal(tri, 2, IdealMode::Enhanced), {"c12_1"});

    SUBCASE("magma script declares the elimination ring") {
        std::string magma = export_bundle(bundle, ExportFormat::Magma);
        CHECK(magma.find("PolynomialRing(RationalField(), 5, \"elim\", 3)") != std::string::npos);
        CHECK(magma.find("EliminationIdeal(I, 3)") != std::string::npos);
        CHECK(magma.find("ideal<R |") != std::string::npos);
    }
    SUBCASE("singular script uses a block order") {
        std::string sing = export_bundle(bundle, ExportFormat::Singular);
        CHECK(sing.find("ring r = 0,") != std::string::npos);
        CHECK(sing.find("(dp(3), dp(2))") != std::string::npos);
        CHECK(sing.find("eliminate(I,") != std::string::npos);
    }
    SUBCASE("json round trip reproduces the bundle") {
        std::string text = export_bundle(bundle, ExportFormat::Json);
        IdealBundle back = import_bundle_json(text);
        CHECK(back.n == bundle.n);
        CHECK(back.mode == bundle.mode);
        REQUIRE(back.generators.size() == bundle.generators.size());
        REQUIRE(back.registry->size() == bundle.registry->size());
        for (VarId v = 0; v < bundle.registry->size(); ++v) {
            CHECK(back.registry->name(v) == bundle.registry->name(v));
            CHECK(back.registry->role(v) == bundle.registry->role(v));
        }
        MonomialOrder orda = bundle.default_order();
        for (std::size_t i = 0; i < bundle.generators.size(); ++i)
            CHECK(back.generators[i].str(orda) == bundle.generators[i].str(orda));
    }
    SUBCASE("n=3 singular script carries the eight relations plus reduction lines") {
        IdealBundle b3 = reduce_and_saturate(build_ideal(tri, 3, IdealMode::Enhanced),
                                             {"c0012_0", "c0111_0"});
        std::string sing = export_bundle(b3, ExportFormat::Singular);
        // 8 ptolemy + 2 fixes + 1 witness generators
        CHECK(b3.generators.size() == 11);
        std::size_t lines = 0;
        for (char ch : sing)
            if (ch == '\n') ++lines;
        CHECK(lines >= 14);
    }
}
