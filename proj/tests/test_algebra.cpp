#include <doctest.h>

#include <complex>
#include <random>

#include "ptolemy/polynomial.hpp"

using namespace ptolemy;

namespace {

RegistryPtr make_xy_registry() {
    auto reg = std::make_shared<VariableRegistry>();
    reg->add("x");
    reg->add("y");
    reg->add("m");
    reg->add("l");
    return reg;
}

Polynomial random_poly(const RegistryPtr& reg, std::mt19937& rng, int max_terms = 6,
                       int max_deg = 3) {
    std::uniform_int_distribution<int> nterms(1, max_terms), exp(0, max_deg), coeff(-9, 9);
    std::vector<Term> terms;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Monomial m;
        for (VarId v = 0; v < reg->size(); ++v) m = m * Monomial::var(v, exp(rng) % (max_deg + 1));
        int c = coeff(rng);
        if (c == 0) c = 1;
        terms.push_back({m, Rational(c)});
    }
    return Polynomial::from_terms(reg, std::move(terms));
}

}  // namespace

TEST_CASE("rational arithmetic stays in lowest terms") {
    Rational a(6, 4);
    CHECK(a.numerator() == 3);
    CHECK(a.denominator() == 2);
    Rational b(-3, -6);
    CHECK(b.numerator() == 1);
    CHECK(b.denominator() == 2);
    CHECK((a + b).str() == "2");
    CHECK((a - a).is_zero());
    CHECK((Rational(2, 3) * Rational(3, 2)).is_one());
    CHECK(Rational::parse("-7/21").str() == "-1/3");
    CHECK_THROWS(Rational(1, 0));
    Rational big = Rational::parse("123456789012345678901234567890");
    CHECK((big * big).str() == "15241578753238836750495351562536198787501905199875019052100");
}

TEST_CASE("poly_arith: sums, differences, products") {
    auto reg = make_xy_registry();
    Polynomial x = Polynomial::variable(reg, reg->id("x"));
    Polynomial y = Polynomial::variable(reg, reg->id("y"));

    CHECK((x + y) + (x - y) == x.scaled(Rational(2)));
    CHECK((x + y) * (x - y) == x * x - y * y);

    // the first relation of the figure-eight n=2 system, built from factors
    Polynomial m = Polynomial::variable(reg, reg->id("m"));
    Polynomial l = Polynomial::variable(reg, reg->id("l"));
    Polynomial m4 = m * m * m * m;
    Polynomial built = m4 * l * x * x + m4 * l * y * x - m4 * y * y;
    CHECK(built == Polynomial::parse(reg, "m^4*l*x^2 + m^4*l*y*x - m^4*y^2"));
}

TEST_CASE("registry mismatch is a hard error") {
    auto reg1 = make_xy_registry();
    auto reg2 = make_xy_registry();
    Polynomial a = Polynomial::variable(reg1, 0);
    Polynomial b = Polynomial::variable(reg2, 0);
    CHECK_THROWS(a + b);
    CHECK_THROWS(a * b);
}

TEST_CASE("ring axioms on randomized inputs") {
    auto reg = make_xy_registry();
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial a = random_poly(reg, rng), b = random_poly(reg, rng), c = random_poly(reg, rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("substitute_monomial_map") {
    auto reg = std::make_shared<VariableRegistry>();
    VarId mp = reg->add("mp"), lp = reg->add("lp"), x = reg->add("x"), y = reg->add("y");
    VarId m = reg->add("m"), l = reg->add("l");

    SUBCASE("m'^2 (l')^-1 x^2 with m' -> m, l' -> m^2 l^-1 gives l x^2") {
        Polynomial p = Polynomial::monomial(
            reg, Monomial::var(mp, 2) * Monomial::var(lp, -1) * Monomial::var(x, 2));
        std::map<VarId, Monomial> map;
        map[mp] = Monomial::var(m);
        map[lp] = Monomial::var(m, 2) * Monomial::var(l, -1);
        auto sub = p.substitute_monomials(map);
        CHECK(sub.poly == Polynomial::monomial(reg, Monomial::var(l) * Monomial::var(x, 2)));
        CHECK(sub.clearing == Monomial::one());
    }

    SUBCASE("identity map leaves the polynomial unchanged") {
        Polynomial p = Polynomial::parse(reg, "3*x^2*y - 2*x + 7");
        auto sub = p.substitute_monomials({});
        CHECK(sub.poly == p);
        CHECK(sub.clearing == Monomial::one());
    }

    SUBCASE("clearing monomial is reported when denominators appear") {
        // x -> y^-1: x^2 + 1 becomes (1 + y^2) with clearing monomial y^2
        Polynomial p = Polynomial::parse(reg, "x^2 + 1");
        std::map<VarId, Monomial> map{{x, Monomial::var(y, -1)}};
        auto sub = p.substitute_monomials(map);
        CHECK(sub.clearing == Monomial::var(y, 2));
        CHECK(sub.poly == Polynomial::parse(reg, "1 + y^2"));
    }

    SUBCASE("substitution commutes with evaluation (oracle)") {
        std::mt19937 rng(777);
        std::uniform_real_distribution<double> dist(0.3, 1.7);
        for (int trial = 0; trial < 25; ++trial) {
            Polynomial p = random_poly(reg, rng, 5, 2);
            std::map<VarId, Monomial> map;
            map[x] = Monomial::var(m, 1) * Monomial::var(l, -1);
            map[y] = Monomial::var(l, 2);
            auto sub = p.substitute_monomials(map);
            for (int pt = 0; pt < 5; ++pt) {
                std::vector<std::complex<double>> vals(reg->size());
                for (auto& v : vals) v = {dist(rng), dist(rng)};
                // substituted variables take their monomial's value
                auto vals2 = vals;
                vals2[x] = vals[m] / vals[l];
                vals2[y] = vals[l] * vals[l];
                std::complex<double> lhs = sub.poly.evaluate(vals);
                std::complex<double> clear = 1.0;
                for (auto [v, e] : sub.clearing.entries()) clear *= std::pow(vals[v], e);
                std::complex<double> rhs = p.evaluate(vals2) * clear;
                CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("monomial order basics") {
    auto reg = std::make_shared<VariableRegistry>();
    VarId x = reg->add("x"), y = reg->add("y"), z = reg->add("z");
    VarId m = reg->add("m"), l = reg->add("l");

    MonomialOrder lex = MonomialOrder::lex({x, y, z});
    CHECK(lex.compare(Monomial::var(x), Monomial::var(y, 2)) == Cmp::Greater);

    MonomialOrder grevlex = MonomialOrder::grevlex({x, y, z});
    CHECK(grevlex.compare(Monomial::var(x) * Monomial::var(z), Monomial::var(y, 2)) == Cmp::Less);

    MonomialOrder block = MonomialOrder::block({{x}, {m, l}});
    CHECK(block.compare(Monomial::var(x), Monomial::var(m, 9) * Monomial::var(l, 9)) ==
          Cmp::Greater);
}

TEST_CASE("grevlex agrees with the textbook definition on all monomials of degree <= 3") {
    auto reg = std::make_shared<VariableRegistry>();
    VarId x = reg->add("x"), y = reg->add("y"), z = reg->add("z");
    MonomialOrder ord = MonomialOrder::grevlex({x, y, z});

    // oracle: u > v iff deg u > deg v, or degrees equal and the last nonzero
    // entry of u - v (in x,y,z listing) is negative
    auto oracle = [&](std::array<int, 3> u, std::array<int, 3> v) -> Cmp {
        int du = u[0] + u[1] + u[2], dv = v[0] + v[1] + v[2];
        if (du != dv) return du > dv ? Cmp::Greater : Cmp::Less;
        for (int i = 2; i >= 0; --i) {
            int d = u[i] - v[i];
            if (d != 0) return d < 0 ? Cmp::Greater : Cmp::Less;
        }
        return Cmp::Equal;
    };
    std::vector<std::array<int, 3>> all;
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
            for (int c = 0; a + b + c <= 3; ++c) all.push_back({a, b, c});
    for (const auto& u : all)
        for (const auto& v : all) {
            Monomial mu = Monomial::var(x, u[0]) * Monomial::var(y, u[1]) * Monomial::var(z, u[2]);
            Monomial mv = Monomial::var(x, v[0]) * Monomial::var(y, v[1]) * Monomial::var(z, v[2]);
            CHECK(ord.compare(mu, mv) == oracle(u, v));
        }
}

TEST_CASE("order axioms on 1000 random monomial triples") {
    auto reg = std::make_shared<VariableRegistry>();
    VarId x = reg->add("x"), y = reg->add("y"), z = reg->add("z");
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> exp(0, 5);
    auto rand_mono = [&]() {
        return Monomial::var(x, exp(rng)) * Monomial::var(y, exp(rng)) * Monomial::var(z, exp(rng));
    };
    for (auto ord : {MonomialOrder::lex({x, y, z}), MonomialOrder::grevlex({x, y, z}),
                     MonomialOrder::block({{x, y}, {z}})}) {
        for (int i = 0; i < 1000; ++i) {
            Monomial u = rand_mono(), v = rand_mono(), w = rand_mono();
            // antisymmetry
            Cmp uv = ord.compare(u, v);
            Cmp vu = ord.compare(v, u);
            CHECK(static_cast<int>(uv) == -static_cast<int>(vu));
            CHECK((uv == Cmp::Equal) == (u == v));
            // transitivity
            if (ord.compare(u, v) != Cmp::Less && ord.compare(v, w) != Cmp::Less)
                CHECK(ord.compare(u, w) != Cmp::Less);
            // multiplicativity
            CHECK(ord.compare(u * w, v * w) == uv);
        }
    }
}

TEST_CASE("canonical form: parse/serialize round trip, equal polys serialize equally") {
    auto reg = make_xy_registry();
    std::vector<VarId> vars{reg->id("x"), reg->id("y"), reg->id("m"), reg->id("l")};
    MonomialOrder ord = MonomialOrder::grevlex(vars);
    std::mt19937 rng(99);
    for (int i = 0; i < 30; ++i) {
        Polynomial p = random_poly(reg, rng);
        Polynomial q = Polynomial::parse(reg, p.str(ord));
        CHECK(p == q);
        CHECK(p.str(ord) == q.str(ord));
        // shuffled construction gives the identical canonical object
        std::vector<Term> terms(p.terms().begin(), p.terms().end());
        std::shuffle(terms.begin(), terms.end(), rng);
        CHECK(Polynomial::from_terms(reg, terms) == p);
    }
    // the canonical display format
    auto reg2 = std::make_shared<VariableRegistry>();
    VarId m = reg2->add("m"), l = reg2->add("l");
    Polynomial apoly = Polynomial::parse(reg2, "m^8*l - m^6*l - m^4*l^2 - 2*m^4*l - m^4 - m^2*l + l");
    CHECK(apoly.str(MonomialOrder::lex({m, l})) ==
          "m^8*l - m^6*l - m^4*l^2 - 2*m^4*l - m^4 - m^2*l + l");
}

TEST_CASE("normalized content and monomial content") {
    auto reg = make_xy_registry();
    MonomialOrder ord = MonomialOrder::grevlex({0, 1, 2, 3});
    Polynomial p = Polynomial::parse(reg, "4/6*x^2*y - 2*x*y");
    Polynomial n = p.normalized_content(ord);
    CHECK(n == Polynomial::parse(reg, "x^2*y - 3*x*y"));
    CHECK(n.monomial_content() == Monomial::var(reg->id("x")) * Monomial::var(reg->id("y")));
    CHECK(n.without_monomial_content() == Polynomial::parse(reg, "x - 3"));
}
