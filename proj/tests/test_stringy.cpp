#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stringyzeta/errors.hpp"
#include "stringyzeta/io.hpp"
#include "stringyzeta/stringy.hpp"

#include "support/generators.hpp"

#include <numeric>
#include <random>

namespace sz = stringyzeta;
using sz::Int;
using sz::LaurentExpr;
using sz::Rational;
using sz::RationalExpr;
using sz::UniPoly;
using sz::UniRationalFn;
using sz::Var;

namespace {

sz::ResolutionGraph fixture_germ(const std::string& name) {
    return sz::parse_germ_json(szt::read_fixture(name));
}

// L^(nu + s N) as the monomial L^nu T^(-N)
LaurentExpr power_monomial(const Rational& nu, const Rational& N) {
    return LaurentExpr::term(Int(1), nu, -N, Rational(0), Rational(0));
}

const LaurentExpr kL = LaurentExpr::variable(Var::L);
const LaurentExpr kOne = LaurentExpr::one();

// X = L^((1-d)(1-s))
LaurentExpr X_of(const Rational& d) {
    return power_monomial(Rational(1) - d, -(Rational(1) - d));
}

UniRationalFn lin_inv(const Rational& a0, const Rational& a1) {
    return UniRationalFn::inverse_linear(a0, a1);
}

// checks z_euler(s0) == chi(Z_motivic with T -> L^(-s0)); skips s0 hitting a
// pole of either side
void check_euler_consistency(const sz::StringyZeta& zm, const UniRationalFn& fn,
                             const Rational& s0) {
    if (fn.den().eval(s0).is_zero()) return;
    sz::Assignment a;
    a.vars.emplace(Var::T, RationalExpr(LaurentExpr::variable(Var::L, -s0)));
    RationalExpr sub;
    try {
        sub = substitute(zm.expr(), a);
    } catch (const sz::DomainError&) {
        return; // a denominator factor vanished at this sample
    }
    std::variant<Rational, sz::PoleReport> chi;
    try {
        chi = sz::euler_value(sub, zm.symbols);
    } catch (const std::invalid_argument&) {
        return;
    }
    if (std::holds_alternative<sz::PoleReport>(chi)) return;
    CHECK(std::get<Rational>(chi) == fn.num().eval(s0) / fn.den().eval(s0));
}

} // namespace

TEST_CASE("zeta: closed chain of rational curves, motivic level") {
    // r (L-1)^2 (1/(X-1)^2 + 1/(X-1)) with X = L^((1-d)(1-s))
    for (const char* name : {"cycle-r2.json", "cycle-r3.json", "cycle-r5.json"}) {
        auto g = fixture_germ(name);
        long long r = static_cast<long long>(g.vertices().size());
        for (const char* ds : {"0", "1/3", "9/10"}) {
            Rational d = Rational::parse(ds);
            auto z = sz::zeta(g, d, sz::Level::motivic);
            RationalExpr invx = RationalExpr::inv_factor(X_of(d));
            RationalExpr expected = RationalExpr{(kL - kOne).pow(2) * LaurentExpr::integer(r)} *
                                    (invx * invx + invx);
            CHECK(sz::ratfn_equal(z.expr(), expected));
        }
    }
}

TEST_CASE("zeta: tangent-branch germ at d = 1, euler level") {
    // k^2/(2 s^2) - k/(2 s)
    for (long long k : {1, 2, 3, 5}) {
        auto g = fixture_germ("tangent-branch-kappa" + std::to_string(k) + ".json");
        auto z = sz::zeta(g, Rational(1), sz::Level::euler);
        UniPoly s = UniPoly::variable();
        UniRationalFn expected(UniPoly(Rational(k * k, 2)), s * s);
        expected = expected - UniRationalFn(UniPoly(Rational(k, 2)), s);
        CHECK(z.fn() == expected);
    }
}

TEST_CASE("zeta: four-legged strictly lc germs, euler level") {
    // k/((1-d)^2 (1-s)^2) + 6/((1-d)(1-s))
    for (auto [name, k] : std::vector<std::pair<const char*, long long>>{
             {"case3-k0.json", 0}, {"case3-k1.json", 1}, {"case3-k3.json", 3}}) {
        for (const char* ds : {"0", "1/2", "9/10"}) {
            Rational d = Rational::parse(ds);
            auto z = sz::zeta(fixture_germ(name), d, sz::Level::euler);
            UniRationalFn f = lin_inv(Rational(1) - d, d - Rational(1));
            UniRationalFn expected = f * f * UniRationalFn(Rational(k)) +
                                     f * UniRationalFn(Rational(6));
            CHECK(z.fn() == expected);
        }
    }
}

TEST_CASE("zeta: three-legged star, uncontracted range, euler level") {
    // (5 - 2d + (2d - 7/3)s) / ((1-d)(1-s)(1-d+(d-2/3)s))
    auto g = fixture_germ("fig7.json");
    for (const char* ds : {"0", "1/4", "1/2"}) {
        Rational d = Rational::parse(ds);
        auto z = sz::zeta(g, d, sz::Level::euler);
        UniPoly num = UniPoly::linear(Rational(5) - Rational(2) * d,
                                      Rational(2) * d - Rational(7, 3));
        UniPoly den = UniPoly::linear(Rational(1) - d, d - Rational(1)) *
                      UniPoly::linear(Rational(1) - d, d - Rational(2, 3));
        CHECK(z.fn() == UniRationalFn(num, den));
    }
    // contracted model for d >= 1/2: 8/((1-d)(1-s))
    for (const char* ds : {"1/2", "3/4"}) {
        Rational d = Rational::parse(ds);
        auto z = sz::zeta(g, d, sz::Level::euler, sz::ModelChoice::canonical);
        CHECK(z.fn() == UniRationalFn(Rational(8)) * lin_inv(Rational(1) - d, d - Rational(1)));
    }
}

TEST_CASE("veys invariants") {
    // genus-2 core: e(X) = chi(E)/a = (-2)/(-2) = 1
    {
        auto v = sz::veys_invariants(fixture_germ("genus2.json"));
        CHECK(v.e == Rational(1));
        CHECK(v.input_was_minimal);
        RationalExpr expected =
            RationalExpr{LaurentExpr::symbol("E")} *
            RationalExpr::over_factor(kL - kOne, LaurentExpr::variable(Var::L, Rational(-2)));
        CHECK(sz::ratfn_equal(v.E, expected));
    }
    // a germ with all a_i != 0 agrees with the plain discrepancy sum
    {
        auto g = fixture_germ("genus2.json");
        auto v = sz::veys_invariants(g);
        auto chi = sz::euler_value(sz::batyrev_expression(g),
                                   sz::SymbolTable{{"E", sz::curve_symbol("E", 2)}});
        REQUIRE(std::holds_alternative<Rational>(chi));
        CHECK(std::get<Rational>(chi) == v.e);
    }
    // zero-discrepancy chain: e = 1 + kappa/(a1 * 1) = 1 - 2 = -1
    {
        auto v = sz::veys_invariants(fixture_germ("zerochain.json"));
        CHECK(v.e == Rational(-1));
        LaurentExpr c = LaurentExpr::symbol("E0");
        RationalExpr expected{-(kL * c) - kL};
        CHECK(sz::ratfn_equal(v.E, expected));
    }
    // lc germs are out of scope
    CHECK_THROWS_AS(sz::veys_invariants(fixture_germ("a1.json")), sz::DomainError);
    CHECK_THROWS_AS(sz::veys_invariants(fixture_germ("cycle-r3.json")), sz::DomainError);
}

TEST_CASE("batyrev expression") {
    // A1: (L+1)(L-1)/(L-1) = L+1, chi = 2
    {
        auto b = sz::batyrev_expression(fixture_germ("a1.json"));
        CHECK(sz::ratfn_equal(b, RationalExpr{kL + kOne}));
        auto chi = sz::euler_value(b, {});
        REQUIRE(std::holds_alternative<Rational>(chi));
        CHECK(std::get<Rational>(chi) == Rational(2));
    }
    // smooth germ: the empty graph contributes the single point
    CHECK(sz::ratfn_equal(sz::batyrev_expression(sz::ResolutionGraph{}), RationalExpr::one()));
    // zero discrepancy: undefined
    CHECK_THROWS_AS(sz::batyrev_expression(fixture_germ("zerochain.json")), sz::DomainError);
    try {
        sz::batyrev_expression(fixture_germ("elliptic-kappa2.json"));
    } catch (const sz::DomainError& e) {
        CHECK(e.name() == "ZeroDiscrepancy");
    }
}

TEST_CASE("evaluation and limits at s = 1") {
    // tangent-branch d = 1, euler: k^2/2 - k/2
    for (long long k : {2, 5}) {
        auto z = sz::zeta(fixture_germ("tangent-branch-kappa" + std::to_string(k) + ".json"),
                          Rational(1), sz::Level::euler);
        auto r = sz::eval_or_limit_at_1(z);
        REQUIRE(std::holds_alternative<Rational>(r));
        CHECK(std::get<Rational>(r) == Rational(k * k, 2) - Rational(k, 2));
    }
    // closed chain, d < 1: double pole at both levels
    {
        auto g = fixture_germ("cycle-r3.json");
        auto ze = sz::eval_or_limit_at_1(sz::zeta(g, Rational(1, 3), sz::Level::euler));
        REQUIRE(std::holds_alternative<sz::PoleReport>(ze));
        CHECK(std::get<sz::PoleReport>(ze).order == 2);
        auto zm = sz::eval_or_limit_at_1(sz::zeta(g, Rational(1, 3), sz::Level::motivic));
        REQUIRE(std::holds_alternative<sz::PoleReport>(zm));
        CHECK(std::get<sz::PoleReport>(zm).order == 2);
    }
    // klt germ: constant zeta, evaluation 2 at the euler level
    {
        auto z = sz::zeta(fixture_germ("a1.json"), Rational(1), sz::Level::euler);
        CHECK(z.fn() == UniRationalFn(Rational(2)));
        auto r = sz::eval_or_limit_at_1(z);
        REQUIRE(std::holds_alternative<Rational>(r));
        CHECK(std::get<Rational>(r) == Rational(2));
    }
}

TEST_CASE("a once-blown-up smooth point has trivial zeta") {
    auto g = sz::ResolutionGraph::from_indices("smooth-blown", {{"E", 0, -1}}, {}, {});
    auto d = sz::log_discrepancies(g);
    CHECK(d.vertex_a[0] == Rational(2));
    for (const char* ds : {"0", "1/2", "1"}) {
        auto z = sz::zeta(g, Rational::parse(ds), sz::Level::motivic);
        CHECK(sz::ratfn_equal(z.expr(), RationalExpr::one()));
        CHECK(sz::zeta(g, Rational::parse(ds), sz::Level::euler).fn() ==
              UniRationalFn(Rational(1)));
    }
    // same value as the empty (unblown) smooth germ
    CHECK(sz::ratfn_equal(sz::zeta(sz::ResolutionGraph{}, Rational(1), sz::Level::motivic).expr(),
                          RationalExpr::one()));
}

TEST_CASE("klt germs: s-independent zeta equal to the Batyrev expression") {
    for (const char* name : {"a1.json", "a3.json"}) {
        auto g = fixture_germ(name);
        for (const char* ds : {"0", "1/2", "1"}) {
            auto z = sz::zeta(g, Rational::parse(ds), sz::Level::motivic);
            CHECK(sz::s_independent(z.expr()));
            CHECK(sz::ratfn_equal(z.expr(), sz::batyrev_expression(g)));
        }
    }
    std::mt19937_64 rng(31);
    szt::GermOptions opt;
    opt.allow_branches = true;
    for (int t = 0; t < 10; ++t) {
        auto g = szt::random_germ_with_class(rng, sz::GermClass::klt, opt);
        auto z = sz::zeta(g, Rational(1), sz::Level::motivic);
        CHECK(sz::s_independent(z.expr()));
        CHECK(sz::ratfn_equal(z.expr(), sz::batyrev_expression(g)));
    }
}

TEST_CASE("level consistency: Hodge specialization and Euler samples") {
    std::mt19937_64 rng(32);
    szt::GermOptions opt;
    opt.allow_branches = true;
    std::vector<sz::ResolutionGraph> germs = {fixture_germ("tangent-branch-kappa2.json"),
                                              fixture_germ("fig7.json"),
                                              fixture_germ("zerochain.json")};
    for (int t = 0; t < 8; ++t) germs.push_back(szt::random_germ(rng, opt));
    for (const auto& g : germs) {
        Rational d = sz::classify(g) == sz::GermClass::strictly_lc ? Rational(1, 2) : Rational(1);
        auto zm = sz::zeta(g, d, sz::Level::motivic);
        auto zh = sz::zeta(g, d, sz::Level::hodge);
        auto ze = sz::zeta(g, d, sz::Level::euler);
        CHECK(sz::ratfn_equal(zh.expr(), sz::hodge_specialize(zm.expr(), zm.symbols)));
        for (const auto& s0 : {Rational(2), Rational(7, 11), Rational(-1)})
            check_euler_consistency(zm, ze.fn(), s0);
    }
}

TEST_CASE("resolution independence under blow-ups") {
    std::mt19937_64 rng(33);
    szt::GermOptions opt;
    opt.allow_branches = true;
    const Rational dpool[] = {Rational(0), Rational(1, 2), Rational(9, 10), Rational(1)};
    for (int t = 0; t < 12; ++t) {
        auto g = szt::random_germ(rng, opt);
        Rational d = dpool[rng() % 4];
        if (d == Rational(1) && sz::classify(g) == sz::GermClass::strictly_lc)
            d = Rational(9, 10);
        sz::BlowupSite site = sz::BlowupSite::interior(
            static_cast<int>(rng() % g.vertices().size()));
        if (!g.edges().empty() && rng() % 2) {
            const auto& e = g.edges()[rng() % g.edges().size()];
            site = sz::BlowupSite::edge(e.a, e.b, 0);
        }
        auto h = sz::blow_up(g, site);
        CHECK(sz::ratfn_equal(sz::zeta(g, d, sz::Level::motivic).expr(),
                              sz::zeta(h, d, sz::Level::motivic).expr()));
        CHECK(sz::ratfn_equal(sz::zeta(g, d, sz::Level::hodge).expr(),
                              sz::zeta(h, d, sz::Level::hodge).expr()));
        CHECK(sz::zeta(g, d, sz::Level::euler).fn() == sz::zeta(h, d, sz::Level::euler).fn());
    }
}

TEST_CASE("model independence for d < 1: minimal versus canonical") {
    std::mt19937_64 rng(34);
    szt::GermOptions opt;
    opt.allow_branches = true;
    std::vector<sz::ResolutionGraph> germs = {fixture_germ("fig7.json"),
                                              fixture_germ("case3-k1.json")};
    for (int t = 0; t < 10; ++t) germs.push_back(szt::random_germ(rng, opt));
    for (const auto& g : germs) {
        for (const auto& d : {Rational(0), Rational(1, 2), Rational(4, 5)}) {
            auto zmin = sz::zeta(g, d, sz::Level::motivic, sz::ModelChoice::minimal);
            auto zcan = sz::zeta(g, d, sz::Level::motivic, sz::ModelChoice::canonical);
            CHECK(sz::ratfn_equal(zmin.expr(), zcan.expr()));
            CHECK(sz::zeta(g, d, sz::Level::euler, sz::ModelChoice::minimal).fn() ==
                  sz::zeta(g, d, sz::Level::euler, sz::ModelChoice::canonical).fn());
        }
    }
}

TEST_CASE("hodge-level limits agree with the Hodge image of the motivic limit") {
    std::mt19937_64 rng(37);
    std::vector<sz::ResolutionGraph> germs = {fixture_germ("genus2.json"),
                                              fixture_germ("zerochain.json"),
                                              fixture_germ("tangent-branch-kappa2.json")};
    for (int t = 0; t < 6; ++t)
        germs.push_back(sz::minimize(szt::random_germ_with_class(rng, sz::GermClass::not_lc)));
    for (const auto& g : germs) {
        if (g.empty() || sz::classify(g) != sz::GermClass::not_lc) continue;
        auto zm = sz::zeta(g, Rational(1), sz::Level::motivic);
        auto zh = sz::zeta(g, Rational(1), sz::Level::hodge);
        auto lm = sz::eval_or_limit_at_1(zm);
        auto lh = sz::eval_or_limit_at_1(zh);
        REQUIRE(std::holds_alternative<RationalExpr>(lm));
        REQUIRE(std::holds_alternative<RationalExpr>(lh));
        CHECK(sz::ratfn_equal(std::get<RationalExpr>(lh),
                              sz::hodge_specialize(std::get<RationalExpr>(lm), zm.symbols)));
    }
}

TEST_CASE("zeta does not depend on the chosen log minimal model at d = 1") {
    // at d = 1 different contraction orders can land on genuinely different
    // minimal models; the assembled zeta must not see the difference
    std::mt19937_64 rng(36);
    szt::GermOptions opt;
    opt.allow_branches = true;
    for (int t = 0; t < 10; ++t) {
        auto g = szt::random_germ(rng, opt);
        if (sz::classify(g) == sz::GermClass::strictly_lc) continue;
        const int n = static_cast<int>(g.vertices().size());
        auto reference = sz::zeta(g, Rational(1), sz::Level::motivic);
        // sanity: rebuilding from the model table reproduces the zeta
        auto rebuilt = sz::zeta_from_table(
            g, sz::nu_N(sz::run_mmp(g, Rational(1))), sz::Level::motivic);
        CHECK(sz::ratfn_equal(rebuilt.expr(), reference.expr()));
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        for (int p = 0; p < 4; ++p) {
            std::shuffle(order.begin(), order.end(), rng);
            auto model = sz::run_mmp(g, Rational(1), order);
            auto z = sz::zeta_from_table(g, sz::nu_N(model), sz::Level::motivic);
            CHECK(sz::ratfn_equal(z.expr(), reference.expr()));
        }
    }
}

TEST_CASE("stringy invariants match the zeta limit at 1 (small suite)") {
    std::mt19937_64 rng(35);
    std::vector<sz::ResolutionGraph> germs = {fixture_germ("genus2.json"),
                                              fixture_germ("zerochain.json")};
    for (int t = 0; t < 10; ++t)
        germs.push_back(sz::minimize(szt::random_germ_with_class(rng, sz::GermClass::not_lc)));
    for (const auto& g : germs) {
        if (sz::classify(g) != sz::GermClass::not_lc) continue;
        auto v = sz::veys_invariants(g);
        auto zm = sz::eval_or_limit_at_1(sz::zeta(g, Rational(1), sz::Level::motivic));
        REQUIRE(std::holds_alternative<RationalExpr>(zm));
        CHECK(sz::ratfn_equal(v.E, std::get<RationalExpr>(zm)));
        auto ze = sz::eval_or_limit_at_1(sz::zeta(g, Rational(1), sz::Level::euler));
        REQUIRE(std::holds_alternative<Rational>(ze));
        CHECK(std::get<Rational>(ze) == v.e);
    }
}
