#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stringyzeta/errors.hpp"
#include "stringyzeta/io.hpp"
#include "stringyzeta/mmp.hpp"

#include "support/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace sz = stringyzeta;
using sz::Rational;

namespace {

sz::ResolutionGraph fixture_germ(const std::string& name) {
    return sz::parse_germ_json(szt::read_fixture(name));
}

sz::ResolutionGraph tangent_branch(long long kappa) {
    return fixture_germ("tangent-branch-kappa" + std::to_string(kappa) + ".json");
}

std::vector<std::string> contracted_ids(const sz::PartialModel& m) {
    std::vector<std::string> out;
    for (int i : m.contracted_sorted()) out.push_back(m.base().vertices()[i].id);
    return out;
}

Rational row(const std::vector<sz::NuRow>& rows, const std::string& id, bool want_nu) {
    for (const auto& r : rows)
        if (r.id == id) return want_nu ? r.nu : r.N;
    throw std::runtime_error("no row " + id);
}

} // namespace

TEST_CASE("contract: Mumford pull-backs through partial contractions") {
    // tangent-branch germ: contracting E1, the pull-back of E2 is E2 + 1/2 E1
    {
        auto g = tangent_branch(2);
        sz::PartialModel m(g, Rational(1));
        m = sz::contract(m, 1);
        auto pb = m.contraction_pullback(2);
        REQUIRE(pb.size() == 1);
        CHECK(pb.at(1) == Rational(1, 2));
        CHECK_THROWS_AS(sz::contract(m, 1), sz::DomainError);
        try {
            sz::contract(m, 1);
        } catch (const sz::DomainError& e) {
            CHECK(e.name() == "AlreadyContracted");
        }
    }
    // case (3) germ: contracting the legs E1, E2, the pull-back of E5 is
    // E5 + 1/2 E1 + 1/2 E2
    {
        auto g = fixture_germ("case3-k1.json");
        sz::PartialModel m(g, Rational(1, 2));
        m = sz::contract(m, 0);
        m = sz::contract(m, 1);
        auto pb = m.contraction_pullback(4); // E5
        REQUIRE(pb.size() == 2);
        CHECK(pb.at(0) == Rational(1, 2));
        CHECK(pb.at(1) == Rational(1, 2));
    }
}

TEST_CASE("run_mmp on the named germs") {
    // case (1): nothing to contract for any d < 1
    for (const char* d : {"0", "1/3", "9/10"}) {
        auto m = sz::run_mmp(fixture_germ("elliptic-kappa2.json"), Rational::parse(d));
        CHECK(m.contracted().empty());
        CHECK(m.nef());
    }
    // case (3): the four legs contract for 0 < d < 1
    for (const char* d : {"1/3", "1/2", "9/10"}) {
        auto m = sz::run_mmp(fixture_germ("case3-k1.json"), Rational::parse(d));
        CHECK(contracted_ids(m) == std::vector<std::string>{"E1", "E2", "E3", "E4"});
    }
    // tangent-branch germ at d = 1: only E1 contracts, and the remaining
    // log-divisor intersections match the worked values 1 and 0
    {
        auto g = tangent_branch(3);
        auto m = sz::run_mmp(g, Rational(1));
        CHECK(contracted_ids(m) == std::vector<std::string>{"E1"});
        CHECK(m.log_divisor_intersection(0) == Rational(1));
        CHECK(m.log_divisor_intersection(2) == Rational(0));
    }
    // tangent-branch germ at d < 1: E1 and E2 contract
    for (const char* d : {"0", "1/3", "3/4"}) {
        auto m = sz::run_mmp(tangent_branch(3), Rational::parse(d));
        CHECK(contracted_ids(m) == std::vector<std::string>{"E1", "E2"});
    }
    // d = 1 on a strictly lc germ is an error
    CHECK_THROWS_AS(sz::run_mmp(fixture_germ("fig7.json"), Rational(1)), sz::DomainError);
    try {
        sz::run_mmp(fixture_germ("cycle-r3.json"), Rational(1));
    } catch (const sz::DomainError& e) {
        CHECK(e.name() == "StrictlyLcAtDOne");
    }
}

TEST_CASE("canonical model: ample threshold of the three-legged star") {
    // case (1): canonical = minimal = the resolution
    {
        auto m = sz::canonical_model(fixture_germ("elliptic-kappa2.json"), Rational(1, 2));
        CHECK(m.contracted().empty());
        CHECK(m.ample());
    }
    // fig7: the legs contract exactly when d >= 1/2
    for (const char* d : {"1/2", "3/4"}) {
        auto m = sz::canonical_model(fixture_germ("fig7.json"), Rational::parse(d));
        CHECK(contracted_ids(m) == std::vector<std::string>{"E1", "E2", "E3"});
        for (int i : m.contracted()) CHECK(m.nu(i) >= Rational(1) - Rational::parse(d));
    }
    for (const char* d : {"1/4", "2/5"}) {
        auto m = sz::canonical_model(fixture_germ("fig7.json"), Rational::parse(d));
        CHECK(m.contracted().empty());
        // (K + d E + d sum E_i) . E_j = 1 - 2d > 0 on the legs
        for (int j = 1; j <= 3; ++j)
            CHECK(m.log_divisor_intersection(j) ==
                  Rational(1) - Rational(2) * Rational::parse(d));
    }
}

TEST_CASE("canonical model at d = 1 contracts the zero-intersection curve") {
    // after the minimal model of the tangent-branch germ, E2 has log-divisor
    // intersection exactly 0 and the log canonical model contracts it too
    auto g = tangent_branch(2);
    auto c = sz::canonical_model(g, Rational(1));
    CHECK(contracted_ids(c) == std::vector<std::string>{"E1", "E2"});
    CHECK(c.ample());
    CHECK(c.log_divisor_intersection(0).sign() > 0);
}

TEST_CASE("nu_N: the worked (nu, N) tables") {
    // d = 1 model: nu = (0, 1/2, 0; B 1/2), N = (-1/k, -1/k, -2/k; B 0)
    for (long long k : {1, 2, 3, 5}) {
        auto m = sz::run_mmp(tangent_branch(k), Rational(1));
        auto rows = sz::nu_N(m);
        CHECK(row(rows, "E0", true) == Rational(0));
        CHECK(row(rows, "E1", true) == Rational(1, 2));
        CHECK(row(rows, "E2", true) == Rational(0));
        CHECK(row(rows, "B", true) == Rational(1, 2));
        CHECK(row(rows, "E0", false) == Rational(-1, k));
        CHECK(row(rows, "E1", false) == Rational(-1, k));
        CHECK(row(rows, "E2", false) == Rational(-2, k));
        CHECK(row(rows, "B", false) == Rational(0));
    }
    // d < 1 model: nu_B = 1/2, nu0 = 1-d, nu1 = 3/2-d, nu2 = 2(1-d);
    // N0 = N1 = d-1-1/k, N2 = 2(d-1-1/k)
    for (long long k : {1, 2, 3, 5}) {
        for (const char* ds : {"0", "1/3", "3/4", "9/10"}) {
            Rational d = Rational::parse(ds);
            auto m = sz::run_mmp(tangent_branch(k), d);
            auto rows = sz::nu_N(m);
            CHECK(row(rows, "B", true) == Rational(1, 2));
            CHECK(row(rows, "E0", true) == Rational(1) - d);
            CHECK(row(rows, "E1", true) == Rational(3, 2) - d);
            CHECK(row(rows, "E2", true) == Rational(2) * (Rational(1) - d));
            CHECK(row(rows, "E0", false) == d - Rational(1) - Rational(1, k));
            CHECK(row(rows, "E1", false) == d - Rational(1) - Rational(1, k));
            CHECK(row(rows, "E2", false) == Rational(2) * (d - Rational(1) - Rational(1, k)));
            CHECK(row(rows, "B", false) == Rational(0));
        }
    }
}

TEST_CASE("property: termination, order independence, factorization") {
    std::mt19937_64 rng(21);
    szt::GermOptions opt;
    opt.allow_branches = true;
    const Rational ds[] = {Rational(0), Rational(1, 2), Rational(9, 10)};
    for (int t = 0; t < 50; ++t) {
        auto g = szt::random_germ(rng, opt);
        const int n = static_cast<int>(g.vertices().size());
        for (const auto& d : ds) {
            auto m = sz::run_mmp(g, d);
            CHECK(static_cast<int>(m.contracted().size()) <= n);
            CHECK(m.nef());

            // contracting in random orders gives the same contracted set
            auto reference = m.contracted_sorted();
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            for (int p = 0; p < 5; ++p) {
                std::shuffle(order.begin(), order.end(), rng);
                CHECK(sz::run_mmp(g, d, order).contracted_sorted() == reference);
            }

            // the canonical model contracts at least the minimal set
            auto c = sz::canonical_model(g, d);
            auto cs = c.contracted_sorted();
            CHECK(std::includes(cs.begin(), cs.end(), reference.begin(), reference.end()));
            CHECK(c.ample());
        }
    }
}

TEST_CASE("property: sign pattern of (nu, N) on final models") {
    std::mt19937_64 rng(22);
    szt::GermOptions opt;
    opt.allow_branches = true;
    int done = 0;
    while (done < 40) {
        auto g = szt::random_germ(rng, opt);
        ++done;
        // d < 1: the model pair is klt, all nu > 0, and nu + N = a
        for (const auto& d : {Rational(0), Rational(2, 3)}) {
            auto m = sz::run_mmp(g, d);
            auto disc = sz::log_discrepancies(g);
            for (std::size_t i = 0; i < g.vertices().size(); ++i) {
                CHECK(m.nu(static_cast<int>(i)).sign() > 0);
                CHECK(m.nu(static_cast<int>(i)) + m.N(static_cast<int>(i)) == disc.vertex_a[i]);
            }
            for (int i : m.contracted()) CHECK(m.nu(i) > Rational(1) - d);
        }
        // d = 1 on non-strictly-lc germs: remaining curves have nu = 0, N < 0
        if (sz::classify(g) != sz::GermClass::strictly_lc) {
            auto m = sz::run_mmp(g, Rational(1));
            for (std::size_t i = 0; i < g.vertices().size(); ++i) {
                if (m.is_contracted(static_cast<int>(i))) continue;
                CHECK(m.nu(static_cast<int>(i)) == Rational(0));
                CHECK(m.N(static_cast<int>(i)).sign() < 0);
            }
        }
    }
}
