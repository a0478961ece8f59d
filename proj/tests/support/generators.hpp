#ifndef STRINGYZETA_TESTS_GENERATORS_HPP
#define STRINGYZETA_TESTS_GENERATORS_HPP

#include "stringyzeta/abstract.hpp"
#include "stringyzeta/errors.hpp"
#include "stringyzeta/laurent.hpp"
#include "stringyzeta/mmp.hpp"
#include "stringyzeta/ratexpr.hpp"
#include "stringyzeta/resolution_graph.hpp"

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>

namespace szt {

namespace sz = stringyzeta;

inline std::string fixture_path(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name));
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline sz::Rational random_rational(std::mt19937_64& rng, long long lo, long long hi,
                                    long long max_den = 4) {
    long long den = 1 + static_cast<long long>(rng() % static_cast<unsigned long long>(max_den));
    long long span = (hi - lo) * den;
    long long num = lo * den + static_cast<long long>(rng() % static_cast<unsigned long long>(span + 1));
    return sz::Rational(num, den);
}

inline sz::LaurentExpr random_laurent(std::mt19937_64& rng, bool with_symbols = true) {
    sz::LaurentExpr acc;
    int nterms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < nterms; ++t) {
        long long coeff = static_cast<long long>(rng() % 7) - 3;
        if (coeff == 0) coeff = 1;
        auto exp = [&rng]() {
            if (rng() % 2) return sz::Rational(0);
            return random_rational(rng, -2, 2, 3);
        };
        sz::LaurentExpr term =
            sz::LaurentExpr::term(sz::int_from_ll(coeff), exp(), exp(), exp(), exp());
        if (with_symbols && rng() % 3 == 0)
            term *= sz::LaurentExpr::symbol("C", 1 + static_cast<int>(rng() % 2));
        acc += term;
    }
    if (acc.is_zero()) acc = sz::LaurentExpr::one();
    return acc;
}

inline sz::LaurentExpr random_nonunit_monomial(std::mt19937_64& rng) {
    for (;;) {
        sz::Rational e[4] = {sz::Rational(0), sz::Rational(0), sz::Rational(0), sz::Rational(0)};
        bool nonzero = false;
        for (int i = 0; i < 4; ++i) {
            if (rng() % 2) continue;
            e[i] = random_rational(rng, -2, 2, 3);
            if (!e[i].is_zero()) nonzero = true;
        }
        if (!nonzero) continue;
        return sz::LaurentExpr::term(sz::Int(1), e[0], e[1], e[2], e[3]);
    }
}

inline sz::RationalExpr random_ratexpr(std::mt19937_64& rng, bool with_symbols = true) {
    sz::RationalExpr r{random_laurent(rng, with_symbols)};
    int nf = static_cast<int>(rng() % 3);
    for (int i = 0; i < nf; ++i)
        r *= sz::RationalExpr::inv_factor(random_nonunit_monomial(rng));
    if (rng() % 3 == 0) r.push_den_unit(random_nonunit_monomial(rng));
    return r;
}

struct GermOptions {
    int max_vertices = 8;
    int max_genus = 2;
    bool allow_branches = false;
    bool allow_extra_edge = true;
};

// Random negative-definite connected dual graph; retries until the germ
// conditions hold.
inline sz::ResolutionGraph random_germ(std::mt19937_64& rng, const GermOptions& opt = {}) {
    for (;;) {
        int n = 1 + static_cast<int>(rng() % static_cast<unsigned long long>(opt.max_vertices));
        std::vector<sz::GraphVertex> vs;
        for (int i = 0; i < n; ++i) {
            sz::GraphVertex v;
            v.id = "E" + std::to_string(i);
            unsigned long long gpick = rng() % 10;
            v.genus = gpick < 7 ? 0 : (gpick < 9 ? 1 : (opt.max_genus >= 2 ? 2 : 1));
            v.self_intersection = -(1 + static_cast<long long>(rng() % 6));
            vs.push_back(std::move(v));
        }
        std::vector<sz::GraphEdge> es;
        for (int i = 1; i < n; ++i) {
            int parent = static_cast<int>(rng() % static_cast<unsigned long long>(i));
            es.push_back({parent, i});
        }
        if (opt.allow_extra_edge && n >= 2 && rng() % 4 == 0) {
            int a = static_cast<int>(rng() % static_cast<unsigned long long>(n));
            int b = static_cast<int>(rng() % static_cast<unsigned long long>(n));
            if (a != b) es.push_back({std::min(a, b), std::max(a, b)});
        }
        std::vector<sz::GraphBranch> bs;
        if (opt.allow_branches) {
            static const sz::Rational pool[] = {sz::Rational(0),    sz::Rational(1, 2),
                                                sz::Rational(1, 3), sz::Rational(2, 3),
                                                sz::Rational(3, 4), sz::Rational(5, 6)};
            int nb = static_cast<int>(rng() % 3);
            for (int k = 0; k < nb; ++k) {
                sz::GraphBranch b;
                b.id = "B" + std::to_string(k);
                b.coefficient = pool[rng() % 6];
                b.attach = static_cast<int>(rng() % static_cast<unsigned long long>(n));
                bs.push_back(std::move(b));
            }
        }
        try {
            return sz::ResolutionGraph::from_indices("random", std::move(vs), std::move(es),
                                                     std::move(bs));
        } catch (const sz::DomainError&) {
            continue;
        }
    }
}

inline sz::ResolutionGraph random_germ_with_class(std::mt19937_64& rng, sz::GermClass cls,
                                                  const GermOptions& opt = {}) {
    for (;;) {
        sz::ResolutionGraph g = random_germ(rng, opt);
        if (sz::classify(g) == cls) return g;
    }
}

// Rebuilds the germ's fiber stratification as abstract data over its
// d-minimal model; an independent enumeration used for cross-module checks.
inline sz::StratifiedResolution stratified_from_germ(const sz::ResolutionGraph& g,
                                                     const sz::Rational& d) {
    sz::PartialModel model = sz::run_mmp(g, d);
    std::vector<sz::AbstractDivisor> divisors;
    const int n = static_cast<int>(g.vertices().size());
    for (int i = 0; i < n; ++i)
        divisors.push_back({g.vertices()[i].id, model.nu(i), model.N(i)});
    for (std::size_t k = 0; k < g.branches().size(); ++k)
        divisors.push_back({g.branches()[k].id, model.branch_nu(static_cast<int>(k)),
                            sz::Rational(0)});

    sz::SymbolTable symbols;
    std::map<std::vector<int>, sz::StratumClass> strata;
    strata[{}].symbolic = sz::LaurentExpr();
    const sz::LaurentExpr L = sz::LaurentExpr::variable(sz::Var::L);
    for (int i = 0; i < n; ++i) {
        const auto& v = g.vertices()[i];
        int delta = g.incidence(i);
        sz::LaurentExpr cls;
        if (v.genus == 0) {
            cls = L + sz::LaurentExpr::one() - sz::LaurentExpr::integer(delta);
        } else {
            symbols.emplace(v.id, sz::curve_symbol(v.id, v.genus));
            cls = sz::LaurentExpr::symbol(v.id) - sz::LaurentExpr::integer(delta);
        }
        strata[{i}].symbolic = cls;
    }
    std::map<std::pair<int, int>, int> pairs;
    for (const auto& e : g.edges()) pairs[{e.a, e.b}] += 1;
    for (const auto& [pr, count] : pairs)
        strata[{pr.first, pr.second}].symbolic = sz::LaurentExpr::integer(count);
    for (std::size_t k = 0; k < g.branches().size(); ++k) {
        std::vector<int> key = {g.branches()[k].attach, n + static_cast<int>(k)};
        std::sort(key.begin(), key.end());
        strata[key].symbolic = sz::LaurentExpr::one();
    }
    return sz::StratifiedResolution(g.name(), 2, false, std::move(divisors), std::move(symbols),
                                    std::move(strata));
}

// Complete synthetic stratification with palindromic closed strata built from
// points, projective spaces and smooth curves; open classes by Moebius
// inversion.
inline sz::StratifiedResolution random_complete_stratification(std::mt19937_64& rng) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    const int nd = static_cast<int>(rng() % static_cast<unsigned long long>(std::min(dim, 2) + 1));
    const sz::LaurentExpr uv =
        sz::LaurentExpr::variable(sz::Var::U) * sz::LaurentExpr::variable(sz::Var::V);

    // H of a disjoint union of products of {point, P^k, genus-g curve} blocks
    // with total dimension exactly total_dim, so Poincare duality holds with
    // the right twist.
    auto random_block_product = [&](int total_dim) {
        sz::LaurentExpr h = sz::LaurentExpr::one();
        int left = total_dim;
        while (left > 0) {
            if (rng() % 2 == 0) {
                int k = 1 + static_cast<int>(rng() % static_cast<unsigned long long>(left));
                sz::LaurentExpr p;
                for (int i = 0; i <= k; ++i) p += uv.pow(static_cast<unsigned long>(i));
                h *= p;
                left -= k;
            } else {
                int genus = static_cast<int>(rng() % 3);
                h *= sz::curve_symbol("tmp", genus).hodge;
                left -= 1;
            }
        }
        int copies = 1 + static_cast<int>(rng() % 2);
        return h * sz::LaurentExpr::integer(copies);
    };

    // closed strata H(E_I), each smooth projective of dimension dim - |I|
    std::map<std::vector<int>, sz::LaurentExpr> closed;
    for (unsigned mask = 0; mask < (1u << nd); ++mask) {
        std::vector<int> key;
        for (int b = 0; b < nd; ++b)
            if (mask & (1u << b)) key.push_back(b);
        if (static_cast<int>(key.size()) > dim) continue;
        closed[key] = random_block_product(dim - static_cast<int>(key.size()));
    }
    // open classes H(E_I^o) = sum_{J >= I} (-1)^{|J|-|I|} H(E_J)
    std::map<std::vector<int>, sz::StratumClass> strata;
    for (const auto& [key, h] : closed) {
        sz::LaurentExpr open = h;
        for (const auto& [key2, h2] : closed) {
            if (key2.size() <= key.size()) continue;
            if (!std::includes(key2.begin(), key2.end(), key.begin(), key.end())) continue;
            if ((key2.size() - key.size()) % 2 == 1)
                open -= h2;
            else
                open += h2;
        }
        sz::StratumClass c;
        c.hodge = open;
        strata[key] = std::move(c);
    }

    std::vector<sz::AbstractDivisor> divisors;
    for (int i = 0; i < nd; ++i) {
        sz::AbstractDivisor d;
        d.id = "E" + std::to_string(i);
        d.nu = random_rational(rng, 0, 3, 4);
        if (d.nu.sign() <= 0) d.nu = sz::Rational(1, 2);
        d.N = random_rational(rng, -2, 2, 4);
        divisors.push_back(std::move(d));
    }
    return sz::StratifiedResolution("synthetic", dim, true, std::move(divisors), {},
                                    std::move(strata));
}

} // namespace szt

#endif
