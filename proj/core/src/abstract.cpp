#include "stringyzeta/abstract.hpp"

#include "stringyzeta/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace stringyzeta {

namespace {

// chi of a class polynomial: variables go to 1, symbols to their Euler
// numbers. Classes are polynomials, so plain substitution is enough.
Rational chi_of_class(const LaurentExpr& cls, const SymbolTable& symbols) {
    Rational acc(0);
    for (const auto& [m, c] : cls.terms()) {
        Rational t{Int(c)};
        for (const auto& [name, deg] : m.syms) {
            auto it = symbols.find(name);
            if (it == symbols.end())
                fail("MissingLevel", "symbol '" + name + "' has no declared Euler number");
            t *= it->second.euler.pow(deg);
        }
        acc += t;
    }
    return acc;
}

// Hodge polynomial of a class polynomial: L -> uv, symbols -> their Hodge
// polynomials.
LaurentExpr hodge_of_class(const LaurentExpr& cls, const SymbolTable& symbols) {
    Assignment a;
    a.vars.emplace(Var::L,
                   RationalExpr(LaurentExpr::variable(Var::U) * LaurentExpr::variable(Var::V)));
    for (const auto& [name, info] : symbols) a.symbols.emplace(name, RationalExpr(info.hodge));
    RationalExpr image = substitute(RationalExpr(cls), a);
    if (!image.den_factors().empty() || !image.den_unit().is_one())
        throw std::invalid_argument("hodge_of_class: class did not specialize to a polynomial");
    return image.num();
}

Rational hodge_at_11(const LaurentExpr& hodge) {
    Rational acc(0);
    for (const auto& [m, c] : hodge.terms()) acc += Rational(Int(c));
    return acc;
}

} // namespace

StratifiedResolution::StratifiedResolution(std::string name, int dimension, bool complete,
                                           std::vector<AbstractDivisor> divisors,
                                           SymbolTable symbols,
                                           std::map<std::vector<int>, StratumClass> strata)
    : name_(std::move(name)), dimension_(dimension), complete_(complete),
      divisors_(std::move(divisors)), symbols_(std::move(symbols)), strata_(std::move(strata)) {
    validate();
}

int StratifiedResolution::divisor_index(const std::string& id) const {
    for (std::size_t i = 0; i < divisors_.size(); ++i)
        if (divisors_[i].id == id) return static_cast<int>(i);
    return -1;
}

std::optional<Rational> StratifiedResolution::euler_class(const StratumClass& c) const {
    if (c.euler) return c.euler;
    if (c.hodge) return hodge_at_11(*c.hodge);
    if (c.symbolic) return chi_of_class(*c.symbolic, symbols_);
    return std::nullopt;
}

std::optional<LaurentExpr> StratifiedResolution::hodge_class(const StratumClass& c) const {
    if (c.hodge) return c.hodge;
    if (c.symbolic) return hodge_of_class(*c.symbolic, symbols_);
    return std::nullopt;
}

void StratifiedResolution::validate() const {
    if (dimension_ <= 0) throw std::invalid_argument("dimension must be positive");
    std::vector<std::string> seen;
    for (const auto& d : divisors_) {
        if (std::find(seen.begin(), seen.end(), d.id) != seen.end())
            throw std::invalid_argument("duplicate divisor id '" + d.id + "'");
        seen.push_back(d.id);
        if (d.nu.sign() < 0 || (d.nu.is_zero() && d.N.is_zero()))
            fail("DefinabilityViolation",
                 "divisor '" + d.id + "' needs nu > 0, or nu = 0 with N != 0");
    }
    if (!strata_.count(std::vector<int>{}))
        throw std::invalid_argument("the empty-set stratum class is required");
    const int n = static_cast<int>(divisors_.size());
    for (const auto& [key, cls] : strata_) {
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (key[i] < 0 || key[i] >= n) throw std::invalid_argument("stratum index out of range");
            if (i > 0 && key[i] <= key[i - 1])
                throw std::invalid_argument("stratum index sets must be strictly increasing");
        }
        // declared levels must agree where they overlap
        if (cls.symbolic && cls.hodge) {
            if (!(hodge_of_class(*cls.symbolic, symbols_) == *cls.hodge))
                fail("InconsistentLevels", "symbolic and Hodge classes disagree");
        }
        if (cls.hodge && cls.euler) {
            if (hodge_at_11(*cls.hodge) != *cls.euler)
                fail("InconsistentLevels", "Hodge class at u = v = 1 disagrees with Euler class");
        }
        if (cls.symbolic && cls.euler && !cls.hodge) {
            if (chi_of_class(*cls.symbolic, symbols_) != *cls.euler)
                fail("InconsistentLevels", "symbolic class chi disagrees with Euler class");
        }
    }
}

StringyZeta zeta_abstract(const StratifiedResolution& data, Level level) {
    StringyZeta z;
    z.level = level;
    z.d = Rational(1);
    z.germ = data.name();
    z.symbols = data.symbols();
    for (const auto& d : data.divisors()) {
        NuRow row;
        row.id = d.id;
        row.nu = d.nu;
        row.N = d.N;
        row.a = d.nu + d.N;
        z.table.push_back(std::move(row));
    }

    if (level == Level::euler) {
        UniRationalFn acc;
        for (const auto& [key, cls] : data.strata()) {
            auto chi = data.euler_class(cls);
            if (!chi) fail("MissingLevel", "stratum lacks an Euler-level class");
            if (chi->is_zero()) continue;
            UniRationalFn term{*chi};
            for (int i : key)
                term = term * euler_factor(data.divisors()[i].nu, data.divisors()[i].N);
            acc = acc + term;
        }
        z.value = acc;
        return z;
    }

    RationalExpr acc;
    for (const auto& [key, cls] : data.strata()) {
        LaurentExpr c;
        if (level == Level::motivic) {
            if (!cls.symbolic) fail("MissingLevel", "stratum lacks a symbolic class");
            c = *cls.symbolic;
        } else {
            auto h = data.hodge_class(cls);
            if (!h) fail("MissingLevel", "stratum lacks a Hodge-level class");
            c = *h;
        }
        if (c.is_zero()) continue;
        RationalExpr term{c};
        for (int i : key)
            term *= level == Level::motivic
                        ? motivic_factor(data.divisors()[i].nu, data.divisors()[i].N)
                        : hodge_factor(data.divisors()[i].nu, data.divisors()[i].N);
        acc += term;
    }
    z.value = acc;
    return z;
}

DualityReport duality_check(const StratifiedResolution& data) {
    if (!data.complete())
        fail("NotApplicable", "the functional equation needs complete data");
    StringyZeta hz = zeta_abstract(data, Level::hodge);
    const RationalExpr& Z = hz.expr();

    RationalExpr dual = substitute(Z, duality_assignment());
    LaurentExpr uv = LaurentExpr::variable(Var::U) * LaurentExpr::variable(Var::V);
    dual *= RationalExpr(uv.pow(static_cast<unsigned long>(data.dimension())));

    DualityReport report;
    report.functional_equation = ratfn_equal(dual, Z);
    report.residual = dual - Z;

    // alternative closed-strata expression: sum_I H(E_I) prod (factor - 1)
    RationalExpr closed;
    for (const auto& [key, cls] : data.strata()) {
        // H(E_I) = sum of the open classes of the supersets of I
        LaurentExpr h;
        bool any = false;
        for (const auto& [key2, cls2] : data.strata()) {
            if (!std::includes(key2.begin(), key2.end(), key.begin(), key.end())) continue;
            auto piece = data.hodge_class(cls2);
            if (!piece) fail("MissingLevel", "stratum lacks a Hodge-level class");
            h += *piece;
            any = true;
        }
        if (!any || h.is_zero()) continue;
        RationalExpr term{h};
        for (int i : key)
            term *= hodge_factor(data.divisors()[i].nu, data.divisors()[i].N) - RationalExpr::one();
        closed += term;
    }
    report.closed_open_agree = ratfn_equal(closed, Z);
    return report;
}

namespace {

Int binomial(int n, int k) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

// Class of P^n minus m general hyperplanes, by inclusion-exclusion, in the
// variable `base` (L or uv); P^(n-j) contributes sum base^i.
LaurentExpr projective_open(int n, int m, const LaurentExpr& base) {
    LaurentExpr acc;
    for (int j = 0; j <= m; ++j) {
        int dim = n - j;
        if (dim < 0) continue;
        LaurentExpr p;
        for (int i = 0; i <= dim; ++i) p += base.pow(static_cast<unsigned long>(i));
        Int c = binomial(m, j);
        if (j % 2 == 1) c = -c;
        acc += LaurentExpr::constant(c) * p;
    }
    return acc;
}

Rational projective_open_euler(int n, int m) {
    Rational acc(0);
    for (int j = 0; j <= m; ++j) {
        int dim = n - j;
        if (dim < 0) continue;
        Rational c{binomial(m, j)};
        if (j % 2 == 1) c = -c;
        acc += c * Rational(dim + 1);
    }
    return acc;
}

} // namespace

StratifiedResolution blowup_transform(const StratifiedResolution& data,
                                      const BlowupCenter& center) {
    const int r = center.codimension;
    const int m = static_cast<int>(center.contained_in.size());
    if (r < 2) fail("InconsistentCenter", "codimension must be at least 2");
    if (m > r) fail("InconsistentCenter", "centre lies in more divisors than its codimension");
    if (data.divisor_index(center.new_id) >= 0)
        fail("InconsistentCenter", "new divisor id already in use");

    std::vector<int> I0;
    for (const auto& id : center.contained_in) {
        int i = data.divisor_index(id);
        if (i < 0) fail("InconsistentCenter", "unknown divisor '" + id + "'");
        I0.push_back(i);
    }
    std::sort(I0.begin(), I0.end());
    if (std::adjacent_find(I0.begin(), I0.end()) != I0.end())
        fail("InconsistentCenter", "duplicate containing divisor");

    AbstractDivisor fresh;
    fresh.id = center.new_id;
    fresh.nu = Rational(r);
    fresh.N = Rational(0);
    for (int i : I0) {
        fresh.nu += data.divisors()[i].nu - Rational(1);
        fresh.N += data.divisors()[i].N;
    }
    if (fresh.nu.sign() < 0 || (fresh.nu.is_zero() && fresh.N.is_zero()))
        fail("DefinabilityViolation", "exceptional divisor would have nu = N = 0");

    auto divisors = data.divisors();
    const int fresh_index = static_cast<int>(divisors.size());
    divisors.push_back(fresh);
    auto strata = data.strata();

    const LaurentExpr L = LaurentExpr::variable(Var::L);
    const LaurentExpr uv = LaurentExpr::variable(Var::U) * LaurentExpr::variable(Var::V);

    // Level support shared by every centre stratum: classes are rewritten at
    // precisely these levels, which keeps every stratum internally
    // consistent.
    bool z_symbolic = !center.strata.empty();
    bool z_hodge = !center.strata.empty();
    for (const auto& [jkey_ids, zclass] : center.strata) {
        if (!zclass.symbolic) z_symbolic = false;
        if (!data.hodge_class(zclass)) z_hodge = false;
    }

    for (const auto& [jkey_ids, zclass] : center.strata) {
        std::vector<int> J;
        for (const auto& id : jkey_ids) {
            int i = data.divisor_index(id);
            if (i < 0) fail("InconsistentCenter", "unknown divisor '" + id + "' in centre stratum");
            if (std::find(I0.begin(), I0.end(), i) != I0.end())
                fail("InconsistentCenter", "centre stratum repeats a containing divisor");
            J.push_back(i);
        }
        std::sort(J.begin(), J.end());
        if (std::adjacent_find(J.begin(), J.end()) != J.end())
            fail("InconsistentCenter", "duplicate divisor in centre stratum");
        if (static_cast<int>(J.size()) > data.dimension() - r)
            fail("InconsistentCenter", "centre stratum deeper than the centre's dimension");

        auto ze = data.euler_class(zclass);
        if (!ze) fail("InconsistentCenter", "centre stratum lacks a usable class");
        auto zh = data.hodge_class(zclass);

        // remove the centre stratum from the stratum it sits in
        std::vector<int> target = J;
        target.insert(target.end(), I0.begin(), I0.end());
        std::sort(target.begin(), target.end());
        auto it = strata.find(target);
        if (it == strata.end())
            fail("InconsistentCenter", "centre claims mass in an absent stratum");
        StratumClass& tc = it->second;
        if (tc.symbolic) {
            if (!zclass.symbolic)
                fail("InconsistentCenter", "centre class lacks the symbolic level");
            tc.symbolic = *tc.symbolic - *zclass.symbolic;
        }
        if (tc.hodge) {
            if (!zh) fail("InconsistentCenter", "centre class lacks the Hodge level");
            tc.hodge = *tc.hodge - *zh;
        }
        if (tc.euler) tc.euler = *tc.euler - *ze;

        // distribute the centre over the fiber stratification
        for (unsigned mask = 0; mask < (1u << I0.size()); ++mask) {
            std::vector<int> K;
            for (std::size_t b = 0; b < I0.size(); ++b)
                if (mask & (1u << b)) K.push_back(I0[b]);
            int n_open = r - 1 - static_cast<int>(K.size());
            int m_open = m - static_cast<int>(K.size());
            std::vector<int> nkey = J;
            nkey.insert(nkey.end(), K.begin(), K.end());
            nkey.push_back(fresh_index);
            std::sort(nkey.begin(), nkey.end());
            StratumClass& nc = strata[nkey];
            if (z_symbolic) {
                LaurentExpr add = *zclass.symbolic * projective_open(n_open, m_open, L);
                nc.symbolic = nc.symbolic ? *nc.symbolic + add : add;
            }
            if (z_hodge) {
                LaurentExpr add = *zh * projective_open(n_open, m_open, uv);
                nc.hodge = nc.hodge ? *nc.hodge + add : add;
            }
            Rational add = *ze * projective_open_euler(n_open, m_open);
            nc.euler = nc.euler ? *nc.euler + add : add;
        }
    }

    return StratifiedResolution(data.name(), data.dimension(), data.complete(),
                                std::move(divisors), data.symbols(), std::move(strata));
}

OracleResult hyperplane_oracle(int r, int m, const std::vector<Rational>& k,
                               const std::vector<Rational>& dwt) {
    if (r < 2) throw std::invalid_argument("hyperplane_oracle: r must be at least 2");
    if (m < 0 || m > r) throw std::invalid_argument("hyperplane_oracle: m must lie in [0, r]");
    if (k.size() != static_cast<std::size_t>(m) || dwt.size() != static_cast<std::size_t>(m))
        throw std::invalid_argument("hyperplane_oracle: need m weights");
    for (const auto& ki : k)
        if (ki.sign() <= 0) throw std::invalid_argument("hyperplane_oracle: k_i must be positive");

    const LaurentExpr L = LaurentExpr::variable(Var::L);
    OracleResult out;

    RationalExpr brute;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        int size = __builtin_popcount(mask);
        RationalExpr term{projective_open(r - 1 - size, m - size, L)};
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) term *= motivic_factor(k[i], dwt[i]);
        brute += term;
    }
    out.bruteforce = brute;

    Rational knew(r);
    Rational dnew(0);
    for (int i = 0; i < m; ++i) {
        knew += k[i] - Rational(1);
        dnew += dwt[i];
    }
    LaurentExpr top = LaurentExpr::term(Int(1), knew, -dnew, Rational(0), Rational(0)) -
                      LaurentExpr::one();
    RationalExpr closed;
    if (m >= 1) {
        closed = RationalExpr{(L - LaurentExpr::one()).pow(static_cast<unsigned long>(m - 1)) * top};
    } else {
        closed = RationalExpr::over_factor(top, L);
    }
    for (int i = 0; i < m; ++i) {
        LaurentExpr mi = LaurentExpr::term(Int(1), k[i], -dwt[i], Rational(0), Rational(0));
        closed *= RationalExpr::over_factor(LaurentExpr::one(), mi);
    }
    out.closedform = closed;
    out.equal = ratfn_equal(out.bruteforce, out.closedform);
    return out;
}

} // namespace stringyzeta
