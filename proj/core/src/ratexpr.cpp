#include "stringyzeta/ratexpr.hpp"

#include "stringyzeta/errors.hpp"

#include <stdexcept>

namespace stringyzeta {

namespace {

// Splits off the invertible part of a nonzero polynomial: the signed content
// and the minimal monomial. The remaining canonical part has positive leading
// coefficient, coefficient gcd one and minimal monomial equal to 1, so
// unit-multiple polynomials share one canonical representative.
std::pair<LaurentExpr, LaurentExpr> extract_unit(const LaurentExpr& f) {
    Int content = f.signed_content();
    const Monomial& min = f.terms().begin()->first;
    LaurentExpr::Terms reduced;
    for (const auto& [m, c] : f.terms()) {
        Monomial n;
        for (int i = 0; i < 4; ++i) n.e[i] = m.e[i] - min.e[i];
        n.syms = m.syms;
        reduced.emplace(std::move(n), Int(c / content));
    }
    LaurentExpr canonical = LaurentExpr::from_raw(f.lattice(), std::move(reduced));
    LaurentExpr::Terms unit_term;
    unit_term.emplace(min, content);
    LaurentExpr unit = LaurentExpr::from_raw(f.lattice(), std::move(unit_term));
    return {std::move(unit), std::move(canonical)};
}

LaurentExpr expand_factors(const RationalExpr::FactorMap& fs) {
    LaurentExpr p = LaurentExpr::one();
    for (const auto& [f, c] : fs) p *= f.pow(static_cast<unsigned long>(c));
    return p;
}

RationalExpr::FactorMap factor_difference(const RationalExpr::FactorMap& big,
                                          const RationalExpr::FactorMap& small) {
    RationalExpr::FactorMap d;
    for (const auto& [f, c] : big) {
        auto it = small.find(f);
        int rest = c - (it == small.end() ? 0 : it->second);
        if (rest > 0) d.emplace(f, rest);
    }
    return d;
}

} // namespace

RationalExpr::RationalExpr(const Rational& q)
    : num_(LaurentExpr::constant(q.num())), unit_(LaurentExpr::constant(q.den())) {
    normalize_sign();
}

void RationalExpr::push_den_unit(const LaurentExpr& u) {
    if (u.is_zero()) throw std::invalid_argument("RationalExpr: zero denominator unit");
    if (!u.single_term() || u.has_symbols())
        throw std::invalid_argument("RationalExpr: denominator unit must be a symbol-free term");
    unit_ *= u;
    normalize_sign();
}

void RationalExpr::push_den_factor(LaurentExpr f, int count) {
    if (count == 0) return;
    if (count < 0) throw std::invalid_argument("RationalExpr: negative factor count");
    if (f.is_zero()) throw std::invalid_argument("RationalExpr: zero denominator factor");
    if (f.has_symbols())
        throw std::invalid_argument("RationalExpr: denominator must be symbol-free");
    auto [unit, canonical] = extract_unit(f);
    for (int i = 0; i < count; ++i) unit_ *= unit;
    if (!canonical.is_one()) factors_[std::move(canonical)] += count;
    normalize_sign();
}

void RationalExpr::normalize_sign() {
    if (num_.is_zero()) {
        factors_.clear();
        unit_ = LaurentExpr::one();
        return;
    }
    if (unit_.terms().begin()->second < 0) {
        num_ = -num_;
        unit_ = -unit_;
    }
}

RationalExpr RationalExpr::over_factor(LaurentExpr num, const LaurentExpr& m) {
    if (!m.single_term() || m.has_symbols())
        throw std::invalid_argument("over_factor: factor base must be a symbol-free term");
    LaurentExpr f = m - LaurentExpr::one();
    if (f.is_zero()) throw std::invalid_argument("over_factor: factor vanishes identically");
    RationalExpr r(std::move(num));
    r.push_den_factor(std::move(f), 1);
    return r;
}

RationalExpr RationalExpr::over_poly(LaurentExpr num, const LaurentExpr& den) {
    if (den.is_zero()) throw std::invalid_argument("over_poly: zero denominator");
    RationalExpr r(std::move(num));
    if (den.single_term())
        r.push_den_unit(den);
    else
        r.push_den_factor(den, 1);
    return r;
}

LaurentExpr RationalExpr::den_expanded() const {
    LaurentExpr d = unit_;
    for (const auto& [f, c] : factors_) d *= f.pow(static_cast<unsigned long>(c));
    return d;
}

bool RationalExpr::has_var(Var v) const {
    if (num_.has_var(v) || unit_.has_var(v)) return true;
    for (const auto& [f, c] : factors_)
        if (f.has_var(v)) return true;
    return false;
}

RationalExpr RationalExpr::operator-() const {
    RationalExpr r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
    RationalExpr r;
    RationalExpr::FactorMap lcm = a.factors_;
    for (const auto& [f, c] : b.factors_) {
        auto [it, fresh] = lcm.emplace(f, c);
        if (!fresh && it->second < c) it->second = c;
    }
    LaurentExpr na = a.num_ * b.unit_ * expand_factors(factor_difference(lcm, a.factors_));
    LaurentExpr nb = b.num_ * a.unit_ * expand_factors(factor_difference(lcm, b.factors_));
    r.num_ = na + nb;
    r.unit_ = a.unit_ * b.unit_;
    r.factors_ = std::move(lcm);
    r.normalize_sign();
    return r;
}

RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) {
    return a + (-b);
}

RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
    RationalExpr r;
    r.num_ = a.num_ * b.num_;
    r.unit_ = a.unit_ * b.unit_;
    r.factors_ = a.factors_;
    for (const auto& [f, c] : b.factors_) r.factors_[f] += c;
    r.normalize_sign();
    return r;
}

RationalExpr operator*(const RationalExpr& a, const Rational& q) {
    if (q.is_zero()) return RationalExpr::zero();
    RationalExpr r = a;
    r.num_ *= LaurentExpr::constant(q.num());
    r.push_den_unit(LaurentExpr::constant(q.den()));
    return r;
}

RationalExpr RationalExpr::pow(long k) const {
    if (k == 0) return one();
    if (k > 0) {
        RationalExpr r;
        r.num_ = num_.pow(static_cast<unsigned long>(k));
        r.unit_ = unit_.pow(static_cast<unsigned long>(k));
        for (const auto& [f, c] : factors_)
            r.factors_.emplace(f, c * static_cast<int>(k));
        r.normalize_sign();
        return r;
    }
    if (!num_.single_term() || num_.has_symbols())
        throw std::invalid_argument("RationalExpr: negative power of a non-term numerator");
    RationalExpr inv(den_expanded());
    inv.push_den_unit(num_);
    return inv.pow(-k);
}

bool ratfn_equal(const RationalExpr& a, const RationalExpr& b) {
    RationalExpr::FactorMap common;
    for (const auto& [f, c] : a.factors_) {
        auto it = b.factors_.find(f);
        if (it != b.factors_.end()) common.emplace(f, std::min(c, it->second));
    }
    LaurentExpr lhs = a.num_ * b.unit_ * expand_factors(factor_difference(b.factors_, common));
    LaurentExpr rhs = b.num_ * a.unit_ * expand_factors(factor_difference(a.factors_, common));
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// substitution

namespace {

// True when x is a coefficient-one monomial; writes the monomial out in
// exponent form over `lattice`.
bool monomial_with_unit_coeff(const RationalExpr& x, Monomial& out, long long& lattice) {
    if (!x.den_factors().empty()) return false;
    if (!x.num().single_term() || x.num().has_symbols()) return false;
    if (x.num().terms().begin()->second != 1) return false;
    if (x.den_unit().terms().begin()->second != 1) return false;
    LaurentExpr quotient = x.num() * x.den_unit().inverse_monomial();
    out = quotient.terms().begin()->first;
    lattice = quotient.lattice();
    return true;
}

RationalExpr pow_fractional(const RationalExpr& image, const Rational& q) {
    if (q.is_integer()) {
        if (!q.num().fits_slong_p()) throw std::overflow_error("substitute: exponent too large");
        return image.pow(q.num().get_si());
    }
    Monomial m;
    long long lat = 1;
    if (!monomial_with_unit_coeff(image, m, lat))
        throw std::invalid_argument("substitute: fractional power of a non-monomial image");
    Rational e[4];
    for (int i = 0; i < 4; ++i) e[i] = Rational(m.e[i], lat) * q;
    return RationalExpr(LaurentExpr::term(Int(1), e[0], e[1], e[2], e[3]));
}

RationalExpr substitute_laurent(const LaurentExpr& x, const Assignment& a) {
    // term images are almost always plain polynomials; accumulating them in a
    // LaurentExpr keeps the common case linear
    LaurentExpr poly_acc;
    RationalExpr frac_acc;
    for (const auto& [m, c] : x.terms()) {
        RationalExpr term(LaurentExpr::constant(c));
        for (int i = 0; i < 4; ++i) {
            if (m.e[i] == 0) continue;
            Var v = static_cast<Var>(i);
            Rational q(m.e[i], x.lattice());
            auto it = a.vars.find(v);
            if (it == a.vars.end())
                term *= RationalExpr(LaurentExpr::variable(v, q));
            else
                term *= pow_fractional(it->second, q);
        }
        for (const auto& [name, deg] : m.syms) {
            auto it = a.symbols.find(name);
            if (it == a.symbols.end())
                term *= RationalExpr(LaurentExpr::symbol(name, deg));
            else
                term *= it->second.pow(deg);
        }
        if (term.den_factors().empty() && term.den_unit().is_one())
            poly_acc += term.num();
        else
            frac_acc += term;
    }
    if (frac_acc.is_zero()) return RationalExpr(std::move(poly_acc));
    return RationalExpr(std::move(poly_acc)) + frac_acc;
}

} // namespace

RationalExpr substitute(const RationalExpr& expr, const Assignment& assignment) {
    RationalExpr result = substitute_laurent(expr.num(), assignment);

    RationalExpr unit_image = substitute_laurent(expr.den_unit(), assignment);
    if (unit_image.num().is_zero())
        fail("DenominatorVanishes", "substitution sends the denominator unit to zero");
    if (!unit_image.num().single_term() || unit_image.num().has_symbols())
        throw std::invalid_argument("substitute: denominator unit image is not a term");
    result *= RationalExpr(unit_image.den_expanded());
    result.push_den_unit(unit_image.num());

    for (const auto& [f, count] : expr.den_factors()) {
        RationalExpr fi = substitute_laurent(f, assignment);
        if (fi.num().is_zero())
            fail("DenominatorVanishes", "substitution sends a denominator factor to zero");
        result *= RationalExpr(fi.den_expanded()).pow(count);
        result.push_den_factor(fi.num(), count);
    }
    return result;
}

Assignment duality_assignment() {
    Assignment a;
    a.vars.emplace(Var::U, RationalExpr(LaurentExpr::variable(Var::U, Rational(-1))));
    a.vars.emplace(Var::V, RationalExpr(LaurentExpr::variable(Var::V, Rational(-1))));
    a.vars.emplace(Var::T, RationalExpr(LaurentExpr::variable(Var::T, Rational(-1))));
    return a;
}

RationalExpr hodge_specialize(const RationalExpr& expr, const SymbolTable& symbols) {
    Assignment a;
    a.vars.emplace(Var::L, RationalExpr(LaurentExpr::variable(Var::U) * LaurentExpr::variable(Var::V)));
    for (const auto& [name, info] : symbols)
        a.symbols.emplace(name, RationalExpr(info.hodge));
    return substitute(expr, a);
}

bool s_independent(const RationalExpr& expr) {
    return !expr.has_var(Var::T);
}

// ---------------------------------------------------------------------------
// limits at s = 1
//
// After the change of variable T = base^(-1) q (so q = base^(1-s) and s -> 1
// is q -> 1), numerator and denominator are Laurent polynomials in y =
// q^(1/M) over the ring in the remaining variables. The factors of the
// denominator that vanish at y = 1 are cancelled against the numerator by
// comparing exact Taylor coefficients at y = 1, computed with the Euler
// operator theta = y d/dy, which acts on a term by multiplying its
// coefficient with the scaled q-exponent and therefore stays integral.

namespace {

struct Raw {
    long long lattice = 1;
    LaurentExpr::Terms terms;
};

Raw rewrite_q(const LaurentExpr& x, const std::array<long long, 4>& base_exp) {
    Raw r;
    r.lattice = x.lattice();
    for (const auto& [m, c] : x.terms()) {
        Monomial n = m;
        long long tau = m.e[static_cast<int>(Var::T)];
        if (tau != 0) {
            for (int i = 0; i < 4; ++i) {
                if (i == static_cast<int>(Var::T)) continue;
                n.e[i] = checked_add(n.e[i], -checked_mul(tau, base_exp[i]));
            }
        }
        r.terms.emplace(std::move(n), c);
    }
    return r;
}

void rescale_raw(Raw& r, long long target) {
    if (r.lattice == target) return;
    long long f = target / r.lattice;
    LaurentExpr::Terms scaled;
    for (const auto& [m, c] : r.terms) {
        Monomial n = m;
        for (auto& e : n.e) e = checked_mul(e, f);
        scaled.emplace_hint(scaled.end(), std::move(n), c);
    }
    r.terms = std::move(scaled);
    r.lattice = target;
}

// Value at q = 1: forget the q-exponent and merge.
LaurentExpr eval_q1(const Raw& r) {
    LaurentExpr::Terms merged;
    for (const auto& [m, c] : r.terms) {
        Monomial n = m;
        n.e[static_cast<int>(Var::T)] = 0;
        auto [it, fresh] = merged.emplace(std::move(n), c);
        if (!fresh) it->second += c;
    }
    return LaurentExpr::from_raw(r.lattice, std::move(merged));
}

// theta = y d/dy: multiply each coefficient by the scaled q-exponent.
void theta(Raw& r) {
    for (auto it = r.terms.begin(); it != r.terms.end();) {
        long long tau = it->first.e[static_cast<int>(Var::T)];
        if (tau == 0) {
            it = r.terms.erase(it);
        } else {
            it->second *= int_from_ll(tau);
            ++it;
        }
    }
}

Int factorial(int k) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
    return f;
}

std::variant<RationalExpr, PoleReport> limit_core(Raw num, Raw unit,
                                                  std::vector<std::pair<Raw, int>> factors) {
    long long common = num.lattice;
    common = lcm_ll(common, unit.lattice);
    for (const auto& [f, c] : factors) common = lcm_ll(common, f.lattice);
    rescale_raw(num, common);
    rescale_raw(unit, common);
    for (auto& [f, c] : factors) rescale_raw(f, common);

    int k_den = 0;
    Int num_scale(1);
    std::vector<std::pair<LaurentExpr, int>> residual;
    for (auto& [f, count] : factors) {
        int ord = 0;
        Raw cur = f;
        LaurentExpr value = eval_q1(cur);
        const int guard = static_cast<int>(f.terms.size()) + 1;
        while (value.is_zero()) {
            if (++ord > guard) throw std::logic_error("limit: vanishing order runaway");
            theta(cur);
            value = eval_q1(cur);
        }
        k_den += ord * count;
        if (ord > 0)
            for (int i = 0; i < count; ++i) num_scale *= factorial(ord);
        residual.emplace_back(std::move(value), count);
    }

    Raw cur = num;
    for (int j = 0; j < k_den; ++j) {
        if (!eval_q1(cur).is_zero()) return PoleReport{k_den - j};
        theta(cur);
    }
    LaurentExpr value = eval_q1(cur);
    if (value.is_zero()) return RationalExpr::zero();

    RationalExpr out(value * LaurentExpr::constant(num_scale));
    out.push_den_unit(eval_q1(unit));
    if (k_den > 0) out.push_den_unit(LaurentExpr::constant(factorial(k_den)));
    for (auto& [res, count] : residual) out.push_den_factor(std::move(res), count);
    return out;
}

std::array<long long, 4> base_exponents(const LaurentExpr& base) {
    if (!base.single_term() || base.has_symbols() || base.lattice() != 1 ||
        base.terms().begin()->second != 1 ||
        base.terms().begin()->first.e[static_cast<int>(Var::T)] != 0)
        throw std::invalid_argument("limit_at_s1: base must be a T-free integer-exponent monomial");
    return base.terms().begin()->first.e;
}

} // namespace

std::variant<RationalExpr, PoleReport> limit_at_s1(const RationalExpr& expr,
                                                   const LaurentExpr& base) {
    auto be = base_exponents(base);
    Raw num = rewrite_q(expr.num(), be);
    Raw unit = rewrite_q(expr.den_unit(), be);
    std::vector<std::pair<Raw, int>> factors;
    factors.reserve(expr.den_factors().size());
    for (const auto& [f, c] : expr.den_factors()) factors.emplace_back(rewrite_q(f, be), c);
    return limit_core(std::move(num), std::move(unit), std::move(factors));
}

std::variant<RationalExpr, PoleReport> limit_at_s1(const RationalExpr& expr) {
    return limit_at_s1(expr, LaurentExpr::variable(Var::L));
}

std::variant<Rational, PoleReport> euler_value(const RationalExpr& expr,
                                               const SymbolTable& symbols) {
    Assignment a;
    for (const auto& [name, info] : symbols)
        a.symbols.emplace(name, RationalExpr(info.euler));
    RationalExpr x = substitute(expr, a);
    if (x.num().has_symbols())
        throw std::invalid_argument("euler_value: undeclared stratum symbol");
    if (x.has_var(Var::T))
        throw std::invalid_argument("euler_value: expression is not s-free");

    // Fold L, u, v onto a single parameter, reusing the T slot, and take the
    // limit of that parameter toward 1.
    auto fold = [](const LaurentExpr& e) {
        Raw r;
        r.lattice = e.lattice();
        for (const auto& [m, c] : e.terms()) {
            Monomial n;
            n.syms = m.syms;
            long long s = 0;
            for (int i = 0; i < 4; ++i)
                if (i != static_cast<int>(Var::T)) s = checked_add(s, m.e[i]);
            n.e[static_cast<int>(Var::T)] = s;
            auto [it, fresh] = r.terms.emplace(std::move(n), c);
            if (!fresh) it->second += c;
        }
        for (auto it = r.terms.begin(); it != r.terms.end();) {
            if (it->second == 0)
                it = r.terms.erase(it);
            else
                ++it;
        }
        return r;
    };

    Raw num = fold(x.num());
    Raw unit = fold(x.den_unit());
    std::vector<std::pair<Raw, int>> factors;
    for (const auto& [f, c] : x.den_factors()) {
        Raw rf = fold(f);
        if (rf.terms.empty())
            throw std::invalid_argument("euler_value: denominator vanishes on the diagonal");
        factors.emplace_back(std::move(rf), c);
    }
    auto lim = limit_core(std::move(num), std::move(unit), std::move(factors));
    if (std::holds_alternative<PoleReport>(lim)) return std::get<PoleReport>(lim);
    const RationalExpr& v = std::get<RationalExpr>(lim);
    if (!v.den_factors().empty() || v.num().has_symbols() || v.num().size() > 1 ||
        v.den_unit().has_var(Var::L) || v.den_unit().has_var(Var::U) || v.den_unit().has_var(Var::V))
        throw std::logic_error("euler_value: non-constant limit");
    return Rational(v.num().constant_coefficient(), v.den_unit().constant_coefficient());
}

} // namespace stringyzeta
