#include "stringyzeta/laurent.hpp"

#include <numeric>
#include <stdexcept>

namespace stringyzeta {

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("lattice arithmetic overflow");
    return r;
}

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("lattice arithmetic overflow");
    return r;
}

long long lcm_ll(long long a, long long b) {
    long long g = std::gcd(a, b);
    return checked_mul(a / g, b);
}

LaurentExpr LaurentExpr::constant(Int c) {
    LaurentExpr r;
    if (c != 0) r.terms_.emplace(Monomial{}, std::move(c));
    return r;
}

LaurentExpr LaurentExpr::variable(Var v, const Rational& exponent) {
    return term(Int(1),
                v == Var::L ? exponent : Rational(0),
                v == Var::T ? exponent : Rational(0),
                v == Var::U ? exponent : Rational(0),
                v == Var::V ? exponent : Rational(0));
}

LaurentExpr LaurentExpr::symbol(const std::string& name, int degree) {
    if (degree < 0) throw std::invalid_argument("symbol degree must be nonnegative");
    LaurentExpr r;
    Monomial m;
    if (degree > 0) m.syms.emplace_back(name, degree);
    r.terms_.emplace(std::move(m), Int(1));
    return r;
}

LaurentExpr LaurentExpr::term(Int c, const Rational& eL, const Rational& eT,
                              const Rational& eU, const Rational& eV) {
    LaurentExpr r;
    if (c == 0) return r;
    const Rational* es[4] = {&eL, &eT, &eU, &eV};
    long long m = 1;
    for (auto* e : es) {
        if (!e->den().fits_slong_p())
            throw std::overflow_error("exponent denominator too large");
        m = lcm_ll(m, e->den().get_si());
    }
    Monomial mono;
    for (int i = 0; i < 4; ++i) {
        Rational scaled = *es[i] * Rational(m);
        if (!scaled.num().fits_slong_p())
            throw std::overflow_error("exponent numerator too large");
        mono.e[i] = scaled.num().get_si();
    }
    r.lattice_ = m;
    r.terms_.emplace(std::move(mono), std::move(c));
    return r;
}

LaurentExpr LaurentExpr::from_raw(long long lattice, Terms terms) {
    if (lattice <= 0) throw std::invalid_argument("lattice must be positive");
    LaurentExpr r;
    r.lattice_ = lattice;
    r.terms_ = std::move(terms);
    r.normalize();
    return r;
}

bool LaurentExpr::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_unit() &&
           terms_.begin()->second == 1;
}

bool LaurentExpr::has_symbols() const {
    for (const auto& [m, c] : terms_)
        if (!m.syms.empty()) return true;
    return false;
}

bool LaurentExpr::has_var(Var v) const {
    for (const auto& [m, c] : terms_)
        if (m.e[static_cast<int>(v)] != 0) return true;
    return false;
}

void LaurentExpr::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
    if (terms_.empty()) {
        lattice_ = 1;
        return;
    }
    long long g = lattice_;
    for (const auto& [m, c] : terms_) {
        for (long long e : m.e) {
            if (e != 0) g = std::gcd(g, e < 0 ? -e : e);
            if (g == 1) break;
        }
        if (g == 1) break;
    }
    if (g > 1) {
        Terms reduced;
        auto hint = reduced.begin();
        for (const auto& [m, c] : terms_) {
            Monomial n = m;
            for (auto& e : n.e) e /= g;
            hint = reduced.emplace_hint(reduced.end(), std::move(n), c);
        }
        terms_ = std::move(reduced);
        lattice_ /= g;
    }
}

void LaurentExpr::rescale_to(long long lattice) {
    if (lattice_ == lattice) return;
    long long f = lattice / lattice_;
    Terms scaled;
    for (const auto& [mono, c] : terms_) {
        Monomial n = mono;
        for (auto& e : n.e) e = checked_mul(e, f);
        scaled.emplace_hint(scaled.end(), std::move(n), c);
    }
    terms_ = std::move(scaled);
    lattice_ = lattice;
}

void LaurentExpr::unify(LaurentExpr& a, LaurentExpr& b) {
    if (a.lattice_ == b.lattice_) return;
    long long m = lcm_ll(a.lattice_, b.lattice_);
    a.rescale_to(m);
    b.rescale_to(m);
}

LaurentExpr LaurentExpr::operator-() const {
    LaurentExpr r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

void LaurentExpr::merge_add(const LaurentExpr& o, bool negate) {
    if (o.is_zero()) return;
    long long m = lcm_ll(lattice_, o.lattice_);
    rescale_to(m);
    if (o.lattice_ == m) {
        for (const auto& [mono, c] : o.terms_) {
            auto [it, fresh] = terms_.emplace(mono, negate ? Int(-c) : c);
            if (!fresh) {
                if (negate)
                    it->second -= c;
                else
                    it->second += c;
            }
        }
    } else {
        long long f = m / o.lattice_;
        for (const auto& [mono, c] : o.terms_) {
            Monomial n = mono;
            for (auto& e : n.e) e = checked_mul(e, f);
            auto [it, fresh] = terms_.emplace(std::move(n), negate ? Int(-c) : c);
            if (!fresh) {
                if (negate)
                    it->second -= c;
                else
                    it->second += c;
            }
        }
    }
    normalize();
}

LaurentExpr& LaurentExpr::operator+=(const LaurentExpr& o) {
    merge_add(o, false);
    return *this;
}

LaurentExpr& LaurentExpr::operator-=(const LaurentExpr& o) {
    merge_add(o, true);
    return *this;
}

LaurentExpr operator+(const LaurentExpr& a, const LaurentExpr& b) {
    LaurentExpr x = a;
    x += b;
    return x;
}

LaurentExpr operator-(const LaurentExpr& a, const LaurentExpr& b) {
    LaurentExpr x = a;
    x -= b;
    return x;
}

namespace {

std::vector<std::pair<std::string, int>>
merge_symbols(const std::vector<std::pair<std::string, int>>& a,
              const std::vector<std::pair<std::string, int>>& b) {
    std::vector<std::pair<std::string, int>> r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int cmp = a[i].first.compare(b[j].first);
        if (cmp < 0)
            r.push_back(a[i++]);
        else if (cmp > 0)
            r.push_back(b[j++]);
        else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) r.push_back(b[j]);
    return r;
}

} // namespace

LaurentExpr operator*(const LaurentExpr& a, const LaurentExpr& b) {
    if (a.is_zero() || b.is_zero()) return LaurentExpr();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    LaurentExpr x = a, y = b;
    LaurentExpr::unify(x, y);
    LaurentExpr r;
    r.lattice_ = x.lattice_;
    for (const auto& [ma, ca] : x.terms_) {
        for (const auto& [mb, cb] : y.terms_) {
            Monomial m;
            for (int i = 0; i < 4; ++i) m.e[i] = checked_add(ma.e[i], mb.e[i]);
            m.syms = merge_symbols(ma.syms, mb.syms);
            Int c = ca * cb;
            auto [it, fresh] = r.terms_.emplace(std::move(m), std::move(c));
            if (!fresh) it->second += ca * cb;
        }
    }
    r.normalize();
    return r;
}

bool operator<(const LaurentExpr& a, const LaurentExpr& b) {
    if (a.lattice_ != b.lattice_) return a.lattice_ < b.lattice_;
    return a.terms_ < b.terms_;
}

LaurentExpr LaurentExpr::pow(unsigned long k) const {
    LaurentExpr r = one();
    LaurentExpr base = *this;
    while (k) {
        if (k & 1) r *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return r;
}

LaurentExpr LaurentExpr::inverse_monomial() const {
    if (terms_.size() != 1)
        throw std::invalid_argument("inverse_monomial: not a single term");
    const auto& [m, c] = *terms_.begin();
    if (!m.syms.empty())
        throw std::invalid_argument("inverse_monomial: symbols are not invertible");
    if (c != 1 && c != -1)
        throw std::invalid_argument("inverse_monomial: coefficient not a unit");
    LaurentExpr r;
    r.lattice_ = lattice_;
    Monomial n;
    for (int i = 0; i < 4; ++i) n.e[i] = -m.e[i];
    r.terms_.emplace(std::move(n), c);
    r.normalize();
    return r;
}

Int LaurentExpr::signed_content() const {
    if (terms_.empty()) return Int(0);
    Int g(0);
    for (const auto& [m, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    if (terms_.rbegin()->second < 0) g = -g;
    return g;
}

LaurentExpr LaurentExpr::refined(long long multiple) const {
    if (multiple <= 0) throw std::invalid_argument("refined: multiple must be positive");
    Terms scaled;
    for (const auto& [m, c] : terms_) {
        Monomial n = m;
        for (auto& e : n.e) e = checked_mul(e, multiple);
        scaled.emplace_hint(scaled.end(), std::move(n), c);
    }
    return from_raw(checked_mul(lattice_, multiple), std::move(scaled));
}

Int LaurentExpr::constant_coefficient() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Int(0) : it->second;
}

} // namespace stringyzeta
