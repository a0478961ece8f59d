#include "stringyzeta/unirational.hpp"

#include <sstream>
#include <stdexcept>

namespace stringyzeta {

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::variable() {
    return UniPoly(std::vector<Rational>{Rational(0), Rational(1)});
}

UniPoly UniPoly::linear(Rational a0, Rational a1) {
    return UniPoly(std::vector<Rational>{std::move(a0), std::move(a1)});
}

Rational UniPoly::leading() const {
    if (c_.empty()) throw std::domain_error("UniPoly: leading of zero");
    return c_.back();
}

Rational UniPoly::eval(const Rational& s) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

UniPoly UniPoly::operator-() const {
    std::vector<Rational> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
    return UniPoly(std::move(r));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return UniPoly(std::move(r));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return UniPoly(std::move(r));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(r));
}

void UniPoly::divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r) {
    if (b.is_zero()) throw std::domain_error("UniPoly: division by zero");
    std::vector<Rational> rem = a.c_;
    std::vector<Rational> quo;
    int db = b.degree();
    while (static_cast<int>(rem.size()) - 1 >= db) {
        int dr = static_cast<int>(rem.size()) - 1;
        if (rem.back().is_zero()) { rem.pop_back(); continue; }
        Rational f = rem.back() / b.c_.back();
        int shift = dr - db;
        if (static_cast<int>(quo.size()) < shift + 1) quo.resize(shift + 1, Rational(0));
        quo[shift] = f;
        for (int i = 0; i <= db; ++i) rem[shift + i] -= f * b.c_[i];
        rem.pop_back();
    }
    q = UniPoly(std::move(quo));
    r = UniPoly(std::move(rem));
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    // monic normalization
    Rational lead = a.leading();
    std::vector<Rational> c = a.c_;
    for (auto& x : c) x /= lead;
    return UniPoly(std::move(c));
}

std::string UniPoly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = c_[k];
        if (c.is_zero()) continue;
        Rational a = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool unit = (a == Rational(1));
        if (k == 0 || !unit) os << a.str();
        if (k > 0) {
            if (!unit) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

UniRationalFn::UniRationalFn(UniPoly num, UniPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("UniRationalFn: zero denominator");
    reduce();
}

void UniRationalFn::reduce() {
    if (num_.is_zero()) {
        den_ = UniPoly(Rational(1));
        return;
    }
    UniPoly g = UniPoly::gcd(num_, den_);
    if (g.degree() > 0) {
        UniPoly q, r;
        UniPoly::divmod(num_, g, q, r);
        num_ = q;
        UniPoly::divmod(den_, g, q, r);
        den_ = q;
    }
    Rational lead = den_.leading();
    if (lead != Rational(1)) {
        std::vector<Rational> n = num_.coeffs(), d = den_.coeffs();
        for (auto& x : n) x /= lead;
        for (auto& x : d) x /= lead;
        num_ = UniPoly(std::move(n));
        den_ = UniPoly(std::move(d));
    }
}

UniRationalFn UniRationalFn::inverse_linear(const Rational& a0, const Rational& a1) {
    return UniRationalFn(UniPoly(Rational(1)), UniPoly::linear(a0, a1));
}

UniRationalFn UniRationalFn::operator-() const {
    UniRationalFn r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

UniRationalFn operator+(const UniRationalFn& a, const UniRationalFn& b) {
    return UniRationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

UniRationalFn operator-(const UniRationalFn& a, const UniRationalFn& b) {
    return UniRationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

UniRationalFn operator*(const UniRationalFn& a, const UniRationalFn& b) {
    return UniRationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

UniRationalFn operator/(const UniRationalFn& a, const UniRationalFn& b) {
    if (b.is_zero()) throw std::domain_error("UniRationalFn: division by zero");
    return UniRationalFn(a.num_ * b.den_, a.den_ * b.num_);
}

std::variant<Rational, PoleReport> UniRationalFn::limit_at(const Rational& point) const {
    Rational d = den_.eval(point);
    if (!d.is_zero()) return num_.eval(point) / d;
    // num and den are coprime, so a vanishing denominator is a genuine pole;
    // its order is the multiplicity of (s - point) in den.
    UniPoly lin = UniPoly::linear(-point, Rational(1));
    UniPoly rest = den_;
    int order = 0;
    while (rest.eval(point).is_zero()) {
        UniPoly q, r;
        UniPoly::divmod(rest, lin, q, r);
        rest = q;
        ++order;
    }
    return PoleReport{order};
}

std::string UniRationalFn::str(const std::string& var) const {
    if (den_ == UniPoly(Rational(1))) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

} // namespace stringyzeta
