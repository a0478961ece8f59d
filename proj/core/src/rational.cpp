#include "stringyzeta/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace stringyzeta {

void Rational::set_int(long long n) {
    mpz_class z;
    if (n >= 0) {
        z = mpz_class(static_cast<unsigned long>(n));
    } else {
        // -n may overflow long long for LLONG_MIN; go through unsigned
        z = mpz_class(static_cast<unsigned long>(-(n + 1)));
        z += 1;
        z = -z;
    }
    q_ = mpq_class(z);
}

Rational::Rational(long long num, long long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    Rational n(num), d(den);
    q_ = n.q_ / d.q_;
    q_.canonicalize();
}

Rational::Rational(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num) / mpq_class(den);
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(const std::string& text) {
    auto bad = [&]() -> Rational {
        throw std::invalid_argument("Rational: cannot parse \"" + text + "\"");
    };
    if (text.empty()) return bad();
    auto slash = text.find('/');
    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!is_int(text)) return bad();
        return Rational(Int(text));
    }
    std::string p = text.substr(0, slash), q = text.substr(slash + 1);
    if (!is_int(p) || !is_int(q)) return bad();
    Int den(q);
    if (den == 0) return bad();
    return Rational(Int(p), den);
}

std::string Rational::str() const {
    std::string s = q_.get_num().get_str();
    if (q_.get_den() != 1) s += "/" + q_.get_den().get_str();
    return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    bool inv = e < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den().get_mpz_t(), k);
    if (inv) {
        if (n == 0) throw std::domain_error("Rational: zero to negative power");
        return Rational(d, n);
    }
    return Rational(n, d);
}

} // namespace stringyzeta
