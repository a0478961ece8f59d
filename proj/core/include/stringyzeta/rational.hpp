#ifndef STRINGYZETA_RATIONAL_HPP
#define STRINGYZETA_RATIONAL_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace stringyzeta {

using Int = mpz_class;

// mpz_class has no long long constructor; go through long where it fits.
inline Int int_from_ll(long long n) {
    if (n >= -0x7fffffffffffLL && n <= 0x7fffffffffffLL) return Int(static_cast<long>(n));
    return Int(std::to_string(n));
}

// Exact rational number, always in lowest terms with positive denominator.
// Thin value wrapper around GMP's mpq_class; every operation is exact.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(int n) : q_(n) {}
    Rational(long n) : q_(static_cast<long int>(n)) {}
    Rational(long long n) { set_int(n); }
    Rational(const Int& n) : q_(n) {}
    Rational(long long num, long long den);
    Rational(const Int& num, const Int& den);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Accepts "p/q" or "p" with optional sign; rejects anything else.
    static Rational parse(const std::string& text);

    Int num() const { return Int(q_.get_num()); }
    Int den() const { return Int(q_.get_den()); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

    Rational pow(long e) const;
    Rational abs() const { return sign() < 0 ? -*this : *this; }

private:
    void set_int(long long n);
    mpq_class q_;
};

// Successful outcome of a limit computation that hit a pole.
struct PoleReport {
    int order = 0;
};

} // namespace stringyzeta

#endif
