#ifndef STRINGYZETA_UNIRATIONAL_HPP
#define STRINGYZETA_UNIRATIONAL_HPP

#include "stringyzeta/rational.hpp"

#include <string>
#include <variant>
#include <vector>

namespace stringyzeta {

// Dense univariate polynomial in s over the rationals.
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(Rational constant) { c_.push_back(std::move(constant)); trim(); }
    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly variable();                       // s
    static UniPoly linear(Rational a0, Rational a1); // a0 + a1*s

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational leading() const;

    Rational eval(const Rational& s) const;

    UniPoly operator-() const;
    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    // Exact division with remainder; divisor must be nonzero.
    static void divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r);
    static UniPoly gcd(UniPoly a, UniPoly b); // monic

    std::string str(const std::string& var = "s") const;

private:
    void trim();
    std::vector<Rational> c_;
};

// Univariate rational function in s, stored reduced with monic denominator.
class UniRationalFn {
public:
    UniRationalFn() : num_(), den_(Rational(1)) {}
    UniRationalFn(Rational constant) : num_(std::move(constant)), den_(Rational(1)) {}
    UniRationalFn(UniPoly num, UniPoly den);

    static UniRationalFn inverse_linear(const Rational& a0, const Rational& a1);

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    UniRationalFn operator-() const;
    friend UniRationalFn operator+(const UniRationalFn& a, const UniRationalFn& b);
    friend UniRationalFn operator-(const UniRationalFn& a, const UniRationalFn& b);
    friend UniRationalFn operator*(const UniRationalFn& a, const UniRationalFn& b);
    friend UniRationalFn operator/(const UniRationalFn& a, const UniRationalFn& b);
    friend bool operator==(const UniRationalFn& a, const UniRationalFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    // Value at s = point, or the pole order there. Exact.
    std::variant<Rational, PoleReport> limit_at(const Rational& point) const;

    std::string str(const std::string& var = "s") const;

private:
    void reduce();
    UniPoly num_, den_;
};

} // namespace stringyzeta

#endif
