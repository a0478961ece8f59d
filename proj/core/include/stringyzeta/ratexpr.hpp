#ifndef STRINGYZETA_RATEXPR_HPP
#define STRINGYZETA_RATEXPR_HPP

#include "stringyzeta/laurent.hpp"
#include "stringyzeta/rational.hpp"
#include "stringyzeta/symbols.hpp"

#include <map>
#include <string>
#include <variant>

namespace stringyzeta {

// Fraction of Laurent expressions. The denominator is kept in factored form,
//     unit * prod_i factor_i^count_i,
// where the unit is a single invertible term and each factor is a canonical
// symbol-free polynomial (in practice a binomial monomial - 1). Factored
// denominators make the cross-multiplication equality cheap: common factors
// cancel syntactically before anything is expanded. Value equality is
// ratfn_equal, never representational.
class RationalExpr {
public:
    using FactorMap = std::map<LaurentExpr, int>;

    RationalExpr() : num_(), unit_(LaurentExpr::one()) {}
    RationalExpr(LaurentExpr num) : num_(std::move(num)), unit_(LaurentExpr::one()) {}
    explicit RationalExpr(const Rational& q);
    static RationalExpr zero() { return RationalExpr(); }
    static RationalExpr one() { return RationalExpr(LaurentExpr::one()); }

    // num / (m - 1) for a single-term m; m must not be the unit monomial.
    static RationalExpr over_factor(LaurentExpr num, const LaurentExpr& m);
    // 1 / (m - 1).
    static RationalExpr inv_factor(const LaurentExpr& m) {
        return over_factor(LaurentExpr::one(), m);
    }
    // num / den with an arbitrary symbol-free denominator polynomial.
    static RationalExpr over_poly(LaurentExpr num, const LaurentExpr& den);

    const LaurentExpr& num() const { return num_; }
    const LaurentExpr& den_unit() const { return unit_; }
    const FactorMap& den_factors() const { return factors_; }
    LaurentExpr den_expanded() const;

    bool is_zero() const { return num_.is_zero(); }
    bool has_var(Var v) const;
    bool has_symbols() const { return num_.has_symbols(); }

    RationalExpr operator-() const;
    friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);
    RationalExpr& operator+=(const RationalExpr& o) { return *this = *this + o; }
    RationalExpr& operator-=(const RationalExpr& o) { return *this = *this - o; }
    RationalExpr& operator*=(const RationalExpr& o) { return *this = *this * o; }

    friend RationalExpr operator*(const RationalExpr& a, const Rational& q);
    friend RationalExpr operator*(const Rational& q, const RationalExpr& a) { return a * q; }

    RationalExpr pow(long k) const; // negative k requires an invertible numerator

    friend bool ratfn_equal(const RationalExpr& a, const RationalExpr& b);

    // Invariant-preserving denominator builders: the factor is canonicalized
    // (content, minimal monomial and sign split off into the unit) and a zero
    // or symbol-carrying factor is rejected.
    void push_den_factor(LaurentExpr f, int count);
    void push_den_unit(const LaurentExpr& u);

private:
    void normalize_sign();

    LaurentExpr num_;
    LaurentExpr unit_; // single term, positive coefficient
    FactorMap factors_;
};

bool ratfn_equal(const RationalExpr& a, const RationalExpr& b);

// Partial substitution map: ring variables and stratum symbols to images.
// A variable occurring with fractional exponents can only be mapped to a
// coefficient-one monomial; symbols (integer degrees) accept any image.
struct Assignment {
    std::map<Var, RationalExpr> vars;
    std::map<std::string, RationalExpr> symbols;
};

// Ring-homomorphic image. Throws DomainError("DenominatorVanishes") if a
// denominator factor becomes identically zero.
RationalExpr substitute(const RationalExpr& expr, const Assignment& assignment);

// u -> 1/u, v -> 1/v, T -> 1/T (Hodge-level duality substitution).
Assignment duality_assignment();

// Limit of expr as s -> 1, where T = base^(-s). After the change of variable
// T = base^(-1) * q the factors of the denominator that vanish at s = 1 are
// exactly the pure powers of q; the common vanishing order is cancelled via
// exact Taylor coefficients at q = 1 and the finite value is returned, or a
// PoleReport with the residual order of the denominator. The base is L on
// the motivic level and uv on the Hodge level; it must have integer
// exponents and a denominator-free numerator is not required.
std::variant<RationalExpr, PoleReport> limit_at_s1(const RationalExpr& expr,
                                                   const LaurentExpr& base);
std::variant<RationalExpr, PoleReport> limit_at_s1(const RationalExpr& expr);

// Euler-characteristic value of an s-free element of the coefficient ring:
// substitutes the symbols' Euler numbers and takes the exact limit of all
// ring variables toward 1 along a common parameter. Returns the rational
// value or the pole order.
std::variant<Rational, PoleReport> euler_value(const RationalExpr& expr,
                                               const SymbolTable& symbols);

// Specialization L -> uv, symbol -> its Hodge polynomial.
RationalExpr hodge_specialize(const RationalExpr& expr, const SymbolTable& symbols);

// True if the expression, all levels unified, does not involve T.
bool s_independent(const RationalExpr& expr);

} // namespace stringyzeta

#endif
