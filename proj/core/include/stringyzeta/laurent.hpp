#ifndef STRINGYZETA_LAURENT_HPP
#define STRINGYZETA_LAURENT_HPP

#include "stringyzeta/rational.hpp"

#include <array>
#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace stringyzeta {

// The four ring variables. T stands for L^(-s); u, v are the Hodge variables.
enum class Var : int { L = 0, T = 1, U = 2, V = 3 };

inline const char* var_name(Var v) {
    switch (v) {
        case Var::L: return "L";
        case Var::T: return "T";
        case Var::U: return "u";
        default: return "v";
    }
}

// Exponent key of one term. Variable exponents are stored scaled by the
// owning expression's lattice denominator M, so they mean e[i]/M. Stratum
// symbol degrees are plain nonnegative integers. Ordering is lexicographic
// on the (L, T, u, v) exponents, then on the symbol degrees.
struct Monomial {
    std::array<long long, 4> e{0, 0, 0, 0};
    std::vector<std::pair<std::string, int>> syms; // sorted by name, degree > 0

    friend auto operator<=>(const Monomial&, const Monomial&) = default;

    bool is_unit() const {
        return e == std::array<long long, 4>{0, 0, 0, 0} && syms.empty();
    }
    bool vars_trivial() const { return e == std::array<long long, 4>{0, 0, 0, 0}; }
};

// Laurent polynomial with fractional exponents: a finitely supported sum of
// integer-coefficient terms whose variable exponents lie in (1/M)*Z. Stored
// canonically: no zero coefficients, and M is the least common denominator
// actually needed, so structural equality is value equality.
class LaurentExpr {
public:
    using Terms = std::map<Monomial, Int>;

    LaurentExpr() : lattice_(1) {}

    static LaurentExpr constant(Int c);
    static LaurentExpr integer(long long c) { return constant(int_from_ll(c)); }
    static LaurentExpr one() { return integer(1); }
    static LaurentExpr variable(Var v, const Rational& exponent = Rational(1));
    static LaurentExpr symbol(const std::string& name, int degree = 1);
    // Single term c * L^eL T^eT u^eU v^eV.
    static LaurentExpr term(Int c, const Rational& eL, const Rational& eT,
                            const Rational& eU, const Rational& eV);
    // Raw constructor: exponents scaled by `lattice`; normalizes.
    static LaurentExpr from_raw(long long lattice, Terms terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool single_term() const { return terms_.size() == 1; }
    bool has_symbols() const;
    bool has_var(Var v) const;
    std::size_t size() const { return terms_.size(); }

    long long lattice() const { return lattice_; }
    const Terms& terms() const { return terms_; }

    Rational exponent(const Monomial& m, Var v) const {
        return Rational(m.e[static_cast<int>(v)], lattice_);
    }

    LaurentExpr operator-() const;
    friend LaurentExpr operator+(const LaurentExpr& a, const LaurentExpr& b);
    friend LaurentExpr operator-(const LaurentExpr& a, const LaurentExpr& b);
    friend LaurentExpr operator*(const LaurentExpr& a, const LaurentExpr& b);
    LaurentExpr& operator+=(const LaurentExpr& o);
    LaurentExpr& operator-=(const LaurentExpr& o);
    LaurentExpr& operator*=(const LaurentExpr& o) { return *this = *this * o; }

    friend bool operator==(const LaurentExpr& a, const LaurentExpr& b) {
        return a.lattice_ == b.lattice_ && a.terms_ == b.terms_;
    }
    friend bool operator<(const LaurentExpr& a, const LaurentExpr& b);

    LaurentExpr pow(unsigned long k) const;

    // Multiplicative inverse of a single-term expression.
    LaurentExpr inverse_monomial() const;

    // Total content: gcd of the coefficients, with the sign of the leading
    // (largest) monomial's coefficient.
    Int signed_content() const;

    // Rescales all exponents to a multiple of the current lattice; value
    // unchanged. Used to exercise lattice-refinement invariance.
    LaurentExpr refined(long long multiple) const;

    // Sum of the coefficients of the monomials whose variable part is
    // trivial and symbol part empty; i.e. the coefficient of 1.
    Int constant_coefficient() const;

private:
    void normalize();
    void rescale_to(long long lattice);
    void merge_add(const LaurentExpr& o, bool negate);
    static void unify(LaurentExpr& a, LaurentExpr& b);
    friend struct LaurentOps;

    long long lattice_;
    Terms terms_;
};

// Checked 64-bit helpers; the lattice arithmetic must never wrap.
long long checked_mul(long long a, long long b);
long long checked_add(long long a, long long b);
long long lcm_ll(long long a, long long b);

} // namespace stringyzeta

#endif
