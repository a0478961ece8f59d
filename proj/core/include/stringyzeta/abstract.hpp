#ifndef STRINGYZETA_ABSTRACT_HPP
#define STRINGYZETA_ABSTRACT_HPP

#include "stringyzeta/ratexpr.hpp"
#include "stringyzeta/stringy.hpp"
#include "stringyzeta/symbols.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stringyzeta {

// A stratum class given at one or more levels. Finer levels derive coarser
// ones (symbolic -> hodge -> euler); explicitly given levels are checked for
// mutual consistency.
struct StratumClass {
    std::optional<Rational> euler;
    std::optional<LaurentExpr> hodge;    // polynomial in u, v
    std::optional<LaurentExpr> symbolic; // polynomial in L and declared symbols
};

struct AbstractDivisor {
    std::string id;
    Rational nu, N;
};

// Abstract stratified log-resolution data in arbitrary dimension: divisors
// with their (nu, N), and classes of the open strata E_I^o indexed by
// divisor subsets (the empty set included).
class StratifiedResolution {
public:
    StratifiedResolution(std::string name, int dimension, bool complete,
                         std::vector<AbstractDivisor> divisors, SymbolTable symbols,
                         std::map<std::vector<int>, StratumClass> strata);

    const std::string& name() const { return name_; }
    int dimension() const { return dimension_; }
    bool complete() const { return complete_; }
    const std::vector<AbstractDivisor>& divisors() const { return divisors_; }
    const SymbolTable& symbols() const { return symbols_; }
    const std::map<std::vector<int>, StratumClass>& strata() const { return strata_; }
    int divisor_index(const std::string& id) const;

    // Class of a stratum at the requested level, deriving from finer levels;
    // std::nullopt when underivable.
    std::optional<Rational> euler_class(const StratumClass& c) const;
    std::optional<LaurentExpr> hodge_class(const StratumClass& c) const;

private:
    void validate() const;

    std::string name_;
    int dimension_ = 0;
    bool complete_ = false;
    std::vector<AbstractDivisor> divisors_;
    SymbolTable symbols_;
    std::map<std::vector<int>, StratumClass> strata_;
};

// sum_I [E_I^o] prod_{i in I} (L-1)/(L^(nu_i + s N_i) - 1) at the requested
// level. Errors: DefinabilityViolation when a divisor has nu = 0 = N (or
// nu < 0), MissingLevel when a stratum class is not derivable.
StringyZeta zeta_abstract(const StratifiedResolution& data, Level level);

struct DualityReport {
    bool functional_equation = false; // (uv)^dim Z|_{u,v,T -> inverses} == Z
    bool closed_open_agree = false;   // closed-strata form equals the open form
    RationalExpr residual;            // dual minus Z; zero iff the equation holds
};

DualityReport duality_check(const StratifiedResolution& data);

// Blow-up centre: contained in `contained_in` (size m <= r), of codimension
// r, with the classes of its open strata relative to the remaining divisors.
struct BlowupCenter {
    std::vector<std::string> contained_in;
    int codimension = 2;
    std::string new_id = "F";
    std::map<std::vector<std::string>, StratumClass> strata;
};

// Adds the exceptional divisor with nu = sum (nu_i - 1) + r, N = sum N_i and
// rewrites the stratum classes along the projective-bundle stratification of
// the fiber P^(r-1) cut by m general hyperplanes.
StratifiedResolution blowup_transform(const StratifiedResolution& data,
                                      const BlowupCenter& center);

struct OracleResult {
    RationalExpr bruteforce;
    RationalExpr closedform;
    bool equal = false;
};

// The contribution A^(r-1)_m of P^(r-1) cut by m general hyperplanes with
// weights (k_i, d_i): brute force over the 2^m open strata versus the closed
// form (L-1)^(m-1) (L^(sum(k_i-1)+r+s sum d_i) - 1) / prod (L^(k_i+s d_i)-1).
OracleResult hyperplane_oracle(int r, int m, const std::vector<Rational>& k,
                               const std::vector<Rational>& dwt);

} // namespace stringyzeta

#endif
