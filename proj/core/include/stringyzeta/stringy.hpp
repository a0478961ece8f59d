#ifndef STRINGYZETA_STRINGY_HPP
#define STRINGYZETA_STRINGY_HPP

#include "stringyzeta/mmp.hpp"
#include "stringyzeta/ratexpr.hpp"
#include "stringyzeta/resolution_graph.hpp"
#include "stringyzeta/symbols.hpp"
#include "stringyzeta/unirational.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace stringyzeta {

enum class Level { motivic, hodge, euler };
const char* to_string(Level level);

enum class ModelChoice { minimal, canonical };

// A stringy zeta function together with the model data it was assembled
// from. Motivic and Hodge levels carry a RationalExpr (with T = L^(-s),
// respectively T = (uv)^(-s)); the Euler level a univariate rational
// function of s.
struct StringyZeta {
    Level level = Level::motivic;
    Rational d;
    ModelChoice model = ModelChoice::minimal;
    std::string germ;
    std::variant<RationalExpr, UniRationalFn> value;
    std::vector<NuRow> table;
    std::vector<std::string> contracted; // curve ids, contraction order
    SymbolTable symbols;
    std::shared_ptr<const ResolutionGraph> source; // null for abstract inputs

    const RationalExpr& expr() const { return std::get<RationalExpr>(value); }
    const UniRationalFn& fn() const { return std::get<UniRationalFn>(value); }
};

// Germ stringy zeta function over the relative d-minimal (or d-canonical)
// model: sum over the strata of the exceptional fiber of
// [stratum] * prod (L-1)/(L^(nu_i + s N_i) - 1).
StringyZeta zeta(const ResolutionGraph& g, const Rational& d, Level level,
                 ModelChoice choice = ModelChoice::minimal);

// Same assembly from an externally supplied (nu, N) table (rows for the
// vertices in order, then the branches); used to compare d -> 1 limits of
// model data against the d = 1 zeta.
StringyZeta zeta_from_table(const ResolutionGraph& g, const std::vector<NuRow>& rows,
                            Level level);

struct VeysInvariants {
    RationalExpr E;  // stringy E-invariant in the coefficient ring
    Rational e;      // stringy Euler number
    bool input_was_minimal = true;
    SymbolTable symbols;
};

// Stringy invariants of a non-lc germ read off the minimal log resolution,
// with the explicit kappa/(a_1 a_2) contribution of the zero-discrepancy
// curves. The input is minimized internally.
VeysInvariants veys_invariants(const ResolutionGraph& g);

// Batyrev-style sum over fiber strata using log discrepancies directly;
// requires every discrepancy to be nonzero.
RationalExpr batyrev_expression(const ResolutionGraph& g, SymbolTable* out_symbols = nullptr);

using EvalResult = std::variant<RationalExpr, Rational, PoleReport>;

// Evaluation at s = 1 as an exact limit. The Euler level yields a rational
// number; motivic and Hodge levels a coefficient-ring element. When every
// log discrepancy is nonzero the motivic limit is checked against the
// Batyrev expression.
EvalResult eval_or_limit_at_1(const StringyZeta& z);

// Helpers shared with the abstract module.
RationalExpr motivic_factor(const Rational& nu, const Rational& N);
RationalExpr hodge_factor(const Rational& nu, const Rational& N);
UniRationalFn euler_factor(const Rational& nu, const Rational& N);

} // namespace stringyzeta

#endif
