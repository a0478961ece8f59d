#ifndef STRINGYZETA_SYMBOLS_HPP
#define STRINGYZETA_SYMBOLS_HPP

#include "stringyzeta/laurent.hpp"
#include "stringyzeta/rational.hpp"

#include <map>
#include <optional>
#include <string>

namespace stringyzeta {

// A stratum symbol with its specialization images. Symbols produced by the
// surface pipeline are classes of smooth projective curves and carry the
// genus; abstract inputs may declare explicit images instead.
struct SymbolInfo {
    std::string id;
    std::optional<int> genus;
    LaurentExpr hodge; // polynomial in u, v
    Rational euler;
};

using SymbolTable = std::map<std::string, SymbolInfo>;

// Genus-g smooth projective curve: H = 1 - g u - g v + uv, chi = 2 - 2g.
inline SymbolInfo curve_symbol(const std::string& id, int genus) {
    SymbolInfo s;
    s.id = id;
    s.genus = genus;
    s.hodge = LaurentExpr::one() - LaurentExpr::constant(Int(genus)) * LaurentExpr::variable(Var::U) -
              LaurentExpr::constant(Int(genus)) * LaurentExpr::variable(Var::V) +
              LaurentExpr::variable(Var::U) * LaurentExpr::variable(Var::V);
    s.euler = Rational(2 - 2LL * genus);
    return s;
}

inline SymbolInfo explicit_symbol(const std::string& id, LaurentExpr hodge, Rational euler) {
    SymbolInfo s;
    s.id = id;
    s.hodge = std::move(hodge);
    s.euler = std::move(euler);
    return s;
}

} // namespace stringyzeta

#endif
