#ifndef STRINGYZETA_IO_HPP
#define STRINGYZETA_IO_HPP

#include "stringyzeta/abstract.hpp"
#include "stringyzeta/ratexpr.hpp"
#include "stringyzeta/resolution_graph.hpp"
#include "stringyzeta/unirational.hpp"

#include <stdexcept>
#include <string>

namespace stringyzeta {

// Malformed input files and expressions; the CLI maps this to exit code 2.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

enum class InputKind { germ, stratified };
InputKind detect_input(const std::string& json_text);

// Germ schema:
// { "name": str, "vertices": [{"id","genus","self_intersection"}],
//   "edges": [[id,id],...] (repeats encode multi-edges),
//   "branches": [{"id","coefficient":"p/q","attach":id}] }
ResolutionGraph parse_germ_json(const std::string& json_text);
std::string germ_to_json(const ResolutionGraph& g);

// Stratified schema:
// { "name": str, "dimension": int, "complete": bool,
//   "divisors": [{"id","nu":"p/q","N":"p/q"}],
//   "symbols": [{"id","genus"} | {"id","hodge":str,"euler":"p/q"}],
//   "strata": [{"divisors":[ids],"euler"?,"hodge"?,"symbolic"?}] }
StratifiedResolution parse_stratified_json(const std::string& json_text);
std::string stratified_to_json(const StratifiedResolution& data);

// Polynomial expressions in L, u, v and bracketed symbols, e.g.
// "L^2+L+1-[C]" or "uv-3u-3v+1". Juxtaposition multiplies.
LaurentExpr parse_class_expr(const std::string& text);

enum class Format { text, latex, json };
Format parse_format(const std::string& name);

std::string render(const Rational& value, Format format);
std::string render(const LaurentExpr& value, Format format);
std::string render(const RationalExpr& value, Format format);
std::string render(const UniRationalFn& value, Format format);

} // namespace stringyzeta

#endif
