#include "stringyzeta/io.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

namespace stringyzeta {

using json = nlohmann::ordered_json;

namespace {

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return j;
}

Rational rational_field(const json& j, const char* where) {
    if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<long long>()));
    if (!j.is_string()) throw ParseError(std::string(where) + ": expected a \"p/q\" string");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(where) + ": " + e.what());
    }
}

} // namespace

InputKind detect_input(const std::string& text) {
    json j = parse_json(text);
    if (j.contains("vertices")) return InputKind::germ;
    if (j.contains("divisors") && j.contains("dimension")) return InputKind::stratified;
    throw ParseError("input is neither a germ nor stratified resolution data");
}

namespace {

// json type errors (wrong field types and the like) count as parse errors
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

ResolutionGraph parse_germ_json_impl(const std::string& text) {
    json j = parse_json(text);
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw ParseError("germ: missing \"vertices\" array");
    std::vector<GraphVertex> vertices;
    for (const auto& v : j["vertices"]) {
        if (!v.contains("id") || !v.contains("genus") || !v.contains("self_intersection"))
            throw ParseError("germ vertex: need id, genus, self_intersection");
        GraphVertex gv;
        gv.id = v["id"].get<std::string>();
        gv.genus = v["genus"].get<int>();
        gv.self_intersection = v["self_intersection"].get<long long>();
        vertices.push_back(std::move(gv));
    }
    std::vector<std::pair<std::string, std::string>> edges;
    if (j.contains("edges")) {
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2) throw ParseError("germ edge: expected [id, id]");
            edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        }
    }
    std::vector<std::pair<std::string, std::pair<Rational, std::string>>> branches;
    if (j.contains("branches")) {
        for (const auto& b : j["branches"]) {
            if (!b.contains("id") || !b.contains("coefficient") || !b.contains("attach"))
                throw ParseError("germ branch: need id, coefficient, attach");
            branches.emplace_back(b["id"].get<std::string>(),
                                  std::make_pair(rational_field(b["coefficient"], "coefficient"),
                                                 b["attach"].get<std::string>()));
        }
    }
    std::string name = j.value("name", std::string("germ"));
    return ResolutionGraph(std::move(name), std::move(vertices), std::move(edges),
                           std::move(branches));
}

} // namespace

ResolutionGraph parse_germ_json(const std::string& text) {
    return guarded([&] { return parse_germ_json_impl(text); });
}

std::string germ_to_json(const ResolutionGraph& g) {
    json j;
    j["name"] = g.name();
    j["vertices"] = json::array();
    for (const auto& v : g.vertices())
        j["vertices"].push_back(
            {{"id", v.id}, {"genus", v.genus}, {"self_intersection", v.self_intersection}});
    j["edges"] = json::array();
    for (const auto& e : g.edges())
        j["edges"].push_back({g.vertices()[e.a].id, g.vertices()[e.b].id});
    j["branches"] = json::array();
    for (const auto& b : g.branches())
        j["branches"].push_back({{"id", b.id},
                                 {"coefficient", b.coefficient.str()},
                                 {"attach", g.vertices()[b.attach].id}});
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// class-expression parser

namespace {

struct ExprParser {
    const std::string& s;
    std::size_t pos = 0;

    explicit ExprParser(const std::string& text) : s(text) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void bad(const std::string& what) {
        throw ParseError("expression: " + what + " at position " + std::to_string(pos) +
                         " in \"" + s + "\"");
    }

    long long integer() {
        skip();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            bad("expected an integer");
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return std::stoll(s.substr(start, pos - start));
    }

    Rational exponent() {
        skip();
        if (eat('(')) {
            long long num = integer();
            long long den = 1;
            if (eat('/')) den = integer();
            if (!eat(')')) bad("expected ')'");
            if (den == 0) bad("zero exponent denominator");
            return Rational(num, den);
        }
        return Rational(integer());
    }

    LaurentExpr expr() {
        bool neg = eat('-');
        LaurentExpr acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                break;
        }
        return acc;
    }

    LaurentExpr term() {
        LaurentExpr acc = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos;
                acc *= factor();
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == 'L' || c == 'u' ||
                       c == 'v' || c == '[' || c == '(') {
                acc *= factor();
            } else {
                break;
            }
        }
        return acc;
    }

    LaurentExpr factor() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            LaurentExpr base = LaurentExpr::integer(integer());
            if (eat('^')) return base.pow(nonneg_int_exponent());
            return base;
        }
        if (c == 'L' || c == 'u' || c == 'v') {
            ++pos;
            Var v = c == 'L' ? Var::L : (c == 'u' ? Var::U : Var::V);
            if (eat('^')) return LaurentExpr::variable(v, exponent());
            return LaurentExpr::variable(v);
        }
        if (c == '[') {
            ++pos;
            std::size_t start = pos;
            while (pos < s.size() && s[pos] != ']') ++pos;
            if (pos >= s.size()) bad("unterminated symbol");
            std::string name = s.substr(start, pos - start);
            ++pos;
            if (name.empty()) bad("empty symbol name");
            if (eat('^')) return LaurentExpr::symbol(name, static_cast<int>(nonneg_int_exponent()));
            return LaurentExpr::symbol(name);
        }
        if (c == '(') {
            ++pos;
            LaurentExpr inner = expr();
            if (!eat(')')) bad("expected ')'");
            if (eat('^')) return inner.pow(nonneg_int_exponent());
            return inner;
        }
        bad("unexpected character");
    }

    unsigned long nonneg_int_exponent() {
        Rational e = exponent();
        if (!e.is_integer() || e.sign() < 0) bad("exponent must be a nonnegative integer here");
        return static_cast<unsigned long>(e.num().get_ui());
    }
};

} // namespace

LaurentExpr parse_class_expr(const std::string& text) {
    ExprParser p(text);
    LaurentExpr e = p.expr();
    p.skip();
    if (p.pos != text.size()) p.bad("trailing input");
    return e;
}

// ---------------------------------------------------------------------------
// stratified JSON

namespace {

StratifiedResolution parse_stratified_json_impl(const std::string& text) {
    json j = parse_json(text);
    if (!j.contains("dimension") || !j.contains("divisors") || !j.contains("strata"))
        throw ParseError("stratified data: need dimension, divisors, strata");
    int dimension = j["dimension"].get<int>();
    bool complete = j.value("complete", false);
    std::string name = j.value("name", std::string("stratified"));

    std::vector<AbstractDivisor> divisors;
    for (const auto& d : j["divisors"]) {
        if (!d.contains("id") || !d.contains("nu") || !d.contains("N"))
            throw ParseError("divisor: need id, nu, N");
        AbstractDivisor ad;
        ad.id = d["id"].get<std::string>();
        ad.nu = rational_field(d["nu"], "nu");
        ad.N = rational_field(d["N"], "N");
        divisors.push_back(std::move(ad));
    }

    SymbolTable symbols;
    if (j.contains("symbols")) {
        for (const auto& s : j["symbols"]) {
            if (!s.contains("id")) throw ParseError("symbol: need id");
            std::string id = s["id"].get<std::string>();
            if (s.contains("genus")) {
                symbols.emplace(id, curve_symbol(id, s["genus"].get<int>()));
            } else if (s.contains("hodge") && s.contains("euler")) {
                LaurentExpr h = parse_class_expr(s["hodge"].get<std::string>());
                symbols.emplace(id,
                                explicit_symbol(id, std::move(h), rational_field(s["euler"], "euler")));
            } else {
                throw ParseError("symbol: need genus, or hodge and euler");
            }
        }
    }

    auto index_of = [&](const std::string& id) {
        for (std::size_t i = 0; i < divisors.size(); ++i)
            if (divisors[i].id == id) return static_cast<int>(i);
        throw ParseError("stratum references unknown divisor '" + id + "'");
    };

    std::map<std::vector<int>, StratumClass> strata;
    for (const auto& s : j["strata"]) {
        if (!s.contains("divisors")) throw ParseError("stratum: need a divisors array");
        std::vector<int> key;
        for (const auto& id : s["divisors"]) key.push_back(index_of(id.get<std::string>()));
        std::sort(key.begin(), key.end());
        StratumClass cls;
        if (s.contains("euler")) cls.euler = rational_field(s["euler"], "euler");
        if (s.contains("hodge")) cls.hodge = parse_class_expr(s["hodge"].get<std::string>());
        if (s.contains("symbolic")) cls.symbolic = parse_class_expr(s["symbolic"].get<std::string>());
        if (!strata.emplace(std::move(key), std::move(cls)).second)
            throw ParseError("duplicate stratum");
    }
    if (!strata.count({})) strata.emplace(std::vector<int>{}, StratumClass{});

    return StratifiedResolution(std::move(name), dimension, complete, std::move(divisors),
                                std::move(symbols), std::move(strata));
}

} // namespace

StratifiedResolution parse_stratified_json(const std::string& text) {
    return guarded([&] { return parse_stratified_json_impl(text); });
}

// ---------------------------------------------------------------------------
// rendering

namespace {

std::string exponent_text(const Rational& e) {
    if (e.is_integer() && e.sign() > 0) return "^" + e.str();
    return "^(" + e.str() + ")";
}

std::string monomial_text(const LaurentExpr& owner, const Monomial& m, const Int& coeff,
                          bool latex) {
    std::ostringstream os;
    Int a = coeff < 0 ? Int(-coeff) : coeff;
    bool unit_mono = m.is_unit();
    bool wrote = false;
    if (a != 1 || unit_mono) {
        os << a.get_str();
        wrote = true;
    }
    const char* sep = latex ? " " : "*";
    for (int i = 0; i < 4; ++i) {
        if (m.e[i] == 0) continue;
        if (wrote) os << sep;
        Rational e(m.e[i], owner.lattice());
        os << var_name(static_cast<Var>(i));
        if (e != Rational(1)) {
            if (latex)
                os << "^{" << e.str() << "}";
            else
                os << exponent_text(e);
        }
        wrote = true;
    }
    for (const auto& [name, deg] : m.syms) {
        if (wrote) os << sep;
        os << "[" << name << "]";
        if (deg != 1) {
            if (latex)
                os << "^{" << deg << "}";
            else
                os << "^" << deg;
        }
        wrote = true;
    }
    return os.str();
}

std::string laurent_text(const LaurentExpr& x, bool latex) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        os << monomial_text(x, m, c, latex);
    }
    return os.str();
}

json term_json(const LaurentExpr& owner, const Monomial& m, const Int& coeff) {
    json t;
    t["coeff"] = coeff.get_str();
    const char* keys[4] = {"L", "T", "u", "v"};
    for (int i = 0; i < 4; ++i) {
        if (m.e[i] == 0) continue;
        t[keys[i]] = Rational(m.e[i], owner.lattice()).str();
    }
    if (!m.syms.empty()) {
        json sy;
        for (const auto& [name, deg] : m.syms) sy[name] = deg;
        t["symbols"] = sy;
    }
    return t;
}

json laurent_json(const LaurentExpr& x) {
    json terms = json::array();
    for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it)
        terms.push_back(term_json(x, it->first, it->second));
    return terms;
}

std::string den_text(const RationalExpr& x, bool latex) {
    std::ostringstream os;
    bool wrote = false;
    const char* sep = latex ? " " : "*";
    if (!x.den_unit().is_one()) {
        os << monomial_text(x.den_unit(), x.den_unit().terms().begin()->first,
                            x.den_unit().terms().begin()->second, latex);
        wrote = true;
    }
    for (const auto& [f, c] : x.den_factors()) {
        if (wrote) os << sep;
        os << "(" << laurent_text(f, latex) << ")";
        if (c != 1) os << (latex ? "^{" + std::to_string(c) + "}" : "^" + std::to_string(c));
        wrote = true;
    }
    if (!wrote) os << "1";
    return os.str();
}

bool den_trivial(const RationalExpr& x) {
    return x.den_factors().empty() && x.den_unit().is_one();
}

} // namespace

Format parse_format(const std::string& name) {
    if (name == "text") return Format::text;
    if (name == "latex") return Format::latex;
    if (name == "json") return Format::json;
    throw ParseError("unknown format '" + name + "'");
}

std::string render(const Rational& value, Format format) {
    if (format == Format::json) return json(value.str()).dump();
    return value.str();
}

std::string render(const LaurentExpr& value, Format format) {
    if (format == Format::json) return laurent_json(value).dump();
    return laurent_text(value, format == Format::latex);
}

std::string render(const RationalExpr& value, Format format) {
    switch (format) {
        case Format::text:
            if (den_trivial(value)) return laurent_text(value.num(), false);
            return "(" + laurent_text(value.num(), false) + ") / (" + den_text(value, false) + ")";
        case Format::latex:
            if (den_trivial(value)) return laurent_text(value.num(), true);
            return "\\frac{" + laurent_text(value.num(), true) + "}{" + den_text(value, true) + "}";
        default: {
            json j;
            j["num"] = laurent_json(value.num());
            json den;
            den["unit"] = term_json(value.den_unit(), value.den_unit().terms().begin()->first,
                                    value.den_unit().terms().begin()->second);
            den["factors"] = json::array();
            for (const auto& [f, c] : value.den_factors())
                den["factors"].push_back({{"poly", laurent_json(f)}, {"power", c}});
            j["den"] = den;
            return j.dump();
        }
    }
}

std::string render(const UniRationalFn& value, Format format) {
    switch (format) {
        case Format::text:
            return value.str();
        case Format::latex: {
            if (value.den() == UniPoly(Rational(1))) return value.num().str();
            return "\\frac{" + value.num().str() + "}{" + value.den().str() + "}";
        }
        default: {
            json j;
            json num = json::array(), den = json::array();
            for (const auto& c : value.num().coeffs()) num.push_back(c.str());
            for (const auto& c : value.den().coeffs()) den.push_back(c.str());
            j["num"] = num;
            j["den"] = den;
            return j.dump();
        }
    }
}

std::string stratified_to_json(const StratifiedResolution& data) {
    json j;
    j["name"] = data.name();
    j["dimension"] = data.dimension();
    j["complete"] = data.complete();
    j["divisors"] = json::array();
    for (const auto& d : data.divisors())
        j["divisors"].push_back({{"id", d.id}, {"nu", d.nu.str()}, {"N", d.N.str()}});
    j["symbols"] = json::array();
    for (const auto& [id, info] : data.symbols()) {
        if (info.genus)
            j["symbols"].push_back({{"id", id}, {"genus", *info.genus}});
        else
            j["symbols"].push_back({{"id", id},
                                    {"hodge", laurent_text(info.hodge, false)},
                                    {"euler", info.euler.str()}});
    }
    j["strata"] = json::array();
    for (const auto& [key, cls] : data.strata()) {
        json s;
        json ids = json::array();
        for (int i : key) ids.push_back(data.divisors()[i].id);
        s["divisors"] = ids;
        if (cls.euler) s["euler"] = cls.euler->str();
        if (cls.hodge) s["hodge"] = laurent_text(*cls.hodge, false);
        if (cls.symbolic) s["symbolic"] = laurent_text(*cls.symbolic, false);
        j["strata"].push_back(s);
    }
    return j.dump(2) + "\n";
}

} // namespace stringyzeta
