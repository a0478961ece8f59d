#include "stringyzeta/stringy.hpp"

#include "stringyzeta/errors.hpp"

#include <map>
#include <stdexcept>

namespace stringyzeta {

const char* to_string(Level level) {
    switch (level) {
        case Level::motivic: return "motivic";
        case Level::hodge: return "hodge";
        default: return "euler";
    }
}

RationalExpr motivic_factor(const Rational& nu, const Rational& N) {
    if (nu.is_zero() && N.is_zero())
        throw std::logic_error("factor with nu = N = 0");
    if (nu == Rational(1) && N.is_zero()) return RationalExpr::one();
    LaurentExpr m = LaurentExpr::term(Int(1), nu, -N, Rational(0), Rational(0));
    return RationalExpr::over_factor(LaurentExpr::variable(Var::L) - LaurentExpr::one(), m);
}

RationalExpr hodge_factor(const Rational& nu, const Rational& N) {
    if (nu.is_zero() && N.is_zero())
        throw std::logic_error("factor with nu = N = 0");
    if (nu == Rational(1) && N.is_zero()) return RationalExpr::one();
    LaurentExpr uv = LaurentExpr::variable(Var::U) * LaurentExpr::variable(Var::V);
    LaurentExpr m = LaurentExpr::term(Int(1), Rational(0), -N, nu, nu);
    return RationalExpr::over_factor(uv - LaurentExpr::one(), m);
}

UniRationalFn euler_factor(const Rational& nu, const Rational& N) {
    if (nu.is_zero() && N.is_zero())
        throw std::logic_error("factor with nu = N = 0");
    return UniRationalFn::inverse_linear(nu, N);
}

namespace {

// One stratum of the exceptional fiber: a curve minus its special points, an
// intersection point of two curves, or a branch point. Branch points carry
// the vertex factor and the branch factor.
struct FiberStratum {
    std::vector<int> vertices;
    int branch = -1;
    LaurentExpr motivic;
    LaurentExpr hodge;
    Rational euler;
};

std::vector<FiberStratum> fiber_strata(const ResolutionGraph& g, SymbolTable& symbols) {
    std::vector<FiberStratum> out;
    const int n = static_cast<int>(g.vertices().size());
    const LaurentExpr L = LaurentExpr::variable(Var::L);
    const LaurentExpr uv = LaurentExpr::variable(Var::U) * LaurentExpr::variable(Var::V);

    for (int i = 0; i < n; ++i) {
        const auto& v = g.vertices()[i];
        int delta = g.incidence(i);
        FiberStratum s;
        s.vertices = {i};
        LaurentExpr shift = LaurentExpr::integer(delta);
        if (v.genus == 0) {
            s.motivic = L + LaurentExpr::one() - shift;
            s.hodge = uv + LaurentExpr::one() - shift;
            s.euler = Rational(2 - delta);
        } else {
            SymbolInfo info = curve_symbol(v.id, v.genus);
            symbols.emplace(v.id, info);
            s.motivic = LaurentExpr::symbol(v.id) - shift;
            s.hodge = info.hodge - shift;
            s.euler = info.euler - Rational(delta);
        }
        out.push_back(std::move(s));
    }

    std::map<std::pair<int, int>, int> pair_count;
    for (const auto& e : g.edges()) pair_count[{e.a, e.b}] += 1;
    for (const auto& [pair, count] : pair_count) {
        FiberStratum s;
        s.vertices = {pair.first, pair.second};
        s.motivic = LaurentExpr::integer(count);
        s.hodge = LaurentExpr::integer(count);
        s.euler = Rational(count);
        out.push_back(std::move(s));
    }

    for (std::size_t k = 0; k < g.branches().size(); ++k) {
        FiberStratum s;
        s.vertices = {g.branches()[k].attach};
        s.branch = static_cast<int>(k);
        s.motivic = LaurentExpr::one();
        s.hodge = LaurentExpr::one();
        s.euler = Rational(1);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

namespace {

std::variant<RationalExpr, UniRationalFn> assemble_fiber_zeta(
    const ResolutionGraph& g, const std::vector<Rational>& nu, const std::vector<Rational>& N,
    const std::vector<Rational>& branch_nu, Level level, SymbolTable& symbols) {
    std::vector<FiberStratum> strata = fiber_strata(g, symbols);

    if (level == Level::euler) {
        UniRationalFn acc;
        for (const auto& s : strata) {
            if (s.euler.is_zero()) continue;
            UniRationalFn term{s.euler};
            for (int i : s.vertices) term = term * euler_factor(nu[i], N[i]);
            if (s.branch >= 0) term = term * euler_factor(branch_nu[s.branch], Rational(0));
            acc = acc + term;
        }
        return acc;
    }

    RationalExpr acc;
    for (const auto& s : strata) {
        const LaurentExpr& cls = level == Level::motivic ? s.motivic : s.hodge;
        if (cls.is_zero()) continue;
        RationalExpr term{cls};
        for (int i : s.vertices)
            term *= level == Level::motivic ? motivic_factor(nu[i], N[i])
                                            : hodge_factor(nu[i], N[i]);
        if (s.branch >= 0) {
            term *= level == Level::motivic ? motivic_factor(branch_nu[s.branch], Rational(0))
                                            : hodge_factor(branch_nu[s.branch], Rational(0));
        }
        acc += term;
    }
    return acc;
}

} // namespace

StringyZeta zeta(const ResolutionGraph& g, const Rational& d, Level level, ModelChoice choice) {
    StringyZeta z;
    z.level = level;
    z.d = d;
    z.model = choice;
    z.germ = g.name();
    z.source = std::make_shared<ResolutionGraph>(g);

    if (g.empty()) {
        // smooth germ: the fiber is the point itself
        if (level == Level::euler)
            z.value = UniRationalFn(Rational(1));
        else
            z.value = RationalExpr::one();
        return z;
    }

    PartialModel model = choice == ModelChoice::minimal ? run_mmp(g, d) : canonical_model(g, d);
    z.table = nu_N(model);
    for (int i : model.contracted()) z.contracted.push_back(g.vertices()[i].id);

    const int n = static_cast<int>(g.vertices().size());
    std::vector<Rational> nu(n), N(n);
    for (int i = 0; i < n; ++i) {
        nu[i] = model.nu(i);
        N[i] = model.N(i);
    }
    std::vector<Rational> branch_nu;
    for (std::size_t k = 0; k < g.branches().size(); ++k)
        branch_nu.push_back(model.branch_nu(static_cast<int>(k)));

    z.value = assemble_fiber_zeta(g, nu, N, branch_nu, level, z.symbols);
    return z;
}

StringyZeta zeta_from_table(const ResolutionGraph& g, const std::vector<NuRow>& rows,
                            Level level) {
    const int n = static_cast<int>(g.vertices().size());
    const int nb = static_cast<int>(g.branches().size());
    if (static_cast<int>(rows.size()) != n + nb)
        throw std::invalid_argument("zeta_from_table: one row per vertex and branch expected");
    std::vector<Rational> nu(n), N(n), branch_nu(nb);
    for (int i = 0; i < n; ++i) {
        if (rows[i].id != g.vertices()[i].id)
            throw std::invalid_argument("zeta_from_table: row order must follow the vertices");
        nu[i] = rows[i].nu;
        N[i] = rows[i].N;
    }
    for (int k = 0; k < nb; ++k) {
        if (rows[n + k].id != g.branches()[k].id)
            throw std::invalid_argument("zeta_from_table: branch rows must follow the branches");
        branch_nu[k] = rows[n + k].nu;
    }

    StringyZeta z;
    z.level = level;
    z.d = Rational(1);
    z.germ = g.name();
    z.table = rows;
    z.source = std::make_shared<ResolutionGraph>(g);
    if (g.empty()) {
        if (level == Level::euler)
            z.value = UniRationalFn(Rational(1));
        else
            z.value = RationalExpr::one();
        return z;
    }
    z.value = assemble_fiber_zeta(g, nu, N, branch_nu, level, z.symbols);
    return z;
}

namespace {

RationalExpr discrepancy_factor(const Rational& a) {
    return motivic_factor(a, Rational(0));
}

} // namespace

VeysInvariants veys_invariants(const ResolutionGraph& g) {
    if (!g.branches().empty())
        fail("NotApplicable", "stringy invariants are defined for germs without boundary");
    ResolutionGraph minimal = minimize(g);
    VeysInvariants out;
    out.input_was_minimal = (minimal == g);
    if (classify(minimal) != GermClass::not_lc)
        fail("NotApplicable", "germ is log canonical");

    DiscrepancyVector disc = log_discrepancies(minimal);
    const int n = static_cast<int>(minimal.vertices().size());
    std::vector<char> zero(n, 0);
    for (int i = 0; i < n; ++i) zero[i] = disc.vertex_a[i].is_zero() ? 1 : 0;

    std::vector<FiberStratum> strata = fiber_strata(minimal, out.symbols);
    RationalExpr E;
    Rational e(0);
    for (const auto& s : strata) {
        bool skip = false;
        for (int i : s.vertices)
            if (zero[i]) skip = true;
        if (skip) continue;
        if (!s.motivic.is_zero()) {
            RationalExpr term{s.motivic};
            for (int i : s.vertices) term *= discrepancy_factor(disc.vertex_a[i]);
            E += term;
        }
        if (!s.euler.is_zero()) {
            Rational t = s.euler;
            for (int i : s.vertices) t /= disc.vertex_a[i];
            e += t;
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!zero[i]) continue;
        long long kappa = -minimal.vertices()[i].self_intersection;
        std::vector<int> nb;
        for (const auto& ed : minimal.edges()) {
            if (ed.a == i) nb.push_back(ed.b);
            if (ed.b == i) nb.push_back(ed.a);
        }
        if (nb.empty() || nb.size() > 2)
            fail("StructureViolation", "zero-discrepancy curve must meet one or two components");
        Rational a1 = disc.vertex_a[nb[0]];
        Rational a2 = nb.size() == 2 ? disc.vertex_a[nb[1]] : Rational(1);
        if (a1.is_zero() || a2.is_zero())
            fail("StructureViolation", "adjacent zero-discrepancy curves");
        RationalExpr term{(LaurentExpr::variable(Var::L) - LaurentExpr::one()).pow(2) *
                          LaurentExpr::integer(kappa)};
        term *= RationalExpr::over_factor(LaurentExpr::one(),
                                          LaurentExpr::variable(Var::L, a1));
        term *= RationalExpr::over_factor(LaurentExpr::one(),
                                          LaurentExpr::variable(Var::L, a2));
        E += term;
        e += Rational(kappa) / (a1 * a2);
    }
    out.E = E;
    out.e = e;
    return out;
}

RationalExpr batyrev_expression(const ResolutionGraph& g, SymbolTable* out_symbols) {
    if (g.empty()) return RationalExpr::one();
    DiscrepancyVector disc = log_discrepancies(g);
    for (const auto& a : disc.vertex_a)
        if (a.is_zero()) fail("ZeroDiscrepancy", "a vertex has log discrepancy zero");

    SymbolTable symbols;
    std::vector<FiberStratum> strata = fiber_strata(g, symbols);
    RationalExpr acc;
    for (const auto& s : strata) {
        if (s.motivic.is_zero()) continue;
        RationalExpr term{s.motivic};
        for (int i : s.vertices) term *= discrepancy_factor(disc.vertex_a[i]);
        if (s.branch >= 0) term *= discrepancy_factor(disc.branch_a[s.branch]);
        acc += term;
    }
    if (out_symbols) *out_symbols = symbols;
    return acc;
}

EvalResult eval_or_limit_at_1(const StringyZeta& z) {
    if (z.level == Level::euler) {
        auto lim = z.fn().limit_at(Rational(1));
        if (std::holds_alternative<PoleReport>(lim)) return std::get<PoleReport>(lim);
        return std::get<Rational>(lim);
    }
    LaurentExpr base = z.level == Level::motivic
                           ? LaurentExpr::variable(Var::L)
                           : LaurentExpr::variable(Var::U) * LaurentExpr::variable(Var::V);
    auto lim = limit_at_s1(z.expr(), base);
    if (std::holds_alternative<PoleReport>(lim)) return std::get<PoleReport>(lim);
    RationalExpr value = std::get<RationalExpr>(lim);

    if (z.level == Level::motivic && z.source && !z.source->empty()) {
        bool all_nonzero = true;
        for (const auto& row : z.table)
            if (row.a.is_zero()) all_nonzero = false;
        if (all_nonzero) {
            // the evaluation at 1 must agree with the discrepancy-based sum
            RationalExpr b = batyrev_expression(*z.source);
            if (!ratfn_equal(value, b))
                throw std::logic_error("eval_or_limit_at_1: limit disagrees with the Batyrev sum");
        }
    }
    return value;
}

} // namespace stringyzeta
