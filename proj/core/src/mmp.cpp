#include "stringyzeta/mmp.hpp"

#include "stringyzeta/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace stringyzeta {

PartialModel::PartialModel(ResolutionGraph g, Rational d)
    : graph_(std::move(g)), d_(std::move(d)) {
    if (d_ < Rational(0) || d_ > Rational(1))
        throw std::invalid_argument("PartialModel: d must lie in [0, 1]");
    const int n = static_cast<int>(graph_.vertices().size());
    contracted_.assign(n, 0);
    m_ = intersection_matrix(graph_).matrix;
    a_ = log_discrepancies(graph_);
    recompute();
}

std::vector<int> PartialModel::contracted_sorted() const {
    std::vector<int> s = order_;
    std::sort(s.begin(), s.end());
    return s;
}

void PartialModel::recompute() {
    const int n = static_cast<int>(graph_.vertices().size());
    nu_.assign(n, Rational(1) - d_);
    t_.assign(n, Rational(0));

    std::vector<int> s;
    for (int i = 0; i < n; ++i)
        if (contracted_[i]) s.push_back(i);

    // branch incidence contributions b * (Br . E_j)
    std::vector<Rational> branch_term(n, Rational(0));
    for (const auto& br : graph_.branches())
        branch_term[br.attach] += br.coefficient;

    if (!s.empty()) {
        const int k = static_cast<int>(s.size());
        QMatrix a(k, QVector(k));
        QVector rhs(k);
        for (int row = 0; row < k; ++row) {
            int j = s[row];
            for (int col = 0; col < k; ++col) a[row][col] = Rational(m_[s[col]][j]);
            const auto& v = graph_.vertices()[j];
            Rational r(2LL * v.genus - 2 - v.self_intersection);
            Rational adj(0);
            for (int i = 0; i < n; ++i)
                if (!contracted_[i]) adj += Rational(m_[i][j]);
            rhs[row] = r + d_ * adj + branch_term[j];
        }
        QVector x = solve_linear(std::move(a), std::move(rhs));
        for (int row = 0; row < k; ++row) nu_[s[row]] = x[row] + Rational(1);
    }

    for (int j = 0; j < n; ++j) {
        if (contracted_[j]) continue;
        const auto& v = graph_.vertices()[j];
        Rational t(2LL * v.genus - 2 - v.self_intersection);
        for (int i = 0; i < n; ++i) {
            if (m_[i][j] == 0) continue;
            t -= (nu_[i] - Rational(1)) * Rational(m_[i][j]);
        }
        t += branch_term[j];
        t_[j] = t;
    }
}

Rational PartialModel::log_divisor_intersection(int vertex) const {
    if (vertex < 0 || vertex >= static_cast<int>(t_.size()))
        throw std::invalid_argument("log_divisor_intersection: no such vertex");
    if (contracted_[vertex])
        throw std::invalid_argument("log_divisor_intersection: vertex is contracted");
    return t_[vertex];
}

bool PartialModel::nef() const {
    for (std::size_t j = 0; j < t_.size(); ++j)
        if (!contracted_[j] && t_[j].sign() < 0) return false;
    return true;
}

bool PartialModel::ample() const {
    for (std::size_t j = 0; j < t_.size(); ++j)
        if (!contracted_[j] && t_[j].sign() <= 0) return false;
    return true;
}

std::map<int, Rational> PartialModel::contraction_pullback(int vertex) const {
    if (vertex < 0 || vertex >= static_cast<int>(contracted_.size()) || contracted_[vertex])
        throw std::invalid_argument("contraction_pullback: vertex must remain on the model");
    std::vector<int> s;
    for (std::size_t i = 0; i < contracted_.size(); ++i)
        if (contracted_[i]) s.push_back(static_cast<int>(i));
    std::map<int, Rational> out;
    if (s.empty()) return out;
    const int k = static_cast<int>(s.size());
    QMatrix a(k, QVector(k));
    QVector rhs(k);
    for (int row = 0; row < k; ++row) {
        for (int col = 0; col < k; ++col) a[row][col] = Rational(m_[s[col]][s[row]]);
        rhs[row] = Rational(-m_[vertex][s[row]]);
    }
    QVector x = solve_linear(std::move(a), std::move(rhs));
    for (int row = 0; row < k; ++row) out.emplace(s[row], x[row]);
    return out;
}

PartialModel contract(const PartialModel& m, int vertex) {
    if (vertex < 0 || vertex >= static_cast<int>(m.contracted_.size()))
        throw std::invalid_argument("contract: no such vertex");
    if (m.contracted_[vertex]) fail("AlreadyContracted", "vertex is already contracted");
    PartialModel r = m;
    r.contracted_[vertex] = 1;
    r.order_.push_back(vertex);
    r.recompute();
    return r;
}

namespace {

PartialModel run_mmp_impl(const ResolutionGraph& g, const Rational& d,
                          const std::vector<int>& order) {
    if (d < Rational(0) || d > Rational(1))
        throw std::invalid_argument("run_mmp: d must lie in [0, 1]");
    if (d == Rational(1) && classify(g) == GermClass::strictly_lc)
        fail("StrictlyLcAtDOne",
             "d = 1 requested on a germ with a strictly lc point; use d < 1");
    PartialModel model(g, d);
    const int n = static_cast<int>(g.vertices().size());
    for (int steps = 0; steps <= n; ++steps) {
        int pick = -1;
        for (int j : order) {
            if (model.is_contracted(j)) continue;
            if (model.log_divisor_intersection(j).sign() < 0) {
                pick = j;
                break;
            }
        }
        if (pick < 0) break;
        model = contract(model, pick);
    }
    // Def 1.6.1 discrepancy bounds on the contracted curves, and the sign
    // pattern of the discrepancy divisor on the remaining ones.
    const Rational bound = Rational(1) - d;
    for (int i : model.contracted()) {
        if (d < Rational(1) && !(model.nu(i) > bound))
            throw std::logic_error("run_mmp: contracted curve violates the klt bound");
    }
    if (d == Rational(1)) {
        for (int j = 0; j < n; ++j) {
            if (model.is_contracted(j)) continue;
            if (model.N(j).sign() >= 0)
                throw std::logic_error("run_mmp: remaining curve with nonnegative discrepancy");
        }
    }
    return model;
}

} // namespace

PartialModel run_mmp(const ResolutionGraph& g, const Rational& d) {
    std::vector<int> order(g.vertices().size());
    std::iota(order.begin(), order.end(), 0);
    return run_mmp_impl(g, d, order);
}

PartialModel run_mmp(const ResolutionGraph& g, const Rational& d,
                     const std::vector<int>& pivot_order) {
    if (pivot_order.size() != g.vertices().size())
        throw std::invalid_argument("run_mmp: pivot order must list every vertex");
    return run_mmp_impl(g, d, pivot_order);
}

PartialModel canonical_model(const ResolutionGraph& g, const Rational& d) {
    PartialModel model = run_mmp(g, d);
    const int n = static_cast<int>(g.vertices().size());
    for (int steps = 0; steps <= n; ++steps) {
        int pick = -1;
        for (int j = 0; j < n; ++j) {
            if (model.is_contracted(j)) continue;
            if (model.log_divisor_intersection(j).is_zero()) {
                pick = j;
                break;
            }
        }
        if (pick < 0) break;
        model = contract(model, pick);
    }
    const Rational bound = Rational(1) - d;
    for (int i : model.contracted())
        if (!(model.nu(i) >= bound))
            throw std::logic_error("canonical_model: contracted curve violates the lc bound");
    if (!model.ample())
        throw std::logic_error("canonical_model: log divisor is not relatively ample");
    return model;
}

std::vector<NuRow> nu_N(const PartialModel& m) {
    std::vector<NuRow> rows;
    const auto& g = m.base();
    for (std::size_t i = 0; i < g.vertices().size(); ++i) {
        NuRow r;
        r.id = g.vertices()[i].id;
        r.nu = m.nu(static_cast<int>(i));
        r.a = m.a(static_cast<int>(i));
        r.N = m.N(static_cast<int>(i));
        r.contracted = m.is_contracted(static_cast<int>(i));
        if (r.nu + r.N != r.a) throw std::logic_error("nu_N: nu + N != a");
        rows.push_back(std::move(r));
    }
    for (std::size_t k = 0; k < g.branches().size(); ++k) {
        NuRow r;
        r.id = g.branches()[k].id;
        r.nu = m.branch_nu(static_cast<int>(k));
        r.N = m.branch_N(static_cast<int>(k));
        r.a = m.branch_a(static_cast<int>(k));
        r.branch = true;
        if (r.nu + r.N != r.a) throw std::logic_error("nu_N: nu + N != a");
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace stringyzeta
