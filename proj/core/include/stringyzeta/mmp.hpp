#ifndef STRINGYZETA_MMP_HPP
#define STRINGYZETA_MMP_HPP

#include "stringyzeta/resolution_graph.hpp"

#include <map>
#include <string>
#include <vector>

namespace stringyzeta {

// Partial contraction of a resolution graph, with all intersection theory on
// the singular model computed through Mumford pull-back on the fixed graph.
// Solving the contracted-submatrix system gives the log discrepancies nu_i of
// the contracted curves with respect to (model, B^m + dF); the remaining
// exceptional curves have nu = 1 - d and branches nu = 1 - b. N = a - nu
// throughout.
class PartialModel {
public:
    PartialModel(ResolutionGraph g, Rational d);

    const ResolutionGraph& base() const { return graph_; }
    const Rational& d() const { return d_; }

    bool is_contracted(int vertex) const { return contracted_[vertex] != 0; }
    const std::vector<int>& contracted() const { return order_; } // in contraction order
    std::vector<int> contracted_sorted() const;

    Rational a(int vertex) const { return a_.vertex_a[vertex]; }
    Rational nu(int vertex) const { return nu_[vertex]; }
    Rational N(int vertex) const { return a_.vertex_a[vertex] - nu_[vertex]; }
    Rational branch_a(int k) const { return a_.branch_a[k]; }
    Rational branch_nu(int k) const { return a_.branch_a[k]; } // 1 - b
    Rational branch_N(int) const { return Rational(0); }

    // (K + B^m + dF) . F_j on the model, for a remaining curve j.
    Rational log_divisor_intersection(int vertex) const;
    bool nef() const;
    bool ample() const;

    // Mumford pull-back of the remaining curve j through the contraction:
    // coefficients over the contracted vertices.
    std::map<int, Rational> contraction_pullback(int vertex) const;

    friend PartialModel contract(const PartialModel& m, int vertex);

private:
    void recompute();

    ResolutionGraph graph_;
    Rational d_;
    std::vector<char> contracted_;
    std::vector<int> order_;
    IntMatrix m_;
    DiscrepancyVector a_;
    std::vector<Rational> nu_;
    std::vector<Rational> t_; // test values, meaningful on remaining curves
};

PartialModel contract(const PartialModel& m, int vertex);

// Relative d-minimal model: contracts curves with negative log-divisor
// intersection until K + B^m + dF is nef, lowest index first (or following
// `pivot_order`; the result is order independent).
PartialModel run_mmp(const ResolutionGraph& g, const Rational& d);
PartialModel run_mmp(const ResolutionGraph& g, const Rational& d,
                     const std::vector<int>& pivot_order);

// Relative d-canonical model: on top of the minimal model, contracts curves
// with log-divisor intersection zero until the remaining intersections are
// strictly positive.
PartialModel canonical_model(const ResolutionGraph& g, const Rational& d);

struct NuRow {
    std::string id;
    Rational nu, N, a;
    bool contracted = false;
    bool branch = false;
};

// The (nu, N) vectors per vertex and per branch; guarantees nu + N = a.
std::vector<NuRow> nu_N(const PartialModel& m);

} // namespace stringyzeta

#endif
