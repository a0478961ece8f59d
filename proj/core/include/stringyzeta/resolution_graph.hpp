#ifndef STRINGYZETA_RESOLUTION_GRAPH_HPP
#define STRINGYZETA_RESOLUTION_GRAPH_HPP

#include "stringyzeta/matrix.hpp"
#include "stringyzeta/rational.hpp"

#include <string>
#include <vector>

namespace stringyzeta {

struct GraphVertex {
    std::string id;
    int genus = 0;
    long long self_intersection = 0;
};

struct GraphEdge {
    int a = 0, b = 0; // vertex indices, a < b
    friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct GraphBranch {
    std::string id;
    Rational coefficient; // 0 <= b < 1
    int attach = 0;       // vertex index
};

// Dual graph of a log resolution of a normal surface singularity germ.
// Vertices are the exceptional curves (genus, self-intersection), multi-edges
// encode intersection points, branches are the strict transforms of boundary
// components with their coefficients. Construction validates the germ
// conditions: connected, loop-free, negative definite intersection matrix.
class ResolutionGraph {
public:
    ResolutionGraph() = default;
    ResolutionGraph(std::string name, std::vector<GraphVertex> vertices,
                    std::vector<std::pair<std::string, std::string>> edges,
                    std::vector<std::pair<std::string, std::pair<Rational, std::string>>> branches);

    static ResolutionGraph from_indices(std::string name, std::vector<GraphVertex> vertices,
                                        std::vector<GraphEdge> edges,
                                        std::vector<GraphBranch> branches);

    const std::string& name() const { return name_; }
    const std::vector<GraphVertex>& vertices() const { return vertices_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    const std::vector<GraphBranch>& branches() const { return branches_; }
    bool empty() const { return vertices_.empty(); }
    int vertex_index(const std::string& id) const; // -1 when absent

    // Number of edges between i and j (counting multiplicity).
    int edge_multiplicity(int i, int j) const;
    // Edge endpoints + branch attachments at vertex i.
    int incidence(int i) const;

    friend bool operator==(const ResolutionGraph& a, const ResolutionGraph& b);

private:
    void validate() const;

    std::string name_;
    std::vector<GraphVertex> vertices_;
    std::vector<GraphEdge> edges_;
    std::vector<GraphBranch> branches_;
};

struct IntersectionData {
    IntMatrix matrix;
    bool negative_definite = false;
};

// M_ij = self-intersection on the diagonal, edge multiplicity off it.
IntersectionData intersection_matrix(const ResolutionGraph& g);

struct DiscrepancyVector {
    std::vector<Rational> vertex_a; // per-vertex log discrepancy a_i
    std::vector<Rational> branch_a; // per-branch 1 - b
};

// Solves  sum_i (a_i - 1) M_ij = 2 g_j - 2 - E_j^2 + sum_br b (Br . E_j)
// exactly; branch discrepancies are 1 - b.
DiscrepancyVector log_discrepancies(const ResolutionGraph& g);

enum class GermClass { klt, strictly_lc, not_lc };
const char* to_string(GermClass c);

GermClass classify(const ResolutionGraph& g);

struct BlowupSite {
    enum class Kind { interior, edge } kind;
    int vertex = -1;       // interior
    int a = -1, b = -1;    // edge endpoints
    int edge_index = 0;    // which of the parallel edges

    static BlowupSite interior(int vertex) { return {Kind::interior, vertex, -1, -1, 0}; }
    static BlowupSite edge(int a, int b, int index = 0) { return {Kind::edge, -1, a, b, index}; }
};

// Blows up a point: a new rational (-1)-vertex appears, self-intersections of
// the curves through the centre drop by one.
ResolutionGraph blow_up(const ResolutionGraph& g, const BlowupSite& site);

// Contracts (-1)-rational vertices of total incidence <= 2 whose contraction
// keeps the configuration snc, to the fixpoint. Exact inverse of blow_up on
// its image.
ResolutionGraph minimize(const ResolutionGraph& g);

struct StructureChain {
    int attach_core = -1;      // core vertex the chain hangs off
    std::vector<int> vertices; // ordered from the core outwards
};

struct StructureZeroVertex {
    int vertex = -1;
    std::vector<int> neighbors; // one or two, all with nonzero discrepancy
};

struct StructureDecomposition {
    std::vector<int> core; // vertices with a_i < 0, connected
    std::vector<StructureChain> chains;
    std::vector<StructureZeroVertex> zero_vertices;
};

// Core-and-chains shape of the minimal log resolution of a non-lc germ:
// the a_i < 0 part is connected and every other vertex lies on a rational
// chain with strictly increasing discrepancies a_1 < ... < a_r < 1.
StructureDecomposition structure_decomposition(const ResolutionGraph& g);

} // namespace stringyzeta

#endif
