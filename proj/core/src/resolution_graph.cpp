#include "stringyzeta/resolution_graph.hpp"

#include "stringyzeta/errors.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace stringyzeta {

ResolutionGraph::ResolutionGraph(
    std::string name, std::vector<GraphVertex> vertices,
    std::vector<std::pair<std::string, std::string>> edges,
    std::vector<std::pair<std::string, std::pair<Rational, std::string>>> branches) {
    name_ = std::move(name);
    vertices_ = std::move(vertices);
    for (const auto& [a, b] : edges) {
        int ia = vertex_index(a), ib = vertex_index(b);
        if (ia < 0 || ib < 0) fail("NotAGerm", "edge references unknown vertex");
        GraphEdge e{std::min(ia, ib), std::max(ia, ib)};
        edges_.push_back(e);
    }
    for (const auto& [id, rest] : branches) {
        int at = vertex_index(rest.second);
        if (at < 0) fail("NotAGerm", "branch attaches to unknown vertex");
        branches_.push_back(GraphBranch{id, rest.first, at});
    }
    validate();
}

ResolutionGraph ResolutionGraph::from_indices(std::string name, std::vector<GraphVertex> vertices,
                                              std::vector<GraphEdge> edges,
                                              std::vector<GraphBranch> branches) {
    ResolutionGraph g;
    g.name_ = std::move(name);
    g.vertices_ = std::move(vertices);
    for (auto& e : edges)
        if (e.a > e.b) std::swap(e.a, e.b);
    g.edges_ = std::move(edges);
    g.branches_ = std::move(branches);
    g.validate();
    return g;
}

int ResolutionGraph::vertex_index(const std::string& id) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].id == id) return static_cast<int>(i);
    return -1;
}

int ResolutionGraph::edge_multiplicity(int i, int j) const {
    if (i > j) std::swap(i, j);
    int n = 0;
    for (const auto& e : edges_)
        if (e.a == i && e.b == j) ++n;
    return n;
}

int ResolutionGraph::incidence(int i) const {
    int n = 0;
    for (const auto& e : edges_) {
        if (e.a == i) ++n;
        if (e.b == i) ++n;
    }
    for (const auto& b : branches_)
        if (b.attach == i) ++n;
    return n;
}

void ResolutionGraph::validate() const {
    const int n = static_cast<int>(vertices_.size());
    std::set<std::string> ids;
    for (const auto& v : vertices_) {
        if (!ids.insert(v.id).second) fail("NotAGerm", "duplicate vertex id '" + v.id + "'");
        if (v.genus < 0) fail("NotAGerm", "negative genus");
    }
    for (const auto& e : edges_) {
        if (e.a < 0 || e.b >= n) fail("NotAGerm", "edge endpoint out of range");
        if (e.a == e.b) fail("NotAGerm", "loops are not allowed: components of an snc divisor are smooth");
    }
    std::set<std::string> bids;
    for (const auto& b : branches_) {
        if (b.attach < 0 || b.attach >= n) fail("NotAGerm", "branch attachment out of range");
        if (!bids.insert(b.id).second) fail("NotAGerm", "duplicate branch id '" + b.id + "'");
        if (b.coefficient < Rational(0) || b.coefficient >= Rational(1))
            fail("NotAGerm", "branch coefficient must satisfy 0 <= b < 1");
    }
    if (n == 0) {
        if (!edges_.empty() || !branches_.empty()) fail("NotAGerm", "edges without vertices");
        return;
    }
    // connectivity
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& e : edges_) {
            int w = -1;
            if (e.a == v) w = e.b;
            else if (e.b == v) w = e.a;
            if (w >= 0 && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    for (int i = 0; i < n; ++i)
        if (!seen[i]) fail("NotAGerm", "dual graph is not connected");

    if (!intersection_matrix(*this).negative_definite)
        fail("NotAGerm", "intersection matrix is not negative definite");
}

bool operator==(const ResolutionGraph& a, const ResolutionGraph& b) {
    auto key = [](const ResolutionGraph& g) {
        auto edges = g.edges_;
        std::sort(edges.begin(), edges.end(), [](const GraphEdge& x, const GraphEdge& y) {
            return x.a != y.a ? x.a < y.a : x.b < y.b;
        });
        return edges;
    };
    if (a.vertices_.size() != b.vertices_.size() || a.branches_.size() != b.branches_.size())
        return false;
    for (std::size_t i = 0; i < a.vertices_.size(); ++i) {
        const auto& x = a.vertices_[i];
        const auto& y = b.vertices_[i];
        if (x.id != y.id || x.genus != y.genus || x.self_intersection != y.self_intersection)
            return false;
    }
    for (std::size_t i = 0; i < a.branches_.size(); ++i) {
        const auto& x = a.branches_[i];
        const auto& y = b.branches_[i];
        if (x.id != y.id || x.coefficient != y.coefficient || x.attach != y.attach) return false;
    }
    return key(a) == key(b);
}

IntersectionData intersection_matrix(const ResolutionGraph& g) {
    const int n = static_cast<int>(g.vertices().size());
    IntersectionData d;
    d.matrix.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) d.matrix[i][i] = g.vertices()[i].self_intersection;
    for (const auto& e : g.edges()) {
        d.matrix[e.a][e.b] += 1;
        d.matrix[e.b][e.a] += 1;
    }
    d.negative_definite = negative_definite(d.matrix);
    return d;
}

DiscrepancyVector log_discrepancies(const ResolutionGraph& g) {
    const int n = static_cast<int>(g.vertices().size());
    DiscrepancyVector out;
    out.branch_a.reserve(g.branches().size());
    for (const auto& b : g.branches()) out.branch_a.push_back(Rational(1) - b.coefficient);
    if (n == 0) return out;

    auto m = intersection_matrix(g).matrix;
    QMatrix a(n, QVector(n));
    QVector rhs(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) a[j][i] = Rational(m[i][j]);
        const auto& v = g.vertices()[j];
        Rational r(2LL * v.genus - 2 - v.self_intersection);
        for (const auto& br : g.branches())
            if (br.attach == j) r += br.coefficient;
        rhs[j] = r;
    }
    QVector x = solve_linear(std::move(a), std::move(rhs));
    out.vertex_a.reserve(n);
    for (int i = 0; i < n; ++i) out.vertex_a.push_back(x[i] + Rational(1));
    return out;
}

const char* to_string(GermClass c) {
    switch (c) {
        case GermClass::klt: return "klt";
        case GermClass::strictly_lc: return "strictly-lc";
        default: return "not-lc";
    }
}

GermClass classify(const ResolutionGraph& g) {
    DiscrepancyVector d = log_discrepancies(g);
    bool zero = false;
    for (const auto& a : d.vertex_a) {
        if (a.sign() < 0) return GermClass::not_lc;
        if (a.is_zero()) zero = true;
    }
    return zero ? GermClass::strictly_lc : GermClass::klt;
}

ResolutionGraph blow_up(const ResolutionGraph& g, const BlowupSite& site) {
    auto vertices = g.vertices();
    auto edges = g.edges();
    auto branches = g.branches();
    const int n = static_cast<int>(vertices.size());

    std::string fresh;
    for (int k = 1;; ++k) {
        fresh = "b" + std::to_string(k);
        if (g.vertex_index(fresh) < 0) break;
    }
    GraphVertex nv{fresh, 0, -1};

    if (site.kind == BlowupSite::Kind::interior) {
        if (site.vertex < 0 || site.vertex >= n) fail("SiteNotFound", "no such vertex");
        vertices[site.vertex].self_intersection -= 1;
        vertices.push_back(nv);
        edges.push_back(GraphEdge{site.vertex, n});
    } else {
        int a = site.a, b = site.b;
        if (a > b) std::swap(a, b);
        int seen = 0;
        bool removed = false;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (edges[k].a == a && edges[k].b == b) {
                if (seen == site.edge_index) {
                    edges.erase(edges.begin() + static_cast<long>(k));
                    removed = true;
                    break;
                }
                ++seen;
            }
        }
        if (!removed) fail("SiteNotFound", "no such edge");
        vertices[a].self_intersection -= 1;
        vertices[b].self_intersection -= 1;
        vertices.push_back(nv);
        edges.push_back(GraphEdge{a, n});
        edges.push_back(GraphEdge{b, n});
    }
    return ResolutionGraph::from_indices(g.name(), std::move(vertices), std::move(edges),
                                         std::move(branches));
}

namespace {

// A vertex is contractible when it is a rational (-1)-curve of total
// incidence <= 2 whose incident objects are distinct: two parallel edges
// would create a node, two branches an illegal double attachment.
int find_contractible(const ResolutionGraph& g) {
    const int n = static_cast<int>(g.vertices().size());
    for (int i = 0; i < n; ++i) {
        const auto& v = g.vertices()[i];
        if (v.genus != 0 || v.self_intersection != -1) continue;
        if (g.incidence(i) > 2) continue;
        std::vector<int> nb;
        for (const auto& e : g.edges()) {
            if (e.a == i) nb.push_back(e.b);
            if (e.b == i) nb.push_back(e.a);
        }
        int nbranch = 0;
        for (const auto& b : g.branches())
            if (b.attach == i) ++nbranch;
        if (nb.size() == 2 && nb[0] == nb[1]) continue;
        if (nbranch == 2) continue;
        if (n == 1 && nbranch > 0) continue; // nothing to reattach the branch to
        return i;
    }
    return -1;
}

ResolutionGraph contract_vertex(const ResolutionGraph& g, int v) {
    std::vector<GraphVertex> vertices;
    std::vector<int> remap(g.vertices().size(), -1);
    for (std::size_t i = 0; i < g.vertices().size(); ++i) {
        if (static_cast<int>(i) == v) continue;
        remap[i] = static_cast<int>(vertices.size());
        vertices.push_back(g.vertices()[i]);
    }
    std::vector<int> nb;
    std::vector<GraphEdge> edges;
    for (const auto& e : g.edges()) {
        if (e.a == v) {
            nb.push_back(e.b);
        } else if (e.b == v) {
            nb.push_back(e.a);
        } else {
            edges.push_back(GraphEdge{remap[e.a], remap[e.b]});
        }
    }
    for (int w : nb) vertices[remap[w]].self_intersection += 1;
    if (nb.size() == 2) edges.push_back(GraphEdge{remap[nb[0]], remap[nb[1]]});

    std::vector<GraphBranch> branches;
    for (const auto& b : g.branches()) {
        GraphBranch nbr = b;
        if (b.attach == v) {
            // incidence <= 2 and not two branches, so there is one neighbor
            nbr.attach = remap[nb[0]];
        } else {
            nbr.attach = remap[b.attach];
        }
        branches.push_back(std::move(nbr));
    }
    return ResolutionGraph::from_indices(g.name(), std::move(vertices), std::move(edges),
                                         std::move(branches));
}

} // namespace

ResolutionGraph minimize(const ResolutionGraph& g) {
    ResolutionGraph cur = g;
    for (;;) {
        int v = find_contractible(cur);
        if (v < 0) return cur;
        cur = contract_vertex(cur, v);
    }
}

StructureDecomposition structure_decomposition(const ResolutionGraph& g) {
    if (!g.branches().empty()) fail("StructureViolation", "expected a germ without boundary branches");
    if (!(minimize(g) == g)) fail("StructureViolation", "input resolution is not minimal");
    GermClass cls = classify(g);
    if (cls != GermClass::not_lc) fail("NotApplicable", "germ is log canonical");

    const int n = static_cast<int>(g.vertices().size());
    DiscrepancyVector d = log_discrepancies(g);

    StructureDecomposition out;
    std::vector<char> in_core(n, 0);
    for (int i = 0; i < n; ++i)
        if (d.vertex_a[i].sign() < 0) {
            in_core[i] = 1;
            out.core.push_back(i);
        }

    // the core must be connected
    {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{out.core.front()};
        seen[stack.front()] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& e : g.edges()) {
                int w = -1;
                if (e.a == v) w = e.b;
                else if (e.b == v) w = e.a;
                if (w >= 0 && in_core[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        for (int i : out.core)
            if (!seen[i]) fail("StructureViolation", "negative-discrepancy part is not connected");
    }

    // everything else: disjoint chains of rational curves hanging off the core
    std::vector<char> used(n, 0);
    for (int start = 0; start < n; ++start) {
        if (in_core[start] || used[start]) continue;
        // find the core attachment: walk to the unique chain vertex adjacent to the core
        // simpler: collect the connected component of non-core vertices containing start
        std::vector<int> comp;
        std::vector<int> stack{start};
        std::vector<char> seen(n, 0);
        seen[start] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (const auto& e : g.edges()) {
                int w = -1;
                if (e.a == v) w = e.b;
                else if (e.b == v) w = e.a;
                if (w >= 0 && !in_core[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        // the component must be a path attached to the core at exactly one end
        StructureChain chain;
        int attach_count = 0;
        int first = -1;
        for (int v : comp) {
            const auto& vert = g.vertices()[v];
            if (vert.genus != 0)
                fail("StructureViolation", "chain vertex '" + vert.id + "' is not rational");
            int core_adj = 0;
            for (int c : out.core) core_adj += g.edge_multiplicity(v, c);
            if (core_adj > 1) fail("StructureViolation", "chain vertex meets the core twice");
            if (core_adj == 1) {
                ++attach_count;
                first = v;
                for (int c : out.core)
                    if (g.edge_multiplicity(v, c) > 0) chain.attach_core = c;
            }
        }
        if (attach_count != 1)
            fail("StructureViolation", "chain does not attach to the core at exactly one vertex");
        // walk the path from the attachment outwards
        int prev = -1, cur = first;
        while (cur >= 0) {
            used[cur] = 1;
            chain.vertices.push_back(cur);
            std::vector<int> nbs;
            for (const auto& e : g.edges()) {
                int w = -1;
                if (e.a == cur) w = e.b;
                else if (e.b == cur) w = e.a;
                if (w >= 0 && !in_core[w]) nbs.push_back(w);
            }
            if (nbs.size() > 2) fail("StructureViolation", "chain vertex of degree > 2");
            int next = -1;
            int back = 0;
            for (int w : nbs) {
                if (w == prev && back == 0) {
                    ++back;
                } else if (next < 0 && w != prev) {
                    next = w;
                } else {
                    fail("StructureViolation", "chain is not a simple path");
                }
            }
            if (prev >= 0 && back != 1)
                fail("StructureViolation", "chain is not a simple path");
            prev = cur;
            cur = next;
            if (chain.vertices.size() > static_cast<std::size_t>(n))
                fail("StructureViolation", "chain walk did not terminate");
        }
        if (chain.vertices.size() != comp.size())
            fail("StructureViolation", "chain component is not a path");
        // strictly increasing discrepancies, nonnegative at the core end, < 1
        Rational prev_a = d.vertex_a[chain.vertices.front()];
        if (prev_a.sign() < 0) fail("StructureViolation", "chain starts with negative discrepancy");
        for (std::size_t k = 1; k < chain.vertices.size(); ++k) {
            Rational a = d.vertex_a[chain.vertices[k]];
            if (!(prev_a < a)) fail("StructureViolation", "chain discrepancies not strictly increasing");
            prev_a = a;
        }
        if (!(prev_a < Rational(1))) fail("StructureViolation", "chain discrepancy reaches 1");
        out.chains.push_back(std::move(chain));
    }

    for (int i = 0; i < n; ++i) {
        if (!d.vertex_a[i].is_zero()) continue;
        const auto& vert = g.vertices()[i];
        if (vert.genus != 0)
            fail("StructureViolation", "zero-discrepancy vertex '" + vert.id + "' is not rational");
        StructureZeroVertex z;
        z.vertex = i;
        for (const auto& e : g.edges()) {
            if (e.a == i) z.neighbors.push_back(e.b);
            if (e.b == i) z.neighbors.push_back(e.a);
        }
        if (z.neighbors.size() < 1 || z.neighbors.size() > 2)
            fail("StructureViolation", "zero-discrepancy vertex must meet one or two components");
        for (int w : z.neighbors)
            if (d.vertex_a[w].is_zero())
                fail("StructureViolation", "zero-discrepancy vertices may not touch");
        out.zero_vertices.push_back(std::move(z));
    }
    return out;
}

} // namespace stringyzeta
