#include "picard_strata/dual_graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace picard_strata {

namespace {

// Small union-find for connectivity checks over vertex subsets.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[static_cast<size_t>(x)] != x) {
            parent_[static_cast<size_t>(x)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
            x = parent_[static_cast<size_t>(x)];
        }
        return x;
    }
    // Returns true when the sets were distinct.
    bool merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[static_cast<size_t>(a)] = b;
        return true;
    }

private:
    std::vector<int> parent_;
};

constexpr int kMaxVertices = 32; // Subcurve masks are 32-bit

} // namespace

const char* to_string(StabilityClass c) {
    switch (c) {
    case StabilityClass::Stable: return "Stable";
    case StabilityClass::QuasistableNotStable: return "QuasistableNotStable";
    case StabilityClass::SemistableNotQuasistable: return "SemistableNotQuasistable";
    case StabilityClass::NotSemistable: return "NotSemistable";
    }
    return "?";
}

DualGraph::DualGraph(std::vector<Vertex> vertices,
                     const std::vector<std::pair<std::string, std::string>>& edge_ids) {
    vertices_ = std::move(vertices);
    std::unordered_map<std::string, int> index;
    for (int v = 0; v < vertex_count(); ++v) {
        if (!index.emplace(vertices_[static_cast<size_t>(v)].id, v).second)
            throw validation_error("duplicate vertex id '" + vertices_[static_cast<size_t>(v)].id + "'");
    }
    edges_.reserve(edge_ids.size());
    for (const auto& [a, b] : edge_ids) {
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end()) throw validation_error("edge references unknown vertex id '" + a + "'");
        if (ib == index.end()) throw validation_error("edge references unknown vertex id '" + b + "'");
        edges_.emplace_back(std::min(ia->second, ib->second), std::max(ia->second, ib->second));
    }
    finish_construction();
}

DualGraph DualGraph::from_indices(std::vector<Vertex> vertices,
                                  std::vector<std::pair<int, int>> edges) {
    DualGraph g;
    g.vertices_ = std::move(vertices);
    std::unordered_set<std::string> seen;
    for (const auto& v : g.vertices_)
        if (!seen.insert(v.id).second)
            throw validation_error("duplicate vertex id '" + v.id + "'");
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= g.vertex_count() || b < 0 || b >= g.vertex_count())
            throw validation_error("edge endpoint index out of range");
        g.edges_.emplace_back(std::min(a, b), std::max(a, b));
    }
    g.finish_construction();
    return g;
}

void DualGraph::finish_construction() {
    if (vertices_.empty()) throw validation_error("graph must have at least one vertex");
    if (vertex_count() > kMaxVertices)
        throw validation_error("graph exceeds the supported vertex count (32)");
    if (edges_.size() > 1'000'000)
        throw validation_error("graph exceeds the supported edge count");
    for (const auto& v : vertices_) {
        if (v.genus < 0) throw validation_error("vertex '" + v.id + "' has negative genus");
        if (v.genus > 1'000'000)
            throw validation_error("vertex '" + v.id + "' exceeds the supported genus range");
        if (v.id.empty()) throw validation_error("vertex with empty id");
    }
    std::sort(edges_.begin(), edges_.end());
    const size_t n = vertices_.size();
    mult_.assign(n, std::vector<int>(n, 0));
    degree_.assign(n, 0);
    nonloop_degree_.assign(n, 0);
    loops_.assign(n, 0);
    for (const auto& [a, b] : edges_) {
        mult_[static_cast<size_t>(a)][static_cast<size_t>(b)] += 1;
        if (a != b) mult_[static_cast<size_t>(b)][static_cast<size_t>(a)] += 1;
        if (a == b) {
            loops_[static_cast<size_t>(a)] += 1;
            degree_[static_cast<size_t>(a)] += 2;
        } else {
            degree_[static_cast<size_t>(a)] += 1;
            degree_[static_cast<size_t>(b)] += 1;
            nonloop_degree_[static_cast<size_t>(a)] += 1;
            nonloop_degree_[static_cast<size_t>(b)] += 1;
        }
    }
}

int DualGraph::vertex_index(std::string_view id) const {
    for (int v = 0; v < vertex_count(); ++v)
        if (vertices_[static_cast<size_t>(v)].id == id) return v;
    throw validation_error("unknown vertex id '" + std::string(id) + "'");
}

int DualGraph::edges_between(int u, int v) const {
    return mult_[static_cast<size_t>(u)][static_cast<size_t>(v)];
}

bool DualGraph::is_connected() const {
    UnionFind uf(vertex_count());
    int components = vertex_count();
    for (const auto& [a, b] : edges_)
        if (a != b && uf.merge(a, b)) --components;
    return components == 1;
}

long long DualGraph::arithmetic_genus() const {
    if (!is_connected()) throw validation_error("arithmetic genus requires a connected graph");
    long long g = 1 + edge_count() - vertex_count();
    for (const auto& v : vertices_) g += v.genus;
    return g;
}

long long arithmetic_genus(const DualGraph& graph) { return graph.arithmetic_genus(); }

Subcurve::Subcurve(const DualGraph& graph, std::uint32_t member_mask)
    : graph_(&graph), mask_(member_mask) {
    if (mask_ == 0) throw validation_error("subcurve must be nonempty");
    const std::uint32_t full =
        graph.vertex_count() == 32 ? ~0u : ((1u << graph.vertex_count()) - 1u);
    if (mask_ & ~full) throw validation_error("subcurve mask references missing vertices");
    for (int v = 0; v < graph.vertex_count(); ++v)
        if ((mask_ >> v) & 1u) members_.push_back(v);
}

Subcurve::Subcurve(const DualGraph& graph, const std::vector<std::string>& member_ids)
    : graph_(&graph), mask_(0) {
    for (const auto& id : member_ids) mask_ |= 1u << graph.vertex_index(id);
    if (mask_ == 0) throw validation_error("subcurve must be nonempty");
    for (int v = 0; v < graph.vertex_count(); ++v)
        if ((mask_ >> v) & 1u) members_.push_back(v);
}

std::vector<std::string> Subcurve::member_ids() const {
    std::vector<std::string> ids;
    ids.reserve(members_.size());
    for (int v : members_) ids.push_back(graph_->vertex(v).id);
    return ids;
}

bool Subcurve::is_proper() const {
    return static_cast<int>(members_.size()) < graph_->vertex_count();
}

Subcurve Subcurve::complement() const {
    if (!is_proper()) throw validation_error("complement of the whole curve is empty");
    const std::uint32_t full =
        graph_->vertex_count() == 32 ? ~0u : ((1u << graph_->vertex_count()) - 1u);
    return Subcurve(*graph_, full & ~mask_);
}

long long Subcurve::boundary_nodes() const {
    long long k = 0;
    for (const auto& [a, b] : graph_->edges())
        if (a != b && contains(a) != contains(b)) ++k;
    return k;
}

long long Subcurve::dualizing_degree() const {
    long long w = 0;
    for (int v : members_) w += graph_->dualizing_degree(v);
    return w;
}

bool Subcurve::is_connected() const {
    UnionFind uf(graph_->vertex_count());
    int components = static_cast<int>(members_.size());
    for (const auto& [a, b] : graph_->edges())
        if (a != b && contains(a) && contains(b) && uf.merge(a, b)) --components;
    return components == 1;
}

long long Subcurve::arithmetic_genus() const {
    // Components of the induced subgraph; each contributes its connected-case
    // genus, so the total is sum(genus) + internal edges - |Z| + #components.
    UnionFind uf(graph_->vertex_count());
    int components = static_cast<int>(members_.size());
    long long internal_edges = 0;
    for (const auto& [a, b] : graph_->edges()) {
        if (!contains(a) || !contains(b)) continue;
        ++internal_edges;
        if (a != b && uf.merge(a, b)) --components;
    }
    long long g = internal_edges - static_cast<long long>(members_.size()) + components;
    for (int v : members_) g += graph_->genus_weight(v);
    return g;
}

SubcurveInvariants subcurve_invariants(const Subcurve& z) {
    return SubcurveInvariants{z.boundary_nodes(), z.dualizing_degree(), z.arithmetic_genus(),
                              z.is_connected()};
}

std::vector<Subcurve> enumerate_connected_proper_subcurves(const DualGraph& graph) {
    const int n = graph.vertex_count();
    std::vector<Subcurve> out;
    if (n < 2) return out;
    if (n > 20)
        throw validation_error("subcurve enumeration is exponential; refusing above 20 vertices");
    const std::uint32_t full = (1u << n) - 1u;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        Subcurve z(graph, mask);
        if (z.is_connected()) out.push_back(std::move(z));
    }
    std::sort(out.begin(), out.end(), [](const Subcurve& a, const Subcurve& b) {
        if (a.members().size() != b.members().size())
            return a.members().size() < b.members().size();
        return a.member_ids() < b.member_ids();
    });
    return out;
}

StabilityClass classify_stability(const DualGraph& graph) {
    if (!graph.is_connected())
        throw validation_error("stability classification requires a connected graph");
    if (graph.arithmetic_genus() < 2)
        throw validation_error("stability classification requires arithmetic genus >= 2");

    bool stable = true;
    bool semistable = true;
    for (int v = 0; v < graph.vertex_count(); ++v) {
        if (graph.genus_weight(v) != 0) continue;
        if (graph.degree(v) < 3) stable = false;
        if (graph.degree(v) < 2) semistable = false;
    }
    if (!semistable) return StabilityClass::NotSemistable;
    if (stable) return StabilityClass::Stable;

    std::vector<int> exceptional;
    for (int v = 0; v < graph.vertex_count(); ++v)
        if (graph.is_exceptional_vertex(v)) exceptional.push_back(v);
    for (size_t i = 0; i < exceptional.size(); ++i)
        for (size_t j = i + 1; j < exceptional.size(); ++j)
            if (graph.edges_between(exceptional[i], exceptional[j]) > 0)
                return StabilityClass::SemistableNotQuasistable;
    return StabilityClass::QuasistableNotStable;
}

DualGraph stable_model(const DualGraph& graph) {
    StabilityClass c = classify_stability(graph);
    if (c == StabilityClass::NotSemistable)
        throw validation_error("stable model requires a semistable graph");

    std::vector<Vertex> verts = graph.vertices();
    std::vector<std::pair<int, int>> edges(graph.edges().begin(), graph.edges().end());

    auto find_exceptional = [&]() -> int {
        for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
            if (verts[static_cast<size_t>(v)].genus != 0) continue;
            int nonloop = 0;
            bool loop = false;
            for (const auto& [a, b] : edges) {
                if (a == b) {
                    if (a == v) loop = true;
                } else if (a == v || b == v) {
                    ++nonloop;
                }
            }
            if (!loop && nonloop == 2) return v;
        }
        return -1;
    };

    for (int e = find_exceptional(); e >= 0; e = find_exceptional()) {
        // The two far endpoints of the edges meeting e fuse into one edge.
        std::vector<int> far;
        std::vector<std::pair<int, int>> kept;
        for (const auto& [a, b] : edges) {
            if (a == e || b == e)
                far.push_back(a == e ? b : a);
            else
                kept.push_back({a, b});
        }
        kept.push_back({std::min(far[0], far[1]), std::max(far[0], far[1])});
        // Drop e and shift indices above it.
        verts.erase(verts.begin() + e);
        edges.clear();
        for (auto [a, b] : kept) {
            if (a > e) --a;
            if (b > e) --b;
            edges.push_back({std::min(a, b), std::max(a, b)});
        }
    }
    return DualGraph::from_indices(std::move(verts), std::move(edges));
}

} // namespace picard_strata
