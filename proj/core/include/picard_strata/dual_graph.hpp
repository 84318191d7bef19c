#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "picard_strata/errors.hpp"

namespace picard_strata {

// Vertex of a dual graph: one irreducible component of a nodal curve,
// weighted by its geometric genus.
struct Vertex {
    std::string id;
    int genus = 0;
};

// Mutually exclusive stability classes of a connected graph of genus >= 2.
enum class StabilityClass {
    Stable,
    QuasistableNotStable,
    SemistableNotQuasistable,
    NotSemistable,
};

const char* to_string(StabilityClass c);

// Genus-weighted multigraph with loops.  Vertices are the irreducible
// components of a nodal curve, edges its nodes, loops its self-nodes.
// Immutable after construction.  Construction validates ids, genera and
// edge endpoints; connectivity is checked by the operations that need it.
class DualGraph {
public:
    DualGraph(std::vector<Vertex> vertices,
              const std::vector<std::pair<std::string, std::string>>& edge_ids);

    // Edges as vertex-index pairs; loops as (v, v).
    static DualGraph from_indices(std::vector<Vertex> vertices,
                                  std::vector<std::pair<int, int>> edges);

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const Vertex& vertex(int v) const { return vertices_[static_cast<size_t>(v)]; }

    // Normalized edge list: (i, j) with i <= j, sorted.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    int vertex_index(std::string_view id) const; // throws validation_error if unknown
    int genus_weight(int v) const { return vertices_[static_cast<size_t>(v)].genus; }

    // Loops count twice.
    int degree(int v) const { return degree_[static_cast<size_t>(v)]; }
    // Number of edges joining v to other vertices; the k of the singleton {v}.
    int nonloop_degree(int v) const { return nonloop_degree_[static_cast<size_t>(v)]; }
    int loops_at(int v) const { return loops_[static_cast<size_t>(v)]; }
    int edges_between(int u, int v) const;

    // Degree of the dualizing sheaf on component v: 2*genus - 2 + degree.
    long long dualizing_degree(int v) const {
        return 2LL * genus_weight(v) - 2 + degree(v);
    }

    // Genus-0 component with no self-nodes meeting the rest in exactly 2 nodes.
    bool is_exceptional_vertex(int v) const {
        return genus_weight(v) == 0 && loops_at(v) == 0 && nonloop_degree(v) == 2;
    }

    bool is_connected() const;

    // sum(genus) + |E| - |V| + 1; throws validation_error when disconnected.
    long long arithmetic_genus() const;

private:
    DualGraph() = default;
    void finish_construction();

    std::vector<Vertex> vertices_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> mult_; // mult_[u][v]: edge multiplicity; diagonal = loop count
    std::vector<int> degree_;
    std::vector<int> nonloop_degree_;
    std::vector<int> loops_;
};

// Union of whole components: a nonempty vertex subset of a dual graph,
// tracked as a bitmask (graphs are capped at 32 vertices).
class Subcurve {
public:
    Subcurve(const DualGraph& graph, std::uint32_t member_mask);
    Subcurve(const DualGraph& graph, const std::vector<std::string>& member_ids);

    const DualGraph& graph() const { return *graph_; }
    std::uint32_t mask() const { return mask_; }
    const std::vector<int>& members() const { return members_; }
    std::vector<std::string> member_ids() const;

    bool contains(int v) const { return (mask_ >> v) & 1u; }
    bool is_proper() const;
    Subcurve complement() const; // throws validation_error when not proper

    // k_Z: edges with exactly one endpoint inside (loops never contribute).
    long long boundary_nodes() const;
    // w_Z: degree of the dualizing sheaf, sum over members of 2g(v)-2+deg(v).
    long long dualizing_degree() const;
    // g_Z: arithmetic genus; for disconnected Z the sum of component genera.
    long long arithmetic_genus() const;
    bool is_connected() const;

private:
    const DualGraph* graph_;
    std::uint32_t mask_;
    std::vector<int> members_;
};

struct SubcurveInvariants {
    long long k = 0;
    long long w = 0;
    long long g = 0;
    bool connected = false;
};

SubcurveInvariants subcurve_invariants(const Subcurve& z);

// Free-function form of DualGraph::arithmetic_genus.
long long arithmetic_genus(const DualGraph& graph);

// All nonempty proper vertex subsets inducing a connected subgraph, each
// exactly once, sorted by size then lexicographically on member ids.
// Single-vertex graphs yield the empty list.
std::vector<Subcurve> enumerate_connected_proper_subcurves(const DualGraph& graph);

// Requires connected input of arithmetic genus >= 2.
StabilityClass classify_stability(const DualGraph& graph);

// Contracts all exceptional components of a semistable graph; the result is
// stable and the map is idempotent on stable graphs.
DualGraph stable_model(const DualGraph& graph);

} // namespace picard_strata
