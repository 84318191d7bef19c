#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "picard_strata/balance.hpp"
#include "picard_strata/dual_graph.hpp"

namespace picard_strata {

// Which stability classes a generated corpus keeps.
enum class StabilityFilter {
    Any,         // every connected graph, arithmetic genus unrestricted
    Stable,      // classify_stability == Stable
    Quasistable, // Stable or QuasistableNotStable
    Semistable,  // everything except NotSemistable
};

// Bounds for exhaustive corpus generation.  Generation is refused above
// 5 vertices / 9 edges / genus 8; beyond that the sweep stops being a
// minutes-scale job.
struct CorpusSpec {
    int max_vertices = 0;
    int max_genus = 0; // arithmetic genus cap
    int max_edges = 0;
    StabilityFilter filter = StabilityFilter::Any;
    int max_vertex_genus = -1; // per-vertex genus cap; -1 means max_genus
};

// All connected genus-weighted multigraphs within the bounds satisfying the
// filter, one per isomorphism class (genus-weighted), in a deterministic
// canonical order.  Vertices are named v1..vn.
std::vector<DualGraph> generate_corpus(const CorpusSpec& spec);

// Literal implementation of the balance classification: quantifies over all
// proper vertex subsets filtered to connected ones, no search box, no
// lower-bound shortcut.  Must agree with classify everywhere.
BalanceClass brute_classify(const Multidegree& md);

// Direct reading of the d-general definition on a quasistable graph: sweep
// every candidate multidegree of total degree d and demand that each
// balanced one is stably balanced.  Reference for is_d_general.
bool brute_d_general(const DualGraph& graph, long long d);

// Number of degree-0 twister cosets, counted by breadth-first closure of
// twister additions over a bounded box of degree-0 vectors.  Reference for
// class_group.
long long brute_class_count(const DualGraph& graph);

// Plain breadth-first search from md along twister moves, returning the
// lexicographically least semibalanced vector of the first level containing
// one.  Reference for semibalanced_representative.
std::vector<long long> brute_semibalanced_representative(const DualGraph& graph,
                                                         const std::vector<long long>& md);

// One disagreement between a fast-path operation and its brute-force
// counterpart, with enough context to reproduce it.
struct VerifyWitness {
    std::string check;
    std::string graph_json;
    std::optional<std::vector<long long>> multidegree;
    std::optional<long long> degree;
    std::string expected;
    std::string actual;
};

struct VerifyReport {
    std::size_t graphs = 0;
    std::size_t checks = 0;
    std::optional<VerifyWitness> first_disagreement;
    bool ok() const { return !first_disagreement.has_value(); }
};

// Sweeps the generated corpus and checks every fast-path operation against
// its brute-force counterpart: classify vs brute_classify, is_d_general
// (both methods) vs brute_d_general, class_group vs brute_class_count, and
// semibalanced_representative vs its BFS reference.  The degree range
// defaults to [0, 2g-2) per graph.  threads <= 0 picks a default capped by
// PICARD_STRATA_THREADS.
VerifyReport verify_corpus(const CorpusSpec& spec,
                           std::optional<std::pair<long long, long long>> degree_range = {},
                           int threads = 0);

} // namespace picard_strata
