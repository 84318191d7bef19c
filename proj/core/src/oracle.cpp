#include "picard_strata/oracle.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <set>
#include <sstream>

#include "picard_strata/degree_class.hpp"
#include "picard_strata/graph_io.hpp"
#include "picard_strata/parallel.hpp"
#include "picard_strata/strata.hpp"

namespace picard_strata {

namespace {

// --- corpus generation -----------------------------------------------------

// Labeled graph under construction: per-slot edge multiplicities over the
// upper triangle (loops on the diagonal) plus genus weights.
struct RawGraph {
    int n = 0;
    std::vector<int> weights;        // size n
    std::vector<std::vector<int>> mult; // n x n symmetric, diagonal = loops

    int edge_total() const {
        int e = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) e += mult[static_cast<size_t>(i)][static_cast<size_t>(j)];
        return e;
    }

    bool connected() const {
        std::vector<int> seen(static_cast<size_t>(n), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u = 0; u < n; ++u)
                if (u != v && mult[static_cast<size_t>(v)][static_cast<size_t>(u)] > 0 && !seen[static_cast<size_t>(u)]) {
                    seen[static_cast<size_t>(u)] = 1;
                    ++count;
                    stack.push_back(u);
                }
        }
        return count == n;
    }
};

// Canonical encoding: minimum over all isomorphism-compatible relabelings of
// (n, genus sequence, upper-triangle multiplicities).  Candidate relabelings
// are restricted to permutations preserving the (genus, degree, loops)
// vertex invariant, arranged in sorted invariant order.
std::vector<int> canonical_encoding(const RawGraph& g) {
    const int n = g.n;
    std::vector<std::array<int, 3>> inv(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        int deg = 2 * g.mult[static_cast<size_t>(v)][static_cast<size_t>(v)];
        for (int u = 0; u < n; ++u)
            if (u != v) deg += g.mult[static_cast<size_t>(v)][static_cast<size_t>(u)];
        inv[static_cast<size_t>(v)] = {g.weights[static_cast<size_t>(v)], deg,
                                       g.mult[static_cast<size_t>(v)][static_cast<size_t>(v)]};
    }

    std::vector<int> order(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<size_t>(v)] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return inv[static_cast<size_t>(a)] < inv[static_cast<size_t>(b)];
    });

    // Blocks of equal invariant; permutations act independently inside each.
    std::vector<std::pair<int, int>> blocks;
    for (int s = 0; s < n;) {
        int e = s;
        while (e < n && inv[static_cast<size_t>(order[static_cast<size_t>(e)])] ==
                            inv[static_cast<size_t>(order[static_cast<size_t>(s)])])
            ++e;
        blocks.push_back({s, e});
        s = e;
    }

    auto encode = [&](const std::vector<int>& perm) {
        std::vector<int> code;
        code.reserve(1 + static_cast<size_t>(n) * (static_cast<size_t>(n) + 3) / 2);
        code.push_back(n);
        for (int v = 0; v < n; ++v)
            code.push_back(g.weights[static_cast<size_t>(perm[static_cast<size_t>(v)])]);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                code.push_back(g.mult[static_cast<size_t>(perm[static_cast<size_t>(i)])]
                                     [static_cast<size_t>(perm[static_cast<size_t>(j)])]);
        return code;
    };

    std::vector<int> best = encode(order);
    std::vector<int> perm = order;
    auto sweep = [&](auto&& self, size_t block) -> void {
        if (block == blocks.size()) {
            std::vector<int> code = encode(perm);
            if (code < best) best = std::move(code);
            return;
        }
        auto [s, e] = blocks[block];
        std::sort(perm.begin() + s, perm.begin() + e);
        do {
            self(self, block + 1);
        } while (std::next_permutation(perm.begin() + s, perm.begin() + e));
    };
    sweep(sweep, 0);
    return best;
}

DualGraph graph_from_encoding(const std::vector<int>& code) {
    const int n = code[0];
    std::vector<Vertex> verts;
    verts.reserve(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v)
        verts.push_back({"v" + std::to_string(v + 1), code[static_cast<size_t>(1 + v)]});
    std::vector<std::pair<int, int>> edges;
    size_t at = static_cast<size_t>(1 + n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++at)
            for (int c = 0; c < code[at]; ++c) edges.push_back({i, j});
    return DualGraph::from_indices(std::move(verts), std::move(edges));
}

bool passes_filter(const DualGraph& g, StabilityFilter filter) {
    if (filter == StabilityFilter::Any) return true;
    if (g.arithmetic_genus() < 2) return false;
    switch (classify_stability(g)) {
    case StabilityClass::Stable:
        return true;
    case StabilityClass::QuasistableNotStable:
        return filter != StabilityFilter::Stable;
    case StabilityClass::SemistableNotQuasistable:
        return filter == StabilityFilter::Semistable;
    case StabilityClass::NotSemistable:
        return false;
    }
    return false;
}

// --- brute-force balance check ----------------------------------------------

struct BruteSubcurve {
    std::uint32_t mask;
    long long k, w;
};

bool mask_connected(const DualGraph& g, std::uint32_t mask) {
    const int n = g.vertex_count();
    int start = -1;
    for (int v = 0; v < n; ++v)
        if ((mask >> v) & 1u) {
            start = v;
            break;
        }
    if (start < 0) return false;
    std::uint32_t seen = 1u << start;
    std::vector<int> stack{start};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < n; ++u) {
            if (u == v || !((mask >> u) & 1u) || ((seen >> u) & 1u)) continue;
            if (g.edges_between(u, v) > 0) {
                seen |= 1u << u;
                stack.push_back(u);
            }
        }
    }
    return seen == mask;
}

std::vector<BruteSubcurve> brute_connected_proper(const DualGraph& g) {
    const int n = g.vertex_count();
    std::vector<BruteSubcurve> out;
    if (n < 2) return out;
    const std::uint32_t full = (1u << n) - 1u;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        if (!mask_connected(g, mask)) continue;
        long long k = 0, w = 0;
        for (const auto& [a, b] : g.edges())
            if (a != b && (((mask >> a) & 1u) != ((mask >> b) & 1u))) ++k;
        for (int v = 0; v < n; ++v)
            if ((mask >> v) & 1u) w += 2LL * g.genus_weight(v) - 2 + g.degree(v);
        out.push_back({mask, k, w});
    }
    return out;
}

// --- class-count box search --------------------------------------------------

long long box_bound(const DualGraph& g) {
    long long total = 0;
    for (int v = 0; v < g.vertex_count(); ++v) total = std::max<long long>(total, g.nonloop_degree(v));
    return 2 * std::max<long long>(total, 3);
}

std::string vector_to_string(const std::vector<long long>& v) {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i];
    }
    os << ']';
    return os.str();
}

} // namespace

std::vector<DualGraph> generate_corpus(const CorpusSpec& spec) {
    if (spec.max_vertices > 5)
        throw validation_error("corpus generation is limited to 5 vertices");
    if (spec.max_edges > 9)
        throw validation_error("corpus generation is limited to 9 edges");
    if (spec.max_genus > 8)
        throw validation_error("corpus generation is limited to arithmetic genus 8");

    std::set<std::vector<int>> encodings;
    const int vcap = spec.max_vertex_genus >= 0 ? spec.max_vertex_genus : spec.max_genus;

    for (int n = 1; n <= spec.max_vertices; ++n) {
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) slots.push_back({i, j});

        RawGraph raw;
        raw.n = n;
        raw.weights.assign(static_cast<size_t>(n), 0);
        raw.mult.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));

        auto assign_weights = [&](auto&& self, int v, int budget) -> void {
            if (v == n) {
                encodings.insert(canonical_encoding(raw));
                return;
            }
            for (int w = 0; w <= std::min(budget, vcap); ++w) {
                raw.weights[static_cast<size_t>(v)] = w;
                self(self, v + 1, budget - w);
            }
            raw.weights[static_cast<size_t>(v)] = 0;
        };

        auto place_edges = [&](auto&& self, size_t slot, int budget) -> void {
            if (slot == slots.size()) {
                if (!raw.connected()) return;
                const int base_genus = raw.edge_total() - n + 1; // all weights zero here
                if (base_genus > spec.max_genus) return;
                assign_weights(assign_weights, 0, spec.max_genus - base_genus);
                return;
            }
            auto [i, j] = slots[slot];
            for (int mult = 0; mult <= budget; ++mult) {
                raw.mult[static_cast<size_t>(i)][static_cast<size_t>(j)] = mult;
                raw.mult[static_cast<size_t>(j)][static_cast<size_t>(i)] = mult;
                self(self, slot + 1, budget - mult);
            }
            raw.mult[static_cast<size_t>(i)][static_cast<size_t>(j)] = 0;
            raw.mult[static_cast<size_t>(j)][static_cast<size_t>(i)] = 0;
        };
        place_edges(place_edges, 0, spec.max_edges);
    }

    std::vector<DualGraph> out;
    for (const auto& code : encodings) {
        DualGraph g = graph_from_encoding(code);
        if (passes_filter(g, spec.filter)) out.push_back(std::move(g));
    }
    return out;
}

BalanceClass brute_classify(const Multidegree& md) {
    const DualGraph& g = md.graph();
    StabilityClass sc = classify_stability(g);
    if (sc == StabilityClass::NotSemistable)
        throw validation_error("balance classification requires a semistable graph");
    const long long genus = g.arithmetic_genus();
    const long long d = md.total();
    const std::vector<BruteSubcurve> subs = brute_connected_proper(g);

    // (i) Basic Inequality on every connected proper subcurve, both sides.
    for (const BruteSubcurve& z : subs) {
        long long deg = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
            if ((z.mask >> v) & 1u) deg += md[v];
        const long long lhs = 2 * (2 * genus - 2) * deg;
        if (lhs < 2 * d * z.w - (2 * genus - 2) * z.k) return BalanceClass::NotSemibalanced;
        if (lhs > 2 * d * z.w + (2 * genus - 2) * z.k) return BalanceClass::NotSemibalanced;
    }
    // (ii) degree 1 on every exceptional component.
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.genus_weight(v) == 0 && g.loops_at(v) == 0 && g.nonloop_degree(v) == 2 &&
            md[v] != 1)
            return BalanceClass::SemibalancedNotBalanced;
    // (iii) every connected proper subcurve attaining its lower bound must
    // have a complement consisting of exceptional components only.
    for (const BruteSubcurve& z : subs) {
        long long deg = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
            if ((z.mask >> v) & 1u) deg += md[v];
        if (2 * (2 * genus - 2) * deg != 2 * d * z.w - (2 * genus - 2) * z.k) continue;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if ((z.mask >> v) & 1u) continue;
            if (!(g.genus_weight(v) == 0 && g.loops_at(v) == 0 && g.nonloop_degree(v) == 2))
                return BalanceClass::BalancedNotStably;
        }
    }
    return BalanceClass::StablyBalanced;
}

bool brute_d_general(const DualGraph& graph, long long d) {
    StabilityClass sc = classify_stability(graph);
    if (sc != StabilityClass::Stable && sc != StabilityClass::QuasistableNotStable)
        throw validation_error("d-generality is decided on quasistable graphs");
    const int n = graph.vertex_count();
    if (n == 1) return true;

    const long long genus = graph.arithmetic_genus();
    // Independent singleton box: every balanced multidegree lies inside.
    std::vector<long long> lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        const long long w = 2LL * graph.genus_weight(v) - 2 + graph.degree(v);
        const long long k = graph.nonloop_degree(v);
        // ceil/floor of (d*w -+ k(g-1)) / (2g-2)
        const long long num_lo = 2 * d * w - (2 * genus - 2) * k;
        const long long num_hi = 2 * d * w + (2 * genus - 2) * k;
        const long long den = 2 * (2 * genus - 2);
        auto fdiv = [](long long a, long long b) {
            long long q = a / b;
            if (a % b != 0 && ((a < 0) != (b < 0))) --q;
            return q;
        };
        lo[static_cast<size_t>(v)] = -fdiv(-num_lo, den);
        hi[static_cast<size_t>(v)] = fdiv(num_hi, den);
        if (lo[static_cast<size_t>(v)] > hi[static_cast<size_t>(v)]) return true;
    }

    bool general = true;
    std::vector<long long> cur(static_cast<size_t>(n), 0);
    auto rec = [&](auto&& self, int v, long long remaining) -> void {
        if (!general) return;
        if (v == n - 1) {
            if (remaining < lo[static_cast<size_t>(v)] || remaining > hi[static_cast<size_t>(v)]) return;
            cur[static_cast<size_t>(v)] = remaining;
            BalanceClass c = brute_classify(Multidegree(graph, cur));
            if (c == BalanceClass::BalancedNotStably) general = false;
            return;
        }
        for (long long x = lo[static_cast<size_t>(v)]; x <= hi[static_cast<size_t>(v)]; ++x) {
            cur[static_cast<size_t>(v)] = x;
            self(self, v + 1, remaining - x);
        }
    };
    rec(rec, 0, d);
    return general;
}

long long brute_class_count(const DualGraph& graph) {
    if (!graph.is_connected())
        throw validation_error("class counting requires a connected graph");
    const int n = graph.vertex_count();
    if (n == 1) return 1;

    const TwisterLattice lat = twister_lattice(graph);

    // Seed set: degree-0 vectors with 0 <= v_i < k_i away from the last
    // vertex.  Every twister coset contains a reduced representative of this
    // shape, so flooding from all seeds reaches every class at least once.
    std::vector<std::vector<long long>> seeds;
    {
        std::vector<long long> vec(static_cast<size_t>(n), 0);
        auto sweep = [&](auto&& self, int v, long long sum) -> void {
            if (v == n - 1) {
                vec[static_cast<size_t>(v)] = -sum;
                seeds.push_back(vec);
                return;
            }
            for (long long x = 0; x < graph.nonloop_degree(v); ++x) {
                vec[static_cast<size_t>(v)] = x;
                self(self, v + 1, sum + x);
            }
        };
        sweep(sweep, 0, 0);
    }

    // Pack a vector into one 64-bit key; flood bounds stay far below 2^15.
    auto pack = [n](const std::vector<long long>& v) {
        std::uint64_t key = 0;
        for (int i = 0; i < n; ++i)
            key = (key << 16) | static_cast<std::uint64_t>(v[static_cast<size_t>(i)] + 0x4000);
        return key;
    };

    // Counting = number of flood components over the seeds.  Two seeds of
    // one coset may only be connected through vectors outside a small box,
    // so grow the flood box until the count stabilizes.
    long long previous = -1;
    for (long long bound = box_bound(graph) + 2LL * n;; bound *= 2) {
        if (bound > 0x3000)
            throw internal_error("coset flood failed to stabilize within the box cap");
        std::set<std::uint64_t> visited;
        long long classes = 0;
        for (const auto& seed : seeds) {
            if (visited.count(pack(seed))) continue;
            ++classes;
            std::vector<std::vector<long long>> stack{seed};
            visited.insert(pack(seed));
            while (!stack.empty()) {
                std::vector<long long> v = std::move(stack.back());
                stack.pop_back();
                for (const auto& row : lat.rows)
                    for (int sign : {+1, -1}) {
                        std::vector<long long> w = v;
                        bool inside = true;
                        for (size_t i = 0; i < w.size(); ++i) {
                            w[i] += sign * row[i];
                            if (w[i] < -bound || w[i] > bound) inside = false;
                        }
                        if (inside && visited.insert(pack(w)).second)
                            stack.push_back(std::move(w));
                    }
            }
        }
        if (classes == previous) return classes;
        previous = classes;
    }
}

std::vector<long long> brute_semibalanced_representative(const DualGraph& graph,
                                                         const std::vector<long long>& md) {
    auto semibalanced = [&](const std::vector<long long>& v) {
        return brute_classify(Multidegree(graph, v)) != BalanceClass::NotSemibalanced;
    };
    if (semibalanced(md)) return md;

    const TwisterLattice lat = twister_lattice(graph);
    std::set<std::vector<long long>> visited{md};
    std::vector<std::vector<long long>> level{md};
    while (!level.empty() && visited.size() < 4'000'000) {
        std::vector<std::vector<long long>> next;
        for (const auto& v : level)
            for (const auto& row : lat.rows)
                for (int sign : {+1, -1}) {
                    std::vector<long long> w = v;
                    for (size_t i = 0; i < w.size(); ++i) w[i] += sign * row[i];
                    if (visited.insert(w).second) next.push_back(std::move(w));
                }
        std::vector<long long> const* best = nullptr;
        for (const auto& w : next)
            if (semibalanced(w) && (!best || w < *best)) best = &w;
        if (best) return *best;
        level = std::move(next);
    }
    throw internal_error("brute-force semibalanced search found no representative");
}

VerifyReport verify_corpus(const CorpusSpec& spec,
                           std::optional<std::pair<long long, long long>> degree_range,
                           int threads) {
    const std::vector<DualGraph> corpus = generate_corpus(spec);
    VerifyReport report;
    report.graphs = corpus.size();

    std::mutex mu;
    std::atomic<std::size_t> total_checks{0};
    std::vector<std::pair<std::size_t, VerifyWitness>> failures;

    auto record = [&](std::size_t index, VerifyWitness w) {
        std::lock_guard<std::mutex> lock(mu);
        failures.push_back({index, std::move(w)});
    };

    parallel_for(corpus.size(), threads, [&](std::size_t gi) {
        const DualGraph& g = corpus[gi];
        std::size_t checks = 0;
        const std::string graph_json = graph_to_json(g);

        // Degree class group vs breadth-first coset count.
        {
            const long long fast = class_group(g).class_count();
            const long long brute = brute_class_count(g);
            ++checks;
            if (fast != brute)
                record(gi, {"class_group", graph_json, std::nullopt, std::nullopt,
                            std::to_string(brute), std::to_string(fast)});
        }

        const bool has_class =
            g.is_connected() && g.arithmetic_genus() >= 2;
        StabilityClass sc = StabilityClass::NotSemistable;
        if (has_class) sc = classify_stability(g);
        const bool semistable = has_class && sc != StabilityClass::NotSemistable;
        const bool quasistable =
            has_class &&
            (sc == StabilityClass::Stable || sc == StabilityClass::QuasistableNotStable);

        if (semistable) {
            const long long genus = g.arithmetic_genus();
            long long d_lo = 0, d_hi = std::max<long long>(1, 2 * genus - 3);
            if (degree_range) {
                d_lo = degree_range->first;
                d_hi = degree_range->second;
            }
            for (long long d = d_lo; d <= d_hi; ++d) {
                // classify vs brute_classify over the singleton box widened by 1.
                const int n = g.vertex_count();
                if (n > 1) {
                    std::vector<long long> lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n));
                    bool empty = false;
                    for (int v = 0; v < n; ++v) {
                        BasicBounds b = basic_bounds(Subcurve(g, 1u << v), d);
                        lo[static_cast<size_t>(v)] = b.lowest_degree() - 1;
                        hi[static_cast<size_t>(v)] = b.highest_degree() + 1;
                        if (lo[static_cast<size_t>(v)] > hi[static_cast<size_t>(v)]) empty = true;
                    }
                    if (!empty) {
                        std::vector<long long> cur(static_cast<size_t>(n), 0);
                        auto rec = [&](auto&& self, int v, long long remaining) -> void {
                            if (v == n - 1) {
                                if (remaining < lo[static_cast<size_t>(v)] ||
                                    remaining > hi[static_cast<size_t>(v)])
                                    return;
                                cur[static_cast<size_t>(v)] = remaining;
                                Multidegree md(g, cur);
                                BalanceClass fast = classify(md);
                                BalanceClass brute = brute_classify(md);
                                ++checks;
                                if (fast != brute)
                                    record(gi, {"classify", graph_json, cur, d,
                                                to_string(brute), to_string(fast)});
                                return;
                            }
                            for (long long x = lo[static_cast<size_t>(v)];
                                 x <= hi[static_cast<size_t>(v)]; ++x) {
                                cur[static_cast<size_t>(v)] = x;
                                self(self, v + 1, remaining - x);
                            }
                        };
                        rec(rec, 0, d);
                    }
                }

                if (quasistable) {
                    const bool fast = is_d_general(g, d, DGeneralMethod::Exhaustive);
                    const bool brute = brute_d_general(g, d);
                    ++checks;
                    if (fast != brute)
                        record(gi, {"is_d_general/exhaustive", graph_json, std::nullopt, d,
                                    brute ? "true" : "false", fast ? "true" : "false"});
                    if (sc == StabilityClass::Stable) {
                        const bool crit = is_d_general(g, d, DGeneralMethod::Criterion);
                        ++checks;
                        if (crit != brute)
                            record(gi, {"is_d_general/criterion", graph_json, std::nullopt, d,
                                        brute ? "true" : "false", crit ? "true" : "false"});
                    }

                    // Representative probes: a degree-concentrated vector and
                    // a skewed one a few twister steps out.
                    std::vector<std::vector<long long>> probes;
                    std::vector<long long> flat(static_cast<size_t>(g.vertex_count()), 0);
                    flat[0] = d;
                    probes.push_back(flat);
                    if (g.vertex_count() > 1) {
                        std::vector<long long> skew(static_cast<size_t>(g.vertex_count()), 0);
                        skew[0] = d + 3;
                        skew[1] = -3;
                        probes.push_back(skew);
                    }
                    for (const auto& probe : probes) {
                        Multidegree md(g, probe);
                        Multidegree rep = semibalanced_representative(g, md);
                        std::vector<long long> ref = brute_semibalanced_representative(g, probe);
                        ++checks;
                        if (rep.degrees() != ref)
                            record(gi, {"semibalanced_representative", graph_json, probe, d,
                                        vector_to_string(ref),
                                        vector_to_string(rep.degrees())});
                    }
                }
            }
        }
        total_checks += checks;
    });

    report.checks = total_checks.load();
    if (!failures.empty()) {
        auto it = std::min_element(failures.begin(), failures.end(),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        report.first_disagreement = it->second;
    }
    return report;
}

} // namespace picard_strata
