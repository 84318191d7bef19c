#include "picard_strata/balance.hpp"

#include <algorithm>
#include <cstdlib>

namespace picard_strata {

namespace {

// With genus weights and edge counts capped at 10^6, every scaled product
// 2*d*w, (2g-2)*k and scale*deg stays far below the int64 range under this
// degree cap.
constexpr long long kMaxDegreeMagnitude = 1'000'000'000LL;

long long div_floor(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long long div_ceil(long long a, long long b) { return -div_floor(-a, b); }

void check_degree_magnitude(long long d) {
    if (d > kMaxDegreeMagnitude || d < -kMaxDegreeMagnitude)
        throw validation_error("total degree magnitude exceeds the supported range");
}

// Precomputed per-graph data for repeated balance checks.
struct BalanceContext {
    const DualGraph* graph;
    long long genus;
    long long scale; // 2*(2g-2)
    struct Entry {
        std::uint32_t mask;
        long long k;
        long long w;
    };
    std::vector<Entry> connected_proper; // every connected proper subcurve
    std::vector<int> exceptional;        // exceptional vertex indices
    std::uint32_t exceptional_mask = 0;

    explicit BalanceContext(const DualGraph& g) : graph(&g) {
        genus = g.arithmetic_genus();
        if (genus < 2) throw validation_error("balance classification requires genus >= 2");
        scale = 2 * (2 * genus - 2);
        for (const Subcurve& z : enumerate_connected_proper_subcurves(g))
            connected_proper.push_back({z.mask(), z.boundary_nodes(), z.dualizing_degree()});
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (g.is_exceptional_vertex(v)) {
                exceptional.push_back(v);
                exceptional_mask |= 1u << v;
            }
        }
    }

    long long degree_on(const std::vector<long long>& degrees, std::uint32_t mask) const {
        long long s = 0;
        for (int v = 0; v < graph->vertex_count(); ++v)
            if ((mask >> v) & 1u) s += degrees[static_cast<size_t>(v)];
        return s;
    }

    BalanceClass classify(const std::vector<long long>& degrees, long long d) const {
        const std::uint32_t full =
            graph->vertex_count() == 32 ? ~0u : ((1u << graph->vertex_count()) - 1u);
        for (const Entry& z : connected_proper) {
            const long long lhs = scale * degree_on(degrees, z.mask);
            const long long mid = 2 * d * z.w;
            const long long half = (2 * genus - 2) * z.k;
            if (lhs < mid - half || lhs > mid + half) return BalanceClass::NotSemibalanced;
        }
        for (int v : exceptional)
            if (degrees[static_cast<size_t>(v)] != 1) return BalanceClass::SemibalancedNotBalanced;
        for (const Entry& z : connected_proper) {
            const long long lhs = scale * degree_on(degrees, z.mask);
            if (lhs == 2 * d * z.w - (2 * genus - 2) * z.k) {
                const std::uint32_t comp = full & ~z.mask;
                if (comp & ~exceptional_mask) return BalanceClass::BalancedNotStably;
            }
        }
        return BalanceClass::StablyBalanced;
    }
};

} // namespace

const char* to_string(BalanceClass c) {
    switch (c) {
    case BalanceClass::NotSemibalanced: return "NotSemibalanced";
    case BalanceClass::SemibalancedNotBalanced: return "SemibalancedNotBalanced";
    case BalanceClass::BalancedNotStably: return "BalancedNotStably";
    case BalanceClass::StablyBalanced: return "StablyBalanced";
    }
    return "?";
}

Multidegree::Multidegree(const DualGraph& graph, std::vector<long long> degrees)
    : graph_(&graph), degrees_(std::move(degrees)) {
    if (static_cast<int>(degrees_.size()) != graph.vertex_count())
        throw validation_error("multidegree length does not match the vertex count");
    for (long long d : degrees_) check_degree_magnitude(d);
}

long long Multidegree::total() const {
    long long s = 0;
    for (long long d : degrees_) s += d;
    return s;
}

long long Multidegree::degree_on(const Subcurve& z) const {
    long long s = 0;
    for (int v : z.members()) s += degrees_[static_cast<size_t>(v)];
    return s;
}

long long BasicBounds::lowest_degree() const { return div_ceil(m_doubled, scale); }
long long BasicBounds::highest_degree() const { return div_floor(M_doubled, scale); }

BasicBounds basic_bounds(const Subcurve& z, long long d) {
    check_degree_magnitude(d);
    if (!z.is_proper())
        throw validation_error("Basic Inequality bounds are defined for proper subcurves only");
    const long long g = z.graph().arithmetic_genus();
    if (g < 2) throw validation_error("Basic Inequality requires ambient genus >= 2");
    const long long k = z.boundary_nodes();
    const long long w = z.dualizing_degree();
    return BasicBounds{z, 2 * d * w - (2 * g - 2) * k, 2 * d * w + (2 * g - 2) * k,
                       2 * (2 * g - 2)};
}

BalanceClass classify(const Multidegree& md) {
    const DualGraph& g = md.graph();
    StabilityClass sc = classify_stability(g);
    if (sc == StabilityClass::NotSemistable)
        throw validation_error("balance classification requires a semistable graph");
    check_degree_magnitude(md.total());
    BalanceContext ctx(g);
    return ctx.classify(md.degrees(), md.total());
}

BalancedEnumeration enumerate_balanced(const DualGraph& graph, long long d, bool stably_only) {
    check_degree_magnitude(d);
    BalancedEnumeration result;
    StabilityClass sc = classify_stability(graph);
    if (sc == StabilityClass::NotSemistable)
        throw validation_error("balanced enumeration requires a semistable graph");
    if (sc == StabilityClass::SemistableNotQuasistable) {
        result.diagnostic =
            "graph is semistable but not quasistable: no balanced multidegree exists";
        return result;
    }

    const int n = graph.vertex_count();
    if (n == 1) {
        result.multidegrees.emplace_back(graph, std::vector<long long>{d});
        result.classes.push_back(BalanceClass::StablyBalanced);
        return result;
    }

    BalanceContext ctx(graph);

    // Per-vertex interval from the singleton bounds; exceptional vertices are
    // pinned to 1.  Singletons are connected, so the box contains every
    // balanced multidegree of total degree d.
    std::vector<long long> lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        if (graph.is_exceptional_vertex(v)) {
            lo[static_cast<size_t>(v)] = hi[static_cast<size_t>(v)] = 1;
            continue;
        }
        BasicBounds b = basic_bounds(Subcurve(graph, 1u << v), d);
        lo[static_cast<size_t>(v)] = b.lowest_degree();
        hi[static_cast<size_t>(v)] = b.highest_degree();
        if (lo[static_cast<size_t>(v)] > hi[static_cast<size_t>(v)]) return result;
    }

    std::vector<long long> suffix_lo(static_cast<size_t>(n) + 1, 0);
    std::vector<long long> suffix_hi(static_cast<size_t>(n) + 1, 0);
    for (int v = n - 1; v >= 0; --v) {
        suffix_lo[static_cast<size_t>(v)] = suffix_lo[static_cast<size_t>(v) + 1] + lo[static_cast<size_t>(v)];
        suffix_hi[static_cast<size_t>(v)] = suffix_hi[static_cast<size_t>(v) + 1] + hi[static_cast<size_t>(v)];
    }

    std::vector<long long> current(static_cast<size_t>(n), 0);
    auto emit = [&](const std::vector<long long>& degrees) {
        BalanceClass c = ctx.classify(degrees, d);
        if (c == BalanceClass::StablyBalanced ||
            (!stably_only && c == BalanceClass::BalancedNotStably)) {
            result.multidegrees.emplace_back(graph, degrees);
            result.classes.push_back(c);
        }
    };
    // Lexicographic walk over the box with partial-sum pruning.
    auto rec = [&](auto&& self, int v, long long remaining) -> void {
        if (v == n - 1) {
            if (remaining >= lo[static_cast<size_t>(v)] && remaining <= hi[static_cast<size_t>(v)]) {
                current[static_cast<size_t>(v)] = remaining;
                emit(current);
            }
            return;
        }
        for (long long x = lo[static_cast<size_t>(v)]; x <= hi[static_cast<size_t>(v)]; ++x) {
            const long long rest = remaining - x;
            if (rest < suffix_lo[static_cast<size_t>(v) + 1] || rest > suffix_hi[static_cast<size_t>(v) + 1])
                continue;
            current[static_cast<size_t>(v)] = x;
            self(self, v + 1, rest);
        }
    };
    rec(rec, 0, d);
    return result;
}

Multidegree twist(const Multidegree& md, long long n) {
    check_degree_magnitude(n);
    const DualGraph& g = md.graph();
    std::vector<long long> out = md.degrees();
    for (int v = 0; v < g.vertex_count(); ++v)
        out[static_cast<size_t>(v)] += n * g.dualizing_degree(v);
    return Multidegree(g, std::move(out));
}

Multidegree reflect_twist(const Multidegree& md, long long n) {
    check_degree_magnitude(n);
    const DualGraph& g = md.graph();
    std::vector<long long> out = md.degrees();
    for (int v = 0; v < g.vertex_count(); ++v)
        out[static_cast<size_t>(v)] = n * g.dualizing_degree(v) - out[static_cast<size_t>(v)];
    return Multidegree(g, std::move(out));
}

} // namespace picard_strata
