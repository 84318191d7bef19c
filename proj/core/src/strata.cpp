#include "picard_strata/strata.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "picard_strata/balance.hpp"

namespace picard_strata {

GcdInvariant gcd_invariant(long long g, long long d) {
    if (g < 2) throw validation_error("gcd invariant requires genus >= 2");
    const long long a = d - g + 1;
    const long long value = std::gcd(a, 2 * g - 2); // gcd(0, n) = n
    return GcdInvariant{g, d, value};
}

bool is_d_general(const DualGraph& graph, long long d, DGeneralMethod method) {
    StabilityClass sc = classify_stability(graph);
    if (method == DGeneralMethod::Criterion) {
        if (sc != StabilityClass::Stable)
            throw validation_error("the d-general criterion is stated for stable graphs only");
        const long long g = graph.arithmetic_genus();
        const long long period = (2 * g - 2) / gcd_invariant(g, d).value;
        // d-special iff some connected proper Z with connected complement has
        // period | w_Z.
        for (const Subcurve& z : enumerate_connected_proper_subcurves(graph)) {
            if (!z.complement().is_connected()) continue;
            if (z.dualizing_degree() % period == 0) return false;
        }
        return true;
    }
    if (sc != StabilityClass::Stable && sc != StabilityClass::QuasistableNotStable)
        throw validation_error("exhaustive d-generality requires a quasistable graph");
    BalancedEnumeration all = enumerate_balanced(graph, d, /*stably_only=*/false);
    for (BalanceClass c : all.classes)
        if (c != BalanceClass::StablyBalanced) return false;
    return true;
}

DualGraph VineGenerator::graph() const {
    std::vector<Vertex> verts{{"C1", static_cast<int>(g1)}, {"C2", static_cast<int>(g2)}};
    std::vector<std::pair<int, int>> edges(static_cast<size_t>(k), {0, 1});
    return DualGraph::from_indices(std::move(verts), std::move(edges));
}

std::vector<VineGenerator> enumerate_special_vine_generators(long long g, long long d) {
    if (g < 2) throw validation_error("vine generators require genus >= 2");
    if (g > 1'000'000)
        throw validation_error("vine generator enumeration supports genus up to 10^6");
    if (d < 1) {
        const long long period = 2 * g - 2;
        long long shifted = d % period;
        if (shifted < 1) shifted += period;
        throw validation_error(
            "vine generators are enumerated for degree >= 1; twist the degree by "
            "multiples of 2g-2 first (equivalent degree " +
            std::to_string(shifted) + ")");
    }
    const long long G = gcd_invariant(g, d).value;
    std::vector<VineGenerator> out;
    for (long long m = 1; m < G; ++m) {
        const long long w1 = (2 * g - 2) / G * m; // w of the first component
        const long long k_max = std::min(w1 + 2, 2 * g - w1);
        for (long long k = 1; k <= k_max; ++k) {
            if ((k - w1) % 2 != 0) continue;
            const long long g1 = (w1 - k) / 2 + 1;
            const long long g2 = g - (w1 + k) / 2;
            VineGenerator v;
            v.g1 = std::min(g1, g2);
            v.g2 = std::max(g1, g2);
            v.k = k;
            v.m_values = {m};
            auto dup = std::find(out.begin(), out.end(), v);
            if (dup != out.end()) {
                if (std::find(dup->m_values.begin(), dup->m_values.end(), m) ==
                    dup->m_values.end())
                    dup->m_values.push_back(m);
            } else {
                out.push_back(std::move(v));
            }
        }
    }
    return out;
}

bool stratum_containment(long long g, long long d, long long d2) {
    return gcd_invariant(g, d2).value % gcd_invariant(g, d).value == 0;
}

StratumLattice::StratumLattice(long long g) : g_(g) {
    if (g < 2) throw validation_error("stratum lattice requires genus >= 2");
    if (g > 1'000'000'000)
        throw validation_error("stratum lattice supports genus up to 10^9");
    const long long n = 2 * g - 2;
    for (long long m = 1; m * m <= n; ++m) {
        if (n % m != 0) continue;
        nodes_.push_back(m);
        if (m != n / m) nodes_.push_back(n / m);
    }
    std::sort(nodes_.begin(), nodes_.end());
}

bool StratumLattice::is_node(long long m) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), m);
}

bool StratumLattice::contains(long long m, long long mp) const {
    if (!is_node(m) || !is_node(mp))
        throw validation_error("stratum index must be a positive divisor of 2g-2");
    return m % mp == 0;
}

std::vector<std::pair<long long, long long>> StratumLattice::cover_edges() const {
    // Edges point upward: from each stratum to its immediate successors.
    // Layered by distance from the bottom so DOT output reads bottom-up.
    auto level = [&](long long m) {
        long long q = (2 * g_ - 2) / m;
        int c = 0;
        for (long long p = 2; p * p <= q; ++p)
            while (q % p == 0) {
                q /= p;
                ++c;
            }
        if (q > 1) ++c;
        return c;
    };
    std::vector<std::pair<long long, long long>> covers;
    for (long long src : nodes_)
        for (long long dst : nodes_) {
            if (src == dst || src % dst != 0) continue;
            bool direct = true;
            for (long long mid : nodes_)
                if (mid != src && mid != dst && src % mid == 0 && mid % dst == 0) direct = false;
            if (direct) covers.push_back({src, dst});
        }
    std::sort(covers.begin(), covers.end(), [&](const auto& a, const auto& b) {
        if (level(a.first) != level(b.first)) return level(a.first) < level(b.first);
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    return covers;
}

long long StratumLattice::meet(long long a, long long b) const {
    if (!is_node(a) || !is_node(b))
        throw validation_error("stratum index must be a positive divisor of 2g-2");
    return std::lcm(a, b);
}

long long StratumLattice::join(long long a, long long b) const {
    if (!is_node(a) || !is_node(b))
        throw validation_error("stratum index must be a positive divisor of 2g-2");
    return std::gcd(a, b);
}

StratumLattice divisor_lattice(long long g) { return StratumLattice(g); }

} // namespace picard_strata
