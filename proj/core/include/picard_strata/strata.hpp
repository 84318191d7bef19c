#pragma once

#include <utility>
#include <vector>

#include "picard_strata/dual_graph.hpp"

namespace picard_strata {

// G_d = gcd(d - g + 1, 2g - 2), the invariant controlling the d-special locus.
struct GcdInvariant {
    long long g = 0;
    long long d = 0;
    long long value = 0;
};

// Requires g >= 2; any integer d is accepted.
GcdInvariant gcd_invariant(long long g, long long d);

enum class DGeneralMethod {
    Exhaustive, // enumerate balanced multidegrees, demand all stably balanced
    Criterion,  // no connected proper Z with connected complement and (2g-2)/G_d | w_Z
};

// Whether every balanced multidegree of total degree d is stably balanced.
// Criterion requires a stable graph; Exhaustive also accepts quasistable.
bool is_d_general(const DualGraph& graph, long long d, DGeneralMethod method);

// A minimal d-special vine curve: two components of genus g1 <= g2 meeting
// in k nodes, with g1 + g2 + k - 1 = g.  Records the parameter values m that
// produce the vine (m and G_d - m yield the same unordered curve).
struct VineGenerator {
    long long g1 = 0;
    long long g2 = 0;
    long long k = 0;
    std::vector<long long> m_values;

    // Two-vertex dual graph with ids "C1", "C2".
    DualGraph graph() const;

    friend bool operator==(const VineGenerator& a, const VineGenerator& b) {
        return a.g1 == b.g1 && a.g2 == b.g2 && a.k == b.k;
    }
};

// The vine curves generating the d-special locus of genus g:
// for each m in [1, G_d) and each k in [1, min((2g-2)m/G_d + 2, 2g - (2g-2)m/G_d)]
// with k = (2g-2)m/G_d (mod 2), the vine with
//   g1 = (g-1)m/G_d - k/2 + 1   and   g2 = g - (g-1)m/G_d - k/2,
// deduplicated under component swap.  Empty iff G_d = 1.
// Requires g >= 2 and d >= 1 (degrees below 1 reduce by d -> d + n(2g-2)).
std::vector<VineGenerator> enumerate_special_vine_generators(long long g, long long d);

// True iff G_d divides G_{d2}, i.e. every d-special curve is d2-special.
bool stratum_containment(long long g, long long d, long long d2);

// Lattice of moduli strata indexed by the positive divisors M of 2g-2,
// ordered by reverse divisibility: stratum(M) is contained in stratum(M')
// iff M' | M.  Top M = 1 (everything), bottom M = 2g-2 (irreducible curves).
class StratumLattice {
public:
    explicit StratumLattice(long long g);

    long long genus() const { return g_; }
    const std::vector<long long>& nodes() const { return nodes_; } // ascending
    bool is_node(long long m) const;

    // stratum(m) contained in stratum(mp)?
    bool contains(long long m, long long mp) const;

    // Hasse diagram of the containment order, each edge pointing from the
    // smaller stratum to the next larger one.
    std::vector<std::pair<long long, long long>> cover_edges() const;

    long long meet(long long a, long long b) const; // largest stratum inside both
    long long join(long long a, long long b) const; // smallest stratum containing both
    long long top() const { return 1; }
    long long bottom() const { return 2 * g_ - 2; }

private:
    long long g_;
    std::vector<long long> nodes_;
};

// Requires g >= 2.
StratumLattice divisor_lattice(long long g);

} // namespace picard_strata
