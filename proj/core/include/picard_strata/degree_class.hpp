#pragma once

#include <vector>

#include "picard_strata/balance.hpp"
#include "picard_strata/dual_graph.hpp"

namespace picard_strata {

// Row i is the multidegree of the twister supported on component i:
// -k_{C_i} on the diagonal, the number of edges between C_i and C_j off it.
// Loops contribute nothing.  The matrix is symmetric with zero row sums and
// rank gamma - 1 on connected graphs (it is minus the multigraph Laplacian).
struct TwisterLattice {
    std::vector<std::vector<long long>> rows;
};

TwisterLattice twister_lattice(const DualGraph& graph);

// The degree class group: degree-0 multidegrees modulo the twister lattice.
// Holds the invariant factors (> 1, in a divisibility chain) together with
// the unimodular row transform of the underlying normal form, which labels
// any multidegree's class canonically.
class DegreeClassGroup {
public:
    DegreeClassGroup(std::vector<long long> invariant_factors,
                     std::vector<std::vector<long long>> row_transform,
                     std::vector<long long> diagonal);

    const std::vector<long long>& invariant_factors() const { return invariant_factors_; }
    long long class_count() const;

    // Canonical label, constant exactly on twister cosets of a fixed total
    // degree.  Entry i is (U md)_i reduced mod the i-th diagonal entry
    // (taken verbatim where the diagonal vanishes).
    std::vector<long long> class_label(const std::vector<long long>& md) const;

private:
    std::vector<long long> invariant_factors_;
    std::vector<std::vector<long long>> row_transform_; // U with U*A*V diagonal
    std::vector<long long> diagonal_;                   // full diagonal, zeros included
};

// Exact integer normal-form reduction of the twister lattice.  Depends only
// on the underlying multigraph, never on the genus weights.
DegreeClassGroup class_group(const DualGraph& graph);

// True iff a - b lies in the twister lattice.  Requires equal total degrees
// on the same graph.
bool same_class(const Multidegree& a, const Multidegree& b);

// A semibalanced multidegree in the twister class of md on a quasistable
// graph: breadth-first search outward from md along twister moves, returning
// the lexicographically least semibalanced multidegree of the first level
// that contains one.  An input that is already semibalanced is returned
// unchanged.  If the class provably contains no semibalanced element the
// cited existence claim is falsified and internal_error is thrown.
Multidegree semibalanced_representative(const DualGraph& graph, const Multidegree& md);

} // namespace picard_strata
