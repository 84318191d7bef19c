#pragma once

#include <string>
#include <vector>

#include "picard_strata/dual_graph.hpp"

namespace picard_strata {

// Integer vector of component-wise degrees of a line bundle, aligned with
// the graph's vertex order.  Non-owning view onto the graph.
class Multidegree {
public:
    Multidegree(const DualGraph& graph, std::vector<long long> degrees);

    const DualGraph& graph() const { return *graph_; }
    const std::vector<long long>& degrees() const { return degrees_; }
    long long operator[](int v) const { return degrees_[static_cast<size_t>(v)]; }
    long long total() const;
    long long degree_on(const Subcurve& z) const;

    friend bool operator==(const Multidegree& a, const Multidegree& b) {
        return a.graph_ == b.graph_ && a.degrees_ == b.degrees_;
    }

private:
    const DualGraph* graph_;
    std::vector<long long> degrees_;
};

// Basic Inequality bounds m_Z(d) = d*w_Z/(2g-2) - k_Z/2 and
// M_Z(d) = d*w_Z/(2g-2) + k_Z/2 for a proper subcurve Z, stored exactly as
// integers scaled by 2(2g-2).  deg_Z satisfies the inequality iff
// m_doubled <= scale*deg_Z <= M_doubled.
struct BasicBounds {
    Subcurve subcurve;
    long long m_doubled = 0; // 2*d*w_Z - (2g-2)*k_Z
    long long M_doubled = 0; // 2*d*w_Z + (2g-2)*k_Z
    long long scale = 0;     // 2*(2g-2)

    bool admits(long long deg) const {
        return m_doubled <= scale * deg && scale * deg <= M_doubled;
    }
    bool attains_lower(long long deg) const { return scale * deg == m_doubled; }
    bool attains_upper(long long deg) const { return scale * deg == M_doubled; }
    long long lowest_degree() const;  // ceil(m_Z)
    long long highest_degree() const; // floor(M_Z)
};

// Requires z proper and nonempty in a graph of genus >= 2.
BasicBounds basic_bounds(const Subcurve& z, long long d);

enum class BalanceClass {
    NotSemibalanced,
    SemibalancedNotBalanced,
    BalancedNotStably,
    StablyBalanced,
};

const char* to_string(BalanceClass c);

inline bool is_balanced(BalanceClass c) {
    return c == BalanceClass::BalancedNotStably || c == BalanceClass::StablyBalanced;
}

// Classifies a multidegree on a semistable graph of genus >= 2:
//   NotSemibalanced        some connected proper Z violates the Basic Inequality
//   SemibalancedNotBalanced some exceptional component has degree != 1
//   StablyBalanced          balanced and every connected proper Z attaining
//                           m_Z(d) has a complement made of exceptional
//                           vertices only
//   BalancedNotStably       balanced but not stably balanced
// Defined for any total degree, negative included.
BalanceClass classify(const Multidegree& md);

struct BalancedEnumeration {
    std::vector<Multidegree> multidegrees; // lexicographic in vertex order
    std::vector<BalanceClass> classes;     // aligned with multidegrees
    std::string diagnostic;                // nonempty iff enumeration was refused
};

// All balanced (or, with stably_only, stably balanced) multidegrees of total
// degree d on a quasistable graph.  Semistable-but-not-quasistable input
// yields an empty list and a diagnostic: such a curve admits no balanced
// multidegree.  The search box comes from the singleton-subcurve bounds with
// exceptional vertices pinned to degree 1.
BalancedEnumeration enumerate_balanced(const DualGraph& graph, long long d,
                                       bool stably_only = false);

// Adds n*w_v to every entry (total degree shifts by n(2g-2)).  Preserves the
// balance class for every n.
Multidegree twist(const Multidegree& md, long long n);

// Sends entry deg_v to n*w_v - deg_v (total degree becomes n(2g-2) - d).
// Preserves semibalancedness always, and the full balance class on stable
// graphs; on graphs with exceptional components the degree-1 pinning flips.
Multidegree reflect_twist(const Multidegree& md, long long n);

} // namespace picard_strata
