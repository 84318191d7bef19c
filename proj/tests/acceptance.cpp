// Acceptance suite: exhaustive checks of the library's combinatorial claims
// on generated corpora.  Prints one [PASS]/[FAIL] line per criterion and
// exits nonzero if any fail.  All arithmetic is exact; every comparison uses
// tolerance zero.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "picard_strata/balance.hpp"
#include "picard_strata/degree_class.hpp"
#include "picard_strata/dual_graph.hpp"
#include "picard_strata/graph_io.hpp"
#include "picard_strata/oracle.hpp"
#include "picard_strata/parallel.hpp"
#include "picard_strata/strata.hpp"

using namespace picard_strata;

namespace {

struct FailureLog {
    std::mutex mu;
    std::vector<std::string> messages;
    std::atomic<long long> count{0};

    void add(const std::string& msg) {
        count.fetch_add(1);
        std::lock_guard<std::mutex> lock(mu);
        if (messages.size() < 5) messages.push_back(msg);
    }
    bool ok() const { return count.load() == 0; }
};

int failures_total = 0;

void report(int id, const std::string& label, const FailureLog& log, double seconds) {
    if (log.ok()) {
        std::printf("[PASS] criterion %2d: %s (%.1fs)\n", id, label.c_str(), seconds);
    } else {
        ++failures_total;
        std::printf("[FAIL] criterion %2d: %s (%.1fs) - %lld failure(s)\n", id, label.c_str(),
                    seconds, log.count.load());
        for (const std::string& m : log.messages) std::printf("       %s\n", m.c_str());
    }
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

DualGraph make_vine(int g1, int g2, int k) {
    std::vector<Vertex> vs{{"C1", g1}, {"C2", g2}};
    std::vector<std::pair<int, int>> edges(static_cast<size_t>(k), {0, 1});
    return DualGraph::from_indices(std::move(vs), std::move(edges));
}

std::string describe(const DualGraph& g, long long d) {
    return "graph=" + graph_to_json(g) + " d=" + std::to_string(d);
}

} // namespace

int main() {
    const auto suite_start = std::chrono::steady_clock::now();
    const int threads = default_thread_count();
    std::printf("picard-strata acceptance suite (%d worker thread(s))\n", threads);

    std::printf("generating corpora...\n");
    std::fflush(stdout);
    const std::vector<DualGraph> stable_corpus =
        generate_corpus({4, 6, 9, StabilityFilter::Stable});
    const std::vector<DualGraph> quasi3_corpus =
        generate_corpus({3, 6, 9, StabilityFilter::Quasistable});
    const std::vector<DualGraph> multigraph_corpus =
        generate_corpus({4, 6, 6, StabilityFilter::Any, /*max_vertex_genus=*/0});
    std::printf("stable <=4v g<=6: %zu graphs; quasistable <=3v: %zu; plain multigraphs "
                "<=4v <=6e: %zu\n",
                stable_corpus.size(), quasi3_corpus.size(), multigraph_corpus.size());
    std::fflush(stdout);

    // Criteria 1-3 share one sweep over (stable graph, degree).
    FailureLog c1, c2, c3;
    auto sweep_start = std::chrono::steady_clock::now();
    parallel_for(stable_corpus.size(), threads, [&](std::size_t gi) {
        const DualGraph& g = stable_corpus[gi];
        const long long genus = g.arithmetic_genus();
        for (long long d = 0; d < 2 * genus - 2; ++d) {
            const bool exhaustive = is_d_general(g, d, DGeneralMethod::Exhaustive);
            const bool criterion = is_d_general(g, d, DGeneralMethod::Criterion);
            if (exhaustive != criterion) c3.add(describe(g, d));
            if (gcd_invariant(genus, d).value == 1 && !exhaustive) c1.add(describe(g, d));
        }
        if (g.vertex_count() >= 2) {
            for (long long d : {genus - 1, 3 * genus - 3})
                if (is_d_general(g, d, DGeneralMethod::Exhaustive)) c2.add(describe(g, d));
        }
    });
    const double sweep_seconds = seconds_since(sweep_start);
    report(1, "G_d = 1 implies d-generality on every stable graph (<=4 vertices, genus <= 6)",
           c1, sweep_seconds);
    report(2, "every reducible stable graph is d-special for d = g-1 (mod 2g-2)", c2,
           sweep_seconds);
    report(3, "exhaustive and criterion d-generality agree for all d in [0, 2g-2)", c3,
           sweep_seconds);

    // Criterion 4: the degree-one generator fixture.
    {
        auto start = std::chrono::steady_clock::now();
        FailureLog log;
        auto gens = enumerate_special_vine_generators(2, 1);
        if (gens.size() != 2 || !(gens[0] == VineGenerator{1, 1, 1, {}}) ||
            !(gens[1] == VineGenerator{0, 0, 3, {}}))
            log.add("generator list for g=2, d=1 is not {(1,1,1),(0,0,3)}");
        for (const VineGenerator& v : gens) {
            DualGraph vine = v.graph();
            if (classify_stability(vine) != StabilityClass::Stable)
                log.add("generator vine not stable");
            if (brute_d_general(vine, 1)) log.add("generator vine not 1-special");
        }
        report(4, "g=2, d=1 generators are exactly {(1,1,1),(0,0,3)}, both 1-special", log,
               seconds_since(start));
    }

    // Criterion 5: one-node vines carry exactly the two expected balanced
    // multidegrees at degree g-1, neither stably balanced.
    {
        auto start = std::chrono::steady_clock::now();
        FailureLog log;
        for (int g1 = 1; g1 <= 7; ++g1)
            for (int g2 = 1; g1 + g2 <= 8; ++g2) {
                DualGraph vine = make_vine(g1, g2, 1);
                const long long d = vine.arithmetic_genus() - 1;
                BalancedEnumeration b = enumerate_balanced(vine, d);
                const std::vector<std::vector<long long>> expected{
                    {g1 - 1, g2}, {g1, g2 - 1}};
                std::vector<std::vector<long long>> got;
                for (const Multidegree& md : b.multidegrees) got.push_back(md.degrees());
                if (got != expected) log.add(describe(vine, d) + ": wrong balanced set");
                for (BalanceClass c : b.classes)
                    if (c != BalanceClass::BalancedNotStably)
                        log.add(describe(vine, d) + ": element claims stably balanced");
            }
        report(5, "one-node vines at d = g-1 (g <= 8) yield {(g1,g2-1),(g1-1,g2)}, not stably",
               log, seconds_since(start));
    }

    // Criterion 6: twisting is a class-preserving bijection B^d -> B^{d+n(2g-2)}.
    {
        auto start = std::chrono::steady_clock::now();
        FailureLog log;
        parallel_for(stable_corpus.size(), threads, [&](std::size_t gi) {
            const DualGraph& g = stable_corpus[gi];
            const long long genus = g.arithmetic_genus();
            for (long long d : {0LL, 1LL, genus - 1}) {
                BalancedEnumeration base = enumerate_balanced(g, d);
                for (long long n = -2; n <= 2; ++n) {
                    BalancedEnumeration shifted =
                        enumerate_balanced(g, d + n * (2 * genus - 2));
                    if (shifted.multidegrees.size() != base.multidegrees.size()) {
                        log.add(describe(g, d) + " n=" + std::to_string(n) +
                                ": twist is not bijective");
                        continue;
                    }
                    for (size_t i = 0; i < base.multidegrees.size(); ++i) {
                        if (!(twist(base.multidegrees[i], n) == shifted.multidegrees[i]) ||
                            base.classes[i] != shifted.classes[i]) {
                            log.add(describe(g, d) + " n=" + std::to_string(n) +
                                    ": class or order not preserved");
                            break;
                        }
                    }
                }
            }
        });
        report(6, "twist maps B^d bijectively onto B^{d+n(2g-2)} preserving classes, n in "
                  "[-2,2]",
               log, seconds_since(start));
    }

    // Criterion 7: invariant factors against the breadth-first coset count.
    {
        auto start = std::chrono::steady_clock::now();
        FailureLog log;
        parallel_for(multigraph_corpus.size(), threads, [&](std::size_t gi) {
            const DualGraph& g = multigraph_corpus[gi];
            if (class_group(g).class_count() != brute_class_count(g))
                log.add("class count mismatch on " + graph_to_json(g));
        });
        for (int k = 1; k <= 6; ++k) {
            auto factors = class_group(make_vine(1, 1, k)).invariant_factors();
            const std::vector<long long> expected =
                k >= 2 ? std::vector<long long>{k} : std::vector<long long>{};
            if (factors != expected)
                log.add("vine with " + std::to_string(k) + " edges: wrong invariant factors");
        }
        report(7, "class group matches the BFS coset count (<=4 vertices, <=6 edges); vine k "
                  "gives [k]",
               log, seconds_since(start));
    }

    // Criterion 8: a balanced multidegree is alone in its twister class iff
    // it is stably balanced, over the quasistable corpus.
    {
        auto start = std::chrono::steady_clock::now();
        FailureLog log;
        std::atomic<long long> forward_failures{0};     // stably but not unique
        std::atomic<long long> stable_only_failures{0}; // biconditional on stable graphs
        parallel_for(quasi3_corpus.size(), threads, [&](std::size_t gi) {
            const DualGraph& g = quasi3_corpus[gi];
            const long long genus = g.arithmetic_genus();
            const bool graph_stable = classify_stability(g) == StabilityClass::Stable;
            DegreeClassGroup grp = class_group(g);
            for (long long d = 0; d < 2 * genus - 2; ++d) {
                BalancedEnumeration b = enumerate_balanced(g, d);
                std::map<std::vector<long long>, int> sizes;
                for (const Multidegree& md : b.multidegrees)
                    ++sizes[grp.class_label(md.degrees())];
                bool logged = false;
                for (size_t i = 0; i < b.multidegrees.size(); ++i) {
                    const bool unique =
                        sizes[grp.class_label(b.multidegrees[i].degrees())] == 1;
                    const bool stably = b.classes[i] == BalanceClass::StablyBalanced;
                    if (unique != stably && !logged) {
                        log.add(describe(g, d) + ": uniqueness-iff-stably violated");
                        logged = true;
                    }
                    if (stably && !unique) forward_failures.fetch_add(1);
                    if (graph_stable && unique != stably) stable_only_failures.fetch_add(1);
                }
            }
        });
        report(8, "balanced multidegree unique in its class iff stably balanced (quasistable, "
                  "<=3 vertices)",
               log, seconds_since(start));
        if (!log.ok()) {
            std::printf("       analysis: every witness has exceptional components; the "
                        "boundary multidegree pinned to 1 there\n"
                        "       (the (g1-1,1,g2-1) pattern) can be alone in its class "
                        "without being stably balanced.\n");
            std::printf("       forward direction (stably balanced => unique in class): %s "
                        "(%lld failure(s))\n",
                        forward_failures.load() == 0 ? "holds" : "FAILS",
                        forward_failures.load());
            std::printf("       biconditional restricted to stable graphs: %s (%lld "
                        "failure(s))\n",
                        stable_only_failures.load() == 0 ? "holds" : "FAILS",
                        stable_only_failures.load());
        }
    }

    // Criterion 9: stratum containment equals corpus-level set containment,
    // and the lattice is the divisor poset.
    {
        auto start = std::chrono::steady_clock::now();
        FailureLog log;
        for (long long g = 2; g <= 6; ++g) {
            std::vector<const DualGraph*> corpus_g;
            for (const DualGraph& graph : stable_corpus)
                if (graph.arithmetic_genus() == g) corpus_g.push_back(&graph);
            const long long d_max = 4 * g;
            std::vector<std::vector<bool>> special(
                static_cast<size_t>(d_max + 1),
                std::vector<bool>(corpus_g.size(), false));
            std::vector<long long> degrees(static_cast<size_t>(d_max + 1));
            std::iota(degrees.begin(), degrees.end(), 0);
            parallel_for(degrees.size(), threads, [&](std::size_t di) {
                const long long d = degrees[di];
                for (size_t i = 0; i < corpus_g.size(); ++i)
                    special[di][i] = !is_d_general(*corpus_g[i], d, DGeneralMethod::Criterion);
            });
            for (long long d = 0; d <= d_max; ++d)
                for (long long d2 = 0; d2 <= d_max; ++d2) {
                    bool subset = true;
                    for (size_t i = 0; i < corpus_g.size() && subset; ++i)
                        if (special[static_cast<size_t>(d)][i] &&
                            !special[static_cast<size_t>(d2)][i])
                            subset = false;
                    if (stratum_containment(g, d, d2) != subset) {
                        log.add("g=" + std::to_string(g) + " d=" + std::to_string(d) +
                                " d2=" + std::to_string(d2) + ": containment mismatch");
                    }
                }
            StratumLattice lat = divisor_lattice(g);
            if (lat.nodes().front() != 1 || lat.nodes().back() != 2 * g - 2)
                log.add("lattice extremes wrong at g=" + std::to_string(g));
            for (long long m : lat.nodes()) {
                if ((2 * g - 2) % m != 0) log.add("non-divisor lattice node");
                for (long long mp : lat.nodes())
                    if (lat.contains(m, mp) != (m % mp == 0))
                        log.add("lattice containment is not reverse divisibility");
            }
        }
        report(9, "stratum order matches corpus containment for g in [2,6], d in [0,4g]; "
                  "lattice = divisor poset",
               log, seconds_since(start));
    }

    // Criterion 10: the oracle sweep is clean and the suite is fast enough.
    {
        auto start = std::chrono::steady_clock::now();
        FailureLog log;
        VerifyReport rep = verify_corpus({3, 4, 6, StabilityFilter::Any}, {}, threads);
        if (!rep.ok())
            log.add("oracle-verify found a disagreement in " +
                    rep.first_disagreement->check);
        const double total = seconds_since(suite_start);
        if (total >= 600.0)
            log.add("suite took " + std::to_string(total) + "s (>= 600s)");
        report(10, "oracle-verify sweep clean; full suite under 10 minutes", log,
               seconds_since(start));
    }

    const double total = seconds_since(suite_start);
    std::printf("%s - %d criterion failure(s), %.1fs total\n",
                failures_total == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                failures_total, total);
    return failures_total == 0 ? 0 : 1;
}
