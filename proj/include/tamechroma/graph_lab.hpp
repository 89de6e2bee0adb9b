#ifndef TAMECHROMA_GRAPH_LAB_HPP
#define TAMECHROMA_GRAPH_LAB_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tamechroma/bitgraph.hpp"
#include "tamechroma/logreal.hpp"
#include "tamechroma/profiles.hpp"
#include "tamechroma/second_moment.hpp"

namespace tamechroma {

// Deterministic samplers (SplitMix64 counter RNG, see rng.hpp).
BitGraph sample_gnp(int n, double p, std::uint64_t seed);
BitGraph sample_gnm(int n, long long m, std::uint64_t seed);

// Exact independence number via branch and bound (max clique in the
// complement with greedy-colouring pruning).
int independence_number(const BitGraph& g);

struct ChiResult {
    int chi;           // best colouring found (exact when exact == true)
    bool exact;
    int lower, upper;  // certified bounds when inexact
    long long nodes;
};

// Exact t-bounded chromatic number by branch and bound: vertices in
// degeneracy order (ties by index), colour classes capped at t vertices,
// symmetry breaking by new-class index, slot-count and clique pruning.
ChiResult chi_bounded(const BitGraph& g, int t, long long node_budget = 400000000LL);

// Exact count of colourings of g with the given profile (n <= 20 for the
// 64-bit counts; intended for n <= 12). Partial profiles choose their
// covered vertex set too.
long long count_colourings(const BitGraph& g, const Profile& pr, bool ordered);

// Number of parts of pi that S intersects. S must lie inside the covered
// vertex set of pi.
int z_composed(const BitSet256& S, const OrderedPartition& pi);

struct EventOptions {
    int u_star;
    int a;
    int alpha;
    bool sample = false;            // fall back to sampled sets when enumeration is too big
    long long budget = 50000000LL;  // enumeration node budget
    long long samples = 100000;     // sampled mode attempts
    std::uint64_t seed = 1;
};

struct EventReport {
    bool A = false, B = false, C = false, D = false;
    long long d_count = 0;      // sets counted against the D threshold
    long long d_threshold = 0;  // ceil(ln^3 n)
    bool sampled = false;       // results from sampling, not exhaustive enumeration
    long long sets_seen = 0;
};

EventReport check_events(const BitGraph& g, const OrderedPartition& pi,
                         const EventOptions& opt);

// Fact-style five-way classification of the parts of pi against pi2.
enum class PartCase { identical, scrambled, exc_inside, exc_contains, exc_swap };

struct PartLabel {
    PartCase label;
    int cases_matched;  // how many of the five predicates hold (exclusivity diagnostics)
};

std::vector<PartLabel> classify_parts(const OrderedPartition& pi, const OrderedPartition& pi2,
                                      int alpha);

// Relevance conditions a)1-3 and their swapped versions.
bool is_relevant(const OrderedPartition& pi, const OrderedPartition& pi2, int alpha,
                 long long n);

// Extract ell and r from a pair of same-profile partitions.
OverlapSpec overlap_of(const OrderedPartition& pi, const OrderedPartition& pi2, long long n,
                       int alpha);

struct McResult {
    LogReal mean;
    double ci_lo = 0.0, ci_hi = 0.0;  // normal-approximation CI at the given z
    double sample_sd = 0.0;
    long long samples = 0;
};

// Monte Carlo estimate of E[X_k] (ordered) or E[X-bar_k]; deterministic
// given seed. Batches may run in parallel (TAMECHROMA_THREADS) with
// per-sample derived seeds; results are merged in batch order.
McResult mc_expectation(const GraphParams& params, Model model, const Profile& pr,
                        long long samples, std::uint64_t seed, bool ordered = true,
                        double z = 1.96);

// Graph file: "# n=<n>" header then "u v" edge lines, 0-indexed.
void write_graph(std::ostream& os, const BitGraph& g);
BitGraph read_graph(std::istream& is);
// Partition file: one part per line, space-separated vertex ids.
void write_partition(std::ostream& os, const OrderedPartition& pi);
OrderedPartition read_partition(std::istream& is);

} // namespace tamechroma

#endif
