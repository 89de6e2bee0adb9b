#include "tamechroma/graph_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "tamechroma/errors.hpp"
#include "tamechroma/rng.hpp"

namespace tamechroma {

namespace {

std::pair<int, int> edge_from_index(long long e) {
    // row-major over pairs (u,v), u < v: index = C(v,2) + u
    long long v = static_cast<long long>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(e))) / 2.0);
    while (v * (v - 1) / 2 > e) --v;
    while ((v + 1) * v / 2 <= e) ++v;
    long long u = e - v * (v - 1) / 2;
    return {static_cast<int>(u), static_cast<int>(v)};
}

} // namespace

BitGraph sample_gnp(int n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw domain_error("sample_gnp: require 0 <= p <= 1");
    BitGraph g(n);
    CounterRng rng{seed};
    long long e = 0;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u, ++e)
            if (static_cast<double>(rng.at(e) >> 11) * 0x1.0p-53 < p) g.add_edge(u, v);
    return g;
}

BitGraph sample_gnm(int n, long long m, std::uint64_t seed) {
    long long N = static_cast<long long>(n) * (n - 1) / 2;
    if (m < 0 || m > N) throw domain_error("sample_gnm: require 0 <= m <= N");
    // partial Fisher-Yates over edge indices
    std::vector<long long> idx(N);
    for (long long i = 0; i < N; ++i) idx[i] = i;
    CounterRng rng{seed};
    BitGraph g(n);
    for (long long i = 0; i < m; ++i) {
        long long j = i + static_cast<long long>(rng.at(i) % static_cast<std::uint64_t>(N - i));
        std::swap(idx[i], idx[j]);
        auto [u, v] = edge_from_index(idx[i]);
        g.add_edge(u, v);
    }
    return g;
}

namespace {

// Tomita-style max clique with greedy colouring bound; used on the
// complement for the independence number.
struct MaxClique {
    const BitGraph& g;
    int best = 0;

    explicit MaxClique(const BitGraph& graph) : g(graph) {}

    void expand(std::vector<int>& candidates, int depth) {
        while (!candidates.empty()) {
            // greedy colouring of the candidate subgraph, vertices sorted by colour
            std::vector<int> order, colour;
            colour_sort(candidates, order, colour);
            int v = order.back();
            int c = colour.back();
            if (depth + c <= best) return;
            order.pop_back();
            colour.pop_back();
            std::vector<int> next;
            for (int w : order)
                if (g.has_edge(v, w)) next.push_back(w);
            if (depth + 1 > best) best = depth + 1;
            if (!next.empty()) expand(next, depth + 1);
            candidates.erase(std::find(candidates.begin(), candidates.end(), v));
        }
    }

    void colour_sort(const std::vector<int>& cand, std::vector<int>& order,
                     std::vector<int>& colour) {
        std::vector<BitSet256> classes;
        for (int v : cand) {
            bool placed = false;
            for (std::size_t j = 0; j < classes.size() && !placed; ++j)
                if (!g.adj[v].intersects(classes[j])) {
                    classes[j].set(v);
                    placed = true;
                }
            if (!placed) {
                classes.emplace_back();
                classes.back().set(v);
            }
        }
        for (std::size_t j = 0; j < classes.size(); ++j)
            classes[j].for_each([&](int v) {
                order.push_back(v);
                colour.push_back(static_cast<int>(j) + 1);
            });
    }
};

} // namespace

int independence_number(const BitGraph& g) {
    if (g.n == 0) return 0;
    BitGraph h = g.complement();
    MaxClique mc(h);
    std::vector<int> cand(h.n);
    for (int v = 0; v < h.n; ++v) cand[v] = v;
    mc.expand(cand, 0);
    return mc.best;
}

namespace {

std::vector<int> degeneracy_order(const BitGraph& g) {
    // smallest-last: repeatedly remove a min-degree vertex, then reverse
    std::vector<int> deg(g.n), removal;
    BitSet256 alive = BitSet256::first_n(g.n);
    for (int v = 0; v < g.n; ++v) deg[v] = g.adj[v].count();
    for (int step = 0; step < g.n; ++step) {
        int best = -1;
        alive.for_each([&](int v) {
            if (best == -1 || deg[v] < deg[best]) best = v;
        });
        removal.push_back(best);
        alive.reset(best);
        (g.adj[best] & alive).for_each([&](int w) { --deg[w]; });
    }
    std::reverse(removal.begin(), removal.end());
    return removal;
}

struct ChiSearch {
    const BitGraph& g;
    int t;
    long long budget;
    std::vector<int> order;
    std::vector<BitSet256> classes;
    std::vector<int> class_size;
    int best;
    int lb;
    long long nodes = 0;
    bool exhausted = false;

    ChiSearch(const BitGraph& graph, int bound, long long node_budget)
        : g(graph), t(bound), budget(node_budget) {}

    // lower bound on final class count from remaining vertices vs open slots
    int slot_bound(int used, int rem) const {
        int free_slots = 0;
        for (int j = 0; j < used; ++j) free_slots += t - class_size[j];
        int extra = rem > free_slots ? (rem - free_slots + t - 1) / t : 0;
        return used + extra;
    }

    void dfs(int pos, int used) {
        if (++nodes > budget) {
            exhausted = true;
            return;
        }
        if (pos == g.n) {
            best = used;
            return;
        }
        if (best <= lb) return;
        if (slot_bound(used, g.n - pos) >= best) return;
        int v = order[pos];
        for (int j = 0; j < used && !exhausted; ++j) {
            if (class_size[j] >= t) continue;
            if (g.adj[v].intersects(classes[j])) continue;
            classes[j].set(v);
            ++class_size[j];
            dfs(pos + 1, used);
            --class_size[j];
            classes[j].reset(v);
            if (best <= lb) return;
        }
        if (used + 1 < best && !exhausted) {  // open a new class (index used, symmetry-broken)
            classes[used].set(v);
            class_size[used] = 1;
            dfs(pos + 1, used + 1);
            class_size[used] = 0;
            classes[used].reset(v);
        }
    }
};

int greedy_chi_bounded(const BitGraph& g, int t, const std::vector<int>& order) {
    std::vector<BitSet256> classes;
    std::vector<int> sizes;
    for (int v : order) {
        bool placed = false;
        for (std::size_t j = 0; j < classes.size() && !placed; ++j)
            if (sizes[j] < t && !g.adj[v].intersects(classes[j])) {
                classes[j].set(v);
                ++sizes[j];
                placed = true;
            }
        if (!placed) {
            classes.emplace_back();
            classes.back().set(v);
            sizes.push_back(1);
        }
    }
    return static_cast<int>(classes.size());
}

int greedy_clique(const BitGraph& g) {
    int best = 0;
    for (int s = 0; s < g.n; ++s) {
        BitSet256 cand = g.adj[s];
        BitSet256 clique;
        clique.set(s);
        int size = 1;
        while (cand.any()) {
            // pick the candidate with most neighbours among candidates
            int pick = -1, pick_deg = -1;
            cand.for_each([&](int v) {
                int d = (g.adj[v] & cand).count();
                if (d > pick_deg) {
                    pick_deg = d;
                    pick = v;
                }
            });
            clique.set(pick);
            ++size;
            cand = cand & g.adj[pick];
        }
        best = std::max(best, size);
    }
    return best;
}

} // namespace

ChiResult chi_bounded(const BitGraph& g, int t, long long node_budget) {
    if (t < 1) throw domain_error("chi_bounded: require t >= 1");
    if (g.n == 0) return {0, true, 0, 0, 0};
    if (t == 1) return {g.n, true, g.n, g.n, 0};
    auto order = degeneracy_order(g);
    int ub = greedy_chi_bounded(g, t, order);
    int lb = std::max((g.n + t - 1) / t, greedy_clique(g));
    if (lb >= ub) return {ub, true, ub, ub, 0};
    ChiSearch s(g, t, node_budget);
    s.order = order;
    s.classes.resize(g.n);
    s.class_size.assign(g.n, 0);
    s.best = ub;
    s.lb = lb;
    s.dfs(0, 0);
    if (s.exhausted) return {s.best, false, lb, s.best, s.nodes};
    return {s.best, true, s.best, s.best, s.nodes};
}

namespace {

// canonical enumeration: the lowest unplaced vertex anchors the next class
struct ColouringCounter {
    const BitGraph& g;
    std::map<int, long long> remaining;  // size -> classes still to place
    long long count = 0;

    explicit ColouringCounter(const BitGraph& graph) : g(graph) {}

    void place(BitSet256 unused) {
        if (unused.none()) {
            ++count;
            return;
        }
        int v = unused.lowest();
        for (auto& [u, cnt] : remaining) {
            if (cnt == 0) continue;
            --cnt;
            BitSet256 start;
            start.set(v);
            BitSet256 allowed = unused;
            allowed.reset(v);
            allowed = allowed.minus(g.adj[v]);
            // keep only vertices above v to generate each set once
            grow(start, u - 1, allowed, unused, v);
            ++cnt;
        }
    }

    void grow(BitSet256 cur, int need, BitSet256 allowed, BitSet256 unused, int last) {
        if (need == 0) {
            place(unused.minus(cur));
            return;
        }
        std::vector<int> opts;
        allowed.for_each([&](int w) {
            if (w > last) opts.push_back(w);
        });
        for (int w : opts) {
            BitSet256 next = cur;
            next.set(w);
            grow(next, need - 1, allowed.minus(g.adj[w]), unused, w);
        }
    }
};

} // namespace

long long count_colourings(const BitGraph& g, const Profile& pr, bool ordered) {
    if (g.n > 20) throw domain_error("count_colourings: n too large for exact enumeration");
    if (pr.n() != g.n) throw domain_error("count_colourings: profile n mismatch");
    long long unordered_total = 0;
    auto run_on = [&](const BitSet256& covered) {
        ColouringCounter cc(g);
        for (auto [u, c] : pr.entries()) cc.remaining[u] = c;
        cc.place(covered);
        return cc.count;
    };
    if (pr.complete()) {
        unordered_total = run_on(BitSet256::first_n(g.n));
    } else {
        // partial profile: choose the covered vertex set as well
        int cov = static_cast<int>(pr.coverage());
        std::vector<int> comb(cov);
        for (int i = 0; i < cov; ++i) comb[i] = i;
        while (true) {
            BitSet256 s;
            for (int v : comb) s.set(v);
            unordered_total += run_on(s);
            int i = cov - 1;
            while (i >= 0 && comb[i] == g.n - cov + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < cov; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    if (!ordered) return unordered_total;
    long long mult = 1;
    for (auto [u, c] : pr.entries())
        for (long long j = 2; j <= c; ++j) mult *= j;
    return unordered_total * mult;
}

int z_composed(const BitSet256& S, const OrderedPartition& pi) {
    if (!S.is_subset_of(pi.covered()))
        throw domain_error("z_composed: S contains a vertex not covered by the partition");
    int z = 0;
    for (const auto& part : pi.parts)
        if (part.intersects(S)) ++z;
    return z;
}

namespace {

struct EventScan {
    const BitGraph& g;
    const OrderedPartition& pi;
    const EventOptions& opt;
    EventReport rep;
    long long nodes = 0;
    bool over_budget = false;

    EventScan(const BitGraph& graph, const OrderedPartition& part, const EventOptions& options)
        : g(graph), pi(part), opt(options) {}

    void consider(const BitSet256& S, int size) {
        ++rep.sets_seen;
        int z = z_composed(S, pi);
        int lower = size - 2 * (opt.alpha - size) - 1;
        if (!(z <= 2 || z >= lower)) rep.B = false;
        if (z == 2) {
            int a_cnt = 0, b_cnt = 0;
            bool near_full_part = false;
            for (const auto& part : pi.parts) {
                int inter = (part & S).count();
                if (inter == 0) continue;
                if (inter == 1) ++a_cnt;
                if (inter == size - 1) ++b_cnt;
                if (inter >= part.count() - 1) near_full_part = true;
            }
            if (!(a_cnt >= 1 && b_cnt >= 1)) rep.C = false;
            if (near_full_part) ++rep.d_count;
        }
    }

    void dfs(BitSet256 cur, int size, BitSet256 allowed) {
        if (++nodes > opt.budget) {
            over_budget = true;
            return;
        }
        if (size >= opt.u_star) consider(cur, size);
        if (size == opt.a || over_budget) return;
        std::vector<int> opts;
        allowed.for_each([&](int w) { opts.push_back(w); });
        for (int w : opts) {
            BitSet256 next = cur;
            next.set(w);
            BitSet256 na = allowed.minus(g.adj[w]);
            // only vertices above w, each set generated once
            for (int x = 0; x <= w; ++x) na.reset(x);
            dfs(next, size + 1, na);
            if (over_budget) return;
        }
    }
};

} // namespace

EventReport check_events(const BitGraph& g, const OrderedPartition& pi,
                         const EventOptions& opt) {
    if (opt.u_star < 1 || opt.a < opt.u_star)
        throw domain_error("check_events: require 1 <= u_star <= a");
    EventScan scan(g, pi, opt);
    scan.rep.A = true;
    for (const auto& part : pi.parts)
        if (!g.independent(part)) scan.rep.A = false;
    scan.rep.B = scan.rep.C = true;
    double ln_n = std::log(static_cast<double>(g.n));
    scan.rep.d_threshold = static_cast<long long>(std::ceil(ln_n * ln_n * ln_n));

    if (!opt.sample) {
        for (int v = 0; v < g.n && !scan.over_budget; ++v) {
            BitSet256 cur;
            cur.set(v);
            BitSet256 allowed = BitSet256::first_n(g.n).minus(g.adj[v]);
            for (int x = 0; x <= v; ++x) allowed.reset(x);
            scan.dfs(cur, 1, allowed);
        }
        if (scan.over_budget)
            throw budget_exhausted(
                "check_events: enumeration budget exceeded; rerun with sampling enabled");
    } else {
        CounterRng rng{opt.seed};
        for (long long s = 0; s < opt.samples; ++s) {
            // greedy independent set from a random vertex order
            BitSet256 cur, allowed = BitSet256::first_n(g.n);
            int size = 0;
            while (allowed.any() && size < opt.a) {
                std::vector<int> opts;
                allowed.for_each([&](int w) { opts.push_back(w); });
                int w = opts[rng.next_below(opts.size())];
                cur.set(w);
                ++size;
                allowed = allowed.minus(g.adj[w]);
                allowed.reset(w);
                if (size >= opt.u_star) scan.consider(cur, size);
            }
        }
        scan.rep.sampled = true;
    }
    scan.rep.D = scan.rep.d_count <= scan.rep.d_threshold;
    return scan.rep;
}

std::vector<PartLabel> classify_parts(const OrderedPartition& pi, const OrderedPartition& pi2,
                                      int alpha) {
    std::vector<PartLabel> out;
    for (const auto& part : pi.parts) {
        int u = part.count();
        int z = 0;
        bool identical = false, inside = false, contains = false, swap_pair = false;
        for (const auto& q : pi2.parts) {
            BitSet256 inter = part & q;
            if (inter.none()) continue;
            ++z;
            if (q == part) identical = true;
            if (part.is_subset_of(q) && q.count() == u + 1) inside = true;
            if (q.is_subset_of(part) && q.count() == u - 1) contains = true;
            if (q.minus(part).count() == 1 && part.minus(q).count() == 1) swap_pair = true;
        }
        bool scrambled = z >= u - 2 * (alpha - u) - 1 && !identical;
        inside = inside && z == 1 && !identical;
        contains = contains && z == 2;
        int matched = static_cast<int>(identical) + static_cast<int>(scrambled) +
                      static_cast<int>(inside) + static_cast<int>(contains) +
                      static_cast<int>(swap_pair);
        PartCase label = PartCase::scrambled;
        if (identical)
            label = PartCase::identical;
        else if (inside)
            label = PartCase::exc_inside;
        else if (contains)
            label = PartCase::exc_contains;
        else if (swap_pair)
            label = PartCase::exc_swap;
        else if (scrambled)
            label = PartCase::scrambled;
        out.push_back({label, matched});
    }
    return out;
}

namespace {

bool relevant_one_way(const OrderedPartition& pi, const OrderedPartition& pi2, int alpha,
                      long long n) {
    double ln_n = std::log(static_cast<double>(n));
    long long d_limit = static_cast<long long>(std::ceil(ln_n * ln_n * ln_n));
    long long d_count = 0;
    for (const auto& q : pi2.parts) {
        int u = q.count();
        int z = 0;
        int singles = 0, big = 0;
        bool near_full = false;
        for (const auto& part : pi.parts) {
            int inter = (part & q).count();
            if (inter == 0) continue;
            ++z;
            if (inter == 1) ++singles;
            if (inter == u - 1) ++big;
            if (inter >= part.count() - 1) near_full = true;
        }
        if (!(z <= 2 || z >= u - 2 * (alpha - u) - 1)) return false;
        if (z == 2) {
            if (!(singles >= 1 && big >= 1)) return false;
            if (near_full) ++d_count;
        }
    }
    return d_count <= d_limit;
}

} // namespace

bool is_relevant(const OrderedPartition& pi, const OrderedPartition& pi2, int alpha,
                 long long n) {
    if (pi.profile_counts() != pi2.profile_counts())
        throw domain_error("is_relevant: partitions have different profiles");
    return relevant_one_way(pi, pi2, alpha, n) && relevant_one_way(pi2, pi, alpha, n);
}

OverlapSpec overlap_of(const OrderedPartition& pi, const OrderedPartition& pi2, long long n,
                       int alpha) {
    auto counts = pi.profile_counts();
    if (counts != pi2.profile_counts())
        throw domain_error("overlap_of: partitions have different profiles");
    int t = counts.empty() ? 1 : counts.rbegin()->first;
    Profile pr(n, t, counts);

    std::vector<bool> ident(pi.parts.size(), false), ident2(pi2.parts.size(), false);
    std::map<int, long long> ell;
    for (std::size_t i = 0; i < pi.parts.size(); ++i)
        for (std::size_t j = 0; j < pi2.parts.size(); ++j)
            if (!ident2[j] && pi.parts[i] == pi2.parts[j]) {
                ident[i] = ident2[j] = true;
                ++ell[pi.parts[i].count()];
                break;
            }
    std::map<std::tuple<int, int, int>, long long> r;
    for (std::size_t i = 0; i < pi.parts.size(); ++i) {
        if (ident[i]) continue;
        for (std::size_t j = 0; j < pi2.parts.size(); ++j) {
            if (ident2[j]) continue;
            int x = (pi.parts[i] & pi2.parts[j]).count();
            if (x >= 2) ++r[{x, pi.parts[i].count(), pi2.parts[j].count()}];
        }
    }
    return OverlapSpec(std::move(pr), std::move(ell), std::move(r));
}

namespace {

int thread_cap() {
    const char* env = std::getenv("TAMECHROMA_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    return v < 1 ? 1 : v;
}

} // namespace

McResult mc_expectation(const GraphParams& params, Model model, const Profile& pr,
                        long long samples, std::uint64_t seed, bool ordered, double z) {
    if (samples <= 0) throw domain_error("mc_expectation: require samples > 0");
    int n = static_cast<int>(params.n);
    if (n > 20) throw domain_error("mc_expectation: n too large for per-sample counting");
    int threads = static_cast<int>(std::min<long long>(thread_cap(), samples));
    std::vector<long double> sums(threads, 0.0L), sqs(threads, 0.0L);
    auto worker = [&](int b) {
        long long lo = samples * b / threads, hi = samples * (b + 1) / threads;
        long double s = 0.0L, s2 = 0.0L;
        for (long long i = lo; i < hi; ++i) {
            std::uint64_t si = CounterRng::mix(seed + static_cast<std::uint64_t>(i));
            BitGraph g = model == Model::gnp
                             ? sample_gnp(n, params.p, si)
                             : sample_gnm(n, static_cast<long long>(params.m), si);
            auto x = static_cast<long double>(count_colourings(g, pr, ordered));
            s += x;
            s2 += x * x;
        }
        sums[b] = s;
        sqs[b] = s2;
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int b = 0; b < threads; ++b) pool.emplace_back(worker, b);
        for (auto& th : pool) th.join();
    }
    long double sum = 0.0L, sq = 0.0L;
    for (int b = 0; b < threads; ++b) {
        sum += sums[b];
        sq += sqs[b];
    }
    double mean = static_cast<double>(sum / samples);
    double var = std::max(0.0, static_cast<double>(sq / samples) - mean * mean);
    double sd = std::sqrt(var * samples / std::max(1.0, samples - 1.0));
    double half = z * sd / std::sqrt(static_cast<double>(samples));
    McResult res;
    res.mean = LogReal::from_double(mean);
    res.ci_lo = mean - half;
    res.ci_hi = mean + half;
    res.sample_sd = sd;
    res.samples = samples;
    return res;
}

void write_graph(std::ostream& os, const BitGraph& g) {
    os << "# n=" << g.n << "\n";
    for (int v = 0; v < g.n; ++v)
        (g.adj[v]).for_each([&](int w) {
            if (w > v) os << v << " " << w << "\n";
        });
}

BitGraph read_graph(std::istream& is) {
    std::string line;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::size_t pn = line.find("n=");
            if (pn == std::string::npos) throw domain_error("read_graph: malformed header");
            n = std::stoi(line.substr(pn + 2));
            continue;
        }
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v)) throw domain_error("read_graph: malformed edge line: " + line);
        edges.emplace_back(u, v);
    }
    if (n < 0) throw domain_error("read_graph: missing header");
    BitGraph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

void write_partition(std::ostream& os, const OrderedPartition& pi) {
    for (const auto& part : pi.parts) {
        bool first = true;
        part.for_each([&](int v) {
            os << (first ? "" : " ") << v;
            first = false;
        });
        os << "\n";
    }
}

OrderedPartition read_partition(std::istream& is) {
    std::vector<BitSet256> parts;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        BitSet256 s;
        int v;
        while (ls >> v) s.set(v);
        if (s.any()) parts.push_back(s);
    }
    return OrderedPartition(std::move(parts));
}

} // namespace tamechroma
