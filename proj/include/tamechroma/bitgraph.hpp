#ifndef TAMECHROMA_BITGRAPH_HPP
#define TAMECHROMA_BITGRAPH_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "tamechroma/errors.hpp"

namespace tamechroma {

// Fixed 256-bit set; vertex universe for all desk-scale graph work.
struct BitSet256 {
    std::array<std::uint64_t, 4> w{0, 0, 0, 0};

    static BitSet256 first_n(int n) {
        BitSet256 s;
        for (int i = 0; i < n; ++i) s.set(i);
        return s;
    }
    void set(int i) { w[i >> 6] |= 1ULL << (i & 63); }
    void reset(int i) { w[i >> 6] &= ~(1ULL << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    int count() const {
        return std::popcount(w[0]) + std::popcount(w[1]) + std::popcount(w[2]) +
               std::popcount(w[3]);
    }
    bool any() const { return (w[0] | w[1] | w[2] | w[3]) != 0; }
    bool none() const { return !any(); }
    int lowest() const {  // -1 when empty
        for (int b = 0; b < 4; ++b)
            if (w[b]) return 64 * b + std::countr_zero(w[b]);
        return -1;
    }
    bool intersects(const BitSet256& o) const {
        return (w[0] & o.w[0]) | (w[1] & o.w[1]) | (w[2] & o.w[2]) | (w[3] & o.w[3]);
    }
    bool is_subset_of(const BitSet256& o) const {
        return !((w[0] & ~o.w[0]) | (w[1] & ~o.w[1]) | (w[2] & ~o.w[2]) | (w[3] & ~o.w[3]));
    }
    friend BitSet256 operator&(const BitSet256& a, const BitSet256& b) {
        BitSet256 r;
        for (int i = 0; i < 4; ++i) r.w[i] = a.w[i] & b.w[i];
        return r;
    }
    friend BitSet256 operator|(const BitSet256& a, const BitSet256& b) {
        BitSet256 r;
        for (int i = 0; i < 4; ++i) r.w[i] = a.w[i] | b.w[i];
        return r;
    }
    friend BitSet256 operator~(const BitSet256& a) {
        BitSet256 r;
        for (int i = 0; i < 4; ++i) r.w[i] = ~a.w[i];
        return r;
    }
    BitSet256 minus(const BitSet256& o) const {
        BitSet256 r;
        for (int i = 0; i < 4; ++i) r.w[i] = w[i] & ~o.w[i];
        return r;
    }
    friend bool operator==(const BitSet256& a, const BitSet256& b) { return a.w == b.w; }

    template <typename F>
    void for_each(F&& f) const {
        for (int b = 0; b < 4; ++b) {
            std::uint64_t x = w[b];
            while (x) {
                f(64 * b + std::countr_zero(x));
                x &= x - 1;
            }
        }
    }
};

// Undirected graph on at most 256 vertices as adjacency bitsets.
struct BitGraph {
    int n = 0;
    std::vector<BitSet256> adj;

    explicit BitGraph(int n_ = 0) : n(n_), adj(n_) {
        if (n_ < 0 || n_ > 256) throw domain_error("BitGraph: require 0 <= n <= 256");
    }
    void add_edge(int u, int v) {
        if (u == v) throw domain_error("BitGraph: self-loop");
        adj[u].set(v);
        adj[v].set(u);
    }
    bool has_edge(int u, int v) const { return adj[u].test(v); }
    long long edge_count() const {
        long long s = 0;
        for (int v = 0; v < n; ++v) s += adj[v].count();
        return s / 2;
    }
    BitGraph complement() const {
        BitGraph g(n);
        BitSet256 all = BitSet256::first_n(n);
        for (int v = 0; v < n; ++v) {
            g.adj[v] = all.minus(adj[v]);
            g.adj[v].reset(v);
        }
        return g;
    }
    bool independent(const BitSet256& s) const {
        bool ok = true;
        s.for_each([&](int v) {
            if (adj[v].intersects(s)) ok = false;
        });
        return ok;
    }
};

// Ordered partition of (a subset of) the vertex set; parts are disjoint and
// sizes non-increasing. May be partial.
struct OrderedPartition {
    std::vector<BitSet256> parts;

    explicit OrderedPartition(std::vector<BitSet256> p = {}) : parts(std::move(p)) {
        BitSet256 seen;
        int prev = 1 << 30;
        for (const auto& part : parts) {
            if (part.none()) throw domain_error("OrderedPartition: empty part");
            if (seen.intersects(part)) throw domain_error("OrderedPartition: parts overlap");
            seen = seen | part;
            int sz = part.count();
            if (sz > prev) throw domain_error("OrderedPartition: sizes must be non-increasing");
            prev = sz;
        }
    }
    BitSet256 covered() const {
        BitSet256 s;
        for (const auto& p : parts) s = s | p;
        return s;
    }
    std::map<int, long long> profile_counts() const {
        std::map<int, long long> c;
        for (const auto& p : parts) ++c[p.count()];
        return c;
    }
};

} // namespace tamechroma

#endif
