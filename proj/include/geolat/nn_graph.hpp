#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "geolat/error.hpp"
#include "geolat/network.hpp"

namespace geolat {

/// Directed nearest-neighbor graph: each node has in-edges from k-1 other
/// nodes holding its k-1 least RTTs. in_neighbors[i] is sorted ascending.
class NearestNeighborGraph {
public:
    std::size_t k() const noexcept { return k_; }
    std::size_t size() const noexcept { return in_.size(); }
    const std::vector<NodeId>& in_neighbors(NodeId i) const { return in_.at(i); }
    const std::vector<std::vector<NodeId>>& all_in_neighbors() const noexcept { return in_; }

    bool has_edge(NodeId from, NodeId to) const
    {
        const auto& v = in_.at(to);
        return std::binary_search(v.begin(), v.end(), from);
    }

    /// Checks the in-neighbor sets against the network and wraps them.
    static NearestNeighborGraph from_in_neighbors(const Network& net, std::size_t k, std::vector<std::vector<NodeId>> in)
    {
        const std::size_t n = net.size();
        check_k(k, n);
        if (in.size() != n) {
            fail(ErrorCode::DimensionMismatch, "in-neighbor list size differs from node count");
        }
        const auto profile = lambda_profile(net);
        for (NodeId i = 0; i < n; ++i) {
            auto& s = in[i];
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
                fail(ErrorCode::InvalidArgument, "duplicate in-neighbor at node " + net.name(i));
            }
            if (s.size() != k - 1) {
                fail(ErrorCode::InvalidArgument, "node " + net.name(i) + " needs exactly k-1 in-neighbors");
            }
            const Millis& threshold = profile.values[i][k - 1];
            for (NodeId j : s) {
                if (j >= n || j == i) {
                    fail(ErrorCode::InvalidArgument, "bad in-neighbor at node " + net.name(i));
                }
                if (net.rtt(j, i) > threshold) {
                    fail(ErrorCode::InvalidArgument, net.name(j) + " is not among the k-1 nearest of " + net.name(i));
                }
            }
            for (NodeId j = 0; j < n; ++j) {
                if (j != i && net.rtt(j, i) < threshold && !std::binary_search(s.begin(), s.end(), j)) {
                    fail(ErrorCode::InvalidArgument, net.name(j) + " is strictly nearer to " + net.name(i) + " but left out");
                }
            }
        }
        return NearestNeighborGraph(k, std::move(in));
    }

    friend bool operator==(const NearestNeighborGraph&, const NearestNeighborGraph&) = default;

private:
    NearestNeighborGraph(std::size_t k, std::vector<std::vector<NodeId>> in)
        : k_(k)
        , in_(std::move(in))
    {
    }

    friend struct NnGraphBuilder;

    std::size_t k_ = 1;
    std::vector<std::vector<NodeId>> in_;
};

struct NnGraphSet {
    std::vector<NearestNeighborGraph> graphs;
    /// true when more tie variants exist than the cap allowed.
    bool truncated = false;
    /// Number of variants that exist in total (saturates at UINT64_MAX).
    std::uint64_t total_variants = 0;
};

inline constexpr std::size_t kDefaultVariantCap = 64;

namespace detail {

// All size-r subsets of {0..m-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t m, std::size_t r)
{
    std::vector<std::vector<std::size_t>> out;
    if (r > m) {
        return out;
    }
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        std::size_t pos = r;
        while (pos > 0 && idx[pos - 1] == m - r + (pos - 1)) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t q = pos; q < r; ++q) idx[q] = idx[q - 1] + 1;
    }
    return out;
}

inline std::uint64_t binomial_saturating(std::uint64_t m, std::uint64_t r)
{
    if (r > m) return 0;
    r = std::min(r, m - r);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (m - r + i) / i;
        if (acc > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(acc);
}

} // namespace detail

struct NnGraphBuilder {
    static NearestNeighborGraph make(std::size_t k, std::vector<std::vector<NodeId>> in)
    {
        for (auto& s : in) std::sort(s.begin(), s.end());
        return NearestNeighborGraph(k, std::move(in));
    }
};

/// Every nearest-neighbor graph the RTT ties allow. Per node, the nodes
/// strictly closer than the (k-1)-th least RTT are forced; the remaining
/// slots are filled from the tied nodes. Variants enumerate the Cartesian
/// product of per-node choices with node 0 varying slowest.
inline NnGraphSet build_nn_graphs(const Network& net, std::size_t k, std::size_t cap = kDefaultVariantCap)
{
    const std::size_t n = net.size();
    check_k(k, n);
    if (cap < 1) {
        fail(ErrorCode::InvalidArgument, "variant cap must be at least 1");
    }
    const auto profile = lambda_profile(net);

    std::vector<std::vector<NodeId>> forced(n);
    std::vector<std::vector<std::vector<NodeId>>> choices(n);
    NnGraphSet result;
    result.total_variants = 1;
    for (NodeId i = 0; i < n; ++i) {
        if (k == 1) {
            choices[i].push_back({});
            continue;
        }
        const Millis& threshold = profile.values[i][k - 1];
        std::vector<NodeId> tied;
        for (NodeId t : profile.order[i]) {
            if (t == i) continue;
            if (net.rtt(t, i) < threshold) {
                forced[i].push_back(t);
            } else if (net.rtt(t, i) == threshold) {
                tied.push_back(t);
            }
        }
        std::sort(tied.begin(), tied.end());
        const std::size_t slots = k - 1 - forced[i].size();
        for (const auto& combo : detail::combinations(tied.size(), slots)) {
            std::vector<NodeId> pick;
            pick.reserve(slots);
            for (auto c : combo) pick.push_back(tied[c]);
            choices[i].push_back(std::move(pick));
        }
        const auto count = detail::binomial_saturating(tied.size(), slots);
        const unsigned __int128 prod = static_cast<unsigned __int128>(result.total_variants) * count;
        result.total_variants = prod > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(prod);
    }

    std::vector<std::size_t> odometer(n, 0);
    while (true) {
        if (result.graphs.size() == cap) {
            result.truncated = result.total_variants > cap;
            break;
        }
        std::vector<std::vector<NodeId>> in(n);
        for (NodeId i = 0; i < n; ++i) {
            in[i] = forced[i];
            const auto& extra = choices[i][odometer[i]];
            in[i].insert(in[i].end(), extra.begin(), extra.end());
        }
        result.graphs.push_back(NnGraphBuilder::make(k, std::move(in)));

        bool advanced = false;
        for (std::size_t pos = n; pos-- > 0;) {
            if (++odometer[pos] < choices[pos].size()) {
                advanced = true;
                break;
            }
            odometer[pos] = 0;
        }
        if (!advanced) break;
    }
    return result;
}

/// Nodes that list t as an in-neighbor (the targets of t's out-edges).
inline std::vector<NodeId> receive_set(const NearestNeighborGraph& g, NodeId t)
{
    if (t >= g.size()) {
        fail(ErrorCode::UnknownNode, "node index " + std::to_string(t));
    }
    std::vector<NodeId> out;
    for (NodeId j = 0; j < g.size(); ++j) {
        if (g.has_edge(t, j)) out.push_back(j);
    }
    return out;
}

/// Simple undirected graph over nodes 0..n-1 with an adjacency matrix.
class UndirectedGraph {
public:
    explicit UndirectedGraph(std::size_t n = 0)
        : n_(n)
        , adj_(n * n, 0)
        , nbrs_(n)
    {
    }

    std::size_t size() const noexcept { return n_; }

    void add_edge(NodeId u, NodeId v)
    {
        if (u == v || adjacent(u, v)) return;
        adj_[u * n_ + v] = adj_[v * n_ + u] = 1;
        nbrs_[u].insert(std::upper_bound(nbrs_[u].begin(), nbrs_[u].end(), v), v);
        nbrs_[v].insert(std::upper_bound(nbrs_[v].begin(), nbrs_[v].end(), u), u);
    }

    bool adjacent(NodeId u, NodeId v) const { return adj_[u * n_ + v] != 0; }
    const std::vector<NodeId>& neighbors(NodeId u) const { return nbrs_[u]; }
    std::size_t degree(NodeId u) const { return nbrs_[u].size(); }

    std::size_t edge_count() const
    {
        std::size_t e = 0;
        for (const auto& v : nbrs_) e += v.size();
        return e / 2;
    }

    /// Edges as (u, v) with u < v, lexicographic.
    std::vector<std::pair<NodeId, NodeId>> edges() const
    {
        std::vector<std::pair<NodeId, NodeId>> out;
        for (NodeId u = 0; u < n_; ++u) {
            for (NodeId v : nbrs_[u]) {
                if (u < v) out.emplace_back(u, v);
            }
        }
        return out;
    }

    bool is_clique(const std::vector<NodeId>& nodes) const
    {
        for (std::size_t a = 0; a < nodes.size(); ++a) {
            for (std::size_t b = a + 1; b < nodes.size(); ++b) {
                if (!adjacent(nodes[a], nodes[b])) return false;
            }
        }
        return true;
    }

    friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

private:
    std::size_t n_;
    std::vector<std::uint8_t> adj_;
    std::vector<std::vector<NodeId>> nbrs_;
};

using ExtendedGraph = UndirectedGraph;

/// Undirected closure of g: every directed edge, plus an edge between any two
/// nodes that are in-neighbors of a common node.
inline ExtendedGraph extend(const NearestNeighborGraph& g)
{
    ExtendedGraph h(g.size());
    for (NodeId i = 0; i < g.size(); ++i) {
        const auto& in = g.in_neighbors(i);
        for (std::size_t a = 0; a < in.size(); ++a) {
            h.add_edge(in[a], i);
            for (std::size_t b = a + 1; b < in.size(); ++b) {
                h.add_edge(in[a], in[b]);
            }
        }
    }
    return h;
}

} // namespace geolat
