#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "geolat/error.hpp"
#include "geolat/rational.hpp"

namespace geolat {

using NodeId = std::size_t;
using RttMatrix = std::vector<std::vector<Millis>>;

/// A storage network: named nodes and a symmetric, zero-diagonal,
/// non-negative RTT matrix. Only constructible through validate_network.
class Network {
public:
    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::string& name(NodeId i) const { return names_.at(i); }
    const RttMatrix& rtt() const noexcept { return rtt_; }
    const Millis& rtt(NodeId a, NodeId b) const { return rtt_[a][b]; }

    NodeId index_of(const std::string& node) const
    {
        const auto it = std::find(names_.begin(), names_.end(), node);
        if (it == names_.end()) {
            fail(ErrorCode::UnknownNode, "no node named '" + node + "'");
        }
        return static_cast<NodeId>(it - names_.begin());
    }

    friend bool operator==(const Network&, const Network&) = default;

private:
    Network(std::vector<std::string> names, RttMatrix rtt)
        : names_(std::move(names))
        , rtt_(std::move(rtt))
    {
    }

    friend Network validate_network(std::vector<std::string> names, RttMatrix rtt);

    std::vector<std::string> names_;
    RttMatrix rtt_;
};

inline Network validate_network(std::vector<std::string> names, RttMatrix rtt)
{
    const std::size_t n = names.size();
    if (n == 0) {
        fail(ErrorCode::EmptyNetwork, "network needs at least one node");
    }
    if (rtt.size() != n) {
        fail(ErrorCode::DimensionMismatch,
             std::to_string(n) + " node names but " + std::to_string(rtt.size()) + " matrix rows");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (rtt[i].size() != n) {
            fail(ErrorCode::DimensionMismatch,
                 "row " + std::to_string(i) + " has " + std::to_string(rtt[i].size()) + " entries, expected " + std::to_string(n));
        }
    }
    std::set<std::string> seen;
    for (const auto& nm : names) {
        if (!seen.insert(nm).second) {
            fail(ErrorCode::DuplicateNodeName, "node name '" + nm + "' appears twice");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (rtt[i][i] != 0) {
            fail(ErrorCode::NonzeroDiagonal, "rtt[" + names[i] + "][" + names[i] + "] = " + to_exact_string(rtt[i][i]));
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (rtt[i][j] < 0) {
                fail(ErrorCode::NegativeRTT, "rtt[" + names[i] + "][" + names[j] + "] = " + to_exact_string(rtt[i][j]));
            }
            if (j > i && rtt[i][j] != rtt[j][i]) {
                fail(ErrorCode::AsymmetricRTT,
                     "rtt(" + names[i] + "," + names[j] + ") = " + to_exact_string(rtt[i][j]) + " but rtt(" + names[j] + "," + names[i]
                         + ") = " + to_exact_string(rtt[j][i]));
            }
        }
    }
    return Network(std::move(names), std::move(rtt));
}

/// A triple (a, b, c) with rtt(a,c) > rtt(a,b) + rtt(b,c), if one exists.
struct TriangleViolation {
    NodeId from;
    NodeId via;
    NodeId to;
};

inline std::optional<TriangleViolation> find_triangle_violation(const Network& net)
{
    const std::size_t n = net.size();
    for (NodeId a = 0; a < n; ++a) {
        for (NodeId c = a + 1; c < n; ++c) {
            for (NodeId b = 0; b < n; ++b) {
                if (net.rtt(a, c) > net.rtt(a, b) + net.rtt(b, c)) {
                    return TriangleViolation{a, b, c};
                }
            }
        }
    }
    return std::nullopt;
}

/// Replaces each RTT with the least total RTT over any multi-hop path.
inline Network reduce_multihop(const Network& net)
{
    RttMatrix d = net.rtt();
    const std::size_t n = net.size();
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (d[i][m] + d[m][j] < d[i][j]) {
                    d[i][j] = d[i][m] + d[m][j];
                }
            }
        }
    }
    return validate_network(net.names(), std::move(d));
}

/// Per node, the RTTs from every node (itself included) sorted ascending.
/// order[i][m] is the node realising values[i][m]; ties go to the lower index.
struct LambdaProfile {
    std::vector<std::vector<Millis>> values;
    std::vector<std::vector<NodeId>> order;

    std::size_t size() const noexcept { return values.size(); }
};

inline LambdaProfile lambda_profile(const Network& net)
{
    const std::size_t n = net.size();
    LambdaProfile p;
    p.values.resize(n);
    p.order.resize(n);
    for (NodeId i = 0; i < n; ++i) {
        auto& ord = p.order[i];
        ord.resize(n);
        std::iota(ord.begin(), ord.end(), NodeId{0});
        std::stable_sort(ord.begin(), ord.end(), [&](NodeId a, NodeId b) { return net.rtt(a, i) < net.rtt(b, i); });
        // self sits first among the zero entries so that order[i][0] == i
        const auto self = std::find(ord.begin(), ord.end(), i);
        std::rotate(ord.begin(), self, self + 1);
        p.values[i].reserve(n);
        for (NodeId t : ord) {
            p.values[i].push_back(net.rtt(t, i));
        }
    }
    return p;
}

/// Least achievable per-node worst-case latency: the (k-1)-th smallest RTT.
inline Millis worstcase_lower_bound(const LambdaProfile& profile, std::size_t k, NodeId i)
{
    check_k(k, profile.size());
    if (i >= profile.size()) {
        fail(ErrorCode::UnknownNode, "node index " + std::to_string(i));
    }
    return profile.values[i][k - 1];
}

/// Least achievable system average latency: mean of the k smallest RTTs
/// (including the zero self-distance) over all nodes.
inline Millis avg_latency_lower_bound(const LambdaProfile& profile, std::size_t k)
{
    const std::size_t n = profile.size();
    check_k(k, n);
    Millis sum = 0;
    for (const auto& row : profile.values) {
        for (std::size_t m = 0; m < k; ++m) {
            sum += row[m];
        }
    }
    return sum / static_cast<std::int64_t>(k * n);
}

} // namespace geolat
