#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "geolat/error.hpp"
#include "geolat/network.hpp"
#include "geolat/nn_graph.hpp"
#include "geolat/scheme.hpp"

namespace geolat {

/// How node `node` recovers W_file: sum of coefficient * X_helper.
struct DecodeStep {
    NodeId node = 0;
    FileIndex file = 1;
    std::vector<NodeId> helpers;   // ascending node index
    std::vector<Elem> coefficients; // non-zero, parallel to helpers
    Millis latency = 0;
};

/// Minimal wait-time for `node` to decode W_file: sweep the distinct RTT
/// thresholds to `node` in ascending order and stop at the first whose
/// reachable columns span e_file.
inline DecodeStep decode_latency(const Network& net, const LinearScheme& scheme, NodeId node, FileIndex file)
{
    if (scheme.n() != net.size()) {
        fail(ErrorCode::DimensionMismatch, "scheme has " + std::to_string(scheme.n()) + " columns, network has " + std::to_string(net.size()) + " nodes");
    }
    if (node >= net.size()) fail(ErrorCode::UnknownNode, "node index " + std::to_string(node));
    if (file < 1 || file > scheme.k()) fail(ErrorCode::InvalidArgument, "file index " + std::to_string(file));

    std::vector<NodeId> order(net.size());
    for (NodeId t = 0; t < net.size(); ++t) order[t] = t;
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return net.rtt(a, node) < net.rtt(b, node); });

    std::size_t reach = 0;
    while (reach < order.size()) {
        const Millis threshold = net.rtt(order[reach], node);
        while (reach < order.size() && net.rtt(order[reach], node) == threshold) ++reach;

        std::vector<NodeId> within(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(reach));
        std::sort(within.begin(), within.end());
        const auto v = solve_decode(scheme.field(), scheme.generator().select_columns(within), file);
        if (!v) continue;

        DecodeStep step;
        step.node = node;
        step.file = file;
        for (std::size_t q = 0; q < within.size(); ++q) {
            if ((*v)[q] == 0) continue;
            step.helpers.push_back(within[q]);
            step.coefficients.push_back((*v)[q]);
            step.latency = std::max(step.latency, net.rtt(within[q], node));
        }
        return step;
    }
    fail(ErrorCode::Undecodable, "W" + std::to_string(file) + " not decodable at " + net.name(node) + " from all nodes");
}

/// Uncoded shortcut: the nearest node storing the file.
inline DecodeStep decode_latency(const Network& net, const UncodedScheme& scheme, NodeId node, FileIndex file)
{
    if (scheme.assignment.size() != net.size()) {
        fail(ErrorCode::DimensionMismatch, "assignment length differs from node count");
    }
    std::optional<NodeId> best;
    for (NodeId t = 0; t < net.size(); ++t) {
        if (scheme.assignment[t] != file) continue;
        if (!best || net.rtt(t, node) < net.rtt(*best, node)) best = t;
    }
    if (!best) fail(ErrorCode::Undecodable, "W" + std::to_string(file) + " is stored nowhere");
    return DecodeStep{node, file, {*best}, {1}, net.rtt(*best, node)};
}

using DecodingPlan = std::vector<DecodeStep>;

/// "W2 = X_S + X_M + X_O"; coefficients other than 1 render as "2*X_B".
inline std::string decoding_plan_text(const DecodeStep& step, const std::vector<std::string>& labels)
{
    std::string out = "W" + std::to_string(step.file) + " =";
    for (std::size_t q = 0; q < step.helpers.size(); ++q) {
        out += q == 0 ? " " : " + ";
        if (step.coefficients[q] != 1) out += std::to_string(step.coefficients[q]) + "*";
        out += "X_" + labels.at(step.helpers[q]);
    }
    return out;
}

struct LatencyReport {
    std::size_t k = 0;
    /// latency[i][j-1] = decode latency of W_j at node i.
    std::vector<std::vector<Millis>> latency;
    std::vector<Millis> worst_case;
    Millis average = 0;
    std::vector<Millis> worst_case_bound;
    Millis average_bound = 0;
    std::vector<bool> worst_case_optimal;
    bool average_optimal = false;
    /// Set only when a nearest-neighbor graph was supplied.
    std::optional<bool> admissible;
    DecodingPlan plan;

    friend bool operator==(const LatencyReport&, const LatencyReport&) = default;
};

struct Admissibility {
    bool admissible = true;
    /// (node, file) pairs that cannot decode from the node and its in-neighbors.
    std::vector<std::pair<NodeId, FileIndex>> failures;
};

inline Admissibility is_admissible_on(const Network& net, const StorageScheme& scheme, const NearestNeighborGraph& g)
{
    const auto lin = as_linear(scheme);
    if (lin.n() != net.size() || g.size() != net.size()) {
        fail(ErrorCode::DimensionMismatch, "scheme, graph and network sizes differ");
    }
    Admissibility out;
    for (NodeId i = 0; i < net.size(); ++i) {
        std::vector<NodeId> helpers = g.in_neighbors(i);
        helpers.insert(std::upper_bound(helpers.begin(), helpers.end(), i), i);
        const auto cols = lin.generator().select_columns(helpers);
        for (FileIndex j = 1; j <= lin.k(); ++j) {
            if (!solve_decode(lin.field(), cols, j)) {
                out.admissible = false;
                out.failures.emplace_back(i, j);
            }
        }
    }
    return out;
}

inline LatencyReport evaluate(const Network& net, const StorageScheme& scheme, const NearestNeighborGraph* graph = nullptr)
{
    const std::size_t n = net.size();
    const std::size_t k = scheme_k(scheme);
    if (scheme_n(scheme) != n) {
        fail(ErrorCode::DimensionMismatch, "scheme covers " + std::to_string(scheme_n(scheme)) + " nodes, network has " + std::to_string(n));
    }
    check_k(k, n);

    LatencyReport r;
    r.k = k;
    r.latency.assign(n, std::vector<Millis>(k, 0));
    r.worst_case.assign(n, 0);
    Millis total = 0;
    const auto profile = lambda_profile(net);
    std::visit([&](const auto& s) {
        for (NodeId i = 0; i < n; ++i) {
            for (FileIndex j = 1; j <= k; ++j) {
                auto step = decode_latency(net, s, i, j);
                r.latency[i][j - 1] = step.latency;
                r.worst_case[i] = std::max(r.worst_case[i], step.latency);
                total += step.latency;
                r.plan.push_back(std::move(step));
            }
        }
    }, scheme);
    r.average = total / static_cast<std::int64_t>(k * n);
    r.average_bound = avg_latency_lower_bound(profile, k);
    r.average_optimal = r.average == r.average_bound;
    for (NodeId i = 0; i < n; ++i) {
        r.worst_case_bound.push_back(worstcase_lower_bound(profile, k, i));
        r.worst_case_optimal.push_back(r.worst_case[i] == r.worst_case_bound[i]);
    }
    if (graph) {
        r.admissible = is_admissible_on(net, scheme, *graph).admissible;
    }
    return r;
}

} // namespace geolat
