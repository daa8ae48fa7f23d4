#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "geolat/coloring.hpp"
#include "geolat/error.hpp"
#include "geolat/field.hpp"
#include "geolat/latency.hpp"
#include "geolat/nn_graph.hpp"
#include "geolat/scheme.hpp"

namespace geolat {

/// Placement from a proper k-coloring of extend(g): color c stores W_{c+1}.
inline UncodedScheme uncoded_from_coloring(const NearestNeighborGraph& g, const Coloring& c)
{
    const std::size_t k = g.k();
    if (c.color_count != k) {
        fail(ErrorCode::WrongColorCount, "expected " + std::to_string(k) + " colors, got " + std::to_string(c.color_count));
    }
    if (!is_proper(extend(g), c)) {
        fail(ErrorCode::NotAProperColoring, "coloring is not proper on the extended graph");
    }
    std::vector<FileIndex> assignment;
    assignment.reserve(c.colors.size());
    for (Color col : c.colors) assignment.push_back(col + 1);
    return UncodedScheme{k, std::move(assignment)};
}

/// Color-to-file map for a (k+1)-coloring; the coded color maps to 0 and the
/// remaining colors map to 1..k in ascending color order.
inline std::vector<FileIndex> canonical_color_to_file(std::size_t color_count, Color coded_color)
{
    std::vector<FileIndex> map(color_count, 0);
    FileIndex next = 1;
    for (Color c = 0; c < color_count; ++c) {
        if (c != coded_color) map[c] = next++;
    }
    return map;
}

/// The binary code's construction state, kept for reporting and tests.
struct BinaryCodePlan {
    Coloring coloring;
    Color coded_color = 0;
    std::vector<FileIndex> color_to_file; // 0 marks the coded color
    std::vector<NodeId> coded_nodes;
    /// Per coded node: its receive set and the missing file of every node in
    /// {i} + receive set (as (node, file) pairs, the node itself first).
    std::vector<std::vector<NodeId>> receive_sets;
    std::vector<std::vector<std::pair<NodeId, FileIndex>>> missing;
};

/// The one file that `r` cannot get from itself or its uncoded in-neighbors.
inline FileIndex missing_file(const NearestNeighborGraph& g, const Coloring& c, const std::vector<FileIndex>& color_to_file, NodeId r)
{
    const std::size_t k = g.k();
    std::vector<bool> have(k + 1, false);
    auto take = [&](NodeId t) {
        const FileIndex f = color_to_file.at(c.colors.at(t));
        if (f != 0) have[f] = true;
    };
    take(r);
    for (NodeId t : g.in_neighbors(r)) take(t);
    std::optional<FileIndex> miss;
    for (FileIndex f = 1; f <= k; ++f) {
        if (have[f]) continue;
        if (miss) {
            fail(ErrorCode::MissingFileUndefined, "node " + std::to_string(r) + " misses more than one file");
        }
        miss = f;
    }
    if (!miss) {
        fail(ErrorCode::MissingFileUndefined, "node " + std::to_string(r) + " misses no file");
    }
    return *miss;
}

inline void validate_binary_inputs(const NearestNeighborGraph& g, const Coloring& c, Color coded_color, const std::vector<FileIndex>& color_to_file)
{
    const std::size_t k = g.k();
    if (k < 2) fail(ErrorCode::KOutOfRange, "binary codes need k >= 2");
    if (c.color_count != k + 1) {
        fail(ErrorCode::WrongColorCount, "expected " + std::to_string(k + 1) + " colors, got " + std::to_string(c.color_count));
    }
    if (!is_proper(extend(g), c)) {
        fail(ErrorCode::NotAProperColoring, "coloring is not proper on the extended graph");
    }
    if (coded_color >= c.color_count) fail(ErrorCode::InvalidArgument, "coded color out of range");
    if (color_to_file.size() != k + 1 || color_to_file[coded_color] != 0) {
        fail(ErrorCode::InvalidArgument, "color-to-file map must have k+1 entries with 0 at the coded color");
    }
    std::vector<FileIndex> files;
    for (Color col = 0; col < color_to_file.size(); ++col) {
        if (col != coded_color) files.push_back(color_to_file[col]);
    }
    std::sort(files.begin(), files.end());
    for (std::size_t q = 0; q < files.size(); ++q) {
        if (files[q] != q + 1) fail(ErrorCode::InvalidArgument, "color-to-file map is not a bijection onto 1..k");
    }
}

inline BinaryCodePlan binary_code_plan(const NearestNeighborGraph& g, const Coloring& c, Color coded_color, std::vector<FileIndex> color_to_file)
{
    validate_binary_inputs(g, c, coded_color, color_to_file);
    BinaryCodePlan plan;
    plan.coloring = c;
    plan.coded_color = coded_color;
    plan.color_to_file = std::move(color_to_file);
    for (NodeId i = 0; i < g.size(); ++i) {
        if (c.colors[i] != coded_color) continue;
        plan.coded_nodes.push_back(i);
        auto recv = receive_set(g, i);
        std::vector<std::pair<NodeId, FileIndex>> miss;
        miss.emplace_back(i, missing_file(g, c, plan.color_to_file, i));
        for (NodeId r : recv) {
            if (c.colors[r] == coded_color) {
                fail(ErrorCode::InternalAssertion, "receiver shares the coded color");
            }
            miss.emplace_back(r, missing_file(g, c, plan.color_to_file, r));
        }
        plan.receive_sets.push_back(std::move(recv));
        plan.missing.push_back(std::move(miss));
    }
    return plan;
}

/// GF(2) code from a (k+1)-coloring: uncoded colors store their file; each
/// coded node stores the XOR of the distinct files missing at itself and at
/// its receivers.
inline LinearScheme binary_code_from_coloring(const NearestNeighborGraph& g, const Coloring& c, Color coded_color,
                                              std::vector<FileIndex> color_to_file)
{
    const auto plan = binary_code_plan(g, c, coded_color, std::move(color_to_file));
    const std::size_t k = g.k();
    FieldMatrix gen(k, g.size());
    for (NodeId i = 0; i < g.size(); ++i) {
        const FileIndex f = plan.color_to_file[c.colors[i]];
        if (f != 0) gen.at(f - 1, i) = 1;
    }
    for (std::size_t q = 0; q < plan.coded_nodes.size(); ++q) {
        std::set<FileIndex> files;
        for (const auto& [node, file] : plan.missing[q]) files.insert(file);
        for (FileIndex f : files) gen.at(f - 1, plan.coded_nodes[q]) = 1;
    }
    return LinearScheme(PrimeField(2), std::move(gen));
}

inline LinearScheme binary_code_from_coloring(const NearestNeighborGraph& g, const Coloring& c, Color coded_color)
{
    return binary_code_from_coloring(g, c, coded_color, canonical_color_to_file(c.color_count, coded_color));
}

struct RankedScheme {
    Color coded_color = 0;
    LinearScheme scheme;
    Millis average;
};

/// One binary code per coded-color choice (file labels canonical), sorted by
/// average latency, ties kept in coded-color order.
inline std::vector<RankedScheme> enumerate_binary_codes(const Network& net, const NearestNeighborGraph& g, const Coloring& c)
{
    if (g.k() < 2) fail(ErrorCode::KOutOfRange, "binary codes need k >= 2");
    std::vector<RankedScheme> out;
    for (Color coded = 0; coded < c.color_count; ++coded) {
        auto scheme = binary_code_from_coloring(g, c, coded);
        const auto avg = evaluate(net, scheme).average;
        out.push_back(RankedScheme{coded, std::move(scheme), avg});
    }
    std::stable_sort(out.begin(), out.end(), [](const RankedScheme& a, const RankedScheme& b) { return a.average < b.average; });
    return out;
}

/// k x n Vandermonde code over GF(p) at points 1..n: column i is
/// (1, i+1, (i+1)^2, ...). Any k columns are independent when p > n.
inline LinearScheme scalar_mds_scheme(const Network& net, std::size_t k, const PrimeField& field)
{
    const std::size_t n = net.size();
    check_k(k, n);
    if (field.characteristic() <= n) {
        fail(ErrorCode::FieldTooSmall, "GF(" + std::to_string(field.characteristic()) + ") has too few points for n=" + std::to_string(n));
    }
    FieldMatrix gen(k, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < k; ++r) gen.at(r, i) = field.pow(static_cast<Elem>(i + 1), r);
    }
    return LinearScheme(field, std::move(gen));
}

} // namespace geolat
