#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "geolat/coloring.hpp"
#include "geolat/constructors.hpp"
#include "geolat/error.hpp"
#include "geolat/latency.hpp"
#include "geolat/network.hpp"
#include "geolat/nn_graph.hpp"
#include "geolat/oracle.hpp"
#include "geolat/plan.hpp"
#include "geolat/scheme.hpp"

namespace geolat::io {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

// ---- values -------------------------------------------------------------

/// Integer when whole, otherwise a "p/q" string.
inline json to_json(const Millis& v)
{
    if (v.denominator() == 1) return v.numerator();
    return to_exact_string(v);
}

/// {"exact": "611/8", "ms": "76.38"}
inline json dual(const Millis& v)
{
    return json{{"exact", to_exact_string(v)}, {"ms", to_decimal_string(v)}};
}

inline Millis millis_from_json(const json& j)
{
    if (j.is_number_integer()) return Millis(j.get<std::int64_t>());
    if (j.is_number_float()) return parse_millis(j.dump());
    if (j.is_string()) return parse_millis(j.get<std::string>());
    if (j.is_object() && j.contains("exact")) return millis_from_json(j.at("exact"));
    fail(ErrorCode::ParseError, "expected an RTT value, got " + j.dump());
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, path + ": " + e.what());
    }
}

// ---- network ------------------------------------------------------------

inline Network network_from_json(const json& j)
{
    try {
        const json& doc = j.contains("network") ? j.at("network") : j;
        auto names = doc.at("nodes").get<std::vector<std::string>>();
        RttMatrix m;
        for (const auto& row : doc.at("rtt_ms")) {
            if (!row.is_array()) fail(ErrorCode::ParseError, "rtt_ms rows must be arrays");
            std::vector<Millis> r;
            for (const auto& cell : row) r.push_back(millis_from_json(cell));
            m.push_back(std::move(r));
        }
        return validate_network(std::move(names), std::move(m));
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("network document: ") + e.what());
    }
}

inline json network_to_json(const Network& net)
{
    json rows = json::array();
    for (const auto& row : net.rtt()) {
        json r = json::array();
        for (const auto& v : row) r.push_back(to_json(v));
        rows.push_back(std::move(r));
    }
    return json{{"format", kFormatVersion}, {"nodes", net.names()}, {"rtt_ms", std::move(rows)}};
}

inline Network load_network(const std::string& path)
{
    return network_from_json(read_json_file(path));
}

// ---- schemes ------------------------------------------------------------

inline json scheme_to_json(const StorageScheme& scheme, const Network& net)
{
    if (const auto* u = std::get_if<UncodedScheme>(&scheme)) {
        json a = json::object();
        for (NodeId i = 0; i < u->assignment.size(); ++i) a[net.name(i)] = u->assignment[i];
        return json{{"format", kFormatVersion}, {"type", "uncoded"}, {"k", u->k}, {"assignment", std::move(a)}};
    }
    const auto& lin = std::get<LinearScheme>(scheme);
    json gen = json::array();
    for (std::size_t r = 0; r < lin.k(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < lin.n(); ++c) row.push_back(lin.generator().at(r, c));
        gen.push_back(std::move(row));
    }
    json formulas = json::object();
    for (NodeId i = 0; i < lin.n(); ++i) formulas[net.name(i)] = lin.formula(i);
    return json{{"format", kFormatVersion},
                {"type", "linear"},
                {"field", lin.field().characteristic()},
                {"generator", std::move(gen)},
                {"formulas", std::move(formulas)}};
}

inline StorageScheme scheme_from_json(const json& j, const Network& net)
{
    try {
        const json& doc = j.contains("scheme") ? j.at("scheme") : j;
        const auto type = doc.at("type").get<std::string>();
        if (type == "uncoded") {
            const auto& a = doc.at("assignment");
            std::vector<FileIndex> assignment(net.size(), 0);
            std::vector<bool> given(net.size(), false);
            for (const auto& [name, file] : a.items()) {
                const NodeId i = net.index_of(name);
                assignment[i] = file.get<FileIndex>();
                given[i] = true;
            }
            for (NodeId i = 0; i < net.size(); ++i) {
                if (!given[i]) fail(ErrorCode::ParseError, "assignment missing node '" + net.name(i) + "'");
            }
            std::size_t k = 0;
            if (doc.contains("k")) {
                k = doc.at("k").get<std::size_t>();
            } else {
                for (auto f : assignment) k = std::max<std::size_t>(k, f);
            }
            return make_uncoded(k, std::move(assignment));
        }
        if (type == "linear") {
            const PrimeField field(doc.value("field", 2u));
            const auto& rows = doc.at("generator");
            FieldMatrix g(rows.size(), rows.empty() ? 0 : rows.at(0).size());
            for (std::size_t r = 0; r < g.rows; ++r) {
                if (rows.at(r).size() != g.cols) fail(ErrorCode::ParseError, "ragged generator matrix");
                for (std::size_t c = 0; c < g.cols; ++c) g.at(r, c) = field.reduce(rows.at(r).at(c).get<std::int64_t>());
            }
            if (g.cols != net.size()) {
                fail(ErrorCode::DimensionMismatch, "generator has " + std::to_string(g.cols) + " columns for " + std::to_string(net.size()) + " nodes");
            }
            return LinearScheme(field, std::move(g));
        }
        fail(ErrorCode::ParseError, "unknown scheme type '" + type + "'");
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("scheme document: ") + e.what());
    }
}

// ---- graphs and colorings -----------------------------------------------

inline json coloring_to_json(const Coloring& c, const Network& net)
{
    json m = json::object();
    for (NodeId i = 0; i < c.colors.size(); ++i) m[net.name(i)] = c.colors[i];
    return m;
}

inline json nn_graph_to_json(const NearestNeighborGraph& g, const Network& net)
{
    json in = json::object();
    json edges = json::array();
    for (NodeId i = 0; i < g.size(); ++i) {
        json list = json::array();
        for (NodeId j : g.in_neighbors(i)) {
            list.push_back(net.name(j));
            edges.push_back(json{{"src", net.name(j)}, {"dst", net.name(i)}, {"weight_ms", to_json(net.rtt(j, i))}});
        }
        in[net.name(i)] = std::move(list);
    }
    return json{{"k", g.k()}, {"in_neighbors", std::move(in)}, {"edges", std::move(edges)}};
}

inline json undirected_to_json(const UndirectedGraph& h, const Network& net)
{
    json edges = json::array();
    for (const auto& [u, v] : h.edges()) edges.push_back(json::array({net.name(u), net.name(v)}));
    return edges;
}

/// One "src -> dst weight_ms" line per directed edge, in destination order.
inline std::string nn_graph_edge_list(const NearestNeighborGraph& g, const Network& net)
{
    std::ostringstream out;
    for (NodeId i = 0; i < g.size(); ++i) {
        for (NodeId j : g.in_neighbors(i)) {
            out << net.name(j) << " -> " << net.name(i) << " " << to_exact_string(net.rtt(j, i)) << "\n";
        }
    }
    return out.str();
}

/// Graphviz document holding the directed graph and its undirected extension.
inline std::string graphs_to_dot(const NearestNeighborGraph& g, const UndirectedGraph& h, const Network& net)
{
    auto quoted = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') q += '\\';
            q += c;
        }
        return q + "\"";
    };
    std::ostringstream out;
    out << "digraph nearest_neighbors {\n";
    for (NodeId i = 0; i < g.size(); ++i) {
        for (NodeId j : g.in_neighbors(i)) {
            out << "  " << quoted(net.name(j)) << " -> " << quoted(net.name(i)) << " [label=" << quoted(to_exact_string(net.rtt(j, i))) << "];\n";
        }
    }
    out << "}\n";
    out << "graph extended {\n";
    for (NodeId i = 0; i < h.size(); ++i) out << "  " << quoted(net.name(i)) << ";\n";
    for (const auto& [u, v] : h.edges()) {
        const bool added = !g.has_edge(u, v) && !g.has_edge(v, u);
        out << "  " << quoted(net.name(u)) << " -- " << quoted(net.name(v)) << (added ? " [style=dashed]" : "") << ";\n";
    }
    out << "}\n";
    return out.str();
}

// ---- reports --------------------------------------------------------------

inline json report_to_json(const LatencyReport& r, const Network& net)
{
    json latency = json::object();
    json worst = json::object();
    json bound = json::object();
    json wc_opt = json::object();
    for (NodeId i = 0; i < net.size(); ++i) {
        json row = json::array();
        for (const auto& v : r.latency[i]) row.push_back(to_json(v));
        latency[net.name(i)] = std::move(row);
        worst[net.name(i)] = to_json(r.worst_case[i]);
        bound[net.name(i)] = to_json(r.worst_case_bound[i]);
        wc_opt[net.name(i)] = static_cast<bool>(r.worst_case_optimal[i]);
    }
    json plan = json::array();
    for (const auto& step : r.plan) {
        json helpers = json::array();
        for (NodeId h : step.helpers) helpers.push_back(net.name(h));
        plan.push_back(json{{"node", net.name(step.node)},
                            {"file", step.file},
                            {"helpers", std::move(helpers)},
                            {"coefficients", step.coefficients},
                            {"latency_ms", to_json(step.latency)},
                            {"equation", decoding_plan_text(step, net.names())}});
    }
    json out{{"format", kFormatVersion},
             {"k", r.k},
             {"latency_ms", std::move(latency)},
             {"worst_case_ms", std::move(worst)},
             {"worst_case_bound_ms", std::move(bound)},
             {"average_ms", dual(r.average)},
             {"average_bound_ms", dual(r.average_bound)},
             {"flags", json{{"worst_case_optimal", std::move(wc_opt)}, {"average_optimal", r.average_optimal}}},
             {"decoding", std::move(plan)}};
    if (r.admissible) out["flags"]["admissible"] = *r.admissible;
    return out;
}

/// Plain-text table: node, stored symbol, per-file latencies, worst case.
inline std::string report_to_text(const LatencyReport& r, const Network& net, const StorageScheme& scheme)
{
    const auto lin = as_linear(scheme);
    std::size_t name_w = 4;
    std::size_t code_w = 4;
    for (NodeId i = 0; i < net.size(); ++i) {
        name_w = std::max(name_w, net.name(i).size());
        code_w = std::max(code_w, lin.formula(i).size());
    }
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(name_w)) << "Node" << "  " << std::setw(static_cast<int>(code_w)) << "Code";
    for (std::size_t j = 1; j <= r.k; ++j) out << "  " << std::right << std::setw(8) << ("W" + std::to_string(j));
    out << "  " << std::setw(8) << "max" << "  " << std::setw(8) << "bound" << "\n";
    for (NodeId i = 0; i < net.size(); ++i) {
        out << std::left << std::setw(static_cast<int>(name_w)) << net.name(i) << "  " << std::setw(static_cast<int>(code_w)) << lin.formula(i);
        for (const auto& v : r.latency[i]) out << "  " << std::right << std::setw(8) << to_exact_string(v);
        out << "  " << std::setw(8) << to_exact_string(r.worst_case[i]) << "  " << std::setw(8) << to_exact_string(r.worst_case_bound[i]) << "\n";
    }
    out << "average  " << to_exact_string(r.average) << " ms (" << to_decimal_string(r.average) << ")"
        << "  bound " << to_exact_string(r.average_bound) << " ms (" << to_decimal_string(r.average_bound) << ")"
        << (r.average_optimal ? "  optimal" : "") << "\n";
    for (const auto& step : r.plan) {
        const auto& helpers = step.helpers;
        if (helpers.size() > 1) out << net.name(step.node) << ": " << decoding_plan_text(step, net.names()) << "\n";
    }
    return out.str();
}

// ---- plan document ----------------------------------------------------------

inline json plan_to_json(const PlanDocument& d)
{
    json out{{"format", kFormatVersion},
             {"network_ref", d.network_ref},
             {"network", network_to_json(d.network)},
             {"k", d.k},
             {"verdict", d.verdict},
             {"variant", json{{"index", d.variant_index}, {"examined", d.variant_count}, {"truncated", d.variants_truncated}}},
             {"nn_graph", nn_graph_to_json(d.graph, d.network)},
             {"scheme", scheme_to_json(d.scheme, d.network)},
             {"report", report_to_json(d.report, d.network)},
             {"notes", d.notes}};
    if (d.coloring) {
        out["coloring"] = json{{"color_count", d.coloring->color_count}, {"colors", coloring_to_json(*d.coloring, d.network)}};
    }
    if (d.coded_color) out["coded_color"] = *d.coded_color;
    return out;
}

inline NearestNeighborGraph nn_graph_from_json(const json& j, const Network& net)
{
    const auto k = j.at("k").get<std::size_t>();
    std::vector<std::vector<NodeId>> in(net.size());
    for (const auto& [name, list] : j.at("in_neighbors").items()) {
        auto& dst = in[net.index_of(name)];
        for (const auto& src : list) dst.push_back(net.index_of(src.get<std::string>()));
    }
    return NearestNeighborGraph::from_in_neighbors(net, k, std::move(in));
}

// ---- oracle -------------------------------------------------------------

inline json search_to_json(const SearchResult& s, const Network& net)
{
    json witnesses = json::array();
    for (const auto& w : s.witnesses) witnesses.push_back(scheme_to_json(w, net).at("assignment"));
    json out{{"format", kFormatVersion}, {"filter", to_string(s.filter)}, {"explored", s.explored}, {"witnesses", std::move(witnesses)}};
    out["best_average_ms"] = s.best_average ? dual(*s.best_average) : json(nullptr);
    return out;
}

} // namespace geolat::io
