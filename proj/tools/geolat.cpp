// geolat: latency-aware storage placement planner.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "geolat/geolat.hpp"
#include "geolat/io.hpp"

namespace {

using geolat::io::json;

struct Output {
    bool text = false;
    std::string out_path;

    void emit(const json& doc, const std::string& text_form = {}) const
    {
        const std::string body = (text && !text_form.empty()) ? text_form : doc.dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << body;
            return;
        }
        std::ofstream f(out_path);
        if (!f) geolat::fail(geolat::ErrorCode::InvalidArgument, "cannot write '" + out_path + "'");
        f << body;
    }
};

std::uint64_t env_budget(std::uint64_t fallback)
{
    if (const char* v = std::getenv("GEOLAT_BUDGET")) {
        try {
            return std::stoull(v);
        } catch (const std::exception&) {
            geolat::fail(geolat::ErrorCode::InvalidArgument, std::string("GEOLAT_BUDGET is not a number: ") + v);
        }
    }
    return fallback;
}

void add_output_flags(CLI::App* cmd, Output& out)
{
    auto* j = cmd->add_flag("--json", "JSON output (default)");
    auto* t = cmd->add_flag("--text", out.text, "plain-text output where available");
    j->excludes(t);
    cmd->add_option("--out", out.out_path, "write output to a file instead of stdout");
}

geolat::NearestNeighborGraph pick_variant(const geolat::Network& net, std::size_t k, std::size_t cap, std::size_t variant)
{
    auto set = geolat::build_nn_graphs(net, k, cap);
    if (variant >= set.graphs.size()) {
        geolat::fail(geolat::ErrorCode::InvalidArgument, "variant " + std::to_string(variant) + " not among the " + std::to_string(set.graphs.size()) + " built");
    }
    return set.graphs[variant];
}

json bounds_doc(const geolat::Network& net, std::size_t k)
{
    const auto profile = geolat::lambda_profile(net);
    json nodes = json::array();
    for (geolat::NodeId i = 0; i < net.size(); ++i) {
        json lam = json::array();
        for (const auto& v : profile.values[i]) lam.push_back(geolat::io::to_json(v));
        nodes.push_back(json{{"node", net.name(i)},
                             {"lambda_ms", std::move(lam)},
                             {"worst_case_bound_ms", geolat::io::dual(geolat::worstcase_lower_bound(profile, k, i))}});
    }
    json doc{{"format", geolat::io::kFormatVersion},
             {"k", k},
             {"nodes", std::move(nodes)},
             {"average_bound_ms", geolat::io::dual(geolat::avg_latency_lower_bound(profile, k))}};
    const auto violation = geolat::find_triangle_violation(net);
    doc["triangle_inequality"] = !violation.has_value();
    if (violation) {
        doc["triangle_violation"] = {net.name(violation->from), net.name(violation->via), net.name(violation->to)};
    }
    return doc;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Latency-aware storage placement planner for geo-distributed networks"};
    app.require_subcommand(1);

    Output out;
    std::string network_path;
    std::size_t k = 0;
    std::size_t variant_cap = geolat::kDefaultVariantCap;
    std::size_t variant = 0;
    bool multihop = false;

    auto add_network = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("network", network_path, "network JSON document");
        if (required) opt->required();
        cmd->add_flag("--multihop", multihop, "replace RTTs by shortest multi-hop path totals first");
    };
    auto add_k = [&](CLI::App* cmd) { cmd->add_option("--k", k, "number of files")->required(); };

    // bounds
    auto* bounds = app.add_subcommand("bounds", "sorted RTT profiles and latency lower bounds");
    add_network(bounds);
    add_k(bounds);
    add_output_flags(bounds, out);

    // nngraph
    std::string graph_format = "json";
    auto* nngraph = app.add_subcommand("nngraph", "nearest-neighbor graphs and their extended graphs");
    add_network(nngraph);
    add_k(nngraph);
    nngraph->add_option("--variant-cap", variant_cap, "maximum tie variants to enumerate");
    nngraph->add_option("--format", graph_format, "json | edges | dot")->check(CLI::IsMember({"json", "edges", "dot"}));
    add_output_flags(nngraph, out);

    // color
    std::optional<std::size_t> color_budget;
    std::uint64_t search_budget = env_budget(geolat::kDefaultSearchBudget);
    auto* color = app.add_subcommand("color", "color the extended graph (exact)");
    add_network(color);
    add_k(color);
    color->add_option("--budget", color_budget, "number of colors allowed; omit for the chromatic number");
    color->add_option("--search-budget", search_budget, "node-expansion limit");
    color->add_option("--variant", variant, "tie variant index");
    color->add_option("--variant-cap", variant_cap, "maximum tie variants to enumerate");
    add_output_flags(color, out);

    // construct
    std::string kind = "auto";
    std::optional<std::size_t> coded_color;
    std::uint32_t field = 2;
    auto* construct = app.add_subcommand("construct", "build a storage scheme");
    add_network(construct);
    add_k(construct);
    construct->add_option("--kind", kind, "auto | uncoded | binary | mds")->check(CLI::IsMember({"auto", "uncoded", "binary", "mds"}));
    construct->add_option("--coded-color", coded_color, "coded color for --kind binary (default: best average)");
    construct->add_option("--field", field, "prime field for --kind mds");
    construct->add_option("--variant", variant, "tie variant index");
    construct->add_option("--variant-cap", variant_cap, "maximum tie variants to enumerate");
    construct->add_option("--search-budget", search_budget, "coloring node-expansion limit");
    add_output_flags(construct, out);

    // evaluate
    std::string scheme_path;
    auto* evaluate = app.add_subcommand("evaluate", "exact latency report for a scheme or a plan document");
    evaluate->add_option("document", scheme_path, "scheme JSON, or a plan document embedding network and scheme")->required();
    evaluate->add_option("--network", network_path, "network JSON (not needed for plan documents)");
    evaluate->add_flag("--multihop", multihop, "replace RTTs by shortest multi-hop path totals first");
    add_output_flags(evaluate, out);

    // search
    std::string filter = "all";
    std::uint64_t assignment_budget = env_budget(geolat::kDefaultAssignmentBudget);
    std::optional<std::uint64_t> seed;
    std::size_t random_n = 0;
    double tie_bias = 0.0;
    auto* search = app.add_subcommand("search", "exhaustive search over uncoded placements");
    add_network(search, false);
    add_k(search);
    search->add_option("--filter", filter, "all | worst-case-optimal")->check(CLI::IsMember({"all", "worst-case-optimal"}));
    search->add_option("--budget", assignment_budget, "maximum number of assignments");
    search->add_option("--seed", seed, "generate a random network from this seed instead of reading one");
    search->add_option("--random-n", random_n, "node count of the random network");
    search->add_option("--tie-bias", tie_bias, "tie probability of the random network");
    add_output_flags(search, out);

    // verify
    std::string property;
    std::size_t trials = 0;
    std::size_t max_n = 6;
    auto* verify = app.add_subcommand("verify", "cross-check coloring results against exhaustive search");
    verify->add_option("property", property, "theorem1 | corollary1")->required()->check(CLI::IsMember({"theorem1", "corollary1"}));
    add_network(verify, false);
    verify->add_option("--k", k, "number of files (single-network mode)");
    verify->add_option("--trials", trials, "random-batch mode: number of seeded random networks");
    verify->add_option("--seed", seed, "random-batch seed");
    verify->add_option("--max-n", max_n, "random-batch maximum node count");
    verify->add_option("--variant-cap", variant_cap, "maximum tie variants to enumerate");
    verify->add_option("--budget", assignment_budget, "maximum assignments for the exhaustive search");
    add_output_flags(verify, out);

    // plan
    auto* plan = app.add_subcommand("plan", "full pipeline: bounds, graphs, coloring, construction, evaluation");
    add_network(plan);
    add_k(plan);
    plan->add_option("--field", field, "prime field for the MDS fallback");
    plan->add_option("--variant-cap", variant_cap, "maximum tie variants to enumerate");
    plan->add_option("--budget", search_budget, "coloring node-expansion limit");
    add_output_flags(plan, out);

    CLI11_PARSE(app, argc, argv);

    try {
        auto load = [&] {
            auto net = geolat::io::load_network(network_path);
            return multihop ? geolat::reduce_multihop(net) : net;
        };

        if (bounds->parsed()) {
            const auto net = load();
            geolat::check_k(k, net.size());
            out.emit(bounds_doc(net, k));
            return 0;
        }

        if (nngraph->parsed()) {
            const auto net = load();
            const auto set = geolat::build_nn_graphs(net, k, variant_cap);
            if (graph_format == "edges" || graph_format == "dot") {
                std::string body;
                for (std::size_t q = 0; q < set.graphs.size(); ++q) {
                    body += "# variant " + std::to_string(q) + "\n";
                    body += graph_format == "edges" ? geolat::io::nn_graph_edge_list(set.graphs[q], net)
                                                    : geolat::io::graphs_to_dot(set.graphs[q], geolat::extend(set.graphs[q]), net);
                }
                out.text = true;
                out.emit(json{}, body);
                return 0;
            }
            json variants = json::array();
            for (const auto& g : set.graphs) {
                auto doc = geolat::io::nn_graph_to_json(g, net);
                doc["extended_edges"] = geolat::io::undirected_to_json(geolat::extend(g), net);
                variants.push_back(std::move(doc));
            }
            out.emit(json{{"format", geolat::io::kFormatVersion},
                          {"k", k},
                          {"variant_count", set.graphs.size()},
                          {"total_variants", set.total_variants},
                          {"truncated", set.truncated},
                          {"variants", std::move(variants)}});
            return 0;
        }

        if (color->parsed()) {
            const auto net = load();
            const auto h = geolat::extend(pick_variant(net, k, variant_cap, variant));
            const auto clique = geolat::max_clique_lower_bound(h);
            json clique_names = json::array();
            for (auto v : clique) clique_names.push_back(net.name(v));
            json doc{{"format", geolat::io::kFormatVersion}, {"k", k}, {"variant", variant}, {"clique", std::move(clique_names)}};
            if (color_budget) {
                const auto c = geolat::k_colorable(h, *color_budget, search_budget);
                doc["budget"] = *color_budget;
                doc["colorable"] = c.has_value();
                if (c) doc["coloring"] = geolat::io::coloring_to_json(*c, net);
                out.emit(doc);
                return c ? 0 : 2;
            }
            const auto chi = geolat::chromatic_number(h, search_budget);
            doc["chromatic_number"] = chi.count;
            doc["colorable"] = true;
            doc["coloring"] = geolat::io::coloring_to_json(chi.coloring, net);
            out.emit(doc);
            return 0;
        }

        if (construct->parsed()) {
            const auto net = load();
            if (kind == "auto") {
                geolat::PlanOptions po;
                po.field = field;
                po.variant_cap = variant_cap;
                po.coloring_budget = search_budget;
                const auto doc = geolat::plan(net, k, po, network_path);
                out.emit(geolat::io::scheme_to_json(doc.scheme, net));
                return doc.exit_code();
            }
            if (kind == "mds") {
                out.emit(geolat::io::scheme_to_json(geolat::scalar_mds_scheme(net, k, geolat::PrimeField(field)), net));
                return 0;
            }
            const auto g = pick_variant(net, k, variant_cap, variant);
            const auto h = geolat::extend(g);
            if (kind == "uncoded") {
                const auto c = geolat::k_colorable(h, k, search_budget);
                if (!c) {
                    std::cerr << "extended graph is not " << k << "-colorable; no admissible uncoded scheme on this variant\n";
                    return 2;
                }
                out.emit(geolat::io::scheme_to_json(geolat::uncoded_from_coloring(g, *c), net));
                return 0;
            }
            const auto c = geolat::k_colorable(h, k + 1, search_budget);
            if (!c) {
                std::cerr << "extended graph needs more than k+1 colors; no binary construction\n";
                return 2;
            }
            if (coded_color) {
                out.emit(geolat::io::scheme_to_json(geolat::binary_code_from_coloring(g, *c, *coded_color), net));
            } else {
                out.emit(geolat::io::scheme_to_json(geolat::enumerate_binary_codes(net, g, *c).front().scheme, net));
            }
            return 0;
        }

        if (evaluate->parsed()) {
            const auto doc = geolat::io::read_json_file(scheme_path);
            const bool is_plan = doc.contains("network") && doc.contains("scheme");
            if (!is_plan && network_path.empty()) {
                geolat::fail(geolat::ErrorCode::InvalidArgument, "--network is required unless the document is a plan");
            }
            auto net = is_plan ? geolat::io::network_from_json(doc.at("network")) : geolat::io::load_network(network_path);
            if (multihop) net = geolat::reduce_multihop(net);
            const auto scheme = geolat::io::scheme_from_json(doc, net);
            std::optional<geolat::NearestNeighborGraph> g;
            if (is_plan && doc.contains("nn_graph")) g = geolat::io::nn_graph_from_json(doc.at("nn_graph"), net);
            const auto report = geolat::evaluate(net, scheme, g ? &*g : nullptr);
            auto rj = geolat::io::report_to_json(report, net);
            if (is_plan && doc.contains("report")) rj["matches_embedded_report"] = (doc.at("report") == geolat::io::report_to_json(report, net));
            out.emit(rj, geolat::io::report_to_text(report, net, scheme));
            return 0;
        }

        if (search->parsed()) {
            geolat::Network net = [&] {
                if (seed) {
                    geolat::RandomNetworkOptions ro;
                    ro.n = random_n == 0 ? 5 : random_n;
                    ro.tie_bias = tie_bias;
                    return geolat::random_network(*seed, ro);
                }
                if (network_path.empty()) geolat::fail(geolat::ErrorCode::InvalidArgument, "give a network file or --seed");
                return load();
            }();
            geolat::SearchOptions so;
            so.filter = geolat::parse_filter(filter);
            so.budget = assignment_budget;
            auto doc = geolat::io::search_to_json(geolat::brute_force_uncoded(net, k, so), net);
            doc["average_bound_ms"] = geolat::io::dual(geolat::avg_latency_lower_bound(geolat::lambda_profile(net), k));
            if (seed) doc["network"] = geolat::io::network_to_json(net);
            out.emit(doc);
            return 0;
        }

        if (verify->parsed()) {
            geolat::VerifyOptions vo;
            vo.variant_cap = std::max<std::size_t>(variant_cap, 4096);
            vo.assignment_budget = assignment_budget;
            if (trials > 0) {
                geolat::BatchOptions bo;
                bo.seed = seed.value_or(1);
                bo.trials = trials;
                bo.max_n = max_n;
                if (property == "theorem1") {
                    const auto b = geolat::verify_theorem1_batch(bo, vo);
                    out.emit(json{{"format", geolat::io::kFormatVersion},
                                  {"property", property},
                                  {"trials", b.trials},
                                  {"agree", b.agree},
                                  {"unknown", b.unknown},
                                  {"optimal_uncoded", b.optimal_uncoded},
                                  {"mismatches", b.mismatches}});
                    return b.agree == b.trials ? 0 : 2;
                }
                bo.tie_biases = {0.0, 0.3, 1.0};
                if (k != 0 && k != 2) geolat::fail(geolat::ErrorCode::InvalidArgument, "corollary1 is a k=2 property");
                const auto b = geolat::verify_corollary1_batch(bo);
                out.emit(json{{"format", geolat::io::kFormatVersion},
                              {"property", property},
                              {"trials", b.trials},
                              {"success", b.success},
                              {"failures", b.failures}});
                return b.success == b.trials ? 0 : 2;
            }
            if (network_path.empty()) geolat::fail(geolat::ErrorCode::InvalidArgument, "give a network file or --trials");
            const auto net = load();
            if (property == "theorem1") {
                if (k == 0) geolat::fail(geolat::ErrorCode::KOutOfRange, "--k is required");
                const auto v = geolat::verify_theorem1(net, k, vo);
                json doc{{"format", geolat::io::kFormatVersion},
                         {"property", property},
                         {"k", k},
                         {"coloring_path", geolat::to_string(v.coloring_path)},
                         {"oracle_path", v.oracle_path},
                         {"agree", v.agree},
                         {"variants_tried", v.variants_tried},
                         {"detail", v.detail}};
                if (v.oracle_witness) doc["witness"] = geolat::io::scheme_to_json(*v.oracle_witness, net);
                out.emit(doc);
                return v.agree ? 0 : 2;
            }
            if (k != 0 && k != 2) geolat::fail(geolat::ErrorCode::InvalidArgument, "corollary1 is a k=2 property");
            const auto v = geolat::verify_corollary1(net);
            out.emit(json{{"format", geolat::io::kFormatVersion},
                          {"property", property},
                          {"k", 2},
                          {"success", v.success},
                          {"nn_graph", geolat::io::nn_graph_to_json(v.graph, net)},
                          {"placement", geolat::io::scheme_to_json(v.placement, net)},
                          {"report", geolat::io::report_to_json(v.report, net)}});
            return 0;
        }

        if (plan->parsed()) {
            const auto net = load();
            geolat::PlanOptions po;
            po.field = field;
            po.variant_cap = variant_cap;
            po.coloring_budget = search_budget;
            const auto doc = geolat::plan(net, k, po, network_path);
            std::string text = "verdict: " + doc.verdict + "\n" + geolat::io::report_to_text(doc.report, net, doc.scheme);
            for (const auto& note : doc.notes) text += "note: " + note + "\n";
            out.emit(geolat::io::plan_to_json(doc), text);
            return doc.exit_code();
        }
    } catch (const geolat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
