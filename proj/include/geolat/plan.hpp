#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geolat/coloring.hpp"
#include "geolat/constructors.hpp"
#include "geolat/error.hpp"
#include "geolat/latency.hpp"
#include "geolat/network.hpp"
#include "geolat/nn_graph.hpp"
#include "geolat/scheme.hpp"

namespace geolat {

inline const std::string kVerdictOptimalUncoded = "optimal-uncoded";
inline const std::string kVerdictBinaryCoded = "binary-coded(χ=k+1)";
inline const std::string kVerdictMdsFallback = "mds-fallback";
inline const std::string kVerdictNoConstruction = "no-construction(χ>k+1)";

struct PlanOptions {
    /// Field for the MDS fallback; raised to the next prime above n if too small.
    std::uint32_t field = 2;
    std::size_t variant_cap = kDefaultVariantCap;
    std::uint64_t coloring_budget = kDefaultSearchBudget;
};

struct PlanDocument {
    Network network;
    std::string network_ref;
    std::size_t k = 0;
    std::size_t variant_index = 0;
    std::size_t variant_count = 0;
    bool variants_truncated = false;
    NearestNeighborGraph graph;
    std::optional<Coloring> coloring;
    std::optional<Color> coded_color;
    StorageScheme scheme;
    LatencyReport report;
    std::string verdict;
    std::vector<std::string> notes;

    /// 0 when a latency-optimal construction was found, 2 for the MDS fallback.
    int exit_code() const { return verdict == kVerdictOptimalUncoded || verdict == kVerdictBinaryCoded ? 0 : 2; }
};

/// Uncoded placement if some tie variant has a k-colorable extended graph;
/// otherwise the best binary code over variants whose extended graph needs
/// exactly k+1 colors; otherwise an MDS code.
inline PlanDocument plan(const Network& net, std::size_t k, const PlanOptions& opt = {}, std::string network_ref = {})
{
    check_k(k, net.size());
    const auto variants = build_nn_graphs(net, k, opt.variant_cap);
    bool undecided = variants.truncated;
    std::vector<std::string> notes;
    if (variants.truncated) {
        notes.push_back("only " + std::to_string(variants.graphs.size()) + " of " + std::to_string(variants.total_variants)
                        + " nearest-neighbor graph variants examined");
    }

    auto make_doc = [&](std::size_t q, std::optional<Coloring> col, std::optional<Color> coded, StorageScheme scheme, std::string verdict) {
        const auto& g = variants.graphs[q];
        auto report = evaluate(net, scheme, &g);
        return PlanDocument{net,           network_ref, k, q, variants.graphs.size(), variants.truncated, g, std::move(col), coded,
                            std::move(scheme), std::move(report), std::move(verdict), notes};
    };

    for (std::size_t q = 0; q < variants.graphs.size(); ++q) {
        try {
            if (auto col = k_colorable(extend(variants.graphs[q]), k, opt.coloring_budget)) {
                auto scheme = uncoded_from_coloring(variants.graphs[q], *col);
                return make_doc(q, std::move(col), std::nullopt, std::move(scheme), kVerdictOptimalUncoded);
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TimeBudgetExceeded) throw;
            undecided = true;
            notes.push_back("variant " + std::to_string(q) + ": " + e.what());
        }
    }

    struct Best {
        std::size_t variant;
        Coloring coloring;
        RankedScheme ranked;
    };
    std::optional<Best> best;
    for (std::size_t q = 0; q < variants.graphs.size(); ++q) {
        try {
            const auto chi = chromatic_number(extend(variants.graphs[q]), opt.coloring_budget);
            if (chi.count != k + 1) continue;
            auto codes = enumerate_binary_codes(net, variants.graphs[q], chi.coloring);
            if (!best || codes.front().average < best->ranked.average) {
                best = Best{q, chi.coloring, std::move(codes.front())};
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TimeBudgetExceeded) throw;
            undecided = true;
            notes.push_back("variant " + std::to_string(q) + ": " + e.what());
        }
    }
    if (best) {
        return make_doc(best->variant, best->coloring, best->ranked.coded_color, best->ranked.scheme, kVerdictBinaryCoded);
    }

    const auto p = opt.field > net.size() && is_prime(opt.field) ? opt.field : next_prime_above(static_cast<std::uint32_t>(net.size()));
    notes.push_back(undecided ? "coloring search was incomplete; emitting a scalar MDS code"
                              : "extended graph needs more than k+1 colors; optimal codes for this case are an open problem");
    return make_doc(0, std::nullopt, std::nullopt, scalar_mds_scheme(net, k, PrimeField(p)), undecided ? kVerdictMdsFallback : kVerdictNoConstruction);
}

} // namespace geolat
