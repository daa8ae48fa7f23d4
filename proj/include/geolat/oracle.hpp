#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "geolat/coloring.hpp"
#include "geolat/constructors.hpp"
#include "geolat/error.hpp"
#include "geolat/latency.hpp"
#include "geolat/network.hpp"
#include "geolat/nn_graph.hpp"

namespace geolat {

enum class SearchFilter { All, WorstCaseOptimalOnly };

inline std::string to_string(SearchFilter f)
{
    return f == SearchFilter::All ? "all" : "worst-case-optimal";
}

inline SearchFilter parse_filter(const std::string& s)
{
    if (s == "all") return SearchFilter::All;
    if (s == "worst-case-optimal" || s == "worst-case-optimal-only") return SearchFilter::WorstCaseOptimalOnly;
    fail(ErrorCode::InvalidArgument, "unknown filter '" + s + "'");
}

inline constexpr std::uint64_t kDefaultAssignmentBudget = 100'000'000;

struct SearchOptions {
    SearchFilter filter = SearchFilter::All;
    std::uint64_t budget = kDefaultAssignmentBudget;
    /// Collect every optimal assignment. When false, node 0 is pinned to W1
    /// (file labels are interchangeable) and only those witnesses are kept.
    bool full_witnesses = true;
};

struct SearchResult {
    SearchFilter filter = SearchFilter::All;
    /// Empty when no assignment passes the filter.
    std::optional<Millis> best_average;
    std::vector<UncodedScheme> witnesses;
    std::uint64_t explored = 0;
};

namespace detail {

// Node t's nearness rank order per target node, for the uncoded fast path.
struct UncodedEvaluator {
    const Network& net;
    std::size_t k;
    LambdaProfile profile;
    std::vector<Millis> wc_bound;

    UncodedEvaluator(const Network& nw, std::size_t kk)
        : net(nw)
        , k(kk)
        , profile(lambda_profile(nw))
    {
        for (NodeId i = 0; i < nw.size(); ++i) wc_bound.push_back(profile.values[i][k - 1]);
    }

    // Sum of latencies over all (node, file), or nothing if a file is unstored.
    // worst_ok reports whether every node meets its worst-case bound.
    std::optional<Millis> total(const std::vector<FileIndex>& a, bool& worst_ok) const
    {
        Millis sum = 0;
        worst_ok = true;
        std::vector<char> seen(k + 1);
        for (NodeId i = 0; i < net.size(); ++i) {
            std::fill(seen.begin(), seen.end(), 0);
            std::size_t found = 0;
            Millis worst = 0;
            for (std::size_t m = 0; m < net.size() && found < k; ++m) {
                const NodeId t = profile.order[i][m];
                if (seen[a[t]]) continue;
                seen[a[t]] = 1;
                ++found;
                sum += profile.values[i][m];
                worst = profile.values[i][m];
            }
            if (found < k) return std::nullopt;
            if (worst != wc_bound[i]) worst_ok = false;
        }
        return sum;
    }
};

inline std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t budget)
{
    unsigned __int128 acc = 1;
    for (std::size_t q = 0; q < exp; ++q) {
        acc *= base;
        if (acc > budget) {
            fail(ErrorCode::BudgetExceeded, std::to_string(base) + "^" + std::to_string(exp) + " assignments exceed budget " + std::to_string(budget));
        }
    }
    return static_cast<std::uint64_t>(acc);
}

} // namespace detail

/// Exhaustive search over all k^n uncoded placements.
inline SearchResult brute_force_uncoded(const Network& net, std::size_t k, const SearchOptions& opt = {})
{
    const std::size_t n = net.size();
    check_k(k, n);
    detail::checked_power(k, n, opt.budget);

    const detail::UncodedEvaluator eval(net, k);
    SearchResult res;
    res.filter = opt.filter;
    std::vector<FileIndex> a(n, 1);
    // Pinning node 0 leaves the last n-1 digits free.
    const std::size_t first_free = opt.full_witnesses ? 0 : 1;
    std::optional<Millis> best_total;
    while (true) {
        ++res.explored;
        bool worst_ok = false;
        const auto t = eval.total(a, worst_ok);
        if (t && (opt.filter == SearchFilter::All || worst_ok)) {
            if (!best_total || *t < *best_total) {
                best_total = *t;
                res.witnesses.clear();
            }
            if (*t == *best_total) res.witnesses.push_back(UncodedScheme{k, a});
        }
        std::size_t pos = n;
        bool advanced = false;
        while (pos-- > first_free) {
            if (++a[pos] <= k) {
                advanced = true;
                break;
            }
            a[pos] = 1;
        }
        if (!advanced) break;
    }
    if (best_total) res.best_average = *best_total / static_cast<std::int64_t>(k * n);
    return res;
}

enum class Tri { No, Yes, Unknown };

inline std::string to_string(Tri t)
{
    switch (t) {
    case Tri::No: return "no";
    case Tri::Yes: return "yes";
    case Tri::Unknown: return "unknown";
    }
    return "unknown";
}

struct VerifyOptions {
    std::size_t variant_cap = 4096;
    std::uint64_t coloring_budget = kDefaultSearchBudget;
    std::uint64_t assignment_budget = kDefaultAssignmentBudget;
};

struct Theorem1Verdict {
    /// Some nearest-neighbor graph variant has a k-colorable extension.
    Tri coloring_path = Tri::Unknown;
    /// Some uncoded placement meets every per-node and the average bound.
    bool oracle_path = false;
    bool agree = false;
    std::size_t variants_tried = 0;
    std::optional<std::size_t> colorable_variant;
    std::optional<UncodedScheme> oracle_witness;
    std::string detail;
};

/// Decides optimal-uncoded existence twice: through coloring every tie
/// variant, and through exhaustive placement search.
inline Theorem1Verdict verify_theorem1(const Network& net, std::size_t k, const VerifyOptions& opt = {})
{
    Theorem1Verdict v;
    const auto variants = build_nn_graphs(net, k, opt.variant_cap);
    v.coloring_path = Tri::No;
    for (std::size_t q = 0; q < variants.graphs.size(); ++q) {
        ++v.variants_tried;
        if (k_colorable(extend(variants.graphs[q]), k, opt.coloring_budget)) {
            v.coloring_path = Tri::Yes;
            v.colorable_variant = q;
            break;
        }
    }
    if (v.coloring_path == Tri::No && variants.truncated) v.coloring_path = Tri::Unknown;

    SearchOptions so;
    so.filter = SearchFilter::WorstCaseOptimalOnly;
    so.budget = opt.assignment_budget;
    so.full_witnesses = false;
    const auto search = brute_force_uncoded(net, k, so);
    const Millis bound = avg_latency_lower_bound(lambda_profile(net), k);
    v.oracle_path = search.best_average && *search.best_average == bound;
    if (v.oracle_path) v.oracle_witness = search.witnesses.front();

    v.agree = v.coloring_path != Tri::Unknown && ((v.coloring_path == Tri::Yes) == v.oracle_path);
    if (!v.agree) {
        v.detail = "coloring path says " + to_string(v.coloring_path) + " over " + std::to_string(v.variants_tried) + " variants"
            + (variants.truncated ? " (truncated)" : "") + "; exhaustive search says " + (v.oracle_path ? "yes" : "no");
    }
    return v;
}

struct Corollary1Verdict {
    bool success = false;
    NearestNeighborGraph graph;
    Coloring coloring;
    UncodedScheme placement;
    LatencyReport report;
};

/// Picks, per node, its in-neighbor for k=2 so that the in-neighbor map has
/// no cycle longer than two, by re-pointing one node of each long cycle to
/// its (equally near) successor.
inline NearestNeighborGraph loop_free_g1(const Network& net)
{
    const std::size_t n = net.size();
    check_k(2, n);
    const auto first = build_nn_graphs(net, 2, 1).graphs.front();
    std::vector<NodeId> parent(n);
    for (NodeId i = 0; i < n; ++i) parent[i] = first.in_neighbors(i).front();

    // Walk parent pointers from every node; color 1 = on current walk.
    while (true) {
        std::vector<int> state(n, 0);
        std::optional<std::vector<NodeId>> cycle;
        for (NodeId s = 0; s < n && !cycle; ++s) {
            if (state[s] != 0) continue;
            std::vector<NodeId> walk;
            NodeId v = s;
            while (state[v] == 0) {
                state[v] = 1;
                walk.push_back(v);
                v = parent[v];
            }
            if (state[v] == 1) {
                const auto at = std::find(walk.begin(), walk.end(), v);
                std::vector<NodeId> c(at, walk.end());
                if (c.size() >= 3) cycle = std::move(c);
            }
            for (NodeId w : walk) state[w] = 2;
        }
        if (!cycle) break;
        // cycle lists u0, parent(u0)=u1, parent(u1)=u2, ...: u1 -> u0 is an edge.
        // Point u1's in-edge at u0 instead of u2, closing a 2-cycle.
        const auto& c = *cycle;
        const NodeId u0 = c[0];
        const NodeId u1 = c[1];
        if (net.rtt(u0, u1) != net.rtt(parent[u1], u1)) {
            fail(ErrorCode::InternalAssertion, "loop edge weights differ; nearest-neighbor loop cannot be broken");
        }
        parent[u1] = u0;
    }
    std::vector<std::vector<NodeId>> in(n);
    for (NodeId i = 0; i < n; ++i) in[i] = {parent[i]};
    return NearestNeighborGraph::from_in_neighbors(net, 2, std::move(in));
}

/// For k=2 an optimal uncoded placement always exists: build a loop-free
/// nearest-neighbor graph, 2-color it and check both bounds are met.
inline Corollary1Verdict verify_corollary1(const Network& net)
{
    auto g = loop_free_g1(net);
    const auto h = extend(g);
    auto col = k_colorable(h, 2);
    if (!col) {
        fail(ErrorCode::InternalAssertion, "loop-free nearest-neighbor graph is not 2-colorable");
    }
    auto placement = uncoded_from_coloring(g, *col);
    auto report = evaluate(net, placement, &g);
    const bool ok = report.average_optimal
        && std::all_of(report.worst_case_optimal.begin(), report.worst_case_optimal.end(), [](bool b) { return b; })
        && report.admissible.value_or(false);
    if (!ok) {
        fail(ErrorCode::InternalAssertion, "two-file placement misses a latency bound");
    }
    return Corollary1Verdict{true, std::move(g), std::move(*col), std::move(placement), std::move(report)};
}

struct RandomNetworkOptions {
    std::size_t n = 4;
    std::int64_t min_ms = 1;
    std::int64_t max_ms = 250;
    /// Draw granularity: values are multiples of 1/resolution ms.
    std::int64_t resolution = 1;
    /// Probability that an off-diagonal entry takes the shared tie value.
    double tie_bias = 0.0;
};

/// Deterministic from the seed; symmetric and zero-diagonal.
inline Network random_network(std::uint64_t seed, const RandomNetworkOptions& opt)
{
    if (opt.n < 1 || opt.min_ms < 0 || opt.max_ms < opt.min_ms || opt.resolution < 1) {
        fail(ErrorCode::InvalidArgument, "bad random network options");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> draw(opt.min_ms * opt.resolution, opt.max_ms * opt.resolution);
    std::bernoulli_distribution tie(std::clamp(opt.tie_bias, 0.0, 1.0));
    const Millis tie_value(draw(rng), opt.resolution);

    RttMatrix m(opt.n, std::vector<Millis>(opt.n, 0));
    for (std::size_t i = 0; i < opt.n; ++i) {
        for (std::size_t j = i + 1; j < opt.n; ++j) {
            const bool use_tie = tie(rng);
            const Millis fresh(draw(rng), opt.resolution);
            m[i][j] = m[j][i] = use_tie ? tie_value : fresh;
        }
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < opt.n; ++i) names.push_back("N" + std::to_string(i));
    return validate_network(std::move(names), std::move(m));
}

struct BatchOptions {
    std::uint64_t seed = 1;
    std::size_t trials = 1000;
    std::size_t min_n = 2;
    std::size_t max_n = 6;
    /// Cycled per trial.
    std::vector<double> tie_biases{0.0, 0.3, 1.0};
    std::int64_t min_ms = 1;
    std::int64_t max_ms = 250;
};

struct RandomInstance {
    std::uint64_t seed = 0;
    double tie_bias = 0.0;
    Network network;
    std::size_t k = 0;
};

/// Trial t of a batch: n uniform in [min_n, max_n], k uniform in [2, n],
/// tie bias cycled. Deterministic in (options, t).
inline RandomInstance random_instance(const BatchOptions& opt, std::size_t t)
{
    std::mt19937_64 rng(opt.seed * 0x9E3779B97F4A7C15ULL + t);
    std::uniform_int_distribution<std::size_t> pick_n(opt.min_n, opt.max_n);
    const std::size_t n = pick_n(rng);
    std::uniform_int_distribution<std::size_t> pick_k(std::min<std::size_t>(2, n), n);
    const std::size_t k = pick_k(rng);
    RandomNetworkOptions ro;
    ro.n = n;
    ro.min_ms = opt.min_ms;
    ro.max_ms = opt.max_ms;
    ro.tie_bias = opt.tie_biases.empty() ? 0.0 : opt.tie_biases[t % opt.tie_biases.size()];
    const std::uint64_t net_seed = rng();
    return RandomInstance{net_seed, ro.tie_bias, random_network(net_seed, ro), k};
}

struct Theorem1Batch {
    std::size_t trials = 0;
    std::size_t agree = 0;
    std::size_t unknown = 0;
    std::size_t optimal_uncoded = 0;
    std::vector<std::string> mismatches;
};

inline Theorem1Batch verify_theorem1_batch(const BatchOptions& opt, const VerifyOptions& vo = {})
{
    Theorem1Batch b;
    for (std::size_t t = 0; t < opt.trials; ++t) {
        const auto inst = random_instance(opt, t);
        const auto v = verify_theorem1(inst.network, inst.k, vo);
        ++b.trials;
        if (v.agree) ++b.agree;
        if (v.coloring_path == Tri::Unknown) ++b.unknown;
        if (v.oracle_path) ++b.optimal_uncoded;
        if (!v.agree) {
            b.mismatches.push_back("trial " + std::to_string(t) + " (n=" + std::to_string(inst.network.size()) + ", k=" + std::to_string(inst.k)
                                   + ", seed=" + std::to_string(inst.seed) + "): " + v.detail);
        }
    }
    return b;
}

struct Corollary1Batch {
    std::size_t trials = 0;
    std::size_t success = 0;
    std::vector<std::string> failures;
};

inline Corollary1Batch verify_corollary1_batch(const BatchOptions& opt)
{
    Corollary1Batch b;
    for (std::size_t t = 0; t < opt.trials; ++t) {
        const auto inst = random_instance(opt, t);
        ++b.trials;
        try {
            if (verify_corollary1(inst.network).success) ++b.success;
        } catch (const Error& e) {
            b.failures.push_back("trial " + std::to_string(t) + " (seed=" + std::to_string(inst.seed) + "): " + e.what());
        }
    }
    return b;
}

} // namespace geolat
