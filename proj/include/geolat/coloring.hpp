#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "geolat/error.hpp"
#include "geolat/nn_graph.hpp"

namespace geolat {

using Color = std::size_t;

struct Coloring {
    std::vector<Color> colors;
    std::size_t color_count = 0;

    friend bool operator==(const Coloring&, const Coloring&) = default;
};

inline bool is_proper(const UndirectedGraph& g, const Coloring& c)
{
    if (c.colors.size() != g.size()) return false;
    for (Color col : c.colors) {
        if (col >= c.color_count) return false;
    }
    for (const auto& [u, v] : g.edges()) {
        if (c.colors[u] == c.colors[v]) return false;
    }
    return true;
}

/// Renumbers colors by first appearance in node order, so equal colorings
/// up to permutation compare equal.
inline Coloring canonicalize(Coloring c)
{
    std::vector<Color> remap(c.color_count, static_cast<Color>(-1));
    Color next = 0;
    for (auto& col : c.colors) {
        if (remap[col] == static_cast<Color>(-1)) remap[col] = next++;
        col = remap[col];
    }
    return c;
}

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

/// Greedy clique: seeded from each vertex in turn, adding the highest-degree
/// compatible vertex. Not necessarily maximum; its size bounds chi from below.
inline std::vector<NodeId> max_clique_lower_bound(const UndirectedGraph& g)
{
    const std::size_t n = g.size();
    std::vector<NodeId> best;
    std::vector<NodeId> by_degree(n);
    for (NodeId v = 0; v < n; ++v) by_degree[v] = v;
    std::stable_sort(by_degree.begin(), by_degree.end(), [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
    for (NodeId seed = 0; seed < n; ++seed) {
        std::vector<NodeId> clique{seed};
        for (NodeId v : by_degree) {
            if (v == seed) continue;
            if (std::all_of(clique.begin(), clique.end(), [&](NodeId u) { return g.adjacent(u, v); })) {
                clique.push_back(v);
            }
        }
        if (clique.size() > best.size()) best = std::move(clique);
    }
    std::sort(best.begin(), best.end());
    return best;
}

namespace detail {

class DsaturSearch {
public:
    DsaturSearch(const UndirectedGraph& g, std::size_t budget_colors, std::uint64_t& expansions, std::uint64_t limit)
        : g_(g)
        , k_(budget_colors)
        , colors_(g.size(), kNone)
        , forbid_(g.size(), std::vector<std::uint32_t>(budget_colors, 0))
        , expansions_(expansions)
        , limit_(limit)
    {
    }

    std::optional<Coloring> run(const std::vector<NodeId>& clique)
    {
        // The clique's colors are forced up to permutation.
        Color next = 0;
        for (NodeId v : clique) assign(v, next++);
        if (search(next)) {
            return Coloring{colors_, k_};
        }
        return std::nullopt;
    }

private:
    static constexpr Color kNone = static_cast<Color>(-1);

    void assign(NodeId v, Color c)
    {
        colors_[v] = c;
        for (NodeId w : g_.neighbors(v)) ++forbid_[w][c];
    }

    void unassign(NodeId v)
    {
        const Color c = colors_[v];
        colors_[v] = kNone;
        for (NodeId w : g_.neighbors(v)) --forbid_[w][c];
    }

    std::size_t saturation(NodeId v) const
    {
        std::size_t s = 0;
        for (auto f : forbid_[v]) s += f > 0 ? 1 : 0;
        return s;
    }

    // (saturation, degree, lowest index)
    std::optional<NodeId> pick() const
    {
        std::optional<NodeId> best;
        std::size_t best_sat = 0;
        std::size_t best_deg = 0;
        for (NodeId v = 0; v < g_.size(); ++v) {
            if (colors_[v] != kNone) continue;
            const auto sat = saturation(v);
            const auto deg = g_.degree(v);
            if (!best || sat > best_sat || (sat == best_sat && deg > best_deg)) {
                best = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        return best;
    }

    bool search(Color used)
    {
        const auto v = pick();
        if (!v) return true;
        if (++expansions_ > limit_) {
            fail(ErrorCode::TimeBudgetExceeded, "coloring search exceeded " + std::to_string(limit_) + " node expansions");
        }
        // A fresh color is only ever the next unused one.
        const Color top = std::min<Color>(used + 1, k_);
        for (Color c = 0; c < top; ++c) {
            if (forbid_[*v][c] > 0) continue;
            assign(*v, c);
            if (search(std::max<Color>(used, c + 1))) return true;
            unassign(*v);
        }
        return false;
    }

    const UndirectedGraph& g_;
    std::size_t k_;
    std::vector<Color> colors_;
    std::vector<std::vector<std::uint32_t>> forbid_;
    std::uint64_t& expansions_;
    std::uint64_t limit_;
};

} // namespace detail

/// Exact decision: a proper coloring with at most `budget_colors` colors, or
/// nothing. The returned coloring is canonical and has color_count equal to
/// the budget. `search_budget` caps node expansions.
inline std::optional<Coloring> k_colorable(const UndirectedGraph& g, std::size_t budget_colors,
                                           std::uint64_t search_budget = kDefaultSearchBudget)
{
    if (budget_colors < 1) {
        fail(ErrorCode::InvalidArgument, "color budget must be at least 1");
    }
    const auto clique = max_clique_lower_bound(g);
    if (clique.size() > budget_colors) return std::nullopt;
    std::uint64_t expansions = 0;
    auto found = detail::DsaturSearch(g, budget_colors, expansions, search_budget).run(clique);
    if (!found) return std::nullopt;
    auto c = canonicalize(std::move(*found));
    c.color_count = budget_colors;
    return c;
}

struct ChromaticResult {
    std::size_t count = 0;
    Coloring coloring;
};

/// Exact chromatic number with a witness, searching budgets upward from the
/// clique bound. The search budget is shared across all attempts.
inline ChromaticResult chromatic_number(const UndirectedGraph& g, std::uint64_t search_budget = kDefaultSearchBudget)
{
    if (g.size() == 0) return {};
    const auto clique = max_clique_lower_bound(g);
    std::uint64_t expansions = 0;
    for (std::size_t k = std::max<std::size_t>(clique.size(), 1); k <= g.size(); ++k) {
        auto found = detail::DsaturSearch(g, k, expansions, search_budget).run(clique);
        if (found) {
            auto c = canonicalize(std::move(*found));
            c.color_count = k;
            return {k, std::move(c)};
        }
    }
    fail(ErrorCode::InternalAssertion, "no coloring with n colors");
}

} // namespace geolat
