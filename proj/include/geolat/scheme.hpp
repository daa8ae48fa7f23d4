#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geolat/error.hpp"
#include "geolat/field.hpp"

namespace geolat {

using FileIndex = std::size_t; // 1-based, as in W_1 .. W_k

/// Raw files placed one per node: node i stores W_{assignment[i]}.
struct UncodedScheme {
    std::size_t k = 0;
    std::vector<FileIndex> assignment;

    friend bool operator==(const UncodedScheme&, const UncodedScheme&) = default;
};

inline UncodedScheme make_uncoded(std::size_t k, std::vector<FileIndex> assignment)
{
    if (k < 1) fail(ErrorCode::KOutOfRange, "k must be at least 1");
    for (FileIndex f : assignment) {
        if (f < 1 || f > k) {
            fail(ErrorCode::InvalidArgument, "file index " + std::to_string(f) + " outside 1.." + std::to_string(k));
        }
    }
    return UncodedScheme{k, std::move(assignment)};
}

/// Scalar linear code: node i stores X_i = sum_j W_j * G[j][i] over GF(p).
/// The generator always has full row rank k.
class LinearScheme {
public:
    LinearScheme(PrimeField field, FieldMatrix generator)
        : field_(field)
        , g_(std::move(generator))
    {
        for (auto& e : g_.data) {
            if (e >= field_.characteristic()) {
                fail(ErrorCode::InvalidArgument, "generator entry " + std::to_string(e) + " is not a field residue");
            }
        }
        if (g_.rows == 0) {
            fail(ErrorCode::KOutOfRange, "generator needs at least one row");
        }
        if (geolat::rank(field_, g_) != g_.rows) {
            fail(ErrorCode::RankDeficient, "generator rank below k=" + std::to_string(g_.rows));
        }
    }

    const PrimeField& field() const noexcept { return field_; }
    const FieldMatrix& generator() const noexcept { return g_; }
    std::size_t k() const noexcept { return g_.rows; }
    std::size_t n() const noexcept { return g_.cols; }

    /// "W1+W2+W4", "2*W1+W3", or "0" for an all-zero column.
    std::string formula(std::size_t node) const
    {
        std::string out;
        for (std::size_t j = 0; j < g_.rows; ++j) {
            const Elem c = g_.at(j, node);
            if (c == 0) continue;
            if (!out.empty()) out += "+";
            if (c != 1) out += std::to_string(c) + "*";
            out += "W" + std::to_string(j + 1);
        }
        return out.empty() ? "0" : out;
    }

    friend bool operator==(const LinearScheme&, const LinearScheme&) = default;

private:
    PrimeField field_;
    FieldMatrix g_;
};

using StorageScheme = std::variant<UncodedScheme, LinearScheme>;

/// Embeds an uncoded placement as unit generator columns.
inline LinearScheme uncoded_as_linear(const UncodedScheme& s, const PrimeField& field, std::size_t k)
{
    if (k < 1) fail(ErrorCode::KOutOfRange, "k must be at least 1");
    FieldMatrix g(k, s.assignment.size());
    std::vector<bool> stored(k, false);
    for (std::size_t i = 0; i < s.assignment.size(); ++i) {
        const FileIndex f = s.assignment[i];
        if (f < 1 || f > k) {
            fail(ErrorCode::InvalidArgument, "file index " + std::to_string(f) + " outside 1.." + std::to_string(k));
        }
        g.at(f - 1, i) = 1;
        stored[f - 1] = true;
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (!stored[j]) {
            fail(ErrorCode::RankDeficient, "file W" + std::to_string(j + 1) + " is stored nowhere");
        }
    }
    return LinearScheme(field, std::move(g));
}

inline LinearScheme as_linear(const StorageScheme& s, const PrimeField& field = PrimeField(2))
{
    if (const auto* u = std::get_if<UncodedScheme>(&s)) return uncoded_as_linear(*u, field, u->k);
    return std::get<LinearScheme>(s);
}

inline std::size_t scheme_k(const StorageScheme& s)
{
    return std::visit([](const auto& v) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, UncodedScheme>) {
            return v.k;
        } else {
            return v.k();
        }
    }, s);
}

inline std::size_t scheme_n(const StorageScheme& s)
{
    return std::visit([](const auto& v) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, UncodedScheme>) {
            return v.assignment.size();
        } else {
            return v.n();
        }
    }, s);
}

/// Coefficients v with G_S * v = e_j (j 1-based), where G_S holds the
/// generator columns of the selected nodes in the given order.
inline std::optional<std::vector<Elem>> solve_decode(const PrimeField& field, const FieldMatrix& selected_columns, FileIndex j)
{
    if (j < 1 || j > selected_columns.rows) {
        fail(ErrorCode::InvalidArgument, "file index " + std::to_string(j) + " out of range");
    }
    std::vector<Elem> target(selected_columns.rows, 0);
    target[j - 1] = 1;
    return solve(field, selected_columns, target);
}

} // namespace geolat
