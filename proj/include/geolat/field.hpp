#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geolat/error.hpp"

namespace geolat {

using Elem = std::uint32_t;

inline bool is_prime(std::uint64_t p)
{
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

inline std::uint32_t next_prime_above(std::uint32_t n)
{
    std::uint32_t p = n + 1;
    while (!is_prime(p)) ++p;
    return p;
}

/// GF(p) for a prime p; elements are residues 0..p-1.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p = 2)
        : p_(p)
    {
        if (!is_prime(p)) {
            fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
        }
        if (p > 65521) {
            fail(ErrorCode::InvalidArgument, "field characteristic above 65521 unsupported");
        }
    }

    std::uint32_t characteristic() const noexcept { return p_; }

    Elem reduce(std::int64_t v) const
    {
        const auto m = static_cast<std::int64_t>(p_);
        return static_cast<Elem>(((v % m) + m) % m);
    }
    Elem add(Elem a, Elem b) const { return (a + b) % p_; }
    Elem sub(Elem a, Elem b) const { return (a + p_ - b) % p_; }
    Elem neg(Elem a) const { return (p_ - a) % p_; }
    Elem mul(Elem a, Elem b) const { return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_); }

    Elem pow(Elem a, std::uint64_t e) const
    {
        Elem r = 1 % p_;
        while (e > 0) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    Elem inv(Elem a) const
    {
        if (a % p_ == 0) {
            fail(ErrorCode::InvalidArgument, "inverse of zero");
        }
        return pow(a, p_ - 2);
    }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

/// Dense row-major matrix of field residues.
struct FieldMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Elem> data;

    FieldMatrix() = default;
    FieldMatrix(std::size_t r, std::size_t c)
        : rows(r)
        , cols(c)
        , data(r * c, 0)
    {
    }

    Elem& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    Elem at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::vector<Elem> column(std::size_t c) const
    {
        std::vector<Elem> out(rows);
        for (std::size_t r = 0; r < rows; ++r) out[r] = at(r, c);
        return out;
    }

    FieldMatrix select_columns(const std::vector<std::size_t>& which) const
    {
        FieldMatrix m(rows, which.size());
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t j = 0; j < which.size(); ++j) m.at(r, j) = at(r, which[j]);
        }
        return m;
    }

    friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;
};

namespace detail {

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> row_reduce(const PrimeField& f, FieldMatrix& m, std::size_t pivot_cols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < pivot_cols && row < m.rows; ++col) {
        std::size_t sel = row;
        while (sel < m.rows && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows) continue;
        if (sel != row) {
            for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(sel, c), m.at(row, c));
        }
        const Elem scale = f.inv(m.at(row, col));
        for (std::size_t c = 0; c < m.cols; ++c) m.at(row, c) = f.mul(m.at(row, c), scale);
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            const Elem factor = m.at(r, col);
            for (std::size_t c = 0; c < m.cols; ++c) {
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(row, c)));
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace detail

inline std::size_t rank(const PrimeField& f, FieldMatrix m)
{
    return detail::row_reduce(f, m, m.cols).size();
}

/// Solves a * x = b. Free variables are set to zero, so the solution is the
/// one Gauss-Jordan elimination in column order produces.
inline std::optional<std::vector<Elem>> solve(const PrimeField& f, const FieldMatrix& a, const std::vector<Elem>& b)
{
    if (b.size() != a.rows) {
        fail(ErrorCode::DimensionMismatch, "right-hand side length differs from row count");
    }
    FieldMatrix aug(a.rows, a.cols + 1);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols) = b[r];
    }
    const auto pivots = detail::row_reduce(f, aug, a.cols);
    for (std::size_t r = pivots.size(); r < aug.rows; ++r) {
        if (aug.at(r, a.cols) != 0) return std::nullopt;
    }
    std::vector<Elem> x(a.cols, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, a.cols);
    return x;
}

inline std::vector<Elem> multiply(const PrimeField& f, const FieldMatrix& a, const std::vector<Elem>& x)
{
    std::vector<Elem> y(a.rows, 0);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) y[r] = f.add(y[r], f.mul(a.at(r, c), x[c]));
    }
    return y;
}

inline Elem determinant(const PrimeField& f, FieldMatrix m)
{
    if (m.rows != m.cols) {
        fail(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
    }
    Elem det = 1 % f.characteristic();
    for (std::size_t col = 0; col < m.cols; ++col) {
        std::size_t sel = col;
        while (sel < m.rows && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows) return 0;
        if (sel != col) {
            for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(sel, c), m.at(col, c));
            det = f.neg(det);
        }
        det = f.mul(det, m.at(col, col));
        const Elem inv = f.inv(m.at(col, col));
        for (std::size_t r = col + 1; r < m.rows; ++r) {
            const Elem factor = f.mul(m.at(r, col), inv);
            for (std::size_t c = col; c < m.cols; ++c) m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(col, c)));
        }
    }
    return det;
}

} // namespace geolat
