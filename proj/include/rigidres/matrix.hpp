#pragma once

// Dense scalar matrices and exact rank.
//
// Rank over Q uses fraction-free (Bareiss) elimination on an integer matrix
// obtained by clearing row denominators; rank over GF(p) is plain Gaussian
// elimination on residues. Integer (boundary) matrices go through a sparse
// unit-pivot pass first.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "field.hpp"

namespace rigidres {

class ScalarMatrix {
public:
    ScalarMatrix() = default;

    ScalarMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field))
    {
    }

    static ScalarMatrix from_ints(FieldSpec field, const std::vector<std::vector<long long>>& rows)
    {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.front().size() : 0;
        ScalarMatrix m(field, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c)
                throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = Scalar(field, rows[i][j]);
        }
        return m;
    }

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    /// Copy keeping only the listed rows and columns, in the given order.
    ScalarMatrix submatrix(const std::vector<std::size_t>& keep_rows, const std::vector<std::size_t>& keep_cols) const
    {
        ScalarMatrix m(field_, keep_rows.size(), keep_cols.size());
        for (std::size_t i = 0; i < keep_rows.size(); ++i)
            for (std::size_t j = 0; j < keep_cols.size(); ++j)
                m(i, j) = (*this)(keep_rows[i], keep_cols[j]);
        return m;
    }

    friend bool operator==(const ScalarMatrix&, const ScalarMatrix&) = default;

private:
    FieldSpec field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

inline ScalarMatrix multiply(const ScalarMatrix& a, const ScalarMatrix& b)
{
    if (!(a.field() == b.field()))
        throw FieldMismatch("matrix product over mixed fields");
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product dimension mismatch");
    ScalarMatrix out(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero())
                    out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

namespace detail {

inline std::size_t bareiss_rank(std::vector<std::vector<BigInt>> m)
{
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m.front().size() : 0;
    std::size_t rank = 0;
    BigInt prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c)
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
            m[r][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

inline std::size_t modp_rank(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p)
{
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m.front().size() : 0;
    const FieldSpec field = FieldSpec::prime(p);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[pivot], m[rank]);
        const Scalar inv = Scalar(field, static_cast<long long>(m[rank][col])).inverse();
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][col] == 0)
                continue;
            const std::uint64_t factor =
                static_cast<std::uint64_t>((unsigned __int128)m[r][col] * inv.residue() % p);
            for (std::size_t c = col; c < cols; ++c) {
                const std::uint64_t sub = static_cast<std::uint64_t>((unsigned __int128)factor * m[rank][c] % p);
                m[r][c] = (m[r][c] + p - sub) % p;
            }
        }
        ++rank;
    }
    return rank;
}

} // namespace detail

namespace detail {

using SparseRow = std::vector<std::pair<std::size_t, long long>>; // sorted by column

inline long long sparse_get(const SparseRow& row, std::size_t col)
{
    const auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(col, std::numeric_limits<long long>::min()));
    return it != row.end() && it->first == col ? it->second : 0;
}

/// Eliminates on unit pivots (±1 over Q, any nonzero mod p) until none is
/// left. Returns the number of pivots and leaves the unpivoted rows in `rows`;
/// nullopt if an entry would overflow over Q.
inline std::optional<std::size_t> sparse_unit_elimination(std::vector<SparseRow>& rows, std::size_t cols,
                                                          std::uint64_t p)
{
    const auto mp = static_cast<long long>(p);
    std::vector<std::vector<std::size_t>> col_rows(cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r])
            col_rows[c].push_back(r);
    std::vector<bool> alive(rows.size(), true);
    auto is_unit = [&](long long v) { return p ? v != 0 : (v == 1 || v == -1); };

    std::size_t rank = 0;
    SparseRow merged;
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t c = 0; c < cols; ++c) {
            std::size_t best = rows.size();
            long long pv = 0;
            for (std::size_t r : col_rows[c]) {
                if (!alive[r])
                    continue;
                const long long v = sparse_get(rows[r], c);
                if (is_unit(v) && (best == rows.size() || rows[r].size() < rows[best].size())) {
                    best = r;
                    pv = v;
                }
            }
            if (best == rows.size())
                continue;
            // row_r ← row_r − (v_r / pv)·row_best, exact since pv is a unit.
            const long long pinv = p ? static_cast<long long>(Scalar(FieldSpec::prime(p), pv).inverse().residue()) : pv;
            const std::vector<std::size_t> targets = col_rows[c];
            for (std::size_t r : targets) {
                if (r == best || !alive[r])
                    continue;
                const long long v = sparse_get(rows[r], c);
                if (v == 0)
                    continue;
                long long factor = 0;
                if (p)
                    factor = static_cast<long long>(static_cast<unsigned __int128>(v) * pinv % p);
                else
                    factor = v * pinv;
                merged.clear();
                auto a = rows[r].begin();
                auto b = rows[best].begin();
                while (a != rows[r].end() || b != rows[best].end()) {
                    std::size_t col;
                    long long x = 0, y = 0;
                    if (b == rows[best].end() || (a != rows[r].end() && a->first < b->first)) {
                        col = a->first;
                        x = (a++)->second;
                    } else if (a == rows[r].end() || b->first < a->first) {
                        col = b->first;
                        y = (b++)->second;
                    } else {
                        col = a->first;
                        x = (a++)->second;
                        y = (b++)->second;
                    }
                    long long out = 0;
                    if (p) {
                        const auto prod = static_cast<long long>(static_cast<unsigned __int128>(y) * factor % p);
                        out = (x - prod) % mp;
                        if (out < 0)
                            out += mp;
                    } else {
                        long long prod = 0;
                        if (__builtin_mul_overflow(y, factor, &prod) || __builtin_sub_overflow(x, prod, &out))
                            return std::nullopt;
                    }
                    if (out != 0) {
                        if (x == 0)
                            col_rows[col].push_back(r);
                        merged.emplace_back(col, out);
                    }
                }
                rows[r].swap(merged);
            }
            alive[best] = false;
            ++rank;
            progress = true;
        }
    }
    std::vector<SparseRow> rest;
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (alive[r] && !rows[r].empty())
            rest.push_back(std::move(rows[r]));
    rows = std::move(rest);
    return rank;
}

} // namespace detail

/// Rank over `field` of an integer matrix given by sparse rows (sorted by
/// column). Unit-pivot elimination first; whatever is left over Q goes
/// through Bareiss.
inline std::size_t sparse_integer_rank(std::vector<detail::SparseRow> rows, std::size_t cols, const FieldSpec& field)
{
    const std::uint64_t p = field.is_rationals() ? 0 : field.characteristic();
    const auto original = p ? std::vector<detail::SparseRow>{} : rows;
    if (p) {
        const auto mp = static_cast<long long>(p);
        for (auto& row : rows) {
            detail::SparseRow reduced;
            for (const auto& [c, v] : row)
                if (const long long r = ((v % mp) + mp) % mp; r != 0)
                    reduced.emplace_back(c, r);
            row.swap(reduced);
        }
    }
    if (const auto pivots = detail::sparse_unit_elimination(rows, cols, p)) {
        if (rows.empty())
            return *pivots;
        std::vector<std::vector<BigInt>> big(rows.size(), std::vector<BigInt>(cols));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (const auto& [c, v] : rows[i])
                big[i][c] = v;
        return *pivots + detail::bareiss_rank(std::move(big));
    }
    std::vector<std::vector<BigInt>> big(original.size(), std::vector<BigInt>(cols));
    for (std::size_t i = 0; i < original.size(); ++i)
        for (const auto& [c, v] : original[i])
            big[i][c] = v;
    return detail::bareiss_rank(std::move(big));
}

/// Rank of a dense integer matrix over the given field.
inline std::size_t integer_rank(const std::vector<std::vector<long long>>& m, const FieldSpec& field)
{
    if (m.empty() || m.front().empty())
        return 0;
    const std::size_t cols = m.front().size();
    std::vector<detail::SparseRow> rows(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t c = 0; c < cols; ++c)
            if (m[i][c] != 0)
                rows[i].emplace_back(c, m[i][c]);
    return sparse_integer_rank(std::move(rows), cols, field);
}

inline std::size_t exact_rank(const ScalarMatrix& m)
{
    if (m.rows() == 0 || m.cols() == 0)
        return 0;
    if (!m.field().is_rationals()) {
        std::vector<std::vector<std::uint64_t>> red(m.rows(), std::vector<std::uint64_t>(m.cols()));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                red[i][j] = m(i, j).residue();
        return detail::modp_rank(std::move(red), m.field().characteristic());
    }
    // Clear denominators row by row, then eliminate fraction-free.
    std::vector<std::vector<BigInt>> big(m.rows(), std::vector<BigInt>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BigInt scale = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const BigInt d = boost::multiprecision::denominator(m(i, j).rational());
            scale = scale / boost::multiprecision::gcd(scale, d) * d;
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rational& q = m(i, j).rational();
            big[i][j] = boost::multiprecision::numerator(q) * (scale / boost::multiprecision::denominator(q));
        }
    }
    return detail::bareiss_rank(std::move(big));
}

} // namespace rigidres
