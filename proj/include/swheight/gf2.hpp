#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "swheight/errors.hpp"

namespace swh {

// Process-wide cap on the packed payload of any single bit_matrix.
// Default 2 GiB; the CLI exposes a flag and an environment override.
inline std::atomic<std::size_t>& memory_budget_bytes() {
    static std::atomic<std::size_t> budget{std::size_t{2} << 30};
    return budget;
}

inline void set_memory_budget(std::size_t bytes) { memory_budget_bytes().store(bytes); }

// Packed vector over GF(2). Length is fixed at construction; unused tail
// bits of the last word are kept zero.
class bit_vector {
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    bit_vector() = default;
    explicit bit_vector(std::size_t length)
        : length_(length), words_((length + 63) / 64, 0) {}

    std::size_t size() const { return length_; }
    std::size_t word_count() const { return words_.size(); }

    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool value = true) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    bit_vector& operator^=(const bit_vector& other) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
        return *this;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    std::size_t popcount() const {
        std::size_t n = 0;
        for (auto w : words_) n += std::popcount(w);
        return n;
    }

    // Index of the first set bit, or npos.
    std::size_t first_set() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) return (w << 6) + std::countr_zero(words_[w]);
        return npos;
    }

    // First set bit at position >= from, or npos.
    std::size_t first_set_from(std::size_t from) const {
        if (from >= length_) return npos;
        std::size_t w = from >> 6;
        std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (cur) return (w << 6) + std::countr_zero(cur);
            if (++w == words_.size()) return npos;
            cur = words_[w];
        }
    }

    // Parity of the AND with another vector of equal length.
    bool dot(const bit_vector& other) const {
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
        return std::popcount(acc) & 1u;
    }

    friend bool operator==(const bit_vector& a, const bit_vector& b) {
        return a.length_ == b.length_ && a.words_ == b.words_;
    }

private:
    std::size_t length_ = 0;
    std::vector<std::uint64_t> words_;
};

// Dense row-major matrix over GF(2). Shape is fixed at construction.
class bit_matrix {
public:
    bit_matrix() = default;
    bit_matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
        const std::size_t words_per_row = (cols + 63) / 64;
        const std::size_t payload = rows * words_per_row * sizeof(std::uint64_t);
        if (payload > memory_budget_bytes().load())
            throw resource_error("bit_matrix of shape " + std::to_string(rows) + "x" +
                                 std::to_string(cols) + " needs " + std::to_string(payload) +
                                 " bytes, over the memory budget of " +
                                 std::to_string(memory_budget_bytes().load()));
        data_.assign(rows, bit_vector(cols));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const bit_vector& row(std::size_t r) const { return data_[r]; }
    bit_vector& row(std::size_t r) { return data_[r]; }

    bool get(std::size_t r, std::size_t c) const { return data_[r].test(c); }
    void set(std::size_t r, std::size_t c, bool v = true) { data_[r].set(c, v); }
    void flip(std::size_t r, std::size_t c) { data_[r].flip(c); }

    // y = M x
    bit_vector apply(const bit_vector& x) const {
        if (x.size() != cols_) throw usage_error("bit_matrix::apply: dimension mismatch");
        bit_vector y(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            if (data_[r].dot(x)) y.set(r);
        return y;
    }

    friend bool operator==(const bit_matrix& a, const bit_matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<bit_vector> data_;
};

inline bit_matrix transpose(const bit_matrix& m) {
    bit_matrix t(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const bit_vector& row = m.row(r);
        for (std::size_t c = row.first_set(); c != bit_vector::npos; c = row.first_set_from(c + 1))
            t.set(c, r);
    }
    return t;
}

namespace detail {

// Row echelon form in place. Pivots are taken on the first nonzero column,
// rows in index order. Eliminates below only; returns the pivot (row, col)
// list. `width` limits the columns eligible as pivots (the tail of each row
// may carry an augmented part).
inline std::vector<std::pair<std::size_t, std::size_t>> echelonize(std::vector<bit_vector>& rows,
                                                                   std::size_t width) {
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && !rows[p].test(c)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        for (std::size_t q = r + 1; q < rows.size(); ++q)
            if (rows[q].test(c)) rows[q] ^= rows[r];
        pivots.emplace_back(r, c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

// GF(2) rank. The input is not mutated.
inline std::size_t gf2_rank(const bit_matrix& m) {
    std::vector<bit_vector> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    return detail::echelonize(rows, m.cols()).size();
}

// Solve a x = b over GF(2). Returns a particular solution (free variables
// zero) or nullopt when the system is inconsistent.
inline std::optional<bit_vector> solve_linear(const bit_matrix& a, const bit_vector& b) {
    if (b.size() != a.rows())
        throw usage_error("solve_linear: b has length " + std::to_string(b.size()) +
                          ", expected " + std::to_string(a.rows()));
    const std::size_t n = a.cols();
    // working rows carry the augmented bit at column n
    std::vector<bit_vector> rows;
    rows.reserve(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        bit_vector w(n + 1);
        const bit_vector& src = a.row(r);
        for (std::size_t c = src.first_set(); c != bit_vector::npos; c = src.first_set_from(c + 1))
            w.set(c);
        if (b.test(r)) w.set(n);
        rows.push_back(std::move(w));
    }
    auto pivots = detail::echelonize(rows, n);
    // any remaining row reduces to 0 = 1 -> inconsistent
    for (std::size_t q = pivots.size(); q < rows.size(); ++q)
        if (rows[q].test(n)) return std::nullopt;
    // back-substitution with free variables at zero
    bit_vector x(n);
    for (std::size_t i = pivots.size(); i-- > 0;) {
        const auto [r, c] = pivots[i];
        bool v = rows[r].test(n);
        const bit_vector& row = rows[r];
        for (std::size_t j = row.first_set_from(c + 1); j != bit_vector::npos && j < n;
             j = row.first_set_from(j + 1))
            v ^= x.test(j);
        x.set(c, v);
    }
    return x;
}

}  // namespace swh
