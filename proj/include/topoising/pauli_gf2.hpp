// Copyright 2026 The topoising Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace topoising {

/// Packed binary vector over GF(2).
class BitVector {
   public:
    using word_t = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

    static BitVector from_indices(std::size_t size, std::span<const std::size_t> indices) {
        BitVector v(size);
        for (auto k : indices) {
            if (k >= size) {
                throw std::out_of_range("bit index " + std::to_string(k) + " out of range for size " +
                                        std::to_string(size));
            }
            v.flip(k);
        }
        return v;
    }

    std::size_t size() const { return size_; }
    std::span<const word_t> words() const { return words_; }

    bool get(std::size_t k) const { return (words_[k / kWordBits] >> (k % kWordBits)) & 1U; }
    void set(std::size_t k, bool value) {
        word_t mask = word_t{1} << (k % kWordBits);
        if (value) {
            words_[k / kWordBits] |= mask;
        } else {
            words_[k / kWordBits] &= ~mask;
        }
    }
    void flip(std::size_t k) { words_[k / kWordBits] ^= word_t{1} << (k % kWordBits); }

    BitVector &operator^=(const BitVector &other) {
        check_same_size(other);
        for (std::size_t w = 0; w < words_.size(); ++w) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector &b) {
        a ^= b;
        return a;
    }

    std::size_t popcount() const {
        std::size_t total = 0;
        for (auto w : words_) {
            total += static_cast<std::size_t>(std::popcount(w));
        }
        return total;
    }

    /// Number of positions set in both vectors.
    std::size_t and_popcount(const BitVector &other) const {
        check_same_size(other);
        std::size_t total = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            total += static_cast<std::size_t>(std::popcount(words_[w] & other.words_[w]));
        }
        return total;
    }

    bool none() const {
        return std::all_of(words_.begin(), words_.end(), [](word_t w) { return w == 0; });
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            word_t bits = words_[w];
            while (bits != 0) {
                out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
        return out;
    }

    /// Low 64 bits; only meaningful when size() <= 64.
    word_t low_word() const { return words_.empty() ? 0 : words_[0]; }

    /// Concatenation [a | b].
    static BitVector concat(const BitVector &a, const BitVector &b) {
        BitVector out(a.size() + b.size());
        for (auto k : a.indices()) {
            out.set(k, true);
        }
        for (auto k : b.indices()) {
            out.set(a.size() + k, true);
        }
        return out;
    }

    BitVector slice(std::size_t begin, std::size_t end) const {
        BitVector out(end - begin);
        for (std::size_t k = begin; k < end; ++k) {
            if (get(k)) {
                out.set(k - begin, true);
            }
        }
        return out;
    }

    bool operator==(const BitVector &other) const = default;
    auto operator<=>(const BitVector &other) const {
        if (auto c = size_ <=> other.size_; c != 0) {
            return c;
        }
        // Most significant word first so ordering matches the integer value.
        for (std::size_t w = words_.size(); w-- > 0;) {
            if (auto c = words_[w] <=> other.words_[w]; c != 0) {
                return c;
            }
        }
        return std::strong_ordering::equal;
    }

   private:
    void check_same_size(const BitVector &other) const {
        if (size_ != other.size_) {
            throw std::invalid_argument("bit vector size mismatch: " + std::to_string(size_) + " vs " +
                                        std::to_string(other.size_));
        }
    }

    std::size_t size_ = 0;
    std::vector<word_t> words_;
};

/// An n-qubit Pauli operator sign * X^x Z^z, with all X factors ordered left of
/// all Z factors. Only real signs are tracked.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::size_t n) : x_(n), z_(n) {}
    PauliString(BitVector x, BitVector z, int sign = 1) : x_(std::move(x)), z_(std::move(z)), sign_(sign) {
        if (x_.size() != z_.size()) {
            throw std::invalid_argument("x and z supports must have equal length");
        }
        if (sign_ != 1 && sign_ != -1) {
            throw std::invalid_argument("Pauli sign must be +1 or -1");
        }
    }

    std::size_t num_qubits() const { return x_.size(); }
    const BitVector &x() const { return x_; }
    const BitVector &z() const { return z_; }
    int sign() const { return sign_; }

    bool is_identity() const { return x_.none() && z_.none(); }
    std::size_t weight() const {
        std::size_t w = 0;
        for (std::size_t k = 0; k < num_qubits(); ++k) {
            w += (x_.get(k) || z_.get(k)) ? 1 : 0;
        }
        return w;
    }

    /// Symplectic row [x | z] of length 2n.
    BitVector symplectic() const { return BitVector::concat(x_, z_); }

    /// Same supports, sign forced to +1.
    PauliString unsigned_copy() const { return PauliString(x_, z_, 1); }

    PauliString operator-() const { return PauliString(x_, z_, -sign_); }

    /// Text form such as "+XZ_Y"; Y marks a site carrying both X and Z.
    std::string str() const {
        std::string out(1, sign_ > 0 ? '+' : '-');
        for (std::size_t k = 0; k < num_qubits(); ++k) {
            out.push_back("_ZXY"[(x_.get(k) ? 2 : 0) + (z_.get(k) ? 1 : 0)]);
        }
        return out;
    }

    bool operator==(const PauliString &other) const = default;

   private:
    BitVector x_;
    BitVector z_;
    int sign_ = 1;
};

inline PauliString pauli_from_supports(std::size_t n, std::span<const std::size_t> x_sites,
                                       std::span<const std::size_t> z_sites) {
    return PauliString(BitVector::from_indices(n, x_sites), BitVector::from_indices(n, z_sites), 1);
}

inline PauliString x_type(std::size_t n, std::span<const std::size_t> sites) { return pauli_from_supports(n, sites, {}); }
inline PauliString z_type(std::size_t n, std::span<const std::size_t> sites) { return pauli_from_supports(n, {}, sites); }

inline void check_same_qubits(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("Pauli qubit count mismatch: " + std::to_string(a.num_qubits()) + " vs " +
                                    std::to_string(b.num_qubits()));
    }
}

/// Symplectic inner product of the two supports.
inline bool anticommutes(const PauliString &a, const PauliString &b) {
    check_same_qubits(a, b);
    return ((a.x().and_popcount(b.z()) + a.z().and_popcount(b.x())) & 1U) != 0;
}

inline bool commutes(const PauliString &a, const PauliString &b) { return !anticommutes(a, b); }

/// a * b, reordered so X factors stay left of Z factors.
inline PauliString multiply(const PauliString &a, const PauliString &b) {
    check_same_qubits(a, b);
    int sign = a.sign() * b.sign();
    if (a.z().and_popcount(b.x()) & 1U) {
        sign = -sign;
    }
    return PauliString(a.x() ^ b.x(), a.z() ^ b.z(), sign);
}

/// Dense binary matrix stored as packed rows.
class Gf2Matrix {
   public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    static Gf2Matrix from_rows(std::size_t cols, std::vector<BitVector> rows) {
        Gf2Matrix m;
        m.cols_ = cols;
        for (const auto &r : rows) {
            if (r.size() != cols) {
                throw std::invalid_argument("row length does not match column count");
            }
        }
        m.rows_ = std::move(rows);
        return m;
    }

    static Gf2Matrix identity(std::size_t n) {
        Gf2Matrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            m.set(k, k, true);
        }
        return m;
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v) { rows_[r].set(c, v); }
    const BitVector &row(std::size_t r) const { return rows_[r]; }
    const std::vector<BitVector> &row_vectors() const { return rows_; }

    void append_row(BitVector r) {
        if (r.size() != cols_) {
            throw std::invalid_argument("row length does not match column count");
        }
        rows_.push_back(std::move(r));
    }

    Gf2Matrix transpose() const {
        Gf2Matrix t(cols_, rows());
        for (std::size_t r = 0; r < rows(); ++r) {
            for (auto c : rows_[r].indices()) {
                t.set(c, r, true);
            }
        }
        return t;
    }

    /// m * v over GF(2).
    BitVector apply(const BitVector &v) const {
        BitVector out(rows());
        for (std::size_t r = 0; r < rows(); ++r) {
            if (rows_[r].and_popcount(v) & 1U) {
                out.set(r, true);
            }
        }
        return out;
    }

   private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

/// Reduced row echelon form. Pivots are chosen column by column, lowest row
/// index first, so the result is a deterministic function of the input.
struct RowEchelon {
    Gf2Matrix reduced;                     // nonzero rows only
    std::vector<std::size_t> pivot_cols;   // one per nonzero row, ascending
};

inline RowEchelon gf2_row_reduce(const Gf2Matrix &m) {
    std::vector<BitVector> rows = m.row_vectors();
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
        std::size_t found = next;
        while (found < rows.size() && !rows[found].get(c)) {
            ++found;
        }
        if (found == rows.size()) {
            continue;
        }
        std::swap(rows[next], rows[found]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != next && rows[r].get(c)) {
                rows[r] ^= rows[next];
            }
        }
        pivots.push_back(c);
        ++next;
    }
    rows.resize(next);
    return RowEchelon{Gf2Matrix::from_rows(m.cols(), std::move(rows)), std::move(pivots)};
}

inline std::size_t gf2_rank(const Gf2Matrix &m) { return gf2_row_reduce(m).pivot_cols.size(); }

/// Basis of {v : m v = 0}, one vector per free column in ascending order.
inline std::vector<BitVector> gf2_nullspace(const Gf2Matrix &m) {
    RowEchelon ech = gf2_row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : ech.pivot_cols) {
        is_pivot[c] = true;
    }
    std::vector<BitVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        BitVector v(m.cols());
        v.set(free, true);
        for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) {
            if (ech.reduced.get(r, free)) {
                v.set(ech.pivot_cols[r], true);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// True when v is a GF(2) combination of the rows of m.
inline bool gf2_in_row_space(const Gf2Matrix &m, const BitVector &v) {
    Gf2Matrix extended = m;
    extended.append_row(v);
    return gf2_rank(extended) == gf2_rank(m);
}

/// Rows are the symplectic vectors [x | z] of the given operators.
inline Gf2Matrix symplectic_matrix(std::span<const PauliString> ops) {
    if (ops.empty()) {
        return Gf2Matrix(0, 0);
    }
    std::vector<BitVector> rows;
    rows.reserve(ops.size());
    for (const auto &op : ops) {
        check_same_qubits(op, ops.front());
        rows.push_back(op.symplectic());
    }
    return Gf2Matrix::from_rows(2 * ops.front().num_qubits(), std::move(rows));
}

}  // namespace topoising
