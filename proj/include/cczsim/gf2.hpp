// Copyright 2026 The cczsim Authors
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

#ifndef CCZSIM_GF2_HPP
#define CCZSIM_GF2_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cczsim {

/// Packed bit vector over GF(2), 64 bits per word.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {}

    static BitVec from_indices(size_t num_bits, std::span<const uint32_t> indices) {
        BitVec v(num_bits);
        for (auto i : indices) {
            v.flip(i);
        }
        return v;
    }

    size_t size() const { return num_bits_; }
    size_t num_words() const { return words_.size(); }
    std::span<uint64_t> words() { return words_; }
    std::span<const uint64_t> words() const { return words_; }

    bool operator[](size_t k) const { return (words_[k >> 6] >> (k & 63)) & 1; }
    void set(size_t k, bool value) {
        uint64_t mask = uint64_t{1} << (k & 63);
        if (value) {
            words_[k >> 6] |= mask;
        } else {
            words_[k >> 6] &= ~mask;
        }
    }
    void flip(size_t k) { words_[k >> 6] ^= uint64_t{1} << (k & 63); }
    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    BitVec &operator^=(const BitVec &other) {
        check_size(other);
        for (size_t w = 0; w < words_.size(); w++) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }
    BitVec &operator&=(const BitVec &other) {
        check_size(other);
        for (size_t w = 0; w < words_.size(); w++) {
            words_[w] &= other.words_[w];
        }
        return *this;
    }
    BitVec &operator|=(const BitVec &other) {
        check_size(other);
        for (size_t w = 0; w < words_.size(); w++) {
            words_[w] |= other.words_[w];
        }
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec &b) { return a ^= b; }
    friend BitVec operator&(BitVec a, const BitVec &b) { return a &= b; }
    friend BitVec operator|(BitVec a, const BitVec &b) { return a |= b; }
    bool operator==(const BitVec &other) const = default;

    size_t popcount() const {
        size_t total = 0;
        for (auto w : words_) {
            total += std::popcount(w);
        }
        return total;
    }
    bool any() const {
        return std::any_of(words_.begin(), words_.end(), [](uint64_t w) { return w != 0; });
    }
    /// Parity of |this AND other|.
    bool dot(const BitVec &other) const {
        check_size(other);
        uint64_t acc = 0;
        for (size_t w = 0; w < words_.size(); w++) {
            acc ^= words_[w] & other.words_[w];
        }
        return std::popcount(acc) & 1;
    }
    /// Parity of the bits at the given positions.
    bool parity_at(std::span<const uint32_t> indices) const {
        bool p = false;
        for (auto i : indices) {
            p ^= (*this)[i];
        }
        return p;
    }
    std::vector<uint32_t> ones() const {
        std::vector<uint32_t> out;
        for (size_t w = 0; w < words_.size(); w++) {
            uint64_t x = words_[w];
            while (x) {
                out.push_back(static_cast<uint32_t>(w * 64 + std::countr_zero(x)));
                x &= x - 1;
            }
        }
        return out;
    }
    /// Index of the lowest set bit, or size() when empty.
    size_t first_one() const {
        for (size_t w = 0; w < words_.size(); w++) {
            if (words_[w]) {
                return w * 64 + std::countr_zero(words_[w]);
            }
        }
        return num_bits_;
    }
    std::string str() const {
        std::string s(num_bits_, '_');
        for (size_t k = 0; k < num_bits_; k++) {
            if ((*this)[k]) {
                s[k] = '1';
            }
        }
        return s;
    }

   private:
    void check_size(const BitVec &other) const {
        if (other.num_bits_ != num_bits_) {
            throw std::invalid_argument(
                "BitVec size mismatch: " + std::to_string(num_bits_) + " vs " + std::to_string(other.num_bits_));
        }
    }

    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// Sparse binary matrix stored as sorted row supports, with a column index.
class SparseMatrix {
   public:
    SparseMatrix() = default;
    SparseMatrix(size_t num_cols, std::vector<std::vector<uint32_t>> rows) : num_cols_(num_cols), rows_(std::move(rows)) {
        for (auto &r : rows_) {
            std::sort(r.begin(), r.end());
            for (auto c : r) {
                if (c >= num_cols_) {
                    throw std::out_of_range("SparseMatrix column index out of range");
                }
            }
        }
        cols_.assign(num_cols_, {});
        for (uint32_t r = 0; r < rows_.size(); r++) {
            for (auto c : rows_[r]) {
                cols_[c].push_back(r);
            }
        }
    }

    size_t num_rows() const { return rows_.size(); }
    size_t num_cols() const { return num_cols_; }
    const std::vector<uint32_t> &row(size_t r) const { return rows_[r]; }
    const std::vector<uint32_t> &col(size_t c) const { return cols_[c]; }
    const std::vector<std::vector<uint32_t>> &rows() const { return rows_; }
    size_t nnz() const {
        size_t total = 0;
        for (const auto &r : rows_) {
            total += r.size();
        }
        return total;
    }

    /// H · v over GF(2).
    BitVec multiply(const BitVec &v) const {
        if (v.size() != num_cols_) {
            throw std::invalid_argument("SparseMatrix::multiply size mismatch");
        }
        BitVec out(rows_.size());
        for (size_t r = 0; r < rows_.size(); r++) {
            if (v.parity_at(rows_[r])) {
                out.set(r, true);
            }
        }
        return out;
    }
    /// Hᵀ · u over GF(2): XOR of the rows selected by u.
    BitVec transpose_multiply(const BitVec &u) const {
        if (u.size() != rows_.size()) {
            throw std::invalid_argument("SparseMatrix::transpose_multiply size mismatch");
        }
        BitVec out(num_cols_);
        for (auto r : u.ones()) {
            for (auto c : rows_[r]) {
                out.flip(c);
            }
        }
        return out;
    }
    BitVec row_vec(size_t r) const { return BitVec::from_indices(num_cols_, rows_[r]); }

   private:
    size_t num_cols_ = 0;
    std::vector<std::vector<uint32_t>> rows_;
    std::vector<std::vector<uint32_t>> cols_;
};

/// Incrementally built echelon basis of a GF(2) row space.
///
/// Every stored vector has a distinct pivot (its lowest set bit) and is
/// reduced against all earlier pivots, so reduction is a single forward pass.
class RowBasis {
   public:
    explicit RowBasis(size_t num_bits) : num_bits_(num_bits) {}

    size_t rank() const { return basis_.size(); }

    BitVec reduce(BitVec v) const {
        for (size_t k = 0; k < basis_.size(); k++) {
            if (v[pivots_[k]]) {
                v ^= basis_[k];
            }
        }
        return v;
    }
    bool contains(const BitVec &v) const { return !reduce(v).any(); }

    /// Returns true if v was independent of the current basis.
    bool insert(const BitVec &v) {
        BitVec r = reduce(v);
        size_t p = r.first_one();
        if (p == num_bits_) {
            return false;
        }
        pivots_.push_back(p);
        basis_.push_back(std::move(r));
        return true;
    }

   private:
    size_t num_bits_;
    std::vector<size_t> pivots_;
    std::vector<BitVec> basis_;
};

inline RowBasis row_basis_of(const SparseMatrix &m) {
    RowBasis basis(m.num_cols());
    for (size_t r = 0; r < m.num_rows(); r++) {
        basis.insert(m.row_vec(r));
    }
    return basis;
}

inline size_t gf2_rank(const SparseMatrix &m) { return row_basis_of(m).rank(); }

/// Restriction of a support list to a subset of columns, re-indexed.
inline std::vector<uint32_t> restrict_support(std::span<const uint32_t> support, std::span<const int32_t> local_index) {
    std::vector<uint32_t> out;
    for (auto q : support) {
        if (local_index[q] >= 0) {
            out.push_back(static_cast<uint32_t>(local_index[q]));
        }
    }
    return out;
}

}  // namespace cczsim

#endif
