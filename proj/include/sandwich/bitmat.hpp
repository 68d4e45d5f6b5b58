#pragma once

// Dense linear algebra over GF(2). Rows are packed into 64-bit words and all
// row operations are whole-row XORs. Coordinate convention used everywhere in
// this project: coordinate j of a vector is bit j of its integer encoding and
// the leftmost character of its string form.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sandwich/errors.hpp"

namespace sandwich {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t nbits)
        : nbits_(nbits), words_((nbits + kWordBits - 1) / kWordBits, 0) {}

    static BitVector from_uint(std::uint64_t value, std::size_t nbits);
    static BitVector from_string(std::string_view s);

    std::size_t size() const { return nbits_; }
    bool get(std::size_t i) const {
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
    }
    void set(std::size_t i, bool v) {
        const Word mask = Word(1) << (i % kWordBits);
        if (v) words_[i / kWordBits] |= mask;
        else words_[i / kWordBits] &= ~mask;
    }
    bool is_zero() const;
    std::uint64_t to_uint() const;  // requires size() <= 64
    std::string to_string() const;  // coordinate 0 first

    BitVector& operator^=(const BitVector& o);
    friend BitVector operator^(BitVector a, const BitVector& b) { a ^= b; return a; }
    bool dot(const BitVector& o) const;  // parity of the AND

    bool operator==(const BitVector&) const = default;

    std::span<const Word> words() const { return words_; }
    std::span<Word> words() { return words_; }

private:
    std::size_t nbits_ = 0;
    std::vector<Word> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + kWordBits - 1) / kWordBits),
          bits_(rows * stride_, 0) {}

    static BitMatrix identity(std::size_t k);
    static BitMatrix from_rows(const std::vector<BitVector>& rows, std::size_t cols);
    static BitMatrix from_strings(const std::vector<std::string>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t i, std::size_t j) const {
        return (bits_[i * stride_ + j / kWordBits] >> (j % kWordBits)) & 1u;
    }
    void set(std::size_t i, std::size_t j, bool v) {
        const Word mask = Word(1) << (j % kWordBits);
        if (v) bits_[i * stride_ + j / kWordBits] |= mask;
        else bits_[i * stride_ + j / kWordBits] &= ~mask;
    }

    BitVector row(std::size_t i) const;
    void set_row(std::size_t i, const BitVector& v);
    void xor_row_from(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t i, std::size_t j);

    bool is_zero() const;
    std::string to_string() const;  // rows of 0/1 characters, '\n'-separated

    std::span<const Word> row_words(std::size_t i) const {
        return {bits_.data() + i * stride_, stride_};
    }
    std::span<Word> row_words(std::size_t i) {
        return {bits_.data() + i * stride_, stride_};
    }

    bool operator==(const BitMatrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<Word> bits_;
};

// Exact product over GF(2); ShapeError on a.cols != b.rows.
BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b);
inline BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) { return mat_mul(a, b); }

// m * v with v as a column vector; result has m.rows() bits.
BitVector mat_vec(const BitMatrix& m, const BitVector& v);
inline BitVector operator*(const BitMatrix& m, const BitVector& v) { return mat_vec(m, v); }

BitMatrix transpose(const BitMatrix& m);
BitMatrix operator+(const BitMatrix& a, const BitMatrix& b);  // entrywise XOR
BitMatrix hconcat(const BitMatrix& a, const BitMatrix& b);
BitMatrix vconcat(const BitMatrix& a, const BitMatrix& b);
BitMatrix block_diag(std::span<const BitMatrix> blocks);
BitMatrix mat_pow(const BitMatrix& m, std::uint64_t e);

struct RrefResult {
    BitMatrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

// Unique reduced row-echelon form.
RrefResult rref(const BitMatrix& m);
std::size_t rank(const BitMatrix& m);

// Inverse of a square matrix; SingularError names the rank deficit.
BitMatrix invert(const BitMatrix& m);

// True iff v is a GF(2)-combination of the rows of m.
bool rowspace_contains(const BitMatrix& m, const BitVector& v);

BitMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
BitMatrix random_invertible(std::size_t n, std::mt19937_64& rng);

} // namespace sandwich
