#include "sandwich/bitmat.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace sandwich {

namespace {

void check_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw ShapeError(std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
}

bool parity_and(std::span<const Word> a, std::span<const Word> b) {
    Word acc = 0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) acc ^= a[i] & b[i];
    return std::popcount(acc) & 1u;
}

} // namespace

BitVector BitVector::from_uint(std::uint64_t value, std::size_t nbits) {
    BitVector v(nbits);
    if (nbits == 0) return v;
    if (nbits < 64) value &= (std::uint64_t(1) << nbits) - 1;
    if (!v.words_.empty()) v.words_[0] = value;
    return v;
}

BitVector BitVector::from_string(std::string_view s) {
    BitVector v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') v.set(i, true);
        else if (s[i] != '0')
            throw ParseError("invalid bit string: expected only 0/1, got '" + std::string(1, s[i]) + "'");
    }
    return v;
}

bool BitVector::is_zero() const {
    for (Word w : words_)
        if (w) return false;
    return true;
}

std::uint64_t BitVector::to_uint() const {
    if (nbits_ > 64) throw ShapeError("to_uint: vector wider than 64 bits");
    return words_.empty() ? 0 : words_[0];
}

std::string BitVector::to_string() const {
    std::string s(nbits_, '0');
    for (std::size_t i = 0; i < nbits_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

BitVector& BitVector::operator^=(const BitVector& o) {
    check_same_size(nbits_, o.nbits_, "vector xor width");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

bool BitVector::dot(const BitVector& o) const {
    check_same_size(nbits_, o.nbits_, "dot product width");
    return parity_and(words_, o.words_);
}

BitMatrix BitMatrix::identity(std::size_t k) {
    BitMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector>& rows, std::size_t cols) {
    BitMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    BitMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw ShapeError("ragged rows in matrix literal");
        m.set_row(i, BitVector::from_string(rows[i]));
    }
    return m;
}

BitVector BitMatrix::row(std::size_t i) const {
    BitVector v(cols_);
    auto src = row_words(i);
    std::copy(src.begin(), src.end(), v.words().begin());
    return v;
}

void BitMatrix::set_row(std::size_t i, const BitVector& v) {
    check_same_size(v.size(), cols_, "row width");
    auto dst = row_words(i);
    std::copy(v.words().begin(), v.words().end(), dst.begin());
}

void BitMatrix::xor_row_from(std::size_t dst, std::size_t src) {
    Word* d = bits_.data() + dst * stride_;
    const Word* s = bits_.data() + src * stride_;
    for (std::size_t k = 0; k < stride_; ++k) d[k] ^= s[k];
}

void BitMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    Word* a = bits_.data() + i * stride_;
    Word* b = bits_.data() + j * stride_;
    for (std::size_t k = 0; k < stride_; ++k) std::swap(a[k], b[k]);
}

bool BitMatrix::is_zero() const {
    for (Word w : bits_)
        if (w) return false;
    return true;
}

std::string BitMatrix::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) out += '\n';
        out += row(i).to_string();
    }
    return out;
}

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matrix product: " + std::to_string(a.cols()) + " cols vs " +
                         std::to_string(b.rows()) + " rows");
    BitMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto arow = a.row_words(i);
        auto crow = c.row_words(i);
        for (std::size_t wk = 0; wk < arow.size(); ++wk) {
            Word w = arow[wk];
            while (w) {
                const std::size_t k = wk * kWordBits + std::countr_zero(w);
                auto brow = b.row_words(k);
                for (std::size_t t = 0; t < crow.size(); ++t) crow[t] ^= brow[t];
                w &= w - 1;
            }
        }
    }
    return c;
}

BitVector mat_vec(const BitMatrix& m, const BitVector& v) {
    check_same_size(m.cols(), v.size(), "matrix-vector width");
    BitVector y(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (parity_and(m.row_words(i), v.words())) y.set(i, true);
    return y;
}

BitMatrix transpose(const BitMatrix& m) {
    BitMatrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto words = m.row_words(i);
        for (std::size_t wk = 0; wk < words.size(); ++wk) {
            Word w = words[wk];
            while (w) {
                const std::size_t j = wk * kWordBits + std::countr_zero(w);
                t.set(j, i, true);
                w &= w - 1;
            }
        }
    }
    return t;
}

BitMatrix operator+(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("matrix sum: shape mismatch");
    BitMatrix c = a;
    for (std::size_t i = 0; i < c.rows(); ++i) {
        auto dst = c.row_words(i);
        auto src = b.row_words(i);
        for (std::size_t k = 0; k < dst.size(); ++k) dst[k] ^= src[k];
    }
    return c;
}

BitMatrix hconcat(const BitMatrix& a, const BitMatrix& b) {
    check_same_size(a.rows(), b.rows(), "hconcat rows");
    BitMatrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a.get(i, j)) c.set(i, j, true);
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (b.get(i, j)) c.set(i, a.cols() + j, true);
    }
    return c;
}

BitMatrix vconcat(const BitMatrix& a, const BitMatrix& b) {
    check_same_size(a.cols(), b.cols(), "vconcat cols");
    BitMatrix c(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) c.set_row(i, a.row(i));
    for (std::size_t i = 0; i < b.rows(); ++i) c.set_row(a.rows() + i, b.row(i));
    return c;
}

BitMatrix block_diag(std::span<const BitMatrix> blocks) {
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) { rows += b.rows(); cols += b.cols(); }
    BitMatrix c(rows, cols);
    std::size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b.get(i, j)) c.set(ro + i, co + j, true);
        ro += b.rows();
        co += b.cols();
    }
    return c;
}

BitMatrix mat_pow(const BitMatrix& m, std::uint64_t e) {
    if (m.rows() != m.cols()) throw ShapeError("matrix power: not square");
    BitMatrix acc = BitMatrix::identity(m.rows());
    BitMatrix base = m;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

RrefResult rref(const BitMatrix& m) {
    RrefResult r;
    r.reduced = m;
    std::size_t next = 0;
    for (std::size_t col = 0; col < m.cols() && next < m.rows(); ++col) {
        std::size_t pivot = next;
        while (pivot < m.rows() && !r.reduced.get(pivot, col)) ++pivot;
        if (pivot == m.rows()) continue;
        r.reduced.swap_rows(next, pivot);
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != next && r.reduced.get(i, col)) r.reduced.xor_row_from(i, next);
        r.pivot_cols.push_back(col);
        ++next;
    }
    r.rank = r.pivot_cols.size();
    return r;
}

std::size_t rank(const BitMatrix& m) { return rref(m).rank; }

BitMatrix invert(const BitMatrix& m) {
    if (m.rows() != m.cols())
        throw ShapeError("invert: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    const std::size_t n = m.rows();
    RrefResult r = rref(hconcat(m, BitMatrix::identity(n)));
    std::size_t left_rank = 0;
    for (std::size_t c : r.pivot_cols)
        if (c < n) ++left_rank;
    if (left_rank < n)
        throw SingularError("singular matrix: rank " + std::to_string(left_rank) + " of " +
                            std::to_string(n) + " (deficit " + std::to_string(n - left_rank) + ")");
    BitMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (r.reduced.get(i, n + j)) inv.set(i, j, true);
    return inv;
}

bool rowspace_contains(const BitMatrix& m, const BitVector& v) {
    check_same_size(m.cols(), v.size(), "rowspace membership width");
    RrefResult r = rref(m);
    BitVector rem = v;
    for (std::size_t i = 0; i < r.rank; ++i) {
        if (rem.get(r.pivot_cols[i])) {
            auto rw = r.reduced.row_words(i);
            auto vw = rem.words();
            for (std::size_t k = 0; k < vw.size(); ++k) vw[k] ^= rw[k];
        }
    }
    return rem.is_zero();
}

BitMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    BitMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (rng() & 1u) m.set(i, j, true);
    return m;
}

BitMatrix random_invertible(std::size_t n, std::mt19937_64& rng) {
    // Random square matrices over GF(2) are invertible with probability ~0.29,
    // so rejection sampling terminates fast.
    for (;;) {
        BitMatrix m = random_matrix(n, n, rng);
        if (rank(m) == n) return m;
    }
}

} // namespace sandwich
