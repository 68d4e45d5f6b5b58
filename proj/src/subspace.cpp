#include "sandwich/subspace.hpp"

#include <cassert>
#include <string>

namespace sandwich {

Subspace Subspace::zero(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = BitMatrix(0, ambient);
    return s;
}

Subspace Subspace::full(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = BitMatrix::identity(ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
    return s;
}

Subspace Subspace::span_of(const BitMatrix& vectors) {
    RrefResult r = rref(vectors);
    Subspace s;
    s.ambient_ = vectors.cols();
    s.basis_ = BitMatrix(r.rank, vectors.cols());
    for (std::size_t i = 0; i < r.rank; ++i) s.basis_.set_row(i, r.reduced.row(i));
    s.pivots_ = std::move(r.pivot_cols);
    return s;
}

bool Subspace::contains(const BitVector& v) const {
    if (v.size() != ambient_)
        throw ShapeError("subspace membership: vector width " + std::to_string(v.size()) +
                         " vs ambient " + std::to_string(ambient_));
    BitVector rem = v;
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        if (rem.get(pivots_[i])) {
            auto rw = basis_.row_words(i);
            auto vw = rem.words();
            for (std::size_t k = 0; k < vw.size(); ++k) vw[k] ^= rw[k];
        }
    }
    return rem.is_zero();
}

std::vector<BitVector> Subspace::enumerate(unsigned max_dim) const {
    if (dim() > max_dim)
        throw ResourceError("subspace enumeration: dimension " + std::to_string(dim()) +
                            " exceeds limit " + std::to_string(max_dim));
    const std::size_t count = std::size_t(1) << dim();
    std::vector<BitVector> out;
    out.reserve(count);
    for (std::size_t sel = 0; sel < count; ++sel) {
        BitVector v(ambient_);
        for (std::size_t i = 0; i < dim(); ++i)
            if ((sel >> i) & 1u) v ^= basis_.row(i);
        out.push_back(std::move(v));
    }
    return out;
}

Subspace kernel_basis(const BitMatrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivot_cols) is_pivot[c] = true;

    std::vector<BitVector> gens;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        BitVector v(m.cols());
        v.set(c, true);
        for (std::size_t i = 0; i < r.rank; ++i)
            if (r.reduced.get(i, c)) v.set(r.pivot_cols[i], true);
        gens.push_back(std::move(v));
    }
    return Subspace::span_of(BitMatrix::from_rows(gens, m.cols()));
}

Subspace subspace_intersect(const Subspace& s1, const Subspace& s2) {
    if (s1.ambient_dim() != s2.ambient_dim())
        throw ShapeError("subspace intersection: ambient " + std::to_string(s1.ambient_dim()) +
                         " vs " + std::to_string(s2.ambient_dim()));
    const std::size_t d = s1.ambient_dim();

    // Zassenhaus: eliminate rows [u|u] for u in s1 and [w|0] for w in s2; the
    // echelon rows whose left half vanished carry an intersection basis on the
    // right half.
    BitMatrix big(s1.dim() + s2.dim(), 2 * d);
    for (std::size_t i = 0; i < s1.dim(); ++i) {
        const BitVector u = s1.basis().row(i);
        for (std::size_t j = 0; j < d; ++j)
            if (u.get(j)) {
                big.set(i, j, true);
                big.set(i, d + j, true);
            }
    }
    for (std::size_t i = 0; i < s2.dim(); ++i) {
        const BitVector w = s2.basis().row(i);
        for (std::size_t j = 0; j < d; ++j)
            if (w.get(j)) big.set(s1.dim() + i, j, true);
    }

    RrefResult r = rref(big);
    std::vector<BitVector> gens;
    for (std::size_t i = 0; i < r.rank; ++i) {
        if (r.pivot_cols[i] < d) continue;
        BitVector v(d);
        for (std::size_t j = 0; j < d; ++j)
            if (r.reduced.get(i, d + j)) v.set(j, true);
        gens.push_back(std::move(v));
    }
    return Subspace::span_of(BitMatrix::from_rows(gens, d));
}

Subspace subspace_image(const BitMatrix& m, const Subspace& s) {
    if (m.rows() != m.cols() || m.cols() != s.ambient_dim())
        throw ShapeError("subspace image: map is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", ambient " + std::to_string(s.ambient_dim()));
    if (rank(m) != m.rows())
        throw SingularError("subspace image requires an invertible map");
    std::vector<BitVector> rows;
    rows.reserve(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) rows.push_back(m * s.basis().row(i));
    return Subspace::span_of(BitMatrix::from_rows(rows, s.ambient_dim()));
}

RightInverse right_inverse(const BitMatrix& m, bool /*prefer_paper_form*/) {
    const std::size_t k = m.rows(), l = m.cols();
    if (l < k)
        throw ShapeError("right inverse: " + std::to_string(k) + "x" + std::to_string(l) +
                         " has more rows than columns");
    RrefResult r = rref(m);
    if (r.rank != k)
        throw RankError("right inverse: not full row rank (rank " + std::to_string(r.rank) +
                        " of " + std::to_string(k) + ")");

    // Solve on the pivot columns only: with P the pivot set, R[P,:] = m[:,P]^-1
    // and all other rows zero. For m = [I_k | U] this is exactly the solution
    // with upper block I_k (lower block Y = 0, so UY = 0).
    BitMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (m.get(i, r.pivot_cols[j])) sub.set(i, j, true);
    BitMatrix sub_inv = invert(sub);

    BitMatrix inv(l, k);
    for (std::size_t j = 0; j < k; ++j) inv.set_row(r.pivot_cols[j], sub_inv.row(j));

    assert(mat_mul(m, inv) == BitMatrix::identity(k));
    return RightInverse{m, inv};
}

} // namespace sandwich
