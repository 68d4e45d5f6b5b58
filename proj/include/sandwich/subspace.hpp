#pragma once

// Subspaces of GF(2)^d kept as reduced row-echelon bases, so two subspaces are
// equal iff their bases are bit-identical. Also the right-inverse machinery
// for full-row-rank matrices.

#include <cstddef>
#include <vector>

#include "sandwich/bitmat.hpp"

namespace sandwich {

class Subspace {
public:
    Subspace() = default;

    static Subspace zero(std::size_t ambient);
    static Subspace full(std::size_t ambient);
    // Span of the rows of `vectors`; basis is re-reduced to canonical form.
    static Subspace span_of(const BitMatrix& vectors);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const BitMatrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const BitVector& v) const;
    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

    // All 2^dim member vectors; ResourceError beyond max_dim.
    std::vector<BitVector> enumerate(unsigned max_dim = 24) const;

private:
    std::size_t ambient_ = 0;
    BitMatrix basis_;  // RREF, one row per basis vector
    std::vector<std::size_t> pivots_;
};

// {v : m v = 0}, dimension cols - rank.
Subspace kernel_basis(const BitMatrix& m);

// Exact intersection via Zassenhaus block elimination.
Subspace subspace_intersect(const Subspace& s1, const Subspace& s2);

// {m v : v in s} for invertible square m; dimension preserved.
Subspace subspace_image(const BitMatrix& m, const Subspace& s);

struct RightInverse {
    BitMatrix source;   // k x l, full row rank
    BitMatrix inverse;  // l x k, source * inverse = I_k
};

// Canonical right inverse supported on the pivot columns of `m`. When m is
// (column-permutable to) systematic form [I_k | U], this is the solution with
// upper block I_k and lower block zero. `prefer_paper_form` is accepted for
// interface stability; both settings return the canonical solution.
RightInverse right_inverse(const BitMatrix& m, bool prefer_paper_form = true);

} // namespace sandwich
