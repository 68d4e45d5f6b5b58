#pragma once

// Generation of perpendicular full-row-rank matrix pairs (A, B) with
// A B^t = 0: the coordinate-split construction (disjoint supports) and
// systematic generator / parity-check pairs.

#include <cstdint>
#include <optional>

#include "sandwich/bitmat.hpp"

namespace sandwich {

enum class PairProvenance { coordinate_split, systematic, user };

struct PerpPair {
    BitMatrix A;
    BitMatrix B;
    PairProvenance provenance = PairProvenance::user;
};

// ValidationError unless A B^t = 0 and both matrices have full row rank.
void check_pair(const PerpPair& p);

// Coordinate-split construction: choose an index set J of size l2 inside
// {0..l1+l2-1}; A rows are sampled (seeded, without replacement) from the
// nonzero vectors supported off J, B rows from the nonzero vectors supported
// on J. Resamples until both matrices are full rank; GenerationError after
// `retry_budget` attempts, reporting the best ranks achieved.
// Pre: rows_a <= 2^l1 and rows_b <= 2^l2 (PreconditionError otherwise).
PerpPair gen_coordinate_split(unsigned l1, unsigned l2, unsigned rows_a, unsigned rows_b,
                              std::uint64_t seed, unsigned retry_budget = 64);

// A = [I_k | m], B = [m^t | I_{l-k}]; perpendicular because m + m = 0 in
// characteristic two, and automatically full rank. m is k x (l-k), random
// (seeded) when absent.
PerpPair gen_systematic_pair(unsigned k, unsigned l, const std::optional<BitMatrix>& m,
                             std::uint64_t seed);

// True iff rowsp(A) = rowsp(B); then ker A = ker B and the two kernel-chain
// computations coincide.
bool is_self_dual_pair(const PerpPair& p);

} // namespace sandwich
