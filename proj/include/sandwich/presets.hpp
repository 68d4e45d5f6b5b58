#pragma once

// Ready-made scheme instances: the two-branch Feistel network, the FOX /
// Lai-Massey round, the fully linear case with its closed form, and
// generalized Feistel networks of Type 1 (single branch) and Type 3 (three
// branches). All are parameterized over the word size so exhaustive
// verification stays affordable.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "sandwich/perp.hpp"
#include "sandwich/scheme.hpp"

namespace sandwich {

// Block-pattern helper: pattern[i][j] == 1 places an n x n identity block.
BitMatrix from_block_pattern(const std::vector<std::vector<int>>& pattern, unsigned n);

// Seeded random core tables (key rule xor-pre unless stated otherwise).
KeyedMap random_bijective_map(unsigned d, std::uint64_t seed, KeyRule rule = KeyRule::xor_pre);
KeyedMap random_map(unsigned d1, unsigned d2, std::uint64_t seed, KeyRule rule = KeyRule::xor_pre);

// Permutation matrix swapping the low and high halves of a d-bit word
// (d even), and the matching keyed core (table = swap, key XORed into the
// output).
BitMatrix half_swap_matrix(unsigned d);
KeyedMap swap_core(unsigned d);

// N=2, Ni=No=1, A=[I 0], B=[0 I], T = block swap:
// (x0, x1) -> (x1 + f_k(x0), x0).
Scheme feistel(unsigned n, std::uint64_t seed = 1);
Scheme feistel(unsigned n, KeyedMap f);

// N=4, Ni=No=2, A = B = [[I 0 I 0],[0 I 0 I]], T the Lai-Massey orthomorphism
// acting on the left half: (L0,L1,R0,R1) -> (z1+L1, z0+z1+L0+L1, z0+R0, z1+R1)
// with (z0,z1) = f_k(L0+R0, L1+R1).
Scheme fox(unsigned n, std::uint64_t seed = 1);
Scheme fox(unsigned n, KeyedMap f);

// Single-branch rotation network: A reads block 0, B writes block 1, T rotates
// the N blocks. N = 4 is the standard Type-1 shape.
Scheme gfn_type1(unsigned n, unsigned N = 4, std::uint64_t seed = 1);

// Three-branch network over 3N blocks: branch j reads block j(N+1) and writes
// block j(N+1)+1, with T replicated block-diagonally. N = 4 is the standard
// Type-3 shape.
MultiBranchScheme gfn_type3(unsigned n, unsigned N = 4, std::uint64_t seed = 1);

// Fully linear instance: the core is the half-word swap with the key XORed in,
// so F_k(x) = C x + D k with C = T(I + B^t S A) and D = T B^t. C is invertible
// for any invertible T because (I + B^t S A) squares to the identity when
// A B^t = 0.
struct LinearClosedForm {
    unsigned n = 0, N = 0;
    BitMatrix S;  // core's linear part (half-word swap)
    BitMatrix C;  // T (I + B^t S A)
    BitMatrix D;  // T B^t
};

// Ni = No = 1; `pair` supplies A (n x nN) and B (n x nN); T defaults to the
// identity. PreconditionError when n is odd (no half-word swap).
std::pair<Scheme, LinearClosedForm> linear_case(unsigned n, unsigned N, const PerpPair& pair,
                                                const std::optional<BitMatrix>& T = {});

// C^ell x + sum_i C^i D k_{ell-1-i}: must equal the iterated round exactly.
BitVector closed_form_endpoint(const LinearClosedForm& lcf, const BitVector& x,
                               std::span<const std::uint64_t> keys);

// Two ciphertexts under the same key chain leak the input difference:
// x_a + x_b = C^{-ell} (y_a + y_b).
BitVector recover_input_difference(const LinearClosedForm& lcf, const BitVector& ya,
                                   const BitVector& yb, unsigned ell);

} // namespace sandwich
