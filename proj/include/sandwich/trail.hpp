#pragma once

// Kernel-intersection chains, core maxima, deterministic T-orbit trails with
// exact products, fixed-point detection, and the round-count report.

#include <cstdint>
#include <span>
#include <vector>

#include "sandwich/exact.hpp"
#include "sandwich/scheme.hpp"
#include "sandwich/spectrum.hpp"

namespace sandwich {

enum class TrailMode { differential, linear };

// S_i = intersection of T^j ker A for j = 0..i (differential) or of
// (T^t)^j ker B (linear). Dims are nonincreasing and
// codim(S_{l-1}) <= l * n * Ni (resp. No).
struct KernelChain {
    TrailMode mode = TrailMode::differential;
    unsigned length = 0;
    unsigned n = 0, N = 0, Nio = 0;     // Nio = Ni (differential) or No (linear)
    std::vector<Subspace> steps;        // S_0 .. S_{length-1}
    std::vector<std::size_t> dims;

    std::size_t final_dim() const { return dims.back(); }
    std::size_t final_codim() const { return std::size_t(n) * N - dims.back(); }
    // M with n(N - M) = dim(S_{l-1}); fractional when dim is not word-aligned.
    Frac M() const { return Frac::make(std::int64_t(final_codim()), n); }
    // Bound exponent codim(S_{l-1}) / (n Nio) = M/Nio: 1 after one round,
    // N/Nio once the chain collapses. The round-count inequality is
    // l >= exponent, i.e. codim(S_{l-1}) <= l n Nio.
    Frac exponent() const { return Frac::make(std::int64_t(final_codim()), std::int64_t(n) * Nio); }
};

KernelChain kernel_chain(const Scheme& s, unsigned ell, TrailMode mode);

struct KeySet {
    bool exhaustive = false;
    std::vector<std::uint64_t> keys;
};

// Exhaustive when the key space is at most 2^exhaustive_limit_bits, otherwise
// `samples` seeded draws.
KeySet default_key_set(const KeyedMap& map, std::uint64_t seed,
                       unsigned exhaustive_limit_bits = 12, std::size_t samples = 256);

// delta = max over scanned keys and nonzero core inputs u of delta_{f_k}(u, 0);
// lambda = max over nonzero output masks w of |lambda_{f_k}(0, w)|. The zero
// input is excluded: it would force both maxima to 1 and void every bound.
struct CoreMaxima {
    Dyadic delta;
    Dyadic lambda;
    bool exhaustive_keys = false;
    std::size_t keys_scanned = 0;
};

CoreMaxima core_maxima(const Scheme& s, const KeySet& keys);

struct TrailStep {
    BitVector alpha_in, alpha_out;
    BitVector core_u, core_v;  // pair handed to the core table
    Dyadic coefficient;        // via the reduction, never re-estimated
    bool active = false;       // core input (resp. mask image) nonzero
};

struct TrailReport {
    TrailMode mode = TrailMode::differential;
    std::vector<BitVector> alphas;  // length ell+1
    std::vector<TrailStep> steps;
    ExactProb product;              // exact product of the step coefficients
    std::size_t active_count = 0;
    CoreMaxima maxima;
    Frac chain_exponent;            // codim-based exponent at this ell
    // |product| <= max^chain_exponent: the headline bound; can be violated by
    // probability-1 trails made of inactive steps only (reported, not relied on).
    bool chain_bound_holds = false;
    // |product| <= max^active_count: provable from the definitions, always true.
    bool active_bound_holds = false;
};

// Differential trail with alpha_{j+1} = T alpha_j; requires alpha0 in ker A
// (PreconditionError otherwise). One key per round. When `maxima` is null a
// default seeded key set is scanned.
TrailReport build_diff_trail(const Scheme& s, const BitVector& alpha0,
                             std::span<const std::uint64_t> keys,
                             const CoreMaxima* maxima = nullptr);

// Linear trail with alpha_j = T^t alpha_{j+1} (so alpha_j = (T^t)^{-j} alpha0);
// requires alpha0 in ker B.
TrailReport build_lin_trail(const Scheme& s, const BitVector& alpha0,
                            std::span<const std::uint64_t> keys,
                            const CoreMaxima* maxima = nullptr);

// ker A  intersect  ker(T + I): nonzero members pin every chain member, so the
// chain can never collapse below this subspace. Linear mode uses ker B and T^t.
Subspace fixed_points(const Scheme& s, TrailMode mode = TrailMode::differential);

struct BoundRow {
    unsigned ell = 0;
    std::size_t dim_diff = 0, dim_lin = 0;  // dim S_{ell-1}
    Frac M_diff, M_lin;
    Frac exp_diff, exp_lin;
    bool collapsed_diff = false, collapsed_lin = false;  // chain hit its floor
};

struct MinRoundsReport {
    std::vector<BoundRow> rows;
    std::size_t floor_diff = 0, floor_lin = 0;             // fixed-subspace dims
    unsigned first_collapse_diff = 0, first_collapse_lin = 0;  // 0 = not reached
    CoreMaxima maxima;
};

MinRoundsReport min_rounds_report(const Scheme& s, unsigned ell_max, const CoreMaxima& maxima);

} // namespace sandwich
