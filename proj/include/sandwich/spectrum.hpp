#pragma once

// Exact differential (DDT) and linear-correlation (LAT) spectra of keyed maps,
// the reduction of whole-round coefficients to core-table lookups, and the
// brute-force oracles that check the reduction by direct summation.

#include <cstdint>
#include <optional>
#include <vector>

#include "sandwich/exact.hpp"
#include "sandwich/scheme.hpp"

namespace sandwich {

struct Limits {
    unsigned exhaust_bits = 20;  // widest exhaustive input sweep
    unsigned table_bits = 24;    // widest materialized table (d1 + d2)
    unsigned retry_budget = 64;
};

enum class SpectrumKind { differential, correlation };

// Exact integer table: counts for the differential case (row sums 2^d1),
// signed sums for the correlation case (per-column power 2^{2 d1}).
struct SpectrumTable {
    SpectrumKind kind = SpectrumKind::differential;
    unsigned d1 = 0, d2 = 0;
    std::vector<std::int64_t> entries;  // (1<<d1) x (1<<d2), row-major by u

    std::int64_t at(std::uint32_t u, std::uint32_t v) const {
        return entries[(std::size_t(u) << d2) | v];
    }
};

// D[u][v] = #{x : f_k(x+u) + f_k(x) = v}. ResourceError beyond the limits
// (suggesting single-row mode).
SpectrumTable ddt(const KeyedMap& map, std::uint64_t key, const Limits& limits = {});
// L[u][v] = sum_x (-1)^{v.f_k(x) + u.x}.
SpectrumTable lat(const KeyedMap& map, std::uint64_t key, const Limits& limits = {});

std::int64_t ddt_entry(const KeyedMap& map, std::uint64_t key, std::uint32_t u, std::uint32_t v);
std::int64_t lat_entry(const KeyedMap& map, std::uint64_t key, std::uint32_t u, std::uint32_t v);

// One row of the table (fixed input difference / mask u): 2^d2 entries.
std::vector<std::int64_t> ddt_row(const KeyedMap& map, std::uint64_t key, std::uint32_t u,
                                  const Limits& limits = {});
std::vector<std::int64_t> lat_row(const KeyedMap& map, std::uint64_t key, std::uint32_t u,
                                  const Limits& limits = {});

// In-place Walsh-Hadamard transform; size must be a power of two.
void fwht(std::vector<std::int64_t>& a);

// One whole-round coefficient reduced to a core lookup. `active` records
// whether the rowspace membership condition held; inactive implies value 0.
struct ReducedCoefficient {
    Dyadic value;  // denominator 2^{n Ni}
    bool active = false;
    BitVector core_u, core_v;  // pair handed to the core's table
};

// delta_F(alpha, beta) = delta_f(A alpha, R_B^t (alpha + T^-1 beta)) when
// alpha + T^-1 beta lies in rowsp(B), else 0.
class DiffReducer {
public:
    explicit DiffReducer(const Scheme& s, std::uint64_t key, const Limits& limits = {});
    ReducedCoefficient at(const BitVector& alpha, const BitVector& beta) const;

private:
    const Scheme* s_;
    std::uint64_t key_;
    BitMatrix rb_tr_;
    std::optional<SpectrumTable> core_;
};

// lambda_F(alpha, beta) = lambda_f(R_A^t (alpha + T^t beta), B T^t beta) when
// alpha + T^t beta lies in rowsp(A), else 0.
class CorrReducer {
public:
    explicit CorrReducer(const Scheme& s, std::uint64_t key, const Limits& limits = {});
    ReducedCoefficient at(const BitVector& alpha, const BitVector& beta) const;

private:
    const Scheme* s_;
    std::uint64_t key_;
    BitMatrix ra_tr_, b_t_tr_;
    std::optional<SpectrumTable> core_;
};

ReducedCoefficient reduce_diff(const Scheme& s, std::uint64_t key, const BitVector& alpha,
                               const BitVector& beta);
ReducedCoefficient reduce_corr(const Scheme& s, std::uint64_t key, const BitVector& alpha,
                               const BitVector& beta);

// Direct summation over all 2^{nN} states of the defining formulas, used as
// the independent oracle against the reducers. Materializes the round's truth
// table once.
class BruteForcer {
public:
    explicit BruteForcer(const Scheme& s, std::uint64_t key, const Limits& limits = {});
    Dyadic diff(const BitVector& alpha, const BitVector& beta) const;  // denominator 2^{nN}
    Dyadic corr(const BitVector& alpha, const BitVector& beta) const;

private:
    unsigned bits_ = 0;
    std::vector<std::uint64_t> ftab_;
};

Dyadic brute_diff(const Scheme& s, std::uint64_t key, const BitVector& alpha,
                  const BitVector& beta, const Limits& limits = {});
Dyadic brute_corr(const Scheme& s, std::uint64_t key, const BitVector& alpha,
                  const BitVector& beta, const Limits& limits = {});

struct OracleMismatch {
    SpectrumKind kind;
    std::uint64_t alpha, beta;
    Dyadic reduced, brute;
};

struct OracleCheckResult {
    std::uint64_t pairs = 0;       // (alpha, beta) pairs swept, per mode
    std::uint64_t mismatch_count = 0;
    std::vector<OracleMismatch> first_mismatches;  // capped sample
    bool ok() const { return mismatch_count == 0; }
};

// Sweeps every (alpha, beta) pair in both modes and compares the reduced
// coefficient against the brute-force value, exactly.
OracleCheckResult oracle_check(const Scheme& s, std::uint64_t key, const Limits& limits = {},
                               std::size_t keep_mismatches = 8);

} // namespace sandwich
