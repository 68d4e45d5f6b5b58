#pragma once

// A round F_k(x) = T(x + B^t f_k(A x)) over GF(2), with A and B full-row-rank
// perpendicular matrices (A B^t = 0) so the round is invertible regardless of
// whether the keyed core f is. Also the r-branch extension where several
// perpendicular pairs feed the same state.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sandwich/bitmat.hpp"
#include "sandwich/subspace.hpp"

namespace sandwich {

enum class KeyRule { none, xor_pre, xor_pre_post, swap_plus_key };

std::string_view to_string(KeyRule rule);
KeyRule key_rule_from_string(std::string_view s);  // ParseError on unknown token

// Keyed nonlinear map as a lookup table plus a key-incorporation rule.
//   none:          f_k(x) = table[x]
//   xor-pre:       f_k(x) = table[x ^ k]                     (key_bits = d1)
//   xor-pre-post:  f_k(x) = table[x ^ k_lo] ^ k_hi           (key_bits = d1+d2)
//   swap-plus-key: f_k(x) = table[x] ^ k, requires d1 = d2   (key_bits = d1)
struct KeyedMap {
    unsigned d1 = 0, d2 = 0;
    KeyRule rule = KeyRule::none;
    std::vector<std::uint32_t> table;  // 2^d1 entries, each < 2^d2

    unsigned key_bits() const;
    std::uint32_t eval(std::uint32_t x, std::uint64_t key) const;
    void check() const;  // ValidationError on any violated invariant
};

struct SchemeSpec {
    unsigned n = 0;   // word size in bits
    unsigned N = 0;   // state words
    unsigned Ni = 0;  // core input words
    unsigned No = 0;  // core output words
    BitMatrix A;      // nNi x nN
    BitMatrix B;      // nNo x nN
    BitMatrix T;      // nN x nN
    KeyedMap f;

    unsigned state_bits() const { return n * N; }
    unsigned core_in_bits() const { return n * Ni; }
    unsigned core_out_bits() const { return n * No; }
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool ok() const;
    std::string failures() const;  // "name: detail; ..." for the failing checks
};

// Report-style check of every scheme condition: shapes, full ranks,
// T invertible, A B^t = 0, core width consistency.
ValidationReport validate(const SchemeSpec& spec);

// A validated spec plus the derived data every analysis needs. Immutable after
// construction; all evaluation is const and reentrant.
class Scheme {
public:
    static Scheme make(SchemeSpec spec);  // ValidationError listing failed checks

    const SchemeSpec& spec() const { return spec_; }
    unsigned state_bits() const { return spec_.state_bits(); }

    const BitMatrix& t_inv() const { return t_inv_; }
    const BitMatrix& t_tr() const { return t_tr_; }
    const BitMatrix& t_tr_inv() const { return t_tr_inv_; }
    const BitMatrix& a_tr() const { return a_tr_; }
    const BitMatrix& b_tr() const { return b_tr_; }
    const RightInverse& right_inv_a() const { return ra_; }
    const RightInverse& right_inv_b() const { return rb_; }
    const Subspace& rowspace_a() const { return rowsp_a_; }
    const Subspace& rowspace_b() const { return rowsp_b_; }
    const Subspace& kernel_a() const { return ker_a_; }
    const Subspace& kernel_b() const { return ker_b_; }

    BitVector forward(const BitVector& x, std::uint64_t key) const;
    BitVector inverse(const BitVector& y, std::uint64_t key) const;
    // Full trace of the key chain: keys.size()+1 states starting at x.
    std::vector<BitVector> iterate(const BitVector& x, std::span<const std::uint64_t> keys) const;

private:
    Scheme() = default;
    SchemeSpec spec_;
    BitMatrix t_inv_, t_tr_, t_tr_inv_, a_tr_, b_tr_;
    RightInverse ra_, rb_;
    Subspace rowsp_a_, rowsp_b_, ker_a_, ker_b_;
};

inline BitVector round_forward(const Scheme& s, std::uint64_t key, const BitVector& x) {
    return s.forward(x, key);
}
inline BitVector round_inverse(const Scheme& s, std::uint64_t key, const BitVector& y) {
    return s.inverse(y, key);
}
inline std::vector<BitVector> iterate(const Scheme& s, std::span<const std::uint64_t> keys,
                                      const BitVector& x) {
    return s.iterate(x, keys);
}

// ---- multi-branch extension ----

struct BranchSpec {
    BitMatrix A;  // d1 x (r n N)
    BitMatrix B;  // d2 x (r n N)
    KeyedMap f;
};

struct MultiBranchSpec {
    unsigned n = 0, N = 0, r = 0;  // word size, words per block, branch count
    BitMatrix T;                   // nN x nN, replicated block-diagonally
    std::vector<BranchSpec> branches;

    unsigned state_bits() const { return n * N * r; }
};

// Checks per-branch shapes/ranks, T invertibility, and pairwise
// perpendicularity A_i B_j^t = 0 for ALL (i,j) — the inversion argument needs
// every pair, not just the diagonal.
ValidationReport validate(const MultiBranchSpec& spec);

class MultiBranchScheme {
public:
    static MultiBranchScheme make(MultiBranchSpec spec);

    const MultiBranchSpec& spec() const { return spec_; }
    unsigned state_bits() const { return spec_.state_bits(); }
    const BitMatrix& t_full() const { return t_full_; }

    // keys carries one key per branch.
    BitVector forward(const BitVector& x, std::span<const std::uint64_t> keys) const;
    BitVector inverse(const BitVector& y, std::span<const std::uint64_t> keys) const;

    // Equivalent single-core scheme: stacked A/B, block-diagonal T, product
    // core table. Branch key rules must all be `none` or all `xor-pre`; the
    // flattened key is the concatenation of the branch keys (branch 0 lowest).
    Scheme flatten(unsigned max_core_bits = 20) const;

private:
    MultiBranchScheme() = default;
    MultiBranchSpec spec_;
    BitMatrix t_full_, t_full_inv_;
    std::vector<BitMatrix> b_tr_;
};

inline BitVector multi_branch_forward(const MultiBranchScheme& s,
                                      std::span<const std::uint64_t> keys, const BitVector& x) {
    return s.forward(x, keys);
}
inline BitVector multi_branch_inverse(const MultiBranchScheme& s,
                                      std::span<const std::uint64_t> keys, const BitVector& y) {
    return s.inverse(y, keys);
}

} // namespace sandwich
