#pragma once

// Shared test helpers: independent brute-force oracles (enumeration-based, no
// reuse of the code paths under test) and a seeded random-scheme generator.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <set>
#include <vector>

#include "sandwich/bitmat.hpp"
#include "sandwich/presets.hpp"
#include "sandwich/scheme.hpp"
#include "sandwich/subspace.hpp"

namespace testsupport {

using namespace sandwich;

inline std::vector<std::uint64_t> keys_vec(std::initializer_list<std::uint64_t> ks) {
    return {ks};
}

// All 2^bits vectors as integers.
inline std::uint64_t vec_count(unsigned bits) { return std::uint64_t(1) << bits; }

// Kernel of m by trying every vector.
inline std::set<std::uint64_t> brute_kernel_set(const BitMatrix& m) {
    std::set<std::uint64_t> out;
    for (std::uint64_t v = 0; v < vec_count(static_cast<unsigned>(m.cols())); ++v)
        if (mat_vec(m, BitVector::from_uint(v, m.cols())).is_zero()) out.insert(v);
    return out;
}

// Membership in the row space by enumerating all row combinations.
inline bool brute_rowspace_contains(const BitMatrix& m, const BitVector& v) {
    for (std::uint64_t sel = 0; sel < vec_count(static_cast<unsigned>(m.rows())); ++sel) {
        BitVector acc(m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            if ((sel >> i) & 1u) acc ^= m.row(i);
        if (acc == v) return true;
    }
    return false;
}

// Every member of a subspace, as integers, by enumerating basis combinations.
inline std::set<std::uint64_t> subspace_set(const Subspace& s) {
    std::set<std::uint64_t> out;
    for (const BitVector& v : s.enumerate()) out.insert(v.to_uint());
    return out;
}

inline std::set<std::uint64_t> intersect_sets(const std::set<std::uint64_t>& a,
                                              const std::set<std::uint64_t>& b) {
    std::set<std::uint64_t> out;
    for (std::uint64_t v : a)
        if (b.count(v)) out.insert(v);
    return out;
}

// Multiplication in GF(2^3) modulo x^3 + x + 1, and the cube map x -> x^3.
inline std::uint32_t gf8_mul(std::uint32_t a, std::uint32_t b) {
    std::uint32_t p = 0;
    for (int i = 0; i < 3; ++i)
        if ((b >> i) & 1u) p ^= a << i;
    for (int i = 4; i >= 3; --i)
        if ((p >> i) & 1u) p ^= 0b1011u << (i - 3);
    return p & 7u;
}

inline KeyedMap cube_map_gf8(KeyRule rule = KeyRule::xor_pre) {
    KeyedMap f;
    f.d1 = f.d2 = 3;
    f.rule = rule;
    for (std::uint32_t x = 0; x < 8; ++x)
        f.table.push_back(gf8_mul(gf8_mul(x, x), x));
    return f;
}

// Identity table with xor-pre keying: f_k(u) = u ^ k.
inline KeyedMap xor_core(unsigned d) {
    KeyedMap f;
    f.d1 = f.d2 = d;
    f.rule = KeyRule::xor_pre;
    for (std::uint32_t x = 0; x < (1u << d); ++x) f.table.push_back(x);
    return f;
}

inline KeyedMap zero_core(unsigned d1, unsigned d2) {
    KeyedMap f;
    f.d1 = d1;
    f.d2 = d2;
    f.rule = KeyRule::none;
    f.table.assign(std::size_t(1) << d1, 0u);
    return f;
}

inline BitMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
    BitMatrix p(perm.size(), perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) p.set(i, perm[i], true);
    return p;
}

// Seeded random validated scheme with state width <= max_state_bits. The
// perpendicular pair comes from a systematic generator/parity-check pair with
// mixed rows and permuted columns; about half the cores are non-bijective.
inline Scheme random_scheme(std::uint64_t seed, unsigned max_state_bits = 14) {
    std::mt19937_64 rng(seed);
    auto pick = [&](unsigned lo, unsigned hi) {
        return lo + static_cast<unsigned>(rng() % (hi - lo + 1));
    };

    unsigned n = pick(1, 3);
    while (max_state_bits / n < 2) n = pick(1, 2);
    const unsigned N = pick(2, max_state_bits / n);
    const unsigned Ni = pick(1, N - 1);
    const unsigned No = pick(1, N - Ni);

    const unsigned nN = n * N, nNi = n * Ni, nNo = n * No;
    const BitMatrix m = random_matrix(nNi, nN - nNi, rng);
    BitMatrix A = hconcat(BitMatrix::identity(nNi), m);
    BitMatrix Bfull = hconcat(transpose(m), BitMatrix::identity(nN - nNi));
    BitMatrix B(nNo, nN);
    for (unsigned i = 0; i < nNo; ++i) B.set_row(i, Bfull.row(i));

    // Row mixing and a shared column permutation keep rank and
    // perpendicularity while varying the shape.
    A = random_invertible(nNi, rng) * A;
    B = random_invertible(nNo, rng) * B;
    std::vector<std::size_t> perm(nN);
    for (std::size_t i = 0; i < nN; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const BitMatrix P = permutation_matrix(perm);
    A = A * P;
    B = B * P;

    SchemeSpec spec;
    spec.n = n;
    spec.N = N;
    spec.Ni = Ni;
    spec.No = No;
    spec.A = std::move(A);
    spec.B = std::move(B);
    spec.T = random_invertible(nN, rng);

    const bool bijective = (rng() & 1u) && nNi == nNo;
    KeyRule rule;
    switch (rng() % (nNi == nNo ? 4 : 3)) {
        case 0: rule = KeyRule::none; break;
        case 1: rule = KeyRule::xor_pre; break;
        case 2: rule = KeyRule::xor_pre_post; break;
        default: rule = KeyRule::swap_plus_key; break;
    }
    spec.f = bijective ? random_bijective_map(nNi, rng(), rule)
                       : random_map(nNi, nNo, rng(), rule);
    return Scheme::make(std::move(spec));
}

inline std::uint64_t random_key(const Scheme& s, std::mt19937_64& rng) {
    const unsigned kb = s.spec().f.key_bits();
    if (kb == 0) return 0;
    return rng() & (kb >= 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << kb) - 1));
}

} // namespace testsupport
