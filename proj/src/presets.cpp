#include "sandwich/presets.hpp"

#include <algorithm>
#include <numeric>

namespace sandwich {

BitMatrix from_block_pattern(const std::vector<std::vector<int>>& pattern, unsigned n) {
    const std::size_t brows = pattern.size();
    const std::size_t bcols = brows ? pattern.front().size() : 0;
    BitMatrix m(brows * n, bcols * n);
    for (std::size_t i = 0; i < brows; ++i) {
        if (pattern[i].size() != bcols) throw ShapeError("ragged block pattern");
        for (std::size_t j = 0; j < bcols; ++j)
            if (pattern[i][j])
                for (unsigned t = 0; t < n; ++t) m.set(i * n + t, j * n + t, true);
    }
    return m;
}

KeyedMap random_bijective_map(unsigned d, std::uint64_t seed, KeyRule rule) {
    KeyedMap f;
    f.d1 = f.d2 = d;
    f.rule = rule;
    f.table.resize(std::size_t(1) << d);
    std::iota(f.table.begin(), f.table.end(), 0u);
    std::mt19937_64 rng(seed);
    std::shuffle(f.table.begin(), f.table.end(), rng);
    return f;
}

KeyedMap random_map(unsigned d1, unsigned d2, std::uint64_t seed, KeyRule rule) {
    KeyedMap f;
    f.d1 = d1;
    f.d2 = d2;
    f.rule = rule;
    f.table.resize(std::size_t(1) << d1);
    std::mt19937_64 rng(seed);
    const std::uint32_t mask = (d2 >= 32) ? ~0u : ((1u << d2) - 1);
    for (auto& y : f.table) y = static_cast<std::uint32_t>(rng()) & mask;
    return f;
}

BitMatrix half_swap_matrix(unsigned d) {
    if (d == 0 || d % 2 != 0)
        throw PreconditionError("half-word swap needs a positive even width");
    BitMatrix s(d, d);
    const unsigned h = d / 2;
    for (unsigned i = 0; i < d; ++i) s.set(i, (i + h) % d, true);
    return s;
}

KeyedMap swap_core(unsigned d) {
    const BitMatrix s = half_swap_matrix(d);
    KeyedMap f;
    f.d1 = f.d2 = d;
    f.rule = KeyRule::swap_plus_key;
    f.table.resize(std::size_t(1) << d);
    for (std::uint32_t x = 0; x < f.table.size(); ++x)
        f.table[x] = static_cast<std::uint32_t>(mat_vec(s, BitVector::from_uint(x, d)).to_uint());
    return f;
}

Scheme feistel(unsigned n, KeyedMap f) {
    SchemeSpec spec;
    spec.n = n;
    spec.N = 2;
    spec.Ni = spec.No = 1;
    spec.A = from_block_pattern({{1, 0}}, n);
    spec.B = from_block_pattern({{0, 1}}, n);
    spec.T = from_block_pattern({{0, 1}, {1, 0}}, n);
    spec.f = std::move(f);
    return Scheme::make(std::move(spec));
}

Scheme feistel(unsigned n, std::uint64_t seed) {
    return feistel(n, random_bijective_map(n, seed));
}

Scheme fox(unsigned n, KeyedMap f) {
    SchemeSpec spec;
    spec.n = n;
    spec.N = 4;
    spec.Ni = spec.No = 2;
    spec.A = from_block_pattern({{1, 0, 1, 0}, {0, 1, 0, 1}}, n);
    spec.B = spec.A;
    spec.T = from_block_pattern({{0, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, n);
    spec.f = std::move(f);
    return Scheme::make(std::move(spec));
}

Scheme fox(unsigned n, std::uint64_t seed) {
    return fox(n, random_bijective_map(2 * n, seed));
}

namespace {

BitMatrix rotation_blocks(unsigned n, unsigned N) {
    std::vector<std::vector<int>> pat(N, std::vector<int>(N, 0));
    for (unsigned i = 0; i < N; ++i) pat[i][(i + 1) % N] = 1;
    return from_block_pattern(pat, n);
}

BitMatrix block_selector(unsigned n, unsigned blocks, unsigned which) {
    std::vector<std::vector<int>> pat(1, std::vector<int>(blocks, 0));
    pat[0][which] = 1;
    return from_block_pattern(pat, n);
}

} // namespace

Scheme gfn_type1(unsigned n, unsigned N, std::uint64_t seed) {
    if (N < 2) throw PreconditionError("type-1 network needs at least 2 blocks");
    SchemeSpec spec;
    spec.n = n;
    spec.N = N;
    spec.Ni = spec.No = 1;
    spec.A = block_selector(n, N, 0);
    spec.B = block_selector(n, N, 1);
    spec.T = rotation_blocks(n, N);
    spec.f = random_bijective_map(n, seed);
    return Scheme::make(std::move(spec));
}

MultiBranchScheme gfn_type3(unsigned n, unsigned N, std::uint64_t seed) {
    if (N < 2) throw PreconditionError("type-3 network needs at least 2 blocks per group");
    MultiBranchSpec spec;
    spec.n = n;
    spec.N = N;
    spec.r = 3;
    spec.T = rotation_blocks(n, N);
    for (unsigned j = 0; j < 3; ++j) {
        BranchSpec br;
        br.A = block_selector(n, 3 * N, j * (N + 1));
        br.B = block_selector(n, 3 * N, j * (N + 1) + 1);
        br.f = random_bijective_map(n, seed + j);
        spec.branches.push_back(std::move(br));
    }
    return MultiBranchScheme::make(std::move(spec));
}

std::pair<Scheme, LinearClosedForm> linear_case(unsigned n, unsigned N, const PerpPair& pair,
                                                const std::optional<BitMatrix>& T) {
    check_pair(pair);
    if (pair.A.rows() != n || pair.B.rows() != n || pair.A.cols() != std::size_t(n) * N)
        throw ShapeError("linear case: pair must be n x nN with Ni = No = 1");

    SchemeSpec spec;
    spec.n = n;
    spec.N = N;
    spec.Ni = spec.No = 1;
    spec.A = pair.A;
    spec.B = pair.B;
    spec.T = T ? *T : BitMatrix::identity(std::size_t(n) * N);
    spec.f = swap_core(n);
    Scheme scheme = Scheme::make(std::move(spec));

    LinearClosedForm lcf;
    lcf.n = n;
    lcf.N = N;
    lcf.S = half_swap_matrix(n);
    const BitMatrix bt = scheme.b_tr();
    lcf.C = scheme.spec().T *
            (BitMatrix::identity(scheme.state_bits()) + bt * lcf.S * scheme.spec().A);
    lcf.D = scheme.spec().T * bt;
    return {std::move(scheme), std::move(lcf)};
}

BitVector closed_form_endpoint(const LinearClosedForm& lcf, const BitVector& x,
                               std::span<const std::uint64_t> keys) {
    const unsigned ell = static_cast<unsigned>(keys.size());
    BitVector acc = mat_pow(lcf.C, ell) * x;
    BitMatrix cpow = BitMatrix::identity(lcf.C.rows());
    for (unsigned i = 0; i < ell; ++i) {
        const BitVector kv = BitVector::from_uint(keys[ell - 1 - i], lcf.n);
        acc ^= cpow * (lcf.D * kv);
        cpow = cpow * lcf.C;
    }
    return acc;
}

BitVector recover_input_difference(const LinearClosedForm& lcf, const BitVector& ya,
                                   const BitVector& yb, unsigned ell) {
    return mat_pow(invert(lcf.C), ell) * (ya ^ yb);
}

} // namespace sandwich
