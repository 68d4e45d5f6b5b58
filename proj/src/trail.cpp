#include "sandwich/trail.hpp"

#include <string>

namespace sandwich {

KernelChain kernel_chain(const Scheme& s, unsigned ell, TrailMode mode) {
    if (ell < 1) throw PreconditionError("kernel chain needs at least one round");
    const bool diff = mode == TrailMode::differential;
    const Subspace& ker = diff ? s.kernel_a() : s.kernel_b();
    const BitMatrix& step_map = diff ? s.spec().T : s.t_tr();

    KernelChain chain;
    chain.mode = mode;
    chain.length = ell;
    chain.n = s.spec().n;
    chain.N = s.spec().N;
    chain.Nio = diff ? s.spec().Ni : s.spec().No;

    Subspace cur = ker;   // running intersection S_i
    Subspace img = ker;   // (step_map)^i ker
    chain.steps.push_back(cur);
    chain.dims.push_back(cur.dim());
    for (unsigned i = 1; i < ell; ++i) {
        img = subspace_image(step_map, img);
        cur = subspace_intersect(cur, img);
        chain.steps.push_back(cur);
        chain.dims.push_back(cur.dim());
    }
    return chain;
}

KeySet default_key_set(const KeyedMap& map, std::uint64_t seed,
                       unsigned exhaustive_limit_bits, std::size_t samples) {
    KeySet ks;
    const unsigned kb = map.key_bits();
    if (kb <= exhaustive_limit_bits) {
        ks.exhaustive = true;
        ks.keys.resize(std::size_t(1) << kb);
        for (std::size_t k = 0; k < ks.keys.size(); ++k) ks.keys[k] = k;
    } else {
        std::mt19937_64 rng(seed);
        const std::uint64_t mask =
            kb >= 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << kb) - 1);
        ks.keys.reserve(samples);
        for (std::size_t i = 0; i < samples; ++i) ks.keys.push_back(rng() & mask);
    }
    return ks;
}

CoreMaxima core_maxima(const Scheme& s, const KeySet& keys) {
    if (keys.keys.empty()) throw PreconditionError("core maxima: empty key list");
    const KeyedMap& f = s.spec().f;
    const std::uint32_t n1 = 1u << f.d1;
    const std::uint32_t n2 = 1u << f.d2;

    CoreMaxima m;
    m.exhaustive_keys = keys.exhaustive;
    m.keys_scanned = keys.keys.size();
    m.delta = Dyadic::zero();
    m.lambda = Dyadic::zero();

    std::vector<std::uint32_t> tab(n1);
    std::vector<std::int64_t> hist;
    for (std::uint64_t key : keys.keys) {
        for (std::uint32_t x = 0; x < n1; ++x) tab[x] = f.eval(x, key);

        // delta over nonzero input differences, output difference fixed to 0
        std::int64_t best = 0;
        for (std::uint32_t u = 1; u < n1; ++u) {
            std::int64_t count = 0;
            for (std::uint32_t x = 0; x < n1; ++x)
                if (tab[x ^ u] == tab[x]) ++count;
            if (count > best) best = count;
        }
        const Dyadic dk = Dyadic::from_count(best, f.d1);
        if (dyadic_less(m.delta, dk)) m.delta = dk;

        // |lambda(0, w)| over nonzero output masks, via the output histogram:
        // sum_x (-1)^{w.f(x)} = WHT(hist)[w]
        hist.assign(n2, 0);
        for (std::uint32_t x = 0; x < n1; ++x) ++hist[tab[x]];
        fwht(hist);
        std::int64_t best_abs = 0;
        for (std::uint32_t w = 1; w < n2; ++w) {
            const std::int64_t v = hist[w] < 0 ? -hist[w] : hist[w];
            if (v > best_abs) best_abs = v;
        }
        const Dyadic lk = Dyadic::from_count(best_abs, f.d1);
        if (dyadic_less(m.lambda, lk)) m.lambda = lk;
    }
    return m;
}

namespace {

TrailReport build_trail(const Scheme& s, const BitVector& alpha0,
                        std::span<const std::uint64_t> keys, const CoreMaxima* maxima,
                        TrailMode mode) {
    const bool diff = mode == TrailMode::differential;
    if (alpha0.size() != s.state_bits())
        throw ShapeError("alpha0 width " + std::to_string(alpha0.size()) + ", expected " +
                         std::to_string(s.state_bits()));
    const Subspace& ker = diff ? s.kernel_a() : s.kernel_b();
    if (!ker.contains(alpha0))
        throw PreconditionError(diff ? "alpha0 must lie in ker A" : "alpha0 must lie in ker B");

    TrailReport rep;
    rep.mode = mode;
    rep.alphas.push_back(alpha0);
    for (std::size_t j = 0; j < keys.size(); ++j)
        rep.alphas.push_back(diff ? mat_vec(s.spec().T, rep.alphas.back())
                                  : mat_vec(s.t_tr_inv(), rep.alphas.back()));

    rep.product = ExactProb::one();
    for (std::size_t j = 0; j < keys.size(); ++j) {
        const ReducedCoefficient rc =
            diff ? reduce_diff(s, keys[j], rep.alphas[j], rep.alphas[j + 1])
                 : reduce_corr(s, keys[j], rep.alphas[j], rep.alphas[j + 1]);
        TrailStep step;
        step.alpha_in = rep.alphas[j];
        step.alpha_out = rep.alphas[j + 1];
        step.core_u = rc.core_u;
        step.core_v = rc.core_v;
        step.coefficient = rc.value;
        // The deterministic mask choice keeps every step inside the membership
        // branch; an active step feeds the core a nonzero input (differential)
        // or extracts a nonzero output mask (linear).
        step.active = diff ? !rc.core_u.is_zero() : !rc.core_v.is_zero();
        if (step.active) ++rep.active_count;
        rep.product.mul(step.coefficient);
        rep.steps.push_back(std::move(step));
    }

    rep.maxima = maxima ? *maxima : core_maxima(s, default_key_set(s.spec().f, 1));
    if (!keys.empty()) {
        const KernelChain chain = kernel_chain(s, static_cast<unsigned>(keys.size()), mode);
        rep.chain_exponent = chain.exponent();
    }
    const Dyadic& base = diff ? rep.maxima.delta : rep.maxima.lambda;
    rep.chain_bound_holds = rep.product.abs_leq_pow_frac(base, rep.chain_exponent);
    rep.active_bound_holds = rep.product.abs_leq_pow(base, rep.active_count);
    return rep;
}

} // namespace

TrailReport build_diff_trail(const Scheme& s, const BitVector& alpha0,
                             std::span<const std::uint64_t> keys, const CoreMaxima* maxima) {
    return build_trail(s, alpha0, keys, maxima, TrailMode::differential);
}

TrailReport build_lin_trail(const Scheme& s, const BitVector& alpha0,
                            std::span<const std::uint64_t> keys, const CoreMaxima* maxima) {
    return build_trail(s, alpha0, keys, maxima, TrailMode::linear);
}

Subspace fixed_points(const Scheme& s, TrailMode mode) {
    const bool diff = mode == TrailMode::differential;
    const BitMatrix& map = diff ? s.spec().T : s.t_tr();
    const Subspace fixed = kernel_basis(map + BitMatrix::identity(map.rows()));
    return subspace_intersect(diff ? s.kernel_a() : s.kernel_b(), fixed);
}

MinRoundsReport min_rounds_report(const Scheme& s, unsigned ell_max, const CoreMaxima& maxima) {
    if (ell_max < 1) throw PreconditionError("round report needs ell_max >= 1");
    MinRoundsReport rep;
    rep.maxima = maxima;
    rep.floor_diff = fixed_points(s, TrailMode::differential).dim();
    rep.floor_lin = fixed_points(s, TrailMode::linear).dim();

    const KernelChain cd = kernel_chain(s, ell_max, TrailMode::differential);
    const KernelChain cl = kernel_chain(s, ell_max, TrailMode::linear);
    const std::int64_t nN = std::int64_t(s.spec().n) * s.spec().N;
    for (unsigned ell = 1; ell <= ell_max; ++ell) {
        BoundRow row;
        row.ell = ell;
        row.dim_diff = cd.dims[ell - 1];
        row.dim_lin = cl.dims[ell - 1];
        row.M_diff = Frac::make(nN - std::int64_t(row.dim_diff), s.spec().n);
        row.M_lin = Frac::make(nN - std::int64_t(row.dim_lin), s.spec().n);
        row.exp_diff = Frac::make(nN - std::int64_t(row.dim_diff),
                                  std::int64_t(s.spec().n) * s.spec().Ni);
        row.exp_lin = Frac::make(nN - std::int64_t(row.dim_lin),
                                 std::int64_t(s.spec().n) * s.spec().No);
        row.collapsed_diff = row.dim_diff == rep.floor_diff;
        row.collapsed_lin = row.dim_lin == rep.floor_lin;
        if (row.collapsed_diff && rep.first_collapse_diff == 0) rep.first_collapse_diff = ell;
        if (row.collapsed_lin && rep.first_collapse_lin == 0) rep.first_collapse_lin = ell;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace sandwich
