#include "sandwich/scheme.hpp"

#include <utility>

namespace sandwich {

std::string_view to_string(KeyRule rule) {
    switch (rule) {
        case KeyRule::none: return "none";
        case KeyRule::xor_pre: return "xor-pre";
        case KeyRule::xor_pre_post: return "xor-pre-post";
        case KeyRule::swap_plus_key: return "swap-plus-key";
    }
    return "?";
}

KeyRule key_rule_from_string(std::string_view s) {
    if (s == "none") return KeyRule::none;
    if (s == "xor-pre") return KeyRule::xor_pre;
    if (s == "xor-pre-post") return KeyRule::xor_pre_post;
    if (s == "swap-plus-key") return KeyRule::swap_plus_key;
    throw ParseError("unknown key rule '" + std::string(s) + "'");
}

unsigned KeyedMap::key_bits() const {
    switch (rule) {
        case KeyRule::none: return 0;
        case KeyRule::xor_pre: return d1;
        case KeyRule::xor_pre_post: return d1 + d2;
        case KeyRule::swap_plus_key: return d1;
    }
    return 0;
}

std::uint32_t KeyedMap::eval(std::uint32_t x, std::uint64_t key) const {
    const std::uint32_t m1 = (d1 >= 32) ? ~0u : ((1u << d1) - 1);
    const std::uint32_t m2 = (d2 >= 32) ? ~0u : ((1u << d2) - 1);
    switch (rule) {
        case KeyRule::none:
            return table[x];
        case KeyRule::xor_pre:
            return table[(x ^ static_cast<std::uint32_t>(key)) & m1];
        case KeyRule::xor_pre_post:
            return table[(x ^ static_cast<std::uint32_t>(key)) & m1] ^
                   (static_cast<std::uint32_t>(key >> d1) & m2);
        case KeyRule::swap_plus_key:
            return table[x] ^ (static_cast<std::uint32_t>(key) & m2);
    }
    return 0;
}

void KeyedMap::check() const {
    if (d1 == 0 || d2 == 0) throw ValidationError("core widths must be positive");
    if (d1 > 28 || d2 > 31)
        throw ValidationError("core width too large for table representation (d1 " +
                              std::to_string(d1) + ", d2 " + std::to_string(d2) + ")");
    if (table.size() != (std::size_t(1) << d1))
        throw ValidationError("core table has " + std::to_string(table.size()) +
                              " entries, expected 2^" + std::to_string(d1));
    const std::uint32_t lim = (d2 >= 32) ? ~0u : ((1u << d2) - 1);
    for (std::uint32_t y : table)
        if (y > lim) throw ValidationError("core table entry exceeds output width");
    if (rule == KeyRule::swap_plus_key && d1 != d2)
        throw ValidationError("swap-plus-key requires d1 = d2");
}

bool ValidationReport::ok() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string ValidationReport::failures() const {
    std::string out;
    for (const auto& c : checks) {
        if (c.pass) continue;
        if (!out.empty()) out += "; ";
        out += c.name;
        if (!c.detail.empty()) out += ": " + c.detail;
    }
    return out;
}

namespace {

void add(ValidationReport& rep, std::string name, bool pass, std::string detail = "") {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
}

} // namespace

ValidationReport validate(const SchemeSpec& s) {
    ValidationReport rep;
    const bool dims_ok = s.n >= 1 && s.N >= 1 && s.Ni >= 1 && s.Ni <= s.N && s.No >= 1 && s.No <= s.N;
    add(rep, "word-counts", dims_ok,
        dims_ok ? "" : "need n >= 1 and 0 < Ni,No <= N");

    const bool a_shape = s.A.rows() == s.core_in_bits() && s.A.cols() == s.state_bits();
    add(rep, "A-shape", a_shape,
        a_shape ? "" : "A is " + std::to_string(s.A.rows()) + "x" + std::to_string(s.A.cols()) +
                       ", expected " + std::to_string(s.core_in_bits()) + "x" + std::to_string(s.state_bits()));
    const bool b_shape = s.B.rows() == s.core_out_bits() && s.B.cols() == s.state_bits();
    add(rep, "B-shape", b_shape,
        b_shape ? "" : "B is " + std::to_string(s.B.rows()) + "x" + std::to_string(s.B.cols()) +
                       ", expected " + std::to_string(s.core_out_bits()) + "x" + std::to_string(s.state_bits()));
    const bool t_shape = s.T.rows() == s.state_bits() && s.T.cols() == s.state_bits();
    add(rep, "T-shape", t_shape,
        t_shape ? "" : "T is " + std::to_string(s.T.rows()) + "x" + std::to_string(s.T.cols()) +
                       ", expected square " + std::to_string(s.state_bits()));

    bool core_ok = s.f.d1 == s.core_in_bits() && s.f.d2 == s.core_out_bits();
    std::string core_detail = core_ok ? "" : "core is " + std::to_string(s.f.d1) + "->" +
                                             std::to_string(s.f.d2) + " bits, expected " +
                                             std::to_string(s.core_in_bits()) + "->" +
                                             std::to_string(s.core_out_bits());
    if (core_ok) {
        try {
            s.f.check();
        } catch (const ValidationError& e) {
            core_ok = false;
            core_detail = e.what();
        }
    }
    add(rep, "core-table", core_ok, core_detail);

    if (a_shape && dims_ok) {
        const std::size_t r = rank(s.A);
        add(rep, "A-full-rank", r == s.core_in_bits(),
            r == s.core_in_bits() ? "" : "rank " + std::to_string(r) + " of " + std::to_string(s.core_in_bits()));
    } else {
        add(rep, "A-full-rank", false, "skipped: bad shape");
    }
    if (b_shape && dims_ok) {
        const std::size_t r = rank(s.B);
        add(rep, "B-full-rank", r == s.core_out_bits(),
            r == s.core_out_bits() ? "" : "rank " + std::to_string(r) + " of " + std::to_string(s.core_out_bits()));
    } else {
        add(rep, "B-full-rank", false, "skipped: bad shape");
    }
    if (t_shape && dims_ok) {
        const std::size_t r = rank(s.T);
        add(rep, "T-invertible", r == s.state_bits(),
            r == s.state_bits() ? "" : "rank " + std::to_string(r) + " of " + std::to_string(s.state_bits()));
    } else {
        add(rep, "T-invertible", false, "skipped: bad shape");
    }
    if (a_shape && b_shape) {
        const bool perp = mat_mul(s.A, transpose(s.B)).is_zero();
        add(rep, "perpendicularity", perp, perp ? "" : "A Bt != 0");
    } else {
        add(rep, "perpendicularity", false, "skipped: bad shape");
    }
    return rep;
}

Scheme Scheme::make(SchemeSpec spec) {
    ValidationReport rep = validate(spec);
    if (!rep.ok()) throw ValidationError("invalid scheme: " + rep.failures());

    Scheme s;
    s.spec_ = std::move(spec);
    s.t_inv_ = invert(s.spec_.T);
    s.t_tr_ = transpose(s.spec_.T);
    s.t_tr_inv_ = transpose(s.t_inv_);
    s.a_tr_ = transpose(s.spec_.A);
    s.b_tr_ = transpose(s.spec_.B);
    s.ra_ = right_inverse(s.spec_.A);
    s.rb_ = right_inverse(s.spec_.B);
    s.rowsp_a_ = Subspace::span_of(s.spec_.A);
    s.rowsp_b_ = Subspace::span_of(s.spec_.B);
    s.ker_a_ = kernel_basis(s.spec_.A);
    s.ker_b_ = kernel_basis(s.spec_.B);
    return s;
}

BitVector Scheme::forward(const BitVector& x, std::uint64_t key) const {
    if (x.size() != spec_.state_bits())
        throw ShapeError("state width " + std::to_string(x.size()) + ", expected " +
                         std::to_string(spec_.state_bits()));
    const auto u = static_cast<std::uint32_t>(mat_vec(spec_.A, x).to_uint());
    const BitVector w = BitVector::from_uint(spec_.f.eval(u, key), spec_.f.d2);
    BitVector t = x;
    t ^= mat_vec(b_tr_, w);
    return mat_vec(spec_.T, t);
}

BitVector Scheme::inverse(const BitVector& y, std::uint64_t key) const {
    if (y.size() != spec_.state_bits())
        throw ShapeError("state width " + std::to_string(y.size()) + ", expected " +
                         std::to_string(spec_.state_bits()));
    BitVector w = mat_vec(t_inv_, y);
    const auto u = static_cast<std::uint32_t>(mat_vec(spec_.A, w).to_uint());
    w ^= mat_vec(b_tr_, BitVector::from_uint(spec_.f.eval(u, key), spec_.f.d2));
    return w;
}

std::vector<BitVector> Scheme::iterate(const BitVector& x,
                                       std::span<const std::uint64_t> keys) const {
    std::vector<BitVector> trace;
    trace.reserve(keys.size() + 1);
    trace.push_back(x);
    for (std::uint64_t k : keys) trace.push_back(forward(trace.back(), k));
    return trace;
}

ValidationReport validate(const MultiBranchSpec& s) {
    ValidationReport rep;
    const bool dims_ok = s.n >= 1 && s.N >= 1 && s.r >= 1 && s.branches.size() == s.r;
    add(rep, "word-counts", dims_ok, dims_ok ? "" : "need n,N,r >= 1 and one branch spec per branch");

    const unsigned block = s.n * s.N;
    const bool t_shape = s.T.rows() == block && s.T.cols() == block;
    add(rep, "T-shape", t_shape,
        t_shape ? "" : "T must be " + std::to_string(block) + "x" + std::to_string(block));
    if (t_shape) {
        const std::size_t r = rank(s.T);
        add(rep, "T-invertible", r == block,
            r == block ? "" : "rank " + std::to_string(r) + " of " + std::to_string(block));
    } else {
        add(rep, "T-invertible", false, "skipped: bad shape");
    }

    const unsigned width = s.state_bits();
    bool shapes_ok = dims_ok;
    for (std::size_t j = 0; j < s.branches.size(); ++j) {
        const auto& br = s.branches[j];
        const std::string tag = "branch" + std::to_string(j + 1);
        bool ok = br.A.rows() == br.f.d1 && br.A.cols() == width &&
                  br.B.rows() == br.f.d2 && br.B.cols() == width &&
                  br.f.d1 % s.n == 0 && br.f.d2 % s.n == 0;
        std::string detail = ok ? "" : "A/B shapes must be d1 x " + std::to_string(width) +
                                       " and d2 x " + std::to_string(width) +
                                       " with word-aligned core widths";
        if (ok) {
            try {
                br.f.check();
            } catch (const ValidationError& e) {
                ok = false;
                detail = e.what();
            }
        }
        add(rep, tag + "-shape", ok, detail);
        shapes_ok = shapes_ok && ok;
        if (ok) {
            const std::size_t ra = rank(br.A), rb = rank(br.B);
            add(rep, tag + "-full-rank", ra == br.f.d1 && rb == br.f.d2,
                (ra == br.f.d1 && rb == br.f.d2)
                    ? ""
                    : "rank A " + std::to_string(ra) + "/" + std::to_string(br.f.d1) +
                      ", rank B " + std::to_string(rb) + "/" + std::to_string(br.f.d2));
        } else {
            add(rep, tag + "-full-rank", false, "skipped: bad shape");
        }
    }

    if (shapes_ok) {
        bool perp = true;
        std::string detail;
        for (std::size_t i = 0; i < s.branches.size() && perp; ++i)
            for (std::size_t j = 0; j < s.branches.size() && perp; ++j)
                if (!mat_mul(s.branches[i].A, transpose(s.branches[j].B)).is_zero()) {
                    perp = false;
                    detail = "A" + std::to_string(i + 1) + " B" + std::to_string(j + 1) + "t != 0";
                }
        add(rep, "pairwise-perpendicularity", perp, detail);
    } else {
        add(rep, "pairwise-perpendicularity", false, "skipped: bad shape");
    }
    return rep;
}

MultiBranchScheme MultiBranchScheme::make(MultiBranchSpec spec) {
    ValidationReport rep = validate(spec);
    if (!rep.ok()) throw ValidationError("invalid multi-branch scheme: " + rep.failures());

    MultiBranchScheme s;
    s.spec_ = std::move(spec);
    std::vector<BitMatrix> blocks(s.spec_.r, s.spec_.T);
    s.t_full_ = block_diag(blocks);
    s.t_full_inv_ = invert(s.t_full_);
    s.b_tr_.reserve(s.spec_.r);
    for (const auto& br : s.spec_.branches) s.b_tr_.push_back(transpose(br.B));
    return s;
}

BitVector MultiBranchScheme::forward(const BitVector& x,
                                     std::span<const std::uint64_t> keys) const {
    if (x.size() != spec_.state_bits())
        throw ShapeError("state width " + std::to_string(x.size()) + ", expected " +
                         std::to_string(spec_.state_bits()));
    if (keys.size() != spec_.r)
        throw ShapeError("expected one key per branch (" + std::to_string(spec_.r) + ")");
    BitVector t = x;
    for (std::size_t j = 0; j < spec_.r; ++j) {
        const auto& br = spec_.branches[j];
        const auto u = static_cast<std::uint32_t>(mat_vec(br.A, x).to_uint());
        t ^= mat_vec(b_tr_[j], BitVector::from_uint(br.f.eval(u, keys[j]), br.f.d2));
    }
    return mat_vec(t_full_, t);
}

BitVector MultiBranchScheme::inverse(const BitVector& y,
                                     std::span<const std::uint64_t> keys) const {
    if (y.size() != spec_.state_bits())
        throw ShapeError("state width " + std::to_string(y.size()) + ", expected " +
                         std::to_string(spec_.state_bits()));
    if (keys.size() != spec_.r)
        throw ShapeError("expected one key per branch (" + std::to_string(spec_.r) + ")");
    const BitVector w = mat_vec(t_full_inv_, y);
    BitVector x = w;
    for (std::size_t j = 0; j < spec_.r; ++j) {
        const auto& br = spec_.branches[j];
        const auto u = static_cast<std::uint32_t>(mat_vec(br.A, w).to_uint());
        x ^= mat_vec(b_tr_[j], BitVector::from_uint(br.f.eval(u, keys[j]), br.f.d2));
    }
    return x;
}

Scheme MultiBranchScheme::flatten(unsigned max_core_bits) const {
    unsigned D1 = 0, D2 = 0;
    const KeyRule rule = spec_.branches.front().f.rule;
    if (rule != KeyRule::none && rule != KeyRule::xor_pre)
        throw PreconditionError("flatten supports key rules none and xor-pre only");
    for (const auto& br : spec_.branches) {
        if (br.f.rule != rule)
            throw PreconditionError("flatten requires a uniform key rule across branches");
        D1 += br.f.d1;
        D2 += br.f.d2;
    }
    if (D1 > max_core_bits)
        throw ResourceError("flattened core input is " + std::to_string(D1) +
                            " bits, beyond the " + std::to_string(max_core_bits) + "-bit budget");

    KeyedMap f;
    f.d1 = D1;
    f.d2 = D2;
    f.rule = rule;
    f.table.resize(std::size_t(1) << D1);
    for (std::uint32_t x = 0; x < f.table.size(); ++x) {
        std::uint32_t out = 0;
        unsigned off1 = 0, off2 = 0;
        for (const auto& br : spec_.branches) {
            const std::uint32_t xi = (x >> off1) & ((1u << br.f.d1) - 1);
            out |= br.f.table[xi] << off2;
            off1 += br.f.d1;
            off2 += br.f.d2;
        }
        f.table[x] = out;
    }

    BitMatrix A = spec_.branches.front().A;
    BitMatrix B = spec_.branches.front().B;
    for (std::size_t j = 1; j < spec_.r; ++j) {
        A = vconcat(A, spec_.branches[j].A);
        B = vconcat(B, spec_.branches[j].B);
    }

    SchemeSpec flat;
    flat.n = spec_.n;
    flat.N = spec_.N * spec_.r;
    flat.Ni = D1 / spec_.n;
    flat.No = D2 / spec_.n;
    flat.A = std::move(A);
    flat.B = std::move(B);
    flat.T = t_full_;
    flat.f = std::move(f);
    return Scheme::make(std::move(flat));
}

} // namespace sandwich
