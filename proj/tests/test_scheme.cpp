#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sandwich/presets.hpp"
#include "sandwich/scheme.hpp"
#include "support.hpp"

using namespace sandwich;
using namespace testsupport;

TEST_CASE("keyed map rules") {
    KeyedMap f = xor_core(3);
    CHECK(f.key_bits() == 3);
    CHECK(f.eval(0b101, 0b011) == 0b110);

    f.rule = KeyRule::none;
    CHECK(f.key_bits() == 0);
    CHECK(f.eval(0b101, 0b011) == 0b101);

    f.rule = KeyRule::xor_pre_post;
    CHECK(f.key_bits() == 6);
    CHECK(f.eval(0b101, 0b011'010) == (0b101 ^ 0b010 ^ 0b011));

    f.rule = KeyRule::swap_plus_key;
    CHECK(f.key_bits() == 3);
    CHECK(f.eval(0b101, 0b011) == (0b101 ^ 0b011));

    KeyedMap bad = xor_core(2);
    bad.table.pop_back();
    CHECK_THROWS_AS(bad.check(), ValidationError);

    KeyedMap wide = xor_core(2);
    wide.table[1] = 7;  // needs 3 bits
    CHECK_THROWS_AS(wide.check(), ValidationError);

    KeyedMap mismatched = zero_core(2, 3);
    mismatched.rule = KeyRule::swap_plus_key;
    CHECK_THROWS_AS(mismatched.check(), ValidationError);
}

TEST_CASE("validation report") {
    CHECK(validate(feistel(2).spec()).ok());
    CHECK(validate(fox(1).spec()).ok());

    // Self-dual single-row pair: passes every check.
    SchemeSpec dual;
    dual.n = 1;
    dual.N = 2;
    dual.Ni = dual.No = 1;
    dual.A = BitMatrix::from_strings({"11"});
    dual.B = dual.A;
    dual.T = BitMatrix::identity(2);
    dual.f = xor_core(1);
    CHECK(validate(dual).ok());
    CHECK(mat_mul(dual.A, transpose(dual.B)) == BitMatrix(1, 1));

    // Non-perpendicular pair fails exactly that check.
    SchemeSpec bad = dual;
    bad.A = BitMatrix::from_strings({"10"});
    bad.B = BitMatrix::from_strings({"11"});
    const ValidationReport rep = validate(bad);
    CHECK_FALSE(rep.ok());
    CHECK(rep.failures().find("perpendicularity") != std::string::npos);
    CHECK_THROWS_AS(Scheme::make(bad), ValidationError);

    SchemeSpec deficient = dual;
    deficient.n = 1;
    deficient.N = 4;
    deficient.Ni = 2;
    deficient.No = 1;
    deficient.A = BitMatrix::from_strings({"1010", "1010"});
    deficient.B = BitMatrix::from_strings({"0101"});
    deficient.T = BitMatrix::identity(4);
    deficient.f = random_map(2, 1, 3);
    CHECK(validate(deficient).failures().find("A-full-rank") != std::string::npos);
}

TEST_CASE("feistel round closed form") {
    for (unsigned n : {1u, 2u, 3u}) {
        const Scheme s = feistel(n, /*seed=*/n + 10);
        const std::uint64_t mask = (std::uint64_t(1) << n) - 1;
        for (std::uint64_t x = 0; x < vec_count(2 * n); ++x) {
            const std::uint64_t x0 = x & mask, x1 = x >> n;
            const std::uint64_t key = 0b1010101 & mask;
            const std::uint64_t y = s.forward(BitVector::from_uint(x, 2 * n), key).to_uint();
            const std::uint64_t fx0 = s.spec().f.eval(static_cast<std::uint32_t>(x0), key);
            CHECK(y == ((x1 ^ fx0) | (x0 << n)));
        }
    }
}

TEST_CASE("fox round closed form") {
    for (unsigned n : {1u, 2u}) {
        const Scheme s = fox(n, /*seed=*/n + 20);
        const std::uint64_t mask = (std::uint64_t(1) << n) - 1;
        const std::uint64_t key = 0b0110110 & ((std::uint64_t(1) << (2 * n)) - 1);
        for (std::uint64_t x = 0; x < vec_count(4 * n); ++x) {
            const std::uint64_t l0 = x & mask, l1 = (x >> n) & mask;
            const std::uint64_t r0 = (x >> 2 * n) & mask, r1 = (x >> 3 * n) & mask;
            const std::uint64_t z =
                s.spec().f.eval(static_cast<std::uint32_t>((l0 ^ r0) | ((l1 ^ r1) << n)), key);
            const std::uint64_t z0 = z & mask, z1 = z >> n;
            const std::uint64_t expect = (z1 ^ l1) | ((z0 ^ z1 ^ l0 ^ l1) << n) |
                                         ((z0 ^ r0) << 2 * n) | ((z1 ^ r1) << 3 * n);
            CHECK(s.forward(BitVector::from_uint(x, 4 * n), key).to_uint() == expect);
        }
    }
}

TEST_CASE("zero core reduces the round to T") {
    SchemeSpec spec = feistel(2).spec();
    spec.f = zero_core(2, 2);
    const Scheme s = Scheme::make(spec);
    for (std::uint64_t x = 0; x < 16; ++x) {
        const BitVector xv = BitVector::from_uint(x, 4);
        CHECK(s.forward(xv, 0) == mat_vec(spec.T, xv));
        CHECK(s.inverse(xv, 0) == mat_vec(s.t_inv(), xv));
    }
}

TEST_CASE("round inverse undoes the round") {
    // Tiny closed case: two states' worth of keys, exhaustively.
    const Scheme tiny = feistel(1, xor_core(1));
    for (std::uint64_t key = 0; key < 2; ++key)
        for (std::uint64_t x = 0; x < 4; ++x) {
            const BitVector xv = BitVector::from_uint(x, 2);
            CHECK(tiny.inverse(tiny.forward(xv, key), key) == xv);
        }

    // Random schemes, including non-bijective cores, exhaustively.
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 12; ++trial) {
        const Scheme s = random_scheme(1000 + trial, 10);
        const std::uint64_t key = random_key(s, rng);
        for (std::uint64_t x = 0; x < vec_count(s.state_bits()); ++x) {
            const BitVector xv = BitVector::from_uint(x, s.state_bits());
            const BitVector y = s.forward(xv, key);
            CHECK(s.inverse(y, key) == xv);
            CHECK(s.forward(s.inverse(xv, key), key) == xv);
        }
    }

    // FOX at n = 4: 16-bit state, sampled round trips.
    const Scheme wide = fox(4, 99);
    for (int trial = 0; trial < 10000; ++trial) {
        const BitVector xv = BitVector::from_uint(rng() & 0xFFFF, 16);
        const std::uint64_t key = rng() & 0xFF;
        CHECK(wide.inverse(wide.forward(xv, key), key) == xv);
    }
}

TEST_CASE("core input is preserved through the round") {
    // A T^-1 F(x) = A x: the perpendicularity step behind invertibility.
    std::mt19937_64 rng(88);
    for (int trial = 0; trial < 10; ++trial) {
        const Scheme s = random_scheme(2000 + trial, 12);
        const std::uint64_t key = random_key(s, rng);
        for (int inner = 0; inner < 200; ++inner) {
            const BitVector xv =
                BitVector::from_uint(rng() & (vec_count(s.state_bits()) - 1), s.state_bits());
            const BitVector y = s.forward(xv, key);
            CHECK(mat_vec(s.spec().A, mat_vec(s.t_inv(), y)) == mat_vec(s.spec().A, xv));
        }
    }
}

TEST_CASE("iterate") {
    const Scheme s = feistel(1, xor_core(1));
    const BitVector x = BitVector::from_string("10");
    CHECK(s.iterate(x, {}).size() == 1);
    CHECK(s.iterate(x, {}).front() == x);

    // Two rounds with f_k(u) = u + k compose to the affine map
    // (x0, x1) -> (x1 + k0 + k1, x0 + x1 + k0).
    for (std::uint64_t k0 = 0; k0 < 2; ++k0)
        for (std::uint64_t k1 = 0; k1 < 2; ++k1)
            for (std::uint64_t xi = 0; xi < 4; ++xi) {
                const std::uint64_t x0 = xi & 1, x1 = xi >> 1;
                const std::vector<std::uint64_t> keys{k0, k1};
                const auto trace = s.iterate(BitVector::from_uint(xi, 2), keys);
                REQUIRE(trace.size() == 3);
                const std::uint64_t endpoint = trace.back().to_uint();
                CHECK(endpoint == ((x1 ^ k0 ^ k1) | ((x0 ^ x1 ^ k0) << 1)));
            }

    // With a zero core the endpoint is T^ell x.
    SchemeSpec spec = feistel(2).spec();
    spec.f = zero_core(2, 2);
    const Scheme lin = Scheme::make(spec);
    const std::vector<std::uint64_t> keys{0, 0, 0, 0, 0};
    for (std::uint64_t xi = 0; xi < 16; ++xi) {
        const BitVector xv = BitVector::from_uint(xi, 4);
        CHECK(lin.iterate(xv, keys).back() == mat_vec(mat_pow(spec.T, 5), xv));
    }
}

TEST_CASE("multi-branch round trips and degenerations") {
    // Three branches, twelve blocks: exhaustive round trip at n = 1.
    const MultiBranchScheme mb = gfn_type3(1, 4, 5);
    const std::vector<std::uint64_t> keys{1, 0, 1};
    for (std::uint64_t x = 0; x < vec_count(12); ++x) {
        const BitVector xv = BitVector::from_uint(x, 12);
        CHECK(mb.inverse(mb.forward(xv, keys), keys) == xv);
    }

    // All-zero cores leave only the block-diagonal linear map.
    MultiBranchSpec zspec = mb.spec();
    for (auto& br : zspec.branches) br.f = zero_core(1, 1);
    const MultiBranchScheme zb = MultiBranchScheme::make(zspec);
    const std::vector<std::uint64_t> zkeys{0, 0, 0};
    for (std::uint64_t x = 0; x < 64; ++x) {
        const BitVector xv = BitVector::from_uint(x, 12);
        CHECK(zb.forward(xv, zkeys) == mat_vec(zb.t_full(), xv));
        CHECK(zb.inverse(xv, zkeys) == mat_vec(invert(zb.t_full()), xv));
    }

    // A single branch is bit-identical to the plain round on the same data.
    const Scheme fe = feistel(2, 7);
    MultiBranchSpec one;
    one.n = 2;
    one.N = 2;
    one.r = 1;
    one.T = fe.spec().T;
    one.branches.push_back({fe.spec().A, fe.spec().B, fe.spec().f});
    const MultiBranchScheme ob = MultiBranchScheme::make(one);
    for (std::uint64_t x = 0; x < 16; ++x) {
        const BitVector xv = BitVector::from_uint(x, 4);
        const std::vector<std::uint64_t> k{3};
        CHECK(ob.forward(xv, k) == fe.forward(xv, 3));
        CHECK(ob.inverse(xv, k) == fe.inverse(xv, 3));
    }

    // Breaking pairwise perpendicularity is rejected up front.
    MultiBranchSpec broken = mb.spec();
    broken.branches[0].B = broken.branches[1].A;  // A2 B1^t becomes nonzero
    try {
        MultiBranchScheme::make(broken);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("pairwise-perpendicularity") != std::string::npos);
    }
}

TEST_CASE("flattening a multi-branch scheme preserves the round") {
    const MultiBranchScheme mb = gfn_type3(1, 4, 9);
    const Scheme flat = mb.flatten();
    CHECK(flat.spec().N == 12);
    CHECK(flat.spec().Ni == 3);
    for (std::uint64_t x = 0; x < vec_count(12); ++x) {
        const BitVector xv = BitVector::from_uint(x, 12);
        const std::vector<std::uint64_t> keys{1, 0, 1};
        const std::uint64_t flat_key = 0b101;  // branch 0 in the low bit
        CHECK(mb.forward(xv, keys) == flat.forward(xv, flat_key));
    }
}
