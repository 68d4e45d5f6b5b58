#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sandwich/presets.hpp"
#include "support.hpp"

using namespace sandwich;
using namespace testsupport;

TEST_CASE("template matrices match their displays") {
    const Scheme fe = feistel(1, 2);
    CHECK(fe.spec().A.to_string() == "10");
    CHECK(fe.spec().B.to_string() == "01");
    CHECK(fe.spec().T.to_string() == "01\n10");

    const Scheme fx = fox(1, 2);
    CHECK(fx.spec().A.to_string() == "1010\n0101");
    CHECK(fx.spec().B == fx.spec().A);
    CHECK(fx.spec().T.to_string() == "0100\n1100\n0010\n0001");
    CHECK(is_self_dual_pair({fx.spec().A, fx.spec().B, PairProvenance::user}));

    const Scheme t1 = gfn_type1(1, 4, 2);
    CHECK(t1.spec().A.to_string() == "1000");
    CHECK(t1.spec().B.to_string() == "0100");
    CHECK(t1.spec().T.to_string() == "0100\n0010\n0001\n1000");

    const MultiBranchScheme t3 = gfn_type3(1, 4, 2);
    REQUIRE(t3.spec().branches.size() == 3);
    CHECK(t3.spec().branches[0].A.to_string() == "100000000000");
    CHECK(t3.spec().branches[0].B.to_string() == "010000000000");
    CHECK(t3.spec().branches[1].A.to_string() == "000001000000");
    CHECK(t3.spec().branches[1].B.to_string() == "000000100000");
    CHECK(t3.spec().branches[2].A.to_string() == "000000000010");
    CHECK(t3.spec().branches[2].B.to_string() == "000000000001");
    CHECK(t3.spec().T == t1.spec().T);

    // All nine branch pairs are perpendicular.
    for (const auto& bi : t3.spec().branches)
        for (const auto& bj : t3.spec().branches)
            CHECK(mat_mul(bi.A, transpose(bj.B)).is_zero());
}

TEST_CASE("every template validates") {
    for (unsigned n : {1u, 2u, 3u}) {
        CHECK(validate(feistel(n, n).spec()).ok());
        CHECK(validate(fox(n, n).spec()).ok());
        CHECK(validate(gfn_type1(n, 4, n).spec()).ok());
        CHECK(validate(gfn_type3(n, 4, n).spec()).ok());
        CHECK(mat_mul(feistel(n, n).spec().A, transpose(feistel(n, n).spec().B)).is_zero());
    }
}

TEST_CASE("half-word swap core") {
    CHECK(half_swap_matrix(2).to_string() == "01\n10");
    CHECK_THROWS_AS(half_swap_matrix(3), PreconditionError);

    const KeyedMap sw = swap_core(4);
    CHECK(sw.rule == KeyRule::swap_plus_key);
    // low and high halves exchange: coordinates (a,b) -> (b,a)
    CHECK(sw.table[0b0011] == 0b1100);
    CHECK(sw.eval(0b0011, 0b0101) == (0b1100 ^ 0b0101));
}

TEST_CASE("linear case closed form") {
    std::mt19937_64 rng(15);
    const PerpPair pair = gen_systematic_pair(2, 4, {}, 7);

    for (bool random_t : {false, true}) {
        std::optional<BitMatrix> t;
        if (random_t) t = random_invertible(4, rng);
        const auto [scheme, lcf] = linear_case(2, 2, pair, t);

        // One round: F_k(x) = C x + D k for every state and key.
        for (std::uint64_t x = 0; x < 16; ++x)
            for (std::uint64_t k = 0; k < 4; ++k) {
                const BitVector xv = BitVector::from_uint(x, 4);
                const BitVector kv = BitVector::from_uint(k, 2);
                CHECK(scheme.forward(xv, k) == ((lcf.C * xv) ^ (lcf.D * kv)));
            }

        // C is an invertible involution composed with T.
        CHECK(mat_mul(lcf.C, invert(lcf.C)) == BitMatrix::identity(4));

        // Three rounds with random keys match the closed form.
        for (int trial = 0; trial < 20; ++trial) {
            const std::vector<std::uint64_t> keys{rng() & 3, rng() & 3, rng() & 3};
            const BitVector xv = BitVector::from_uint(rng() & 15, 4);
            CHECK(scheme.iterate(xv, keys).back() == closed_form_endpoint(lcf, xv, keys));
        }

        // Two ciphertexts under one key chain leak the input difference.
        for (int trial = 0; trial < 100; ++trial) {
            const unsigned ell = 1 + unsigned(rng() % 16);
            std::vector<std::uint64_t> keys;
            for (unsigned j = 0; j < ell; ++j) keys.push_back(rng() & 3);
            const BitVector xa = BitVector::from_uint(rng() & 15, 4);
            const BitVector xb = BitVector::from_uint(rng() & 15, 4);
            const BitVector ya = scheme.iterate(xa, keys).back();
            const BitVector yb = scheme.iterate(xb, keys).back();
            CHECK(recover_input_difference(lcf, ya, yb, ell) == (xa ^ xb));
        }
    }

    CHECK_THROWS_AS(linear_case(3, 2, gen_systematic_pair(3, 6, {}, 1)), PreconditionError);
}

TEST_CASE("block pattern helper") {
    const BitMatrix m = from_block_pattern({{1, 0}, {0, 1}}, 2);
    CHECK(m == BitMatrix::identity(4));
    CHECK_THROWS_AS(from_block_pattern({{1, 0}, {1}}, 1), ShapeError);
}
