#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "sandwich/bitmat.hpp"
#include "sandwich/subspace.hpp"
#include "support.hpp"

using namespace sandwich;
using namespace testsupport;

TEST_CASE("bit vector string and integer encodings agree") {
    const BitVector v = BitVector::from_string("0110");
    CHECK(v.size() == 4);
    CHECK(v.to_uint() == 0b0110u);  // leftmost character = coordinate 0 = bit 0
    CHECK(v.get(1));
    CHECK(v.get(2));
    CHECK_FALSE(v.get(0));
    CHECK(v.to_string() == "0110");
    CHECK(BitVector::from_uint(6, 4) == v);
    CHECK_THROWS_AS(BitVector::from_string("01x"), ParseError);

    const BitVector a = BitVector::from_string("1100");
    CHECK(a.dot(v) == true);   // overlap at coordinate 1
    CHECK(a.dot(a) == false);  // even weight
}

TEST_CASE("matrix product") {
    const BitMatrix i2 = BitMatrix::identity(2);
    CHECK(i2 * i2 == i2);

    const BitMatrix row = BitMatrix::from_strings({"11"});
    const BitMatrix col = BitMatrix::from_strings({"1", "1"});
    CHECK((row * col) == BitMatrix::from_strings({"0"}));  // 1 + 1 = 0

    // Disjoint-support pair: A Bt vanishes for every word size.
    for (unsigned n : {1u, 3u}) {
        const BitMatrix a = from_block_pattern({{1, 0}}, n);
        const BitMatrix bt = transpose(from_block_pattern({{0, 1}}, n));
        CHECK(mat_mul(a, bt).is_zero());
    }

    CHECK_THROWS_AS(mat_mul(row, row), ShapeError);
    CHECK_THROWS_AS(mat_vec(row, BitVector(3)), ShapeError);
}

TEST_CASE("reduced row echelon form") {
    const RrefResult r1 = rref(BitMatrix::from_strings({"11", "01"}));
    CHECK(r1.rank == 2);
    CHECK(r1.pivot_cols == std::vector<std::size_t>{0, 1});
    CHECK(r1.reduced == BitMatrix::identity(2));

    const RrefResult r2 = rref(BitMatrix(3, 4));
    CHECK(r2.rank == 0);
    CHECK(r2.pivot_cols.empty());

    const RrefResult r3 = rref(BitMatrix::from_strings({"101", "101"}));
    CHECK(r3.rank == 1);
    CHECK(r3.reduced.row(0).to_string() == "101");
    CHECK(r3.reduced.row(1).is_zero());
}

TEST_CASE("kernel basis") {
    const Subspace k1 = kernel_basis(BitMatrix::from_strings({"11"}));
    CHECK(k1.dim() == 1);
    CHECK(k1.basis().row(0).to_string() == "11");

    // A = [I 0] at n=1: enumerate all four vectors of GF(2)^2.
    const BitMatrix a = BitMatrix::from_strings({"10"});
    const Subspace ka = kernel_basis(a);
    CHECK(subspace_set(ka) == brute_kernel_set(a));
    CHECK(ka.dim() == 1);
    CHECK(ka.basis().row(0).to_string() == "01");

    CHECK(kernel_basis(BitMatrix::from_strings({"11", "01"})).dim() == 0);
}

TEST_CASE("rank plus nullity is the column count") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 8;
        const BitMatrix m = random_matrix(rows, cols, rng);
        const Subspace k = kernel_basis(m);
        CHECK(rank(m) + k.dim() == cols);
        for (const BitVector& v : k.enumerate())
            CHECK(mat_vec(m, v).is_zero());
    }
}

TEST_CASE("rowspace membership") {
    const BitMatrix m = BitMatrix::from_strings({"11"});
    CHECK(rowspace_contains(m, BitVector(2)));  // zero vector
    CHECK_FALSE(rowspace_contains(m, BitVector::from_string("10")));
    CHECK(rowspace_contains(m, BitVector::from_string("11")));
    CHECK_THROWS_AS(rowspace_contains(m, BitVector(3)), ShapeError);

    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 6;
        const BitMatrix r = random_matrix(rows, cols, rng);
        for (std::uint64_t v = 0; v < vec_count(static_cast<unsigned>(cols)); ++v) {
            const BitVector vec = BitVector::from_uint(v, cols);
            CHECK(rowspace_contains(r, vec) == brute_rowspace_contains(r, vec));
        }
    }
}

TEST_CASE("inverse") {
    CHECK(invert(BitMatrix::identity(3)) == BitMatrix::identity(3));

    const BitMatrix swap = BitMatrix::from_strings({"01", "10"});
    CHECK(invert(swap) == swap);

    const BitMatrix u = BitMatrix::from_strings({"11", "01"});
    CHECK(mat_mul(u, invert(u)) == BitMatrix::identity(2));
    CHECK(invert(u) == u);

    try {
        invert(BitMatrix::from_strings({"11", "11"}));
        FAIL("expected SingularError");
    } catch (const SingularError& e) {
        CHECK(std::string(e.what()).find("deficit 1") != std::string::npos);
    }

    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t nn = 1 + rng() % 8;
        const BitMatrix m = random_invertible(nn, rng);
        const BitMatrix mi = invert(m);
        CHECK(m * mi == BitMatrix::identity(nn));
        CHECK(mi * m == BitMatrix::identity(nn));
        CHECK(invert(mi) == m);
    }
}

TEST_CASE("right inverse") {
    // Systematic input keeps the upper block at I and the lower block at zero.
    std::mt19937_64 rng(44);
    const BitMatrix u = random_matrix(2, 3, rng);
    const BitMatrix sys = hconcat(BitMatrix::identity(2), u);
    const RightInverse r = right_inverse(sys);
    CHECK(mat_mul(sys, r.inverse) == BitMatrix::identity(2));
    BitMatrix expect(5, 2);
    expect.set(0, 0, true);
    expect.set(1, 1, true);
    CHECK(r.inverse == expect);

    // [1 1]: exactly two valid right inverses exist; ours is the pivot-column one.
    const BitMatrix m11 = BitMatrix::from_strings({"11"});
    std::set<std::string> valid;
    for (unsigned bits = 0; bits < 4; ++bits) {
        BitMatrix cand(2, 1);
        cand.set(0, 0, bits & 1);
        cand.set(1, 0, bits & 2);
        if (mat_mul(m11, cand) == BitMatrix::identity(1)) valid.insert(cand.to_string());
    }
    CHECK(valid == std::set<std::string>{"1\n0", "0\n1"});
    CHECK(right_inverse(m11).inverse.to_string() == "1\n0");

    // B = [0 I] at n=1 picks the second coordinate.
    CHECK(right_inverse(BitMatrix::from_strings({"01"})).inverse.to_string() == "0\n1");

    CHECK_THROWS_AS(right_inverse(BitMatrix::from_strings({"10", "10"})), RankError);
    CHECK_THROWS_AS(right_inverse(BitMatrix::from_strings({"1", "0"})), ShapeError);

    // Exhaustive candidate check at small sizes: our solution is always among
    // the enumerated valid right inverses.
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t k = 1 + rng() % 2, l = k + rng() % (5 - k);
        BitMatrix m = random_matrix(k, l, rng);
        if (rank(m) != k) continue;
        const RightInverse ri = right_inverse(m);
        CHECK(mat_mul(m, ri.inverse) == BitMatrix::identity(k));
        bool found = false;
        for (std::uint64_t bits = 0; bits < vec_count(static_cast<unsigned>(l * k)); ++bits) {
            BitMatrix cand(l, k);
            for (std::size_t i = 0; i < l * k; ++i)
                if ((bits >> i) & 1u) cand.set(i / k, i % k, true);
            if (mat_mul(m, cand) == BitMatrix::identity(k) && cand == ri.inverse) {
                found = true;
                break;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("subspace intersection") {
    const Subspace ex = Subspace::span_of(BitMatrix::from_strings({"10"}));
    const Subspace ey = Subspace::span_of(BitMatrix::from_strings({"01"}));
    CHECK(subspace_intersect(ex, ey).dim() == 0);
    CHECK(subspace_intersect(ex, ex) == ex);

    const Subspace full2 = Subspace::span_of(BitMatrix::from_strings({"10", "01"}));
    const Subspace diag = Subspace::span_of(BitMatrix::from_strings({"11"}));
    CHECK(subspace_intersect(full2, diag) == diag);

    CHECK_THROWS_AS(subspace_intersect(ex, Subspace::zero(3)), ShapeError);

    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t d = 2 + rng() % 7;
        const Subspace s1 = Subspace::span_of(random_matrix(1 + rng() % d, d, rng));
        const Subspace s2 = Subspace::span_of(random_matrix(1 + rng() % d, d, rng));
        const Subspace meet = subspace_intersect(s1, s2);
        CHECK(subspace_set(meet) == intersect_sets(subspace_set(s1), subspace_set(s2)));
        CHECK(meet.dim() + d >= s1.dim() + s2.dim());
    }
}

TEST_CASE("subspace image") {
    const Subspace s = Subspace::span_of(BitMatrix::from_strings({"01"}));
    CHECK(subspace_image(BitMatrix::identity(2), s) == s);

    const BitMatrix swap = BitMatrix::from_strings({"01", "10"});
    CHECK(subspace_image(swap, s).basis().row(0).to_string() == "10");

    // The Feistel T is an involution, so applying it twice returns ker A.
    const BitMatrix a = BitMatrix::from_strings({"10"});
    const Subspace ka = kernel_basis(a);
    CHECK(subspace_image(swap, subspace_image(swap, ka)) == ka);

    CHECK_THROWS_AS(subspace_image(BitMatrix::from_strings({"11", "11"}), s), SingularError);

    std::mt19937_64 rng(66);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 2 + rng() % 6;
        const Subspace sub = Subspace::span_of(random_matrix(1 + rng() % d, d, rng));
        const BitMatrix m = random_invertible(d, rng);
        CHECK(subspace_image(m, sub).dim() == sub.dim());
    }
}
