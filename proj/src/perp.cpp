#include "sandwich/perp.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "sandwich/subspace.hpp"

namespace sandwich {

void check_pair(const PerpPair& p) {
    if (p.A.cols() != p.B.cols()) throw ValidationError("pair: column counts differ");
    if (!mat_mul(p.A, transpose(p.B)).is_zero()) throw ValidationError("pair: A Bt != 0");
    if (rank(p.A) != p.A.rows())
        throw ValidationError("pair: A not full row rank");
    if (rank(p.B) != p.B.rows())
        throw ValidationError("pair: B not full row rank");
}

namespace {

// `count` distinct values from [0, space); includes 0 only when the nonzero
// values cannot fill the request (count == space), which then forces a zero
// row and a failed rank check.
std::vector<std::uint64_t> sample_distinct(std::uint64_t space, unsigned count,
                                           std::mt19937_64& rng) {
    const bool allow_zero = count > space - 1;
    std::vector<std::uint64_t> out;
    if (space <= 2 * count + 2) {
        std::vector<std::uint64_t> pool;
        for (std::uint64_t v = allow_zero ? 0 : 1; v < space; ++v) pool.push_back(v);
        std::shuffle(pool.begin(), pool.end(), rng);
        out.assign(pool.begin(), pool.begin() + count);
    } else {
        std::unordered_set<std::uint64_t> seen;
        std::uniform_int_distribution<std::uint64_t> dist(allow_zero ? 0 : 1, space - 1);
        while (out.size() < count) {
            const std::uint64_t v = dist(rng);
            if (seen.insert(v).second) out.push_back(v);
        }
    }
    return out;
}

BitMatrix rows_on_support(const std::vector<std::uint64_t>& values,
                          const std::vector<unsigned>& support, unsigned width) {
    BitMatrix m(values.size(), width);
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t t = 0; t < support.size(); ++t)
            if ((values[i] >> t) & 1u) m.set(i, support[t], true);
    return m;
}

} // namespace

PerpPair gen_coordinate_split(unsigned l1, unsigned l2, unsigned rows_a, unsigned rows_b,
                              std::uint64_t seed, unsigned retry_budget) {
    if (l1 == 0 || l2 == 0 || rows_a == 0 || rows_b == 0)
        throw ShapeError("coordinate split: l1, l2, rows_a, rows_b must be positive");
    if (l1 + l2 > 30) throw ResourceError("coordinate split: l1 + l2 beyond the 30-bit budget");
    if ((std::uint64_t(1) << l1) < rows_a || (std::uint64_t(1) << l2) < rows_b)
        throw PreconditionError("coordinate split requires rows_a <= 2^l1 and rows_b <= 2^l2");

    std::mt19937_64 rng(seed);
    const unsigned l = l1 + l2;

    // The index set J picks which l2 coordinates the B rows live on.
    std::vector<unsigned> idx(l);
    std::iota(idx.begin(), idx.end(), 0u);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<unsigned> j_set(idx.begin(), idx.begin() + l2);
    std::vector<unsigned> jc_set(idx.begin() + l2, idx.end());
    std::sort(j_set.begin(), j_set.end());
    std::sort(jc_set.begin(), jc_set.end());

    std::size_t best_a = 0, best_b = 0;
    for (unsigned attempt = 0; attempt < retry_budget; ++attempt) {
        BitMatrix a = rows_on_support(sample_distinct(std::uint64_t(1) << l1, rows_a, rng),
                                      jc_set, l);
        BitMatrix b = rows_on_support(sample_distinct(std::uint64_t(1) << l2, rows_b, rng),
                                      j_set, l);
        const std::size_t ra = rank(a), rb = rank(b);
        best_a = std::max(best_a, ra);
        best_b = std::max(best_b, rb);
        if (ra == rows_a && rb == rows_b) {
            PerpPair pair{std::move(a), std::move(b), PairProvenance::coordinate_split};
            check_pair(pair);
            return pair;
        }
    }
    throw GenerationError("coordinate split: retry budget (" + std::to_string(retry_budget) +
                          ") exhausted; best ranks A " + std::to_string(best_a) + "/" +
                          std::to_string(rows_a) + ", B " + std::to_string(best_b) + "/" +
                          std::to_string(rows_b));
}

PerpPair gen_systematic_pair(unsigned k, unsigned l, const std::optional<BitMatrix>& m,
                             std::uint64_t seed) {
    if (k == 0 || k >= l) throw ShapeError("systematic pair requires 0 < k < l");
    BitMatrix mid;
    if (m) {
        if (m->rows() != k || m->cols() != l - k)
            throw ShapeError("systematic pair: m must be " + std::to_string(k) + "x" +
                             std::to_string(l - k));
        mid = *m;
    } else {
        std::mt19937_64 rng(seed);
        mid = random_matrix(k, l - k, rng);
    }
    PerpPair pair{hconcat(BitMatrix::identity(k), mid),
                  hconcat(transpose(mid), BitMatrix::identity(l - k)),
                  PairProvenance::systematic};
    check_pair(pair);
    return pair;
}

bool is_self_dual_pair(const PerpPair& p) {
    if (p.A.cols() != p.B.cols()) throw ShapeError("pair: column counts differ");
    return Subspace::span_of(p.A) == Subspace::span_of(p.B);
}

} // namespace sandwich
