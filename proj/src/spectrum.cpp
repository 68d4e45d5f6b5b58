#include "sandwich/spectrum.hpp"

#include <bit>
#include <cassert>
#include <string>

namespace sandwich {

namespace {

std::vector<std::uint32_t> core_truth_table(const KeyedMap& map, std::uint64_t key) {
    std::vector<std::uint32_t> tab(std::size_t(1) << map.d1);
    for (std::uint32_t x = 0; x < tab.size(); ++x) tab[x] = map.eval(x, key);
    return tab;
}

void check_exhaust(unsigned bits, const Limits& limits, const char* what) {
    if (bits > limits.exhaust_bits)
        throw ResourceError(std::string(what) + ": " + std::to_string(bits) +
                            " input bits exceed the exhaustion limit " +
                            std::to_string(limits.exhaust_bits) +
                            "; use single-row mode or raise --limit-bits");
}

void check_table(unsigned d1, unsigned d2, const Limits& limits, const char* what) {
    if (d1 + d2 > limits.table_bits)
        throw ResourceError(std::string(what) + ": full table needs 2^" +
                            std::to_string(d1 + d2) + " entries, beyond the 2^" +
                            std::to_string(limits.table_bits) +
                            " budget; use single-row mode");
}

} // namespace

void fwht(std::vector<std::int64_t>& a) {
    for (std::size_t len = 1; len < a.size(); len <<= 1)
        for (std::size_t i = 0; i < a.size(); i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                const std::int64_t x = a[j], y = a[j + len];
                a[j] = x + y;
                a[j + len] = x - y;
            }
}

SpectrumTable ddt(const KeyedMap& map, std::uint64_t key, const Limits& limits) {
    check_exhaust(map.d1, limits, "ddt");
    check_table(map.d1, map.d2, limits, "ddt");
    const auto tab = core_truth_table(map, key);
    SpectrumTable t{SpectrumKind::differential, map.d1, map.d2, {}};
    t.entries.assign(std::size_t(1) << (map.d1 + map.d2), 0);
    const std::uint32_t n1 = 1u << map.d1;
    for (std::uint32_t u = 0; u < n1; ++u)
        for (std::uint32_t x = 0; x < n1; ++x)
            ++t.entries[(std::size_t(u) << map.d2) | (tab[x ^ u] ^ tab[x])];
    return t;
}

SpectrumTable lat(const KeyedMap& map, std::uint64_t key, const Limits& limits) {
    check_exhaust(map.d1, limits, "lat");
    check_table(map.d1, map.d2, limits, "lat");
    const auto tab = core_truth_table(map, key);
    SpectrumTable t{SpectrumKind::correlation, map.d1, map.d2, {}};
    t.entries.assign(std::size_t(1) << (map.d1 + map.d2), 0);
    const std::uint32_t n1 = 1u << map.d1;
    const std::uint32_t n2 = 1u << map.d2;
    std::vector<std::int64_t> col(n1);
    for (std::uint32_t v = 0; v < n2; ++v) {
        for (std::uint32_t x = 0; x < n1; ++x)
            col[x] = (std::popcount(v & tab[x]) & 1) ? -1 : 1;
        fwht(col);
        for (std::uint32_t u = 0; u < n1; ++u)
            t.entries[(std::size_t(u) << map.d2) | v] = col[u];
    }
    return t;
}

std::int64_t ddt_entry(const KeyedMap& map, std::uint64_t key, std::uint32_t u, std::uint32_t v) {
    const std::uint32_t n1 = 1u << map.d1;
    std::int64_t count = 0;
    for (std::uint32_t x = 0; x < n1; ++x)
        if ((map.eval(x ^ u, key) ^ map.eval(x, key)) == v) ++count;
    return count;
}

std::int64_t lat_entry(const KeyedMap& map, std::uint64_t key, std::uint32_t u, std::uint32_t v) {
    const std::uint32_t n1 = 1u << map.d1;
    std::int64_t sum = 0;
    for (std::uint32_t x = 0; x < n1; ++x)
        sum += ((std::popcount(v & map.eval(x, key)) ^ std::popcount(u & x)) & 1) ? -1 : 1;
    return sum;
}

std::vector<std::int64_t> ddt_row(const KeyedMap& map, std::uint64_t key, std::uint32_t u,
                                  const Limits& limits) {
    check_exhaust(map.d1, limits, "ddt row");
    const auto tab = core_truth_table(map, key);
    std::vector<std::int64_t> row(std::size_t(1) << map.d2, 0);
    for (std::uint32_t x = 0; x < tab.size(); ++x) ++row[tab[x ^ u] ^ tab[x]];
    return row;
}

std::vector<std::int64_t> lat_row(const KeyedMap& map, std::uint64_t key, std::uint32_t u,
                                  const Limits& limits) {
    check_exhaust(map.d1, limits, "lat row");
    const auto tab = core_truth_table(map, key);
    std::vector<std::int64_t> row(std::size_t(1) << map.d2, 0);
    for (std::uint32_t v = 0; v < row.size(); ++v) {
        std::int64_t sum = 0;
        for (std::uint32_t x = 0; x < tab.size(); ++x)
            sum += ((std::popcount(v & tab[x]) ^ std::popcount(u & x)) & 1) ? -1 : 1;
        row[v] = sum;
    }
    return row;
}

DiffReducer::DiffReducer(const Scheme& s, std::uint64_t key, const Limits& limits)
    : s_(&s), key_(key), rb_tr_(transpose(s.right_inv_b().inverse)) {
    const auto& f = s.spec().f;
    if (f.d1 <= limits.exhaust_bits && f.d1 + f.d2 <= limits.table_bits)
        core_ = ddt(f, key, limits);
}

ReducedCoefficient DiffReducer::at(const BitVector& alpha, const BitVector& beta) const {
    const auto& spec = s_->spec();
    BitVector w = mat_vec(s_->t_inv(), beta);
    w ^= alpha;
    ReducedCoefficient rc;
    rc.active = s_->rowspace_b().contains(w);
    if (!rc.active) {
        rc.value = Dyadic::zero();
        return rc;
    }
    rc.core_u = mat_vec(spec.A, alpha);
    rc.core_v = mat_vec(rb_tr_, w);
    const auto u = static_cast<std::uint32_t>(rc.core_u.to_uint());
    const auto v = static_cast<std::uint32_t>(rc.core_v.to_uint());
    const std::int64_t count = core_ ? core_->at(u, v) : ddt_entry(spec.f, key_, u, v);
    rc.value = Dyadic::from_count(count, spec.f.d1);
    return rc;
}

CorrReducer::CorrReducer(const Scheme& s, std::uint64_t key, const Limits& limits)
    : s_(&s), key_(key), ra_tr_(transpose(s.right_inv_a().inverse)),
      b_t_tr_(mat_mul(s.spec().B, s.t_tr())) {
    const auto& f = s.spec().f;
    if (f.d1 <= limits.exhaust_bits && f.d1 + f.d2 <= limits.table_bits)
        core_ = lat(f, key, limits);
}

ReducedCoefficient CorrReducer::at(const BitVector& alpha, const BitVector& beta) const {
    const auto& spec = s_->spec();
    BitVector w = mat_vec(s_->t_tr(), beta);
    w ^= alpha;
    ReducedCoefficient rc;
    rc.active = s_->rowspace_a().contains(w);
    if (!rc.active) {
        rc.value = Dyadic::zero();
        return rc;
    }
    rc.core_u = mat_vec(ra_tr_, w);
    rc.core_v = mat_vec(b_t_tr_, beta);
    const auto u = static_cast<std::uint32_t>(rc.core_u.to_uint());
    const auto v = static_cast<std::uint32_t>(rc.core_v.to_uint());
    const std::int64_t sum = core_ ? core_->at(u, v) : lat_entry(spec.f, key_, u, v);
    rc.value = Dyadic::from_count(sum, spec.f.d1);
    return rc;
}

ReducedCoefficient reduce_diff(const Scheme& s, std::uint64_t key, const BitVector& alpha,
                               const BitVector& beta) {
    Limits no_table;
    no_table.table_bits = 0;  // single entry, skip materializing the table
    return DiffReducer(s, key, no_table).at(alpha, beta);
}

ReducedCoefficient reduce_corr(const Scheme& s, std::uint64_t key, const BitVector& alpha,
                               const BitVector& beta) {
    Limits no_table;
    no_table.table_bits = 0;
    return CorrReducer(s, key, no_table).at(alpha, beta);
}

BruteForcer::BruteForcer(const Scheme& s, std::uint64_t key, const Limits& limits)
    : bits_(s.state_bits()) {
    check_exhaust(bits_, limits, "brute-force oracle");
    ftab_.resize(std::size_t(1) << bits_);
    for (std::uint64_t x = 0; x < ftab_.size(); ++x)
        ftab_[x] = s.forward(BitVector::from_uint(x, bits_), key).to_uint();
}

Dyadic BruteForcer::diff(const BitVector& alpha, const BitVector& beta) const {
    const std::uint64_t a = alpha.to_uint(), b = beta.to_uint();
    std::int64_t count = 0;
    for (std::uint64_t x = 0; x < ftab_.size(); ++x)
        if ((ftab_[x ^ a] ^ ftab_[x]) == b) ++count;
    return Dyadic::from_count(count, bits_);
}

Dyadic BruteForcer::corr(const BitVector& alpha, const BitVector& beta) const {
    const std::uint64_t a = alpha.to_uint(), b = beta.to_uint();
    std::int64_t sum = 0;
    for (std::uint64_t x = 0; x < ftab_.size(); ++x)
        sum += ((std::popcount(b & ftab_[x]) ^ std::popcount(a & x)) & 1) ? -1 : 1;
    return Dyadic::from_count(sum, bits_);
}

Dyadic brute_diff(const Scheme& s, std::uint64_t key, const BitVector& alpha,
                  const BitVector& beta, const Limits& limits) {
    return BruteForcer(s, key, limits).diff(alpha, beta);
}

Dyadic brute_corr(const Scheme& s, std::uint64_t key, const BitVector& alpha,
                  const BitVector& beta, const Limits& limits) {
    return BruteForcer(s, key, limits).corr(alpha, beta);
}

OracleCheckResult oracle_check(const Scheme& s, std::uint64_t key, const Limits& limits,
                               std::size_t keep_mismatches) {
    const unsigned bits = s.state_bits();
    check_exhaust(2 * bits, limits, "oracle sweep");  // 2^{2nN} pairs per mode
    const BruteForcer brute(s, key, limits);
    const DiffReducer dred(s, key, limits);
    const CorrReducer cred(s, key, limits);

    OracleCheckResult res;
    const std::uint64_t states = std::uint64_t(1) << bits;
    for (std::uint64_t a = 0; a < states; ++a) {
        const BitVector alpha = BitVector::from_uint(a, bits);
        for (std::uint64_t b = 0; b < states; ++b) {
            const BitVector beta = BitVector::from_uint(b, bits);
            ++res.pairs;
            const Dyadic rd = dred.at(alpha, beta).value;
            const Dyadic bd = brute.diff(alpha, beta);
            if (rd != bd) {
                ++res.mismatch_count;
                if (res.first_mismatches.size() < keep_mismatches)
                    res.first_mismatches.push_back({SpectrumKind::differential, a, b, rd, bd});
            }
            const Dyadic rc = cred.at(alpha, beta).value;
            const Dyadic bc = brute.corr(alpha, beta);
            if (rc != bc) {
                ++res.mismatch_count;
                if (res.first_mismatches.size() < keep_mismatches)
                    res.first_mismatches.push_back({SpectrumKind::correlation, a, b, rc, bc});
            }
        }
    }
    return res;
}

} // namespace sandwich
