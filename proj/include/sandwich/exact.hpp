#pragma once

// Exact arithmetic support: dyadic rationals (num / 2^exp) for single spectrum
// coefficients, an arbitrary-precision unsigned integer for trail products and
// bound comparisons, and a small reduced fraction for bound exponents. No
// floating point enters any verified comparison.

#include <cstdint>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "sandwich/errors.hpp"

namespace sandwich {

class BigUInt {
public:
    BigUInt() = default;  // zero
    explicit BigUInt(std::uint64_t v) {
        if (v) limbs_.push_back(static_cast<std::uint32_t>(v));
        if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
    }

    bool is_zero() const { return limbs_.empty(); }

    static int compare(const BigUInt& a, const BigUInt& b) {
        if (a.limbs_.size() != b.limbs_.size())
            return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
        for (std::size_t i = a.limbs_.size(); i-- > 0;)
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
        return 0;
    }
    friend bool operator==(const BigUInt& a, const BigUInt& b) { return compare(a, b) == 0; }
    friend bool operator<=(const BigUInt& a, const BigUInt& b) { return compare(a, b) <= 0; }
    friend bool operator<(const BigUInt& a, const BigUInt& b) { return compare(a, b) < 0; }

    BigUInt& mul_u32(std::uint32_t f) {
        if (f == 0) { limbs_.clear(); return *this; }
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            const std::uint64_t cur = std::uint64_t(limb) * f + carry;
            limb = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        while (carry) {
            limbs_.push_back(static_cast<std::uint32_t>(carry));
            carry >>= 32;
        }
        return *this;
    }

    BigUInt& mul_u64(std::uint64_t f) {
        BigUInt bf(f);
        *this *= bf;
        return *this;
    }

    BigUInt& operator*=(const BigUInt& o) {
        if (is_zero() || o.is_zero()) { limbs_.clear(); return *this; }
        std::vector<std::uint32_t> out(limbs_.size() + o.limbs_.size(), 0);
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
                const std::uint64_t cur =
                    std::uint64_t(limbs_[i]) * o.limbs_[j] + out[i + j] + carry;
                out[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            std::size_t k = i + o.limbs_.size();
            while (carry) {
                const std::uint64_t cur = std::uint64_t(out[k]) + carry;
                out[k] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        limbs_ = std::move(out);
        trim();
        return *this;
    }
    friend BigUInt operator*(BigUInt a, const BigUInt& b) { a *= b; return a; }

    BigUInt& shl(std::size_t bits) {
        if (is_zero() || bits == 0) return *this;
        const std::size_t limb_shift = bits / 32, bit_shift = bits % 32;
        limbs_.insert(limbs_.begin(), limb_shift, 0);
        if (bit_shift) {
            std::uint32_t carry = 0;
            for (std::size_t i = limb_shift; i < limbs_.size(); ++i) {
                const std::uint32_t next = limbs_[i] >> (32 - bit_shift);
                limbs_[i] = (limbs_[i] << bit_shift) | carry;
                carry = next;
            }
            if (carry) limbs_.push_back(carry);
        }
        return *this;
    }

    BigUInt pow(std::uint64_t e) const {
        BigUInt acc(1);
        BigUInt base = *this;
        while (e) {
            if (e & 1) acc *= base;
            if (e >>= 1) base *= base;
        }
        return acc;
    }

    std::size_t bit_length() const {
        if (is_zero()) return 0;
        std::size_t bits = (limbs_.size() - 1) * 32;
        std::uint32_t top = limbs_.back();
        while (top) { ++bits; top >>= 1; }
        return bits;
    }

    double approx() const {
        double v = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0 + limbs_[i];
        return v;
    }

    std::string to_decimal() const {
        if (is_zero()) return "0";
        std::vector<std::uint32_t> work = limbs_;
        std::string out;
        while (!work.empty()) {
            std::uint64_t rem = 0;
            for (std::size_t i = work.size(); i-- > 0;) {
                const std::uint64_t cur = (rem << 32) | work[i];
                work[i] = static_cast<std::uint32_t>(cur / 1000000000u);
                rem = cur % 1000000000u;
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            char buf[10];
            for (int k = 0; k < 9; ++k) { buf[k] = char('0' + rem % 10); rem /= 10; }
            if (work.empty()) {
                int top = 8;
                while (top > 0 && buf[top] == '0') --top;
                for (int k = 0; k <= top; ++k) out += buf[k];
            } else {
                for (int k = 0; k < 9; ++k) out += buf[k];
            }
        }
        return {out.rbegin(), out.rend()};
    }

private:
    std::vector<std::uint32_t> limbs_;  // little-endian base 2^32, no leading zeros

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
};

// num / 2^exp, canonical: num odd, or num == 0 and exp == 0.
struct Dyadic {
    std::int64_t num = 0;
    unsigned exp = 0;

    static Dyadic from_count(std::int64_t count, unsigned denom_bits) {
        Dyadic d{count, denom_bits};
        d.canonicalize();
        return d;
    }
    static Dyadic zero() { return {}; }
    static Dyadic one() { return {1, 0}; }

    void canonicalize() {
        if (num == 0) { exp = 0; return; }
        while ((num & 1) == 0 && exp > 0) { num >>= 1; --exp; }
    }
    bool is_zero() const { return num == 0; }
    Dyadic abs() const { return {num < 0 ? -num : num, exp}; }
    double approx() const { return std::ldexp(double(num), -int(exp)); }
    std::string to_string() const {
        return std::to_string(num) + "/2^" + std::to_string(exp);
    }
    friend bool operator==(const Dyadic&, const Dyadic&) = default;
};

// Exact a < b on canonical dyadics; cross-multiplication stays within
// __int128 for all desk-scale exponents.
inline bool dyadic_less(const Dyadic& a, const Dyadic& b) {
    const unsigned e = a.exp > b.exp ? a.exp : b.exp;
    const __int128 lhs = __int128(a.num) << (e - a.exp);
    const __int128 rhs = __int128(b.num) << (e - b.exp);
    return lhs < rhs;
}

// Reduced fraction with positive denominator; used for bound exponents.
struct Frac {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Frac make(std::int64_t num, std::int64_t den) {
        Frac f{num, den};
        f.reduce();
        return f;
    }
    void reduce() {
        if (den < 0) { den = -den; num = -num; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }
    bool is_integer() const { return den == 1; }
    double approx() const { return double(num) / double(den); }
    std::string to_string() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
    friend bool operator==(const Frac&, const Frac&) = default;
};

// sign * num / 2^exp with |value| <= 1; exact product of dyadic coefficients.
struct ExactProb {
    int sign = 1;
    BigUInt num = BigUInt(1);
    std::uint64_t exp = 0;

    static ExactProb one() { return {}; }

    bool is_zero() const { return num.is_zero(); }

    void mul(const Dyadic& d) {
        if (d.num == 0) { sign = 0; num = BigUInt(); exp = 0; return; }
        if (is_zero()) return;
        if (d.num < 0) sign = -sign;
        // Canonical dyadics have odd numerators, so the product stays canonical.
        num.mul_u64(static_cast<std::uint64_t>(d.num < 0 ? -d.num : d.num));
        exp += d.exp;
    }

    friend bool operator==(const ExactProb& a, const ExactProb& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.sign == b.sign && a.exp == b.exp && a.num == b.num;
    }

    // |value| == |d|, exactly.
    bool abs_equals(const Dyadic& d) const {
        if (is_zero() || d.is_zero()) return is_zero() && d.is_zero();
        BigUInt lhs = num;
        lhs.shl(d.exp);
        BigUInt rhs(static_cast<std::uint64_t>(d.num < 0 ? -d.num : d.num));
        rhs.shl(exp);
        return lhs == rhs;
    }

    // |value| <= base^e with base a nonnegative dyadic, exactly.
    bool abs_leq_pow(const Dyadic& base, std::uint64_t e) const {
        if (e == 0) return true;  // base^0 = 1 and |value| <= 1 always
        if (base.is_zero()) return is_zero();
        BigUInt lhs = num;
        lhs.shl(static_cast<std::size_t>(base.exp) * e);
        BigUInt rhs = BigUInt(static_cast<std::uint64_t>(base.num)).pow(e);
        rhs.shl(exp);
        return lhs <= rhs;
    }

    // |value| <= base^(a/b) with a/b >= 0, exactly: compare value^b vs base^a.
    bool abs_leq_pow_frac(const Dyadic& base, const Frac& e) const {
        if (e.num < 0) throw PreconditionError("bound exponent must be nonnegative");
        if (e.num == 0) return true;
        if (base.is_zero()) return is_zero();
        const auto a = static_cast<std::uint64_t>(e.num);
        const auto b = static_cast<std::uint64_t>(e.den);
        BigUInt lhs = num.pow(b);
        lhs.shl(static_cast<std::size_t>(base.exp) * a);
        BigUInt rhs = BigUInt(static_cast<std::uint64_t>(base.num)).pow(a);
        rhs.shl(exp * b);
        return lhs <= rhs;
    }

    double approx() const {
        if (is_zero()) return 0.0;
        // num >= 1 here, so log2 is well defined even when num overflows double.
        const double mag = std::exp2(std::log2(num.approx()) - double(exp));
        return sign < 0 ? -mag : mag;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        return (sign < 0 ? "-" : "") + num.to_decimal() + "/2^" + std::to_string(exp);
    }
};

} // namespace sandwich
