#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace valdyn {

// Arbitrary-precision signed integer, sign-magnitude with base 2^32 limbs.
// Little-endian limb order, no trailing zero limbs, zero has empty limbs
// and sign +1.
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long v) {
        unsigned long long m;
        if (v < 0) {
            sign_ = -1;
            m = ~static_cast<unsigned long long>(v) + 1ull;
        } else {
            m = static_cast<unsigned long long>(v);
        }
        while (m) {
            limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffull));
            m >>= 32;
        }
        if (limbs_.empty()) sign_ = 1;
    }
    BigInt(int v) : BigInt(static_cast<long long>(v)) {}

    static BigInt from_string(const std::string& s) {
        BigInt r;
        std::size_t i = 0;
        int sign = 1;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        if (i == s.size()) throw std::invalid_argument("BigInt: empty literal");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("BigInt: bad digit in literal");
            r.mul_small(10);
            r.add_small(static_cast<uint32_t>(s[i] - '0'));
        }
        r.sign_ = r.limbs_.empty() ? 1 : sign;
        return r;
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return sign_ < 0; }
    bool is_one() const { return sign_ > 0 && limbs_.size() == 1 && limbs_[0] == 1; }
    int sign() const { return limbs_.empty() ? 0 : sign_; }

    bool is_even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }

    // Fits in signed 64-bit?
    bool fits_int64() const {
        if (limbs_.size() > 2) return false;
        unsigned long long m = mag64();
        if (sign_ > 0) return m <= 0x7fffffffffffffffull;
        return m <= 0x8000000000000000ull;
    }
    long long to_int64() const {
        if (!fits_int64()) throw std::overflow_error("BigInt: does not fit in int64");
        unsigned long long m = mag64();
        return sign_ < 0 ? -static_cast<long long>(m - 1) - 1 : static_cast<long long>(m);
    }

    double to_double() const {
        double r = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) r = r * 4294967296.0 + limbs_[i];
        return sign_ < 0 ? -r : r;
    }

    friend BigInt operator-(const BigInt& a) {
        BigInt r = a;
        if (!r.limbs_.empty()) r.sign_ = -r.sign_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == b.sign_) {
            BigInt r;
            r.limbs_ = add_mag(a.limbs_, b.limbs_);
            r.sign_ = a.sign_;
            r.fix_zero();
            return r;
        }
        int c = cmp_mag(a.limbs_, b.limbs_);
        BigInt r;
        if (c == 0) return r;
        if (c > 0) {
            r.limbs_ = sub_mag(a.limbs_, b.limbs_);
            r.sign_ = a.sign_;
        } else {
            r.limbs_ = sub_mag(b.limbs_, a.limbs_);
            r.sign_ = b.sign_;
        }
        r.fix_zero();
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        if (a.is_zero() || b.is_zero()) return r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            uint64_t carry = 0;
            uint64_t ai = a.limbs_[i];
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                uint64_t cur = r.limbs_[i + j] + ai * b.limbs_[j] + carry;
                r.limbs_[i + j] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
            }
            std::size_t k = i + b.limbs_.size();
            while (carry) {
                uint64_t cur = r.limbs_[k] + carry;
                r.limbs_[k] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        r.sign_ = a.sign_ * b.sign_;
        r.fix_zero();
        return r;
    }

    // Truncated division (quotient rounds toward zero, C semantics).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        divmod_mag(a.limbs_, b.limbs_, q.limbs_, r.limbs_);
        q.sign_ = a.sign_ * b.sign_;
        r.sign_ = a.sign_;
        q.fix_zero();
        r.fix_zero();
    }
    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign() == b.sign() && a.limbs_ == b.limbs_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    static int cmp(const BigInt& a, const BigInt& b) {
        if (a.sign() != b.sign()) return a.sign() < b.sign() ? -1 : 1;
        int c = cmp_mag(a.limbs_, b.limbs_);
        return a.sign() >= 0 ? c : -c;
    }

    BigInt abs() const {
        BigInt r = *this;
        r.sign_ = 1;
        return r;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = 1;
        b.sign_ = 1;
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = b;
            b = r;
        }
        if (a.is_zero()) return BigInt(0);
        return a;
    }

    static BigInt pow(const BigInt& base, unsigned long e) {
        BigInt r(1), b = base;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // Floor of the square root of a non-negative integer.
    static BigInt isqrt(const BigInt& n) {
        if (n.is_negative()) throw std::domain_error("BigInt: isqrt of negative");
        if (n.is_zero()) return BigInt(0);
        // Newton iteration from an over-estimate.
        BigInt x = BigInt(1);
        std::size_t bits = n.bit_length();
        x = x.shifted_left((bits + 1) / 2 + 1);
        for (;;) {
            BigInt y = (x + n / x).shifted_right(1);
            if (y >= x) break;
            x = y;
        }
        return x;
    }

    // Floor of the q-th root; exact flag set when x^q == n.
    static BigInt iroot(const BigInt& n, unsigned q, bool* exact = nullptr) {
        if (q == 0) throw std::domain_error("BigInt: 0th root");
        if (n.is_negative()) {
            if (q % 2 == 0) throw std::domain_error("BigInt: even root of negative");
            bool ex = false;
            BigInt r = iroot(-n, q, &ex);
            if (!ex) {
                // floor for negatives: -(ceil root)
                if (exact) *exact = false;
                return -(r + BigInt(1));
            }
            if (exact) *exact = true;
            return -r;
        }
        if (n.is_zero() || q == 1) {
            if (exact) *exact = true;
            return n;
        }
        std::size_t bits = n.bit_length();
        BigInt x = BigInt(1).shifted_left(bits / q + 1);
        for (;;) {
            // y = ((q-1)x + n / x^(q-1)) / q
            BigInt y = (BigInt(static_cast<long long>(q - 1)) * x + n / pow(x, q - 1)) /
                       BigInt(static_cast<long long>(q));
            if (y >= x) break;
            x = y;
        }
        if (exact) *exact = (pow(x, q) == n);
        return x;
    }

    std::size_t bit_length() const {
        if (limbs_.empty()) return 0;
        uint32_t top = limbs_.back();
        std::size_t b = (limbs_.size() - 1) * 32;
        while (top) {
            ++b;
            top >>= 1;
        }
        return b;
    }

    BigInt shifted_left(std::size_t bits) const {
        if (is_zero()) return BigInt();
        BigInt r;
        std::size_t words = bits / 32, rem = bits % 32;
        r.limbs_.assign(limbs_.size() + words + 1, 0);
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            uint64_t v = static_cast<uint64_t>(limbs_[i]) << rem;
            r.limbs_[i + words] |= static_cast<uint32_t>(v);
            r.limbs_[i + words + 1] |= static_cast<uint32_t>(v >> 32);
        }
        r.trim();
        r.sign_ = sign_;
        return r;
    }
    BigInt shifted_right(std::size_t bits) const {
        std::size_t words = bits / 32, rem = bits % 32;
        if (words >= limbs_.size()) return BigInt();
        BigInt r;
        r.limbs_.assign(limbs_.size() - words, 0);
        for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
            uint64_t v = limbs_[i + words] >> rem;
            if (rem && i + words + 1 < limbs_.size())
                v |= static_cast<uint64_t>(limbs_[i + words + 1]) << (32 - rem);
            r.limbs_[i] = static_cast<uint32_t>(v);
        }
        r.trim();
        r.sign_ = sign_;
        r.fix_zero();
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<uint32_t> tmp = limbs_;
        std::string digits;
        while (!tmp.empty()) {
            uint64_t rem = 0;
            for (std::size_t i = tmp.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | tmp[i];
                tmp[i] = static_cast<uint32_t>(cur / 1000000000ull);
                rem = cur % 1000000000ull;
            }
            while (!tmp.empty() && tmp.back() == 0) tmp.pop_back();
            for (int k = 0; k < 9; ++k) {
                digits.push_back(static_cast<char>('0' + rem % 10));
                rem /= 10;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        if (sign_ < 0) digits.push_back('-');
        std::reverse(digits.begin(), digits.end());
        return digits;
    }

  private:
    std::vector<uint32_t> limbs_;
    int sign_ = 1;

    unsigned long long mag64() const {
        unsigned long long m = 0;
        if (limbs_.size() > 1) m = static_cast<unsigned long long>(limbs_[1]) << 32;
        if (!limbs_.empty()) m |= limbs_[0];
        return m;
    }

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
    void fix_zero() {
        if (limbs_.empty()) sign_ = 1;
    }
    void mul_small(uint32_t f) {
        uint64_t carry = 0;
        for (auto& l : limbs_) {
            uint64_t cur = static_cast<uint64_t>(l) * f + carry;
            l = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
    }
    void add_small(uint32_t v) {
        uint64_t carry = v;
        for (std::size_t i = 0; carry && i < limbs_.size(); ++i) {
            uint64_t cur = limbs_[i] + carry;
            limbs_[i] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
    }

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<uint32_t> r = big;
        uint64_t carry = 0;
        for (std::size_t i = 0; i < small.size(); ++i) {
            uint64_t cur = static_cast<uint64_t>(r[i]) + small[i] + carry;
            r[i] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        for (std::size_t i = small.size(); carry && i < r.size(); ++i) {
            uint64_t cur = static_cast<uint64_t>(r[i]) + carry;
            r[i] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) r.push_back(static_cast<uint32_t>(carry));
        return r;
    }
    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r = a;
        int64_t borrow = 0;
        for (std::size_t i = 0; i < b.size() || borrow; ++i) {
            int64_t cur = static_cast<int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
            borrow = cur < 0;
            if (cur < 0) cur += (1ll << 32);
            r[i] = static_cast<uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // Knuth algorithm D on magnitudes.
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
        q.clear();
        r.clear();
        if (cmp_mag(a, b) < 0) {
            r = a;
            return;
        }
        if (b.size() == 1) {
            q.assign(a.size(), 0);
            uint64_t rem = 0;
            for (std::size_t i = a.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | a[i];
                q[i] = static_cast<uint32_t>(cur / b[0]);
                rem = cur % b[0];
            }
            while (!q.empty() && q.back() == 0) q.pop_back();
            if (rem) r.push_back(static_cast<uint32_t>(rem));
            return;
        }
        // Normalize so that the divisor's top limb has its high bit set.
        int shift = 0;
        for (uint32_t top = b.back(); !(top & 0x80000000u); top <<= 1) ++shift;
        std::vector<uint32_t> u(a.size() + 1, 0), v(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) {
            v[i] = b[i] << shift;
            if (shift && i) v[i] |= static_cast<uint32_t>(static_cast<uint64_t>(b[i - 1]) >> (32 - shift));
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            u[i] = a[i] << shift;
            if (shift && i) u[i] |= static_cast<uint32_t>(static_cast<uint64_t>(a[i - 1]) >> (32 - shift));
        }
        if (shift) u[a.size()] = static_cast<uint32_t>(static_cast<uint64_t>(a.back()) >> (32 - shift));

        std::size_t n = v.size(), m = u.size() - n;
        q.assign(m, 0);
        const uint64_t base = 1ull << 32;
        for (std::size_t j = m; j-- > 0;) {
            uint64_t num = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
            uint64_t qhat = num / v[n - 1], rhat = num % v[n - 1];
            while (qhat >= base ||
                   qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
                --qhat;
                rhat += v[n - 1];
                if (rhat >= base) break;
            }
            // multiply-subtract
            int64_t borrow = 0;
            uint64_t carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                uint64_t p = qhat * v[i] + carry;
                carry = p >> 32;
                int64_t t = static_cast<int64_t>(u[i + j]) - static_cast<int64_t>(p & 0xffffffffull) - borrow;
                borrow = t < 0;
                if (t < 0) t += static_cast<int64_t>(base);
                u[i + j] = static_cast<uint32_t>(t);
            }
            int64_t t = static_cast<int64_t>(u[j + n]) - static_cast<int64_t>(carry) - borrow;
            if (t < 0) {
                // qhat was one too large: add back
                t += static_cast<int64_t>(base);
                --qhat;
                uint64_t c2 = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    uint64_t cur = static_cast<uint64_t>(u[i + j]) + v[i] + c2;
                    u[i + j] = static_cast<uint32_t>(cur);
                    c2 = cur >> 32;
                }
                t += static_cast<int64_t>(c2);
                t &= static_cast<int64_t>(base - 1);
            }
            u[j + n] = static_cast<uint32_t>(t);
            q[j] = static_cast<uint32_t>(qhat);
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        r.assign(u.begin(), u.begin() + n);
        if (shift) {
            for (std::size_t i = 0; i + 1 < n; ++i)
                r[i] = (r[i] >> shift) | (r[i + 1] << (32 - shift));
            r[n - 1] >>= shift;
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
};

}  // namespace valdyn
