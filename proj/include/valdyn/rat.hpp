#pragma once

#include <stdexcept>
#include <string>

#include "valdyn/bigint.hpp"

namespace valdyn {

// Exact rational, always reduced, denominator > 0.
class Rat {
  public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(int n) : num_(n), den_(1) {}
    Rat(BigInt n) : num_(std::move(n)), den_(1) {}
    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_integer() const { return den_.is_one(); }
    bool is_negative() const { return num_.is_negative(); }
    int sign() const { return num_.sign(); }

    friend Rat operator-(const Rat& a) { return Rat::raw(-a.num_, a.den_); }
    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("Rat: division by zero");
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rat& operator+=(const Rat& b) { return *this = *this + b; }
    Rat& operator-=(const Rat& b) { return *this = *this - b; }
    Rat& operator*=(const Rat& b) { return *this = *this * b; }
    Rat& operator/=(const Rat& b) { return *this = *this / b; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Rat& a, const Rat& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a, b) >= 0; }
    static int cmp(const Rat& a, const Rat& b) {
        return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_);
    }

    Rat abs() const { return Rat::raw(num_.abs(), den_); }

    // Largest integer <= value.
    BigInt floor() const {
        BigInt q, r;
        BigInt::divmod(num_, den_, q, r);
        if (num_.is_negative() && !r.is_zero()) q = q - BigInt(1);
        return q;
    }

    Rat inv() const {
        if (is_zero()) throw std::domain_error("Rat: inverse of zero");
        return Rat(den_, num_);
    }

    double to_double() const { return num_.to_double() / den_.to_double(); }

    long long num_int64() const { return num_.to_int64(); }
    long long den_int64() const { return den_.to_int64(); }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

    // Parses "n" or "n/d".
    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(BigInt::from_string(s));
        return Rat(BigInt::from_string(s.substr(0, slash)),
                   BigInt::from_string(s.substr(slash + 1)));
    }

  private:
    BigInt num_, den_;

    static Rat raw(BigInt n, BigInt d) {
        Rat r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rat: zero denominator");
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        if (den_.is_negative()) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = BigInt::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
};

}  // namespace valdyn
