#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "valdyn/rat.hpp"

namespace valdyn {

// Squarefree part of a non-negative integer: n = square * sf, returns
// (sf, sqrt(square)). Trial division; remainders above the bound are
// checked for being perfect squares.
inline void squarefree_split(const BigInt& n, BigInt& sf, BigInt& root) {
    if (n.is_negative()) throw std::domain_error("squarefree_split: negative");
    sf = BigInt(1);
    root = BigInt(1);
    if (n.is_zero()) {
        sf = BigInt(0);
        return;
    }
    BigInt m = n;
    for (long long p = 2; p <= 1000000; p = (p == 2 ? 3 : p + 2)) {
        BigInt pp(p * p);
        if (pp > m) break;
        for (;;) {
            BigInt q, r;
            BigInt::divmod(m, pp, q, r);
            if (!r.is_zero()) break;
            m = q;
            root = root * BigInt(p);
        }
        BigInt q, r;
        BigInt::divmod(m, BigInt(p), q, r);
        if (r.is_zero()) {
            m = q;
            sf = sf * BigInt(p);
        }
    }
    BigInt s = BigInt::isqrt(m);
    if (s * s == m) {
        root = root * s;
    } else {
        sf = sf * m;
    }
}

// The real number r + s*sqrt(D), D a squarefree non-negative integer.
// D == 0 iff s == 0 (pure rational). Arithmetic is closed for values in
// one quadratic field; mixing distinct radicands raises.
class QuadReal {
  public:
    QuadReal() : r_(0), s_(0), d_(0) {}
    QuadReal(Rat r) : r_(std::move(r)), s_(0), d_(0) {}
    QuadReal(long long n) : r_(n), s_(0), d_(0) {}
    QuadReal(int n) : r_(n), s_(0), d_(0) {}
    QuadReal(Rat r, Rat s, long long d) : r_(std::move(r)), s_(std::move(s)), d_(d) {
        normalize();
    }

    static QuadReal sqrt_of(const Rat& x) {
        if (x.is_negative()) throw std::domain_error("QuadReal: sqrt of negative");
        if (x.is_zero()) return QuadReal();
        BigInt pq = x.num() * x.den();
        BigInt sf, root;
        squarefree_split(pq, sf, root);
        Rat coeff(root, x.den());
        if (sf.is_one()) return QuadReal(coeff);
        if (!sf.fits_int64()) throw std::overflow_error("QuadReal: radicand too large");
        return QuadReal(Rat(0), coeff, sf.to_int64());
    }

    const Rat& rational_part() const { return r_; }
    const Rat& surd_coeff() const { return s_; }
    long long radicand() const { return d_; }

    bool is_rational() const { return s_.is_zero(); }
    Rat to_rat() const {
        if (!is_rational()) throw std::domain_error("QuadReal: irrational value");
        return r_;
    }
    bool is_zero() const { return r_.is_zero() && s_.is_zero(); }
    bool is_integer() const { return is_rational() && r_.is_integer(); }

    int sign() const { return sign_of(r_, s_, d_); }
    bool is_negative() const { return sign() < 0; }

    friend QuadReal operator-(const QuadReal& a) {
        QuadReal x;
        x.r_ = -a.r_;
        x.s_ = -a.s_;
        x.d_ = a.d_;
        return x;
    }
    friend QuadReal operator+(const QuadReal& a, const QuadReal& b) {
        long long d = unify(a, b);
        QuadReal x;
        x.r_ = a.r_ + b.r_;
        x.s_ = a.s_ + b.s_;
        x.d_ = d;
        x.normalize();
        return x;
    }
    friend QuadReal operator-(const QuadReal& a, const QuadReal& b) { return a + (-b); }
    friend QuadReal operator*(const QuadReal& a, const QuadReal& b) {
        long long d = unify(a, b);
        QuadReal x;
        x.r_ = a.r_ * b.r_ + a.s_ * b.s_ * Rat(d);
        x.s_ = a.r_ * b.s_ + a.s_ * b.r_;
        x.d_ = d;
        x.normalize();
        return x;
    }
    friend QuadReal operator/(const QuadReal& a, const QuadReal& b) {
        if (b.is_zero()) throw std::domain_error("QuadReal: division by zero");
        long long d = unify(a, b);
        Rat n = b.r_ * b.r_ - b.s_ * b.s_ * Rat(d);
        // conjugate trick; n = 0 would force b = 0 since sqrt(d) is irrational
        QuadReal conj;
        conj.r_ = b.r_ / n;
        conj.s_ = -b.s_ / n;
        conj.d_ = d;
        QuadReal aa = a;
        aa.d_ = d;
        return aa * conj;
    }
    QuadReal& operator+=(const QuadReal& b) { return *this = *this + b; }
    QuadReal& operator-=(const QuadReal& b) { return *this = *this - b; }
    QuadReal& operator*=(const QuadReal& b) { return *this = *this * b; }
    QuadReal& operator/=(const QuadReal& b) { return *this = *this / b; }

    // Exact comparison of the real embeddings; works across distinct
    // radicands as well.
    static int cmp(const QuadReal& a, const QuadReal& b) {
        if (a.d_ == b.d_ || a.s_.is_zero() || b.s_.is_zero())
            return sign_of(a.r_ - b.r_,
                           a.s_ - b.s_,
                           a.s_.is_zero() ? b.d_ : a.d_);
        // a.r - b.r + a.s*sqrt(aD) - b.s*sqrt(bD), both surd parts nonzero
        return sign_two_surds(a.r_ - b.r_, a.s_, a.d_, -b.s_, b.d_);
    }
    friend bool operator==(const QuadReal& a, const QuadReal& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const QuadReal& a, const QuadReal& b) { return cmp(a, b) != 0; }
    friend bool operator<(const QuadReal& a, const QuadReal& b) { return cmp(a, b) < 0; }
    friend bool operator>(const QuadReal& a, const QuadReal& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const QuadReal& a, const QuadReal& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const QuadReal& a, const QuadReal& b) { return cmp(a, b) >= 0; }

    QuadReal abs() const { return is_negative() ? -*this : *this; }

    BigInt floor() const {
        if (is_rational()) return r_.floor();
        // (A + B*sqrt(D)) / C with C > 0
        BigInt A = r_.num() * s_.den(), B = s_.num() * r_.den(), C = r_.den() * s_.den();
        BigInt f = BigInt::isqrt(B * B * BigInt(d_));
        if (B.is_negative()) f = -f - BigInt(1);  // sqrt irrational here, never exact
        return Rat(A + f, C).floor();
    }

    double to_double() const {
        double v = r_.to_double();
        if (!s_.is_zero()) v += s_.to_double() * std::sqrt(static_cast<double>(d_));
        return v;
    }

    // Monic minimal polynomial over Q, degree <= 2, as coefficient list
    // [c0, c1, ...] with leading 1 implicit in `degree`.
    struct MinPoly {
        std::vector<Rat> coeffs;  // low to high, including leading 1
        bool integer = false;
        int degree() const { return static_cast<int>(coeffs.size()) - 1; }
        std::string str() const;
    };
    MinPoly min_poly() const {
        MinPoly m;
        if (is_rational()) {
            m.coeffs = {-r_, Rat(1)};
            m.integer = r_.is_integer();
        } else {
            // (x - r)^2 = s^2 D  =>  x^2 - 2r x + (r^2 - s^2 D)
            Rat c1 = -(r_ + r_);
            Rat c0 = r_ * r_ - s_ * s_ * Rat(d_);
            m.coeffs = {c0, c1, Rat(1)};
            m.integer = c0.is_integer() && c1.is_integer();
        }
        return m;
    }

    std::string to_string() const {
        if (is_rational()) return r_.to_string();
        if (r_.is_zero()) {
            Rat inner = s_ * s_ * Rat(d_);
            std::string body = "sqrt(" + inner.to_string() + ")";
            return s_.is_negative() ? "-" + body : body;
        }
        std::string out = r_.to_string();
        Rat sa = s_.abs();
        out += s_.is_negative() ? " - " : " + ";
        if (!sa.is_one()) out += sa.to_string() + "*";
        out += "sqrt(" + std::to_string(d_) + ")";
        return out;
    }

  private:
    Rat r_, s_;
    long long d_ = 0;

    void normalize() {
        if (s_.is_zero()) {
            d_ = 0;
            return;
        }
        if (d_ == 0) {
            s_ = Rat(0);
            return;
        }
        if (d_ == 1) {
            r_ += s_;
            s_ = Rat(0);
            d_ = 0;
        }
    }

    static long long unify(const QuadReal& a, const QuadReal& b) {
        if (a.s_.is_zero()) return b.d_;
        if (b.s_.is_zero()) return a.d_;
        if (a.d_ != b.d_)
            throw std::domain_error("QuadReal: mixed radicands sqrt(" +
                                    std::to_string(a.d_) + ") and sqrt(" +
                                    std::to_string(b.d_) + ")");
        return a.d_;
    }

    // sign of a + b*sqrt(d)
    static int sign_of(const Rat& a, const Rat& b, long long d) {
        if (b.is_zero() || d == 0) return a.sign();
        if (a.is_zero()) return b.sign();
        if (a.sign() == b.sign()) return a.sign();
        int c = Rat::cmp(a * a, b * b * Rat(d));
        if (c == 0) return 0;  // unreachable for squarefree d > 1
        return c > 0 ? a.sign() : b.sign();
    }

    // sign of a + b*sqrt(P) + c*sqrt(Q), P != Q, b,c nonzero
    static int sign_two_surds(const Rat& a, const Rat& b, long long P, const Rat& c,
                              long long Q) {
        int su = sign_of(a, b, P);
        int sv = c.sign();
        if (su == sv) return su;
        if (su == 0) return sv;
        if (sv == 0) return su;
        // compare (a + b sqrt P)^2 against (c sqrt Q)^2
        Rat u2r = a * a + b * b * Rat(P);
        Rat u2s = a * b * Rat(2);
        int c2 = sign_of(u2r - c * c * Rat(Q), u2s, P);
        if (c2 == 0) return 0;  // unreachable for distinct squarefree radicands
        return c2 > 0 ? su : sv;
    }
};

inline std::string QuadReal::MinPoly::str() const {
    std::string out = degree() == 2 ? "x^2" : "x";
    for (int k = degree() - 1; k >= 0; --k) {
        const Rat& c = coeffs[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        out += c.is_negative() ? " - " : " + ";
        Rat a = c.abs();
        if (k == 0) {
            out += a.to_string();
        } else {
            if (!a.is_one()) out += a.to_string();
            out += k == 1 ? "x" : "x^" + std::to_string(k);
        }
    }
    return out;
}

}  // namespace valdyn
