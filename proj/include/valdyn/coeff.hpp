#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "valdyn/rat.hpp"

namespace valdyn {

// A simple extension Q(t), t a root of a fixed monic minimal polynomial
// with rational coefficients. Elements are residues mod the minimal
// polynomial. Exactly one extension may be active in a computation;
// stacking a second one is rejected with a diagnostic.
struct ExtField {
    std::vector<Rat> minpoly;  // monic, low to high, degree >= 2

    explicit ExtField(std::vector<Rat> mp) : minpoly(std::move(mp)) {
        if (minpoly.size() < 3 || !minpoly.back().is_one())
            throw std::invalid_argument("ExtField: minimal polynomial must be monic of degree >= 2");
    }
    std::size_t degree() const { return minpoly.size() - 1; }
    bool same_as(const ExtField& o) const { return minpoly == o.minpoly; }

    std::string str() const {
        std::string out;
        for (std::size_t k = minpoly.size(); k-- > 0;) {
            const Rat& c = minpoly[k];
            if (c.is_zero()) continue;
            if (!out.empty()) out += c.is_negative() ? " - " : " + ";
            else if (c.is_negative()) out += "-";
            Rat a = c.abs();
            if (k == 0) out += a.to_string();
            else {
                if (!a.is_one()) out += a.to_string() + "*";
                out += k == 1 ? "t" : "t^" + std::to_string(k);
            }
        }
        return out;
    }
};

// Element of Q or of one simple extension of Q. Exact equality and
// zero-test are decidable; field operations are closed.
class Coeff {
  public:
    Coeff() = default;
    Coeff(Rat r) {
        if (!r.is_zero()) c_ = {std::move(r)};
    }
    Coeff(long long n) : Coeff(Rat(n)) {}
    Coeff(int n) : Coeff(Rat(n)) {}

    static Coeff generator(std::shared_ptr<const ExtField> f) {
        Coeff x;
        x.field_ = std::move(f);
        x.c_ = {Rat(0), Rat(1)};
        return x;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    Rat to_rat() const {
        if (c_.empty()) return Rat(0);
        if (c_.size() > 1) throw std::domain_error("Coeff: not a rational value");
        return c_[0];
    }
    const std::shared_ptr<const ExtField>& field() const { return field_; }

    friend Coeff operator-(const Coeff& a) {
        Coeff r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Coeff operator+(const Coeff& a, const Coeff& b) {
        Coeff r;
        r.field_ = unify(a, b);
        r.c_.assign(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
        r.trim();
        return r;
    }
    friend Coeff operator-(const Coeff& a, const Coeff& b) { return a + (-b); }
    friend Coeff operator*(const Coeff& a, const Coeff& b) {
        Coeff r;
        r.field_ = unify(a, b);
        if (a.is_zero() || b.is_zero()) return r;
        std::vector<Rat> prod(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) prod[i + j] += a.c_[i] * b.c_[j];
        r.c_ = r.field_ ? reduce(std::move(prod), *r.field_) : std::move(prod);
        r.trim();
        return r;
    }
    friend Coeff operator/(const Coeff& a, const Coeff& b) { return a * b.inv(); }
    Coeff& operator+=(const Coeff& b) { return *this = *this + b; }
    Coeff& operator-=(const Coeff& b) { return *this = *this - b; }
    Coeff& operator*=(const Coeff& b) { return *this = *this * b; }
    Coeff& operator/=(const Coeff& b) { return *this = *this / b; }

    Coeff inv() const {
        if (is_zero()) throw std::domain_error("Coeff: inverse of zero");
        if (is_rational()) return Coeff(c_[0].inv());
        // extended euclid against the minimal polynomial
        std::vector<Rat> r0 = field_->minpoly, r1 = c_;
        std::vector<Rat> s0 = {}, s1 = {Rat(1)};
        while (!r1.empty()) {
            std::vector<Rat> q = poly_div(r0, r1);
            std::vector<Rat> r2 = poly_sub(r0, poly_mul(q, r1));
            std::vector<Rat> s2 = poly_sub(s0, poly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r2);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r0.size() != 1)
            throw std::domain_error(
                "Coeff: element not invertible; minimal polynomial " + field_->str() +
                " is reducible");
        Rat lead = r0[0];
        Coeff out;
        out.field_ = field_;
        out.c_ = std::move(s0);
        for (auto& x : out.c_) x = x / lead;
        out.trim();
        return out;
    }

    friend bool operator==(const Coeff& a, const Coeff& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }

    // total order used only for canonical printing / map keys
    static int cmp(const Coeff& a, const Coeff& b) {
        std::size_t n = std::max(a.c_.size(), b.c_.size());
        for (std::size_t i = n; i-- > 0;) {
            Rat x = i < a.c_.size() ? a.c_[i] : Rat(0);
            Rat y = i < b.c_.size() ? b.c_[i] : Rat(0);
            int c = Rat::cmp(x, y);
            if (c) return c;
        }
        return 0;
    }

    // q-th root within Q or by adjoining one; nested towers are rejected.
    Coeff kth_root(unsigned q) const {
        if (q == 0) throw std::domain_error("Coeff: 0th root");
        if (q == 1 || is_zero()) return *this;
        if (is_rational()) {
            const Rat& v = c_[0];
            if (v.sign() > 0 || q % 2 == 1) {
                bool exn = false, exd = false;
                BigInt rn = BigInt::iroot(v.num(), q, &exn);
                BigInt rd = BigInt::iroot(v.den(), q, &exd);
                if (exn && exd) return Coeff(Rat(rn, rd));
            }
            std::vector<Rat> mp(q + 1, Rat(0));
            mp[0] = -v;
            mp[q] = Rat(1);
            return generator(std::make_shared<ExtField>(std::move(mp)));
        }
        throw std::domain_error(
            "Coeff: root would require a nested extension tower over " + field_->str() +
            "; only one simple extension is supported");
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        if (is_rational()) return c_[0].to_string();
        std::string out;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const Rat& c = c_[k];
            if (c.is_zero()) continue;
            if (!out.empty()) out += c.is_negative() ? " - " : " + ";
            else if (c.is_negative()) out += "-";
            Rat a = c.abs();
            if (k == 0) out += a.to_string();
            else {
                if (!a.is_one()) out += a.to_string() + "*";
                out += k == 1 ? "t" : "t^" + std::to_string(k);
            }
        }
        return out;
    }

  private:
    std::shared_ptr<const ExtField> field_;  // null = plain Q
    std::vector<Rat> c_;                     // residue, low to high, trimmed

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (c_.size() <= 1) field_.reset();
    }

    static std::shared_ptr<const ExtField> unify(const Coeff& a, const Coeff& b) {
        if (!a.field_) return b.field_;
        if (!b.field_) return a.field_;
        if (a.field_ == b.field_ || a.field_->same_as(*b.field_)) return a.field_;
        throw std::domain_error("Coeff: two distinct extensions in one computation (" +
                                a.field_->str() + " vs " + b.field_->str() + ")");
    }

    static std::vector<Rat> reduce(std::vector<Rat> p, const ExtField& f) {
        std::size_t d = f.degree();
        while (p.size() > d) {
            Rat lead = p.back();
            std::size_t k = p.size() - 1 - d;
            if (!lead.is_zero())
                for (std::size_t i = 0; i < d; ++i) p[k + i] -= lead * f.minpoly[i];
            p.pop_back();
        }
        return p;
    }

    static std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return r;
    }
    static std::vector<Rat> poly_sub(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        std::vector<Rat> r(std::max(a.size(), b.size()), Rat(0));
        for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
        while (!r.empty() && r.back().is_zero()) r.pop_back();
        return r;
    }
    // quotient of a by b (field coefficients)
    static std::vector<Rat> poly_div(std::vector<Rat> a, const std::vector<Rat>& b) {
        std::vector<Rat> q;
        if (a.size() < b.size()) return q;
        q.assign(a.size() - b.size() + 1, Rat(0));
        for (std::size_t k = a.size(); k >= b.size(); --k) {
            Rat f = a[k - 1] / b.back();
            q[k - b.size()] = f;
            for (std::size_t i = 0; i < b.size(); ++i) a[k - b.size() + i] -= f * b[i];
        }
        return q;
    }
};

}  // namespace valdyn
