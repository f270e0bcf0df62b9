#pragma once

#include <vector>

#include "valdyn/bipoly.hpp"
#include "valdyn/errors.hpp"
#include "valdyn/rng.hpp"

namespace valdyn {

// Dense univariate polynomial over a coefficient ring T, low to high.
template <typename T>
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(T c) {
        coeffs_.push_back(std::move(c));
        trim();
    }
    explicit UniPoly(std::vector<T> c) : coeffs_(std::move(c)) { trim(); }

    static UniPoly shift(T c, std::size_t k) {
        UniPoly p;
        if (!c.is_zero()) {
            p.coeffs_.assign(k + 1, T());
            p.coeffs_[k] = std::move(c);
        }
        return p;
    }

    const std::vector<T>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    T coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : T(); }
    const T& lead() const { return coeffs_.back(); }

    friend UniPoly operator-(const UniPoly& a) {
        UniPoly r = a;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        UniPoly r;
        r.coeffs_.assign(std::max(a.coeffs_.size(), b.coeffs_.size()), T());
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
        r.trim();
        return r;
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        UniPoly r;
        if (a.is_zero() || b.is_zero()) return r;
        r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, T());
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        r.trim();
        return r;
    }
    UniPoly& operator+=(const UniPoly& b) { return *this = *this + b; }
    UniPoly& operator-=(const UniPoly& b) { return *this = *this - b; }
    UniPoly& operator*=(const UniPoly& b) { return *this = *this * b; }

  private:
    std::vector<T> coeffs_;
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }
};

// Exact quotient; the remainder must vanish (used inside fraction-free
// elimination where divisibility is guaranteed).
inline Coeff exact_div(const Coeff& a, const Coeff& b) { return a / b; }

inline UniPoly<Coeff> exact_div(const UniPoly<Coeff>& a, const UniPoly<Coeff>& b) {
    if (b.is_zero()) throw Error("ZeroDivide", "exact_div by the zero polynomial");
    if (a.is_zero()) return {};
    std::vector<Coeff> rem = a.coeffs();
    int db = b.degree();
    std::vector<Coeff> q(static_cast<std::size_t>(a.degree() - db + 1), Coeff());
    Coeff invlead = b.lead().inv();
    for (int k = a.degree(); k >= db; --k) {
        Coeff f = rem[static_cast<std::size_t>(k)] * invlead;
        if (f.is_zero()) continue;
        q[static_cast<std::size_t>(k - db)] = f;
        for (int i = 0; i <= db; ++i)
            rem[static_cast<std::size_t>(k - db + i)] -= f * b.coeff(static_cast<std::size_t>(i));
    }
    for (auto& c : rem)
        if (!c.is_zero()) throw Error("InexactDivision", "nonzero remainder in exact_div");
    return UniPoly<Coeff>(std::move(q));
}

// Fraction-free (Bareiss) determinant over an integral domain.
template <typename T>
T det_bareiss(std::vector<std::vector<T>> m) {
    std::size_t n = m.size();
    if (n == 0) return T(Coeff(1));
    T prev(Coeff(1));
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return T();
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    T det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

// Sylvester resultant of f and g as polynomials in one variable with
// coefficients in T. Degenerate degrees follow the usual conventions.
template <typename T>
T resultant(const UniPoly<T>& f, const UniPoly<T>& g) {
    if (f.is_zero() || g.is_zero()) return T();
    int m = f.degree(), n = g.degree();
    if (m == 0 && n == 0) return T(Coeff(1));
    if (m == 0) {
        T r(Coeff(1));
        for (int i = 0; i < n; ++i) r = r * f.lead();
        return r;
    }
    if (n == 0) {
        T r(Coeff(1));
        for (int i = 0; i < m; ++i) r = r * g.lead();
        return r;
    }
    std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<T>> s(size, std::vector<T>(size, T()));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i)
            s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] =
                f.coeff(static_cast<std::size_t>(m - i));
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i)
            s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + i)] =
                g.coeff(static_cast<std::size_t>(n - i));
    return det_bareiss(std::move(s));
}

// View a bivariate polynomial as univariate in y with Q(x)-coefficients.
inline UniPoly<UniPoly<Coeff>> as_poly_in_y(const BiPoly& p) {
    int dy = p.deg_y();
    if (dy < 0) return {};
    std::vector<UniPoly<Coeff>> rows(static_cast<std::size_t>(dy) + 1);
    for (auto& [e, c] : p.terms())
        rows[static_cast<std::size_t>(e.second)] +=
            UniPoly<Coeff>::shift(c, static_cast<std::size_t>(e.first));
    return UniPoly<UniPoly<Coeff>>(std::move(rows));
}

// Resultant in y of two bivariate polynomials; result lives in Q[x].
inline UniPoly<Coeff> resultant_y(const BiPoly& f, const BiPoly& g) {
    return resultant(as_poly_in_y(f), as_poly_in_y(g));
}

// Topological degree lambda_2: the count of preimages of a generic point,
// computed as the stabilized x-degree of Res_y(P - a, Q - b) after generic
// shears, with random rational targets. Three independent trials must
// agree. The seed makes runs reproducible.
inline int topological_degree(const PolyMap& F, uint64_t seed = kDefaultSeed) {
    if (!is_dominant(F))
        throw Error("NonDominant", "the Jacobian determinant vanishes identically");
    Rng rng(seed);
    std::vector<int> values;
    int zero_trials = 0;
    for (int attempt = 0; attempt < 12 && values.size() < 3; ++attempt) {
        Coeff c(Rat(rng.range(1, 7)));     // target shear (u,v) -> (u, v + c u)
        Coeff c2(Rat(rng.range(2, 9)));    // source shear x -> x + c2 y
        Rat a(rng.range(2, 60)), b(rng.range(2, 60));
        BiPoly sx = BiPoly::var_x() + c2 * BiPoly::var_y();
        BiPoly P2 = F.P.substitute(sx, BiPoly::var_y());
        BiPoly Q2 = F.Q.substitute(sx, BiPoly::var_y()) + c * P2;
        UniPoly<Coeff> res = resultant_y(P2 - BiPoly(Coeff(a)), Q2 - BiPoly(Coeff(b)));
        if (res.is_zero()) {
            ++zero_trials;
            continue;
        }
        values.push_back(res.degree());
    }
    if (values.empty())
        throw Error("NonDominant", "resultant vanished identically in every trial");
    if (values.size() < 3)
        throw Error("Unstable", "could not collect three nondegenerate trials");
    if (values[0] != values[1] || values[1] != values[2]) {
        std::string list;
        for (int v : values) list += (list.empty() ? "" : ",") + std::to_string(v);
        throw Error("Unstable", "trials disagree: degrees " + list);
    }
    if (values[0] == 0)
        throw Error("NonDominant", "a generic point has no preimages");
    return values[0];
}

}  // namespace valdyn
