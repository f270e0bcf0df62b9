#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valdyn/errors.hpp"
#include "valdyn/quadreal.hpp"

namespace valdyn {

// Integer linear recursion a_j = sum c_i a_{j-i} valid for all supplied
// terms from `offset + order` on, with its characteristic polynomial and
// dominant real root (a quadratic surd).
struct Recurrence {
    int order = 0;
    std::vector<BigInt> coeffs;     // c_1 .. c_k
    int offset = 0;                 // first index the recursion is anchored at
    std::vector<BigInt> char_poly;  // monic, low to high, degree = order
    QuadReal dominant_root;
    bool dominant_double = false;   // dominant root has multiplicity >= 2
    std::size_t validated_through = 0;

    std::string recurrence_str() const {
        std::string out = "a[j] =";
        bool first = true;
        for (int i = 1; i <= order; ++i) {
            const BigInt& c = coeffs[static_cast<std::size_t>(i - 1)];
            if (c.is_zero()) continue;
            if (first)
                out += " " + c.to_string();
            else
                out += c.is_negative() ? " - " + (-c).to_string() : " + " + c.to_string();
            out += "*a[j-" + std::to_string(i) + "]";
            first = false;
        }
        return out;
    }
};

namespace detail {

// Exact solve of the linear system M c = rhs with consistency against all
// rows; returns nullopt when inconsistent.
inline std::optional<std::vector<Rat>> solve_all_rows(std::vector<std::vector<Rat>> m,
                                                      std::vector<Rat> rhs, int k) {
    std::size_t rows = m.size();
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (int col = 0; col < k && rank < rows; ++col) {
        std::size_t sel = rank;
        while (sel < rows && m[sel][static_cast<std::size_t>(col)].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[rank]);
        std::swap(rhs[sel], rhs[rank]);
        Rat inv = m[rank][static_cast<std::size_t>(col)].inv();
        for (int j = col; j < k; ++j) m[rank][static_cast<std::size_t>(j)] *= inv;
        rhs[rank] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            Rat f = m[r][static_cast<std::size_t>(col)];
            if (f.is_zero()) continue;
            for (int j = col; j < k; ++j)
                m[r][static_cast<std::size_t>(j)] -= f * m[rank][static_cast<std::size_t>(j)];
            rhs[r] -= f * rhs[rank];
        }
        pivot_col.push_back(static_cast<std::size_t>(col));
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (!rhs[r].is_zero()) return std::nullopt;
    std::vector<Rat> sol(static_cast<std::size_t>(k), Rat(0));
    for (std::size_t r = 0; r < rank; ++r) sol[pivot_col[r]] = rhs[r];
    return sol;
}

// Dominant real root of a monic integer polynomial, exact as a quadratic
// surd. Rational roots are found by divisor search and deflated; a
// remaining quadratic factor is solved exactly. `double_root` is set when
// the dominant root also annihilates the derivative.
inline QuadReal dominant_root(const std::vector<BigInt>& poly, bool& double_root) {
    std::vector<Rat> p(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) p[i] = Rat(poly[i]);

    auto eval_at_int = [&](const std::vector<Rat>& f, const BigInt& x) {
        Rat acc(0), pw(1);
        for (auto& c : f) {
            acc += c * pw;
            pw *= Rat(x);
        }
        return acc;
    };

    std::vector<QuadReal> roots;
    std::vector<Rat> f = p;
    // deflate integer roots (monic integer polynomial => rational roots are
    // integers dividing the constant term)
    bool again = true;
    while (again && f.size() > 1) {
        again = false;
        BigInt c0 = f[0].num();
        if (c0.is_zero()) {
            roots.push_back(QuadReal(0));
            f.erase(f.begin());
            again = true;
            continue;
        }
        for (long long d = 1; BigInt(d) * BigInt(d) <= c0.abs() || d == 1; ++d) {
            if (!(c0 % BigInt(d)).is_zero()) continue;
            BigInt cands[4] = {BigInt(d), -BigInt(d), c0 / BigInt(d), -(c0 / BigInt(d))};
            bool found = false;
            for (const BigInt& r : cands) {
                if (!eval_at_int(f, r).is_zero()) continue;
                roots.push_back(QuadReal(Rat(r)));
                // synthetic division by (x - r)
                std::vector<Rat> g(f.size() - 1);
                Rat carry = f.back();
                for (std::size_t i = f.size() - 1; i-- > 0;) {
                    g[i] = carry;
                    carry = f[i] + carry * Rat(r);
                }
                f = std::move(g);
                found = true;
                break;
            }
            if (found) {
                again = true;
                break;
            }
        }
    }
    if (f.size() == 3) {
        // monic-up-to-lead quadratic: solve exactly
        Rat a = f[2], b = f[1], c = f[0];
        Rat disc = b * b - Rat(4) * a * c;
        if (disc.sign() >= 0) {
            QuadReal sq = QuadReal::sqrt_of(disc);
            roots.push_back((QuadReal(-b) + sq) / QuadReal(a * Rat(2)));
            roots.push_back((QuadReal(-b) - sq) / QuadReal(a * Rat(2)));
        } else {
            // complex pair of modulus sqrt(c/a); only relevant if it would
            // dominate every real root
            QuadReal mod = QuadReal::sqrt_of(c / a);
            for (auto& r : roots)
                if (!(r.abs() < mod)) {
                    mod = QuadReal(0);
                    break;
                }
            if (!mod.is_zero())
                throw Error("DominantRootNotReal",
                            "the dominant characteristic root is a complex pair");
        }
        f.clear();
    } else if (f.size() > 3) {
        // a higher-degree irreducible-over-the-integer-root-search factor
        // remains; it may only be ignored when the found roots dominate its
        // Cauchy bound
        Rat bound(0);
        for (std::size_t i = 0; i + 1 < f.size(); ++i) {
            Rat q = (f[i] / f.back()).abs();
            if (q > bound) bound = q;
        }
        bound += Rat(1);
        bool dominated = false;
        for (auto& r : roots)
            if (r.abs() > QuadReal(bound)) dominated = true;
        if (!dominated)
            throw Error("DominantRootNotQuadratic",
                        "cannot certify a quadratic dominant root for this recurrence");
    }
    if (roots.empty()) throw Error("DominantRootNotReal", "no real characteristic root found");
    QuadReal best = roots[0];
    for (auto& r : roots) {
        if (r.abs() > best.abs()) best = r;
        else if (r.abs() == best.abs() && r > best) best = r;
    }
    // double-root certificate: p(best) = 0 and p'(best) = 0, evaluated exactly
    QuadReal acc(0), pw(1);
    for (auto& c : p) {
        acc += QuadReal(c) * pw;
        pw *= best;
    }
    QuadReal dacc(0);
    pw = QuadReal(1);
    for (std::size_t i = 1; i < p.size(); ++i) {
        dacc += QuadReal(p[i] * Rat(static_cast<long long>(i))) * pw;
        pw *= best;
    }
    double_root = acc.is_zero() && dacc.is_zero();
    return best;
}

}  // namespace detail

// Minimal-order integer linear recurrence (with a start offset up to
// max_order) fitting every supplied term from the offset on; Hankel-style
// scan by ascending order then offset, exact linear solving.
inline Recurrence detect_recurrence(const std::vector<BigInt>& seq, int max_order) {
    if (max_order < 1) throw Error("BadArgument", "max_order must be positive");
    if (static_cast<int>(seq.size()) < 2 * max_order + 2)
        throw Error("BadArgument", "need at least 2*max_order + 2 terms");
    int n = static_cast<int>(seq.size());
    for (int k = 1; k <= max_order; ++k) {
        for (int offset = 0; offset <= max_order; ++offset) {
            if (offset + 2 * k > n) break;
            std::vector<std::vector<Rat>> m;
            std::vector<Rat> rhs;
            for (int j = offset + k; j < n; ++j) {
                std::vector<Rat> row(static_cast<std::size_t>(k));
                for (int i = 1; i <= k; ++i)
                    row[static_cast<std::size_t>(i - 1)] = Rat(seq[static_cast<std::size_t>(j - i)]);
                m.push_back(std::move(row));
                rhs.push_back(Rat(seq[static_cast<std::size_t>(j)]));
            }
            auto sol = detail::solve_all_rows(std::move(m), std::move(rhs), k);
            if (!sol) continue;
            bool integral = true;
            for (auto& c : *sol)
                if (!c.is_integer()) integral = false;
            if (!integral) continue;
            Recurrence r;
            r.order = k;
            r.offset = offset;
            for (auto& c : *sol) r.coeffs.push_back(c.num());
            r.char_poly.assign(static_cast<std::size_t>(k) + 1, BigInt(0));
            r.char_poly[static_cast<std::size_t>(k)] = BigInt(1);
            for (int i = 1; i <= k; ++i)
                r.char_poly[static_cast<std::size_t>(k - i)] = -r.coeffs[static_cast<std::size_t>(i - 1)];
            r.dominant_root = detail::dominant_root(r.char_poly, r.dominant_double);
            r.validated_through = seq.size() - 1;
            return r;
        }
    }
    throw Error("NoRecurrenceFound",
                "no integral linear recursion of order <= " + std::to_string(max_order));
}

}  // namespace valdyn
