#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "valdyn/bipoly.hpp"
#include "valdyn/invariants.hpp"
#include "valdyn/recurrence.hpp"
#include "valdyn/resultant.hpp"
#include "valdyn/valuation.hpp"

namespace valdyn {

// Local degree d(F, v) = -min(v(P), v(Q), 0): the multiplier of the
// normalized pushforward.
inline QuadReal d_of(const PolyMap& F, const ValInfinity& v) {
    QuadReal a = v(F.P);
    QuadReal b = v(F.Q);
    QuadReal m = a < b ? a : b;
    if (m > QuadReal(0)) m = QuadReal(0);
    return -m;
}

struct PushResult {
    ValInfinity image;
    QuadReal multiplier;             // d(F, v)
    std::vector<BiPoly> witnesses;   // tie polynomials used for refinement
    bool truncated = false;
    bool witnesses_complete = true;  // false when a key grew past the size cap
};

namespace detail {

inline ThetaPoly theta_pow(const ThetaPoly& p, unsigned e) {
    ThetaPoly r{{0, Coeff(1)}};
    ThetaPoly b = p;
    while (e) {
        if (e & 1) r = theta_mul(r, b);
        if (e >>= 1) b = theta_mul(b, b);
    }
    return r;
}

// Signals that a windowed computation lost the leading part; the caller
// retries with a wider window.
struct WindowExhausted {};

// A theta series known exactly above an exponent floor. Entries at or
// below the floor may be missing; nullopt floor means fully exact.
// Keeping a bounded window below the lead makes huge ladder powers cheap:
// only the exponents near the top can survive the tie cancellations.
struct WSeries {
    ThetaSeries s;
    std::optional<QuadReal> floor;

    bool exact() const { return !floor.has_value(); }
    const QuadReal& lead() const {
        if (s.is_zero()) throw WindowExhausted{};
        return s.lead_exp();
    }
    const ThetaPoly& lead_form() const {
        if (s.is_zero()) throw WindowExhausted{};
        return s.lead_form();
    }
    bool genuinely_zero() const { return s.is_zero() && exact(); }

    // drop entries at or below `cut`, raising the floor; an exact series
    // stays exact when the cut lies below all of its entries
    void truncate(const QuadReal& cut) {
        if (exact() && !s.is_zero() && s.entries().begin()->first > cut) return;
        truncate_force(cut);
    }
    // set the floor unconditionally (powers need it so their window stays
    // relative to the growing lead)
    void truncate_force(const QuadReal& cut) {
        if (floor && !(*floor < cut)) return;
        ThetaSeries t;
        for (auto& [e, p] : s.entries()) {
            if (!(e > cut)) continue;
            for (auto& [d, c] : p) t.add_in(e, d, c);
        }
        s = std::move(t);
        floor = cut;
    }

    friend WSeries mul(const WSeries& a, const WSeries& b) {
        WSeries r;
        if (a.floor || b.floor) {
            if (a.floor && b.floor) {
                QuadReal fa = *a.floor + b.lead();
                QuadReal fb = *b.floor + a.lead();
                r.floor = fa > fb ? fa : fb;
            } else {
                r.floor = a.floor ? *a.floor + b.lead() : *b.floor + a.lead();
            }
        }
        for (auto& [ea, pa] : a.s.entries())
            for (auto& [eb, pb] : b.s.entries()) {
                QuadReal e = ea + eb;
                if (r.floor && !(e > *r.floor)) continue;
                ThetaPoly prod = theta_mul(pa, pb);
                for (auto& [d, c] : prod) r.s.add_in(e, d, c);
            }
        return r;
    }
    friend WSeries sub(const WSeries& a, const WSeries& b) {
        WSeries r;
        r.s = a.s - b.s;
        if (a.floor || b.floor) {
            if (a.floor && b.floor)
                r.floor = *a.floor > *b.floor ? *a.floor : *b.floor;
            else
                r.floor = a.floor ? *a.floor : *b.floor;
            r.truncate(*r.floor);
        }
        return r;
    }
    friend WSeries scale(const Coeff& c, const WSeries& a) {
        WSeries r;
        r.s = c * a.s;
        r.floor = a.floor;
        return r;
    }

    // power with a relative window: the result is exact above
    // e * lead - window and the intermediates stay that small
    WSeries pow_window(unsigned e, const QuadReal& window) const {
        if (e == 0) {
            WSeries r;
            r.s = ThetaSeries::one();
            return r;
        }
        QuadReal l = lead();
        WSeries base = *this;
        base.truncate_force(l - window);
        WSeries r;
        bool have = false;
        unsigned k = e;
        WSeries b = base;
        while (k) {
            if (k & 1) {
                r = have ? mul(r, b) : b;
                have = true;
            }
            if (k >>= 1) b = mul(b, b);
        }
        return r;
    }
};

// c with La = c * Lb, if the forms are proportional by a constant.
inline std::optional<Coeff> proportionality(const ThetaPoly& la, const ThetaPoly& lb) {
    if (la.size() != lb.size()) return std::nullopt;
    std::optional<Coeff> ratio;
    auto ia = la.begin();
    auto ib = lb.begin();
    for (; ia != la.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return std::nullopt;
        Coeff r = ia->second / ib->second;
        if (!ratio) ratio = r;
        else if (*ratio != r) return std::nullopt;
    }
    return ratio;
}

struct LadderState {
    ValInfinity image = ValInfinity::minus_deg();
    std::vector<BiPoly> witnesses;
    bool truncated = false;
    bool witnesses_complete = true;
    BiPoly final_key;           // last materialized key polynomial
    QuadReal final_key_value;   // its image value, for the certificate
    bool have_final_key = false;
};

// One full run of the refinement ladder with a fixed relative window;
// throws WindowExhausted when a cancellation outruns the window.
inline LadderState run_ladder(const PolyMap& F, const ValInfinity& v, const QuadReal& d,
                              Chart chart, int max_refine, const Rat& window) {
    const BiPoly& majF = chart == Chart::XMajor ? F.P : F.Q;
    const BiPoly& minF = chart == Chart::XMajor ? F.Q : F.P;
    const BiPoly major_var = chart == Chart::XMajor ? BiPoly::var_x() : BiPoly::var_y();
    const BiPoly minor_var = chart == Chart::XMajor ? BiPoly::var_y() : BiPoly::var_x();

    LadderState out;
    WSeries KF{v.expand(minF), std::nullopt};
    WSeries MF{v.expand(majF), std::nullopt};
    BiPoly K = minor_var;
    bool keys_small = true;
    Coeff kappa(1);
    Rat h(0);
    std::vector<ValInfinity::Term> terms;
    // each stage's window scales with the previous cancellation drop, so
    // late stages with tiny drops stay cheap
    std::optional<QuadReal> delta_prev;

    // image-datum exponent of a series value: mu(K) = value/d and the
    // image datum has mu(major) = -1
    auto img_exponent = [&](const WSeries& s) -> QuadReal {
        return -(v.value_of_exponent(s.lead()) / d);
    };

    for (int stage = 0;; ++stage) {
        if (KF.genuinely_zero())
            throw Error("CurveValueIndeterminate", "pushforward image degenerated to a curve");
        QuadReal eps = img_exponent(KF);
        QuadReal e_next_q = eps - QuadReal(h);
        if (!eps.is_rational()) {
            out.image = ValInfinity::from_datum(chart, QuadReal(1), terms, e_next_q);
            return out;
        }
        Rat eps_r = eps.to_rat();
        long long q = eps_r.den_int64();
        long long p = eps_r.num_int64();
        unsigned uq = static_cast<unsigned>(q);
        unsigned ppos = static_cast<unsigned>(std::max(p, 0ll));
        unsigned pneg = static_cast<unsigned>(std::max(-p, 0ll));

        ThetaPoly la = theta_pow(KF.lead_form(), uq);
        if (pneg) la = theta_mul(la, theta_pow(MF.lead_form(), pneg));
        ThetaPoly lb = theta_pow(MF.lead_form(), ppos);
        std::optional<Coeff> residue = proportionality(la, lb);

        if (!residue) {
            out.image = ValInfinity::from_datum(chart, QuadReal(1), terms, e_next_q);
            return out;
        }
        Rat e_next = e_next_q.to_rat();
        Coeff kappa_q(1);
        for (unsigned i = 0; i < uq; ++i) kappa_q *= kappa;
        Coeff c_datum = (*residue / kappa_q).kth_root(uq);
        terms.push_back({e_next, c_datum});

        // witness key polynomial; materialized only while it stays small
        if (keys_small && uq <= 6 && pneg + ppos <= 24 && K.terms().size() <= 24 &&
            K.degree() * static_cast<int>(uq) <= 24) {
            BiPoly knext = K.pow(uq);
            if (pneg) knext *= major_var.pow(pneg);
            knext -= *residue * major_var.pow(ppos);
            out.witnesses.push_back(knext);
            K = std::move(knext);
        } else {
            keys_small = false;
            out.witnesses_complete = false;
        }

        QuadReal swin = delta_prev ? *delta_prev * QuadReal(window) : QuadReal(window);
        WSeries A = KF.pow_window(uq, swin);
        if (pneg) A = mul(A, MF.pow_window(pneg, swin));
        WSeries B = MF.pow_window(ppos, swin);
        QuadReal tie_lead = A.lead();
        WSeries KF_next = sub(A, scale(*residue, B));
        if (KF_next.s.is_zero()) {
            if (KF_next.exact())
                throw Error("CurveValueIndeterminate",
                            "pushforward image degenerated to a curve");
            throw WindowExhausted{};
        }
        delta_prev = tie_lead - KF_next.lead();

        kappa = Coeff(Rat(q)) * *residue / c_datum;
        h = Rat(std::max(p, 0ll)) - e_next;
        KF = std::move(KF_next);
        if (keys_small && K.degree() <= 16) {
            out.final_key = K;
            out.final_key_value = v.value_of_exponent(KF.lead()) / d;
            out.have_final_key = true;
        }

        if (stage + 1 >= max_refine) {
            QuadReal e_trunc = img_exponent(KF) - QuadReal(h);
            out.image =
                ValInfinity::from_datum(chart, QuadReal(1), terms, e_trunc, TailKind::Infinite);
            out.truncated = true;
            return out;
        }
    }
}

}  // namespace detail

// Normalized pushforward F.v: image mu with mu(R) = v(R o F) / d(F, v),
// constructed by adaptive refinement. The monomial hypothesis comes from
// the values on the coordinates; at each rational slope p/q the tie
// family K^q - c*major^p (K the current key polynomial prefixed by the
// datum) is tested for a critical residue; strict excess appends a datum
// term, agreement for every residue ends with a generic tail. Series
// powers run in a bounded window below the leading exponent and the
// window widens automatically when a cancellation outruns it.
inline PushResult pushforward(const PolyMap& F, const ValInfinity& v, int max_refine = 32) {
    QuadReal vp = v(F.P), vq = v(F.Q);
    QuadReal m = vp < vq ? vp : vq;
    if (m > QuadReal(0)) m = QuadReal(0);
    QuadReal d = -m;
    if (d.is_zero())
        throw Error("DegenerateImage", "d(F, v) = 0: the pushforward collapses");
    QuadReal mux = vp / d, muy = vq / d;
    Chart chart = mux <= muy ? Chart::XMajor : Chart::YMajor;

    detail::LadderState st;
    Rat window(4);
    for (;;) {
        try {
            st = detail::run_ladder(F, v, d, chart, max_refine, window);
            break;
        } catch (const detail::WindowExhausted&) {
            if (window > Rat(1000000000000ll))
                throw Error("RefinementLimit",
                            "series window exhausted; the image may be a curve valuation");
            window = window * Rat(8);
        }
    }

    PushResult out;
    out.multiplier = d;
    out.image = st.image;
    out.witnesses = std::move(st.witnesses);
    out.truncated = st.truncated;
    out.witnesses_complete = st.witnesses_complete;

    // certificate: the image reproduces the oracle on the coordinates and
    // on the last materialized key polynomial
    if (!out.truncated) {
        if (out.image.nu_x() != mux || out.image.nu_y() != muy)
            throw Error("PushforwardInconsistent", "image coordinates disagree with the oracle");
        if (st.have_final_key) {
            ThetaSeries chk = out.image.expand(st.final_key);
            if (chk.is_zero() ||
                out.image.value_of_exponent(chk.lead_exp()) != st.final_key_value)
                throw Error("PushforwardInconsistent",
                            "final key value disagrees with the oracle");
        }
    }
    return out;
}

// Fast degree sequence deg(F^j) = prod_{i<j} d(F, v_i) along the orbit of
// -deg under the pushforward; every entry is certified to be a positive
// integer.
inline std::vector<BigInt> degree_sequence(const PolyMap& F, int N, int max_refine = 32) {
    if (!is_dominant(F)) throw Error("NonDominant", "degree sequence needs a dominant map");
    if (N < 1) throw Error("BadArgument", "N must be positive");
    std::vector<BigInt> degs{BigInt(1)};
    Rat cur(1);
    ValInfinity v = ValInfinity::minus_deg();
    for (int j = 1; j <= N; ++j) {
        QuadReal dq = d_of(F, v);
        if (!dq.is_rational())
            throw Error("NonIntegralDegree", "irrational local degree along the -deg orbit");
        cur *= dq.to_rat();
        if (!cur.is_integer() || cur.sign() <= 0)
            throw Error("NonIntegralDegree",
                        "product " + cur.to_string() + " at step " + std::to_string(j) +
                            " is not a positive integer");
        degs.push_back(cur.num());
        if (j < N) {
            PushResult pr = pushforward(F, v, max_refine);
            if (pr.truncated)
                throw Error("RefinementLimit",
                            "pushforward exceeded " + std::to_string(max_refine) +
                                " refinements at step " + std::to_string(j));
            v = pr.image;
        }
    }
    return degs;
}

// Independent oracle: degrees of literal compositions.
inline std::vector<BigInt> degree_sequence_bruteforce(const PolyMap& F, int n,
                                                      std::size_t term_guard = 10000) {
    std::vector<BigInt> degs{BigInt(1)};
    PolyMap cur = F;
    for (int j = 1; j <= n; ++j) {
        degs.push_back(BigInt(cur.degree()));
        if (j == n) break;
        if (cur.P.terms().size() + cur.Q.terms().size() > term_guard)
            throw Error("TooLarge", "composition exceeds the monomial guard");
        cur = compose(F, cur);
    }
    return degs;
}

enum class EigenKind { Divisorial, Irrational, InfinitelySingularTruncated };

struct EigenReport {
    ValInfinity nu_star = ValInfinity::minus_deg();
    QuadReal lambda1;
    EigenKind kind = EigenKind::Divisorial;
    bool exact = false;  // fixed-point residual is exactly zero
    int iterations = 0;
    int truncation_depth = 0;  // datum terms kept when truncated
    std::vector<BiPoly> witnesses;

    std::string kind_str() const {
        switch (kind) {
            case EigenKind::Divisorial: return "divisorial";
            case EigenKind::Irrational: return "irrational";
            default: return "infinitely-singular-truncated";
        }
    }
};

namespace detail {

// The unique minimizing monomial of R under v, if unique.
inline std::optional<std::pair<int, int>> active_monomial(const BiPoly& R, const ValInfinity& v) {
    std::optional<std::pair<int, int>> best;
    QuadReal best_val;
    bool tie = false;
    QuadReal wx = v.nu_x(), wy = v.nu_y();
    for (auto& [e, c] : R.terms()) {
        QuadReal val = QuadReal(Rat(e.first)) * wx + QuadReal(Rat(e.second)) * wy;
        if (!best || val < best_val) {
            best = e;
            best_val = val;
            tie = false;
        } else if (val == best_val) {
            tie = true;
        }
    }
    if (tie) return std::nullopt;
    return best;
}

// Exact dominant eigenvector candidates (s_x, s_y) >= 0 of the 2x2
// nonnegative integer matrix acting on monomial weights.
inline std::vector<std::pair<QuadReal, QuadReal>> weight_eigenvectors(long long m00, long long m01,
                                                                      long long m10,
                                                                      long long m11) {
    std::vector<std::pair<QuadReal, QuadReal>> out;
    Rat tr(m00 + m11);
    Rat det(m00 * m11 - m01 * m10);
    Rat disc = tr * tr - Rat(4) * det;
    if (disc.sign() < 0) return out;
    QuadReal lam = (QuadReal(tr) + QuadReal::sqrt_of(disc)) / QuadReal(2);
    if (!(lam > QuadReal(0))) return out;
    QuadReal v1x{Rat(m01)};
    QuadReal v1y = lam - QuadReal(Rat(m00));
    QuadReal v2x = lam - QuadReal(Rat(m11));
    QuadReal v2y{Rat(m10)};
    if (!v1x.is_zero() || !v1y.is_zero())
        if (v1x.sign() >= 0 && v1y.sign() >= 0) out.push_back({v1x, v1y});
    if (!v2x.is_zero() || !v2y.is_zero())
        if (v2x.sign() >= 0 && v2y.sign() >= 0) out.push_back({v2x, v2y});
    return out;
}

}  // namespace detail

// Iterates the pushforward from -deg; declares an exact fixed point when
// F.v = v holds as data, solving the monomial weight equations exactly
// when the active exponents stabilize; otherwise reports a truncated
// infinitely singular limit.
inline EigenReport eigenvaluation(const PolyMap& F, int max_iter = 24, int max_refine = 32) {
    if (!is_dominant(F)) throw Error("NonDominant", "eigenvaluation needs a dominant map");
    EigenReport rep;
    ValInfinity v = ValInfinity::minus_deg();

    auto finish_exact = [&](const ValInfinity& fix, const PushResult& pr, int iters) {
        rep.nu_star = fix;
        rep.lambda1 = pr.multiplier;
        rep.kind = fix.tail_exponent().is_rational() ? EigenKind::Divisorial
                                                     : EigenKind::Irrational;
        rep.exact = true;
        rep.iterations = iters;
        rep.witnesses = pr.witnesses;
        return rep;
    };
    auto finish_truncated = [&](const ValInfinity& last, const QuadReal& lambda, int iters) {
        rep.nu_star = last.is_truncated() ? last : last.truncated();
        rep.lambda1 = lambda;
        rep.kind = EigenKind::InfinitelySingularTruncated;
        rep.exact = false;
        rep.iterations = iters;
        rep.truncation_depth = static_cast<int>(last.terms().size());
        return rep;
    };

    // structural convergence: the datum prefix extends strictly across
    // consecutive iterates
    auto extends_prefix = [](const ValInfinity& a, const ValInfinity& b) {
        if (a.chart() != b.chart() || a.terms().size() >= b.terms().size()) return false;
        for (std::size_t i = 0; i < a.terms().size(); ++i)
            if (!(a.terms()[i] == b.terms()[i])) return false;
        return true;
    };
    int prefix_growth = 0;

    for (int iter = 0; iter < max_iter; ++iter) {
        // monomial-orbit shortcut: solve the active-exponent eigenproblem
        if (v.is_monomial()) {
            auto ap = detail::active_monomial(F.P, v);
            auto aq = detail::active_monomial(F.Q, v);
            if (ap && aq) {
                auto cands = detail::weight_eigenvectors(ap->first, ap->second, aq->first,
                                                         aq->second);
                for (auto& [sx, sy] : cands) {
                    if (sx.is_zero() && sy.is_zero()) continue;
                    try {
                        ValInfinity cand = ValInfinity::monomial(-sx, -sy);
                        PushResult pr = pushforward(F, cand, max_refine);
                        if (!pr.truncated && pr.image == cand)
                            return finish_exact(cand, pr, iter);
                    } catch (const Error&) {
                        // candidate outside the admissible cone; keep iterating
                    }
                }
            }
        }
        PushResult pr = pushforward(F, v, max_refine);
        if (!pr.truncated && pr.image == v) return finish_exact(v, pr, iter);
        if (pr.truncated) {
            rep.witnesses = pr.witnesses;
            return finish_truncated(pr.image, pr.multiplier, iter + 1);
        }
        prefix_growth = extends_prefix(v, pr.image) ? prefix_growth + 1 : 0;
        v = pr.image;
        if (prefix_growth >= 2) return finish_truncated(v, pr.multiplier, iter + 1);
    }
    return finish_truncated(v, d_of(F, v), max_iter);
}

struct JacobianCheck {
    QuadReal lhs, rhs;
    bool equal = false;
};

// Exact check of A(v) + v(JF) = d(F, v) * A(F.v).
inline JacobianCheck jacobian_formula_check(const PolyMap& F, const ValInfinity& v) {
    JacobianCheck out;
    TreeInvariants iv = invariants(v);
    out.lhs = iv.thinness + v(jacobian_det(F));
    PushResult pr = pushforward(F, v);
    if (pr.truncated)
        throw Error("RefinementLimit", "pushforward truncated inside the Jacobian check");
    TreeInvariants im = invariants(pr.image);
    out.rhs = pr.multiplier * im.thinness;
    out.equal = out.lhs == out.rhs;
    return out;
}

// Extension criterion to the weighted projective plane X_{p,q}: the
// monomial valuation nu(x) = -p/q, nu(y) = -1 must be fixed, and then the
// substituted leading parts may share no zero off the origin.
inline bool extends_to_weighted_P2(const PolyMap& F, long long p, long long q) {
    if (p < 1 || q < p) throw Error("BadArgument", "need q >= p >= 1");
    if (!BigInt::gcd(BigInt(p), BigInt(q)).is_one())
        throw Error("BadArgument", "p and q must be coprime");
    ValInfinity nu = ValInfinity::monomial(QuadReal(Rat(-p, q)), QuadReal(-1));
    PushResult pr = pushforward(F, nu);
    if (pr.truncated || pr.image != nu)
        throw Error("NotAnEigenvaluation", "the monomial valuation with nu(x) = -" +
                                               Rat(p, q).to_string() +
                                               " is not fixed by the pushforward");
    QuadReal wx(Rat(-p, q)), wy(-1);
    BiPoly Pp = F.P.leading_part(wx, wy);
    BiPoly Qp = F.Q.leading_part(wx, wy);
    // substitute x -> u^p, y -> v^q: the leading parts become binary forms
    auto substitute_weights = [&](const BiPoly& R) {
        std::map<int, Coeff> form;  // exponent of u -> coefficient
        int deg = -1;
        for (auto& [e, c] : R.terms()) {
            int du = static_cast<int>(p) * e.first;
            int dv = static_cast<int>(q) * e.second;
            int tot = du + dv;
            if (deg < 0) deg = tot;
            if (tot != deg)
                throw Error("Internal", "leading part is not weighted homogeneous");
            auto [it, fresh] = form.try_emplace(du, c);
            if (!fresh) it->second += c;
        }
        std::vector<Coeff> coeffs(static_cast<std::size_t>(deg) + 1, Coeff());
        for (auto& [du, c] : form) coeffs[static_cast<std::size_t>(du)] = c;
        return coeffs;
    };
    std::vector<Coeff> f1 = substitute_weights(Pp), f2 = substitute_weights(Qp);
    // binary-form resultant with the formal degrees: zero iff the forms
    // share a projective root, i.e. a common zero off the origin
    auto all_zero = [](const std::vector<Coeff>& f) {
        for (auto& c : f)
            if (!c.is_zero()) return false;
        return true;
    };
    if (all_zero(f1) || all_zero(f2)) return false;
    int mdeg = static_cast<int>(f1.size()) - 1, ndeg = static_cast<int>(f2.size()) - 1;
    if (mdeg == 0 || ndeg == 0) return true;  // a nonzero constant form has no zeros
    std::size_t size = static_cast<std::size_t>(mdeg + ndeg);
    std::vector<std::vector<Coeff>> s(size, std::vector<Coeff>(size, Coeff()));
    for (int r = 0; r < ndeg; ++r)
        for (int i = 0; i <= mdeg; ++i)
            s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] =
                f1[static_cast<std::size_t>(mdeg - i)];
    for (int r = 0; r < mdeg; ++r)
        for (int i = 0; i <= ndeg; ++i)
            s[static_cast<std::size_t>(ndeg + r)][static_cast<std::size_t>(r + i)] =
                f2[static_cast<std::size_t>(ndeg - i)];
    Coeff res = det_bareiss(std::move(s));
    return !res.is_zero();
}

// The fixed monomial locus T_F, solved exactly from the weight equations
// on each linearity cell and verified through the pushforward.
struct TfSegment {
    bool applicable = false;
    std::vector<ValInfinity> fixed;  // sorted endpoints of the fixed set
    bool is_segment = false;

    std::string render() const {
        if (!applicable) return "not-applicable";
        if (fixed.empty()) return "empty";
        std::string out = is_segment ? "segment" : "singleton";
        for (auto& v : fixed) out += " { " + v.render() + " }";
        return out;
    }
};

// Degrees computed with a growing budget until an integral recurrence
// validates on every computed term.
inline std::pair<std::vector<BigInt>, Recurrence> degrees_with_recurrence(const PolyMap& F,
                                                                          int N_max = 12,
                                                                          int max_order = 5) {
    for (int N = std::min(4, N_max);; N = std::min(N + 2, N_max)) {
        std::vector<BigInt> degs = degree_sequence(F, N);
        int order_cap = std::min(max_order, (static_cast<int>(degs.size()) - 2) / 2);
        try {
            if (order_cap >= 1) return {degs, detect_recurrence(degs, order_cap)};
        } catch (const Error&) {
        }
        if (N >= N_max)
            throw Error("Inconclusive",
                        "no integral recursion validated within the degree budget");
    }
}

inline TfSegment tf_segment(const PolyMap& F, uint64_t seed = kDefaultSeed) {
    TfSegment out;
    int l2 = topological_degree(F, seed);
    auto [degs, rec] = degrees_with_recurrence(F);
    QuadReal l1 = rec.dominant_root;
    if (l1 * l1 != QuadReal(Rat(l2)) || rec.dominant_double) return out;  // hypotheses fail
    out.applicable = true;

    auto try_fixed = [&](const QuadReal& sx, const QuadReal& sy) -> std::optional<ValInfinity> {
        if (sx.sign() < 0 || sy.sign() < 0 || (sx.is_zero() && sy.is_zero())) return std::nullopt;
        try {
            ValInfinity cand = ValInfinity::monomial(-sx, -sy);
            PushResult pr = pushforward(F, cand);
            if (!pr.truncated && pr.image == cand) return cand;
        } catch (const Error&) {
        }
        return std::nullopt;
    };

    std::vector<ValInfinity> found;
    auto record = [&](const ValInfinity& v) {
        for (auto& f : found)
            if (f == v) return;
        found.push_back(v);
    };

    // two one-sided families: weights (-s, -1) and (-1, -s), s in [0, 1]
    for (int family = 0; family < 2; ++family) {
        auto weight = [&](const Rat& s) {
            return family == 0 ? std::pair<QuadReal, QuadReal>{QuadReal(s), QuadReal(1)}
                               : std::pair<QuadReal, QuadReal>{QuadReal(1), QuadReal(s)};
        };
        // breakpoints of the two piecewise-linear value functions
        std::vector<Rat> cuts{Rat(0), Rat(1)};
        for (int comp = 0; comp < 2; ++comp) {
            const BiPoly& R = F.component(comp);
            for (auto it1 = R.terms().begin(); it1 != R.terms().end(); ++it1)
                for (auto it2 = std::next(it1); it2 != R.terms().end(); ++it2) {
                    auto [i1, j1] = it1->first;
                    auto [i2, j2] = it2->first;
                    long long di = family == 0 ? i1 - i2 : j1 - j2;
                    long long dj = family == 0 ? j2 - j1 : i2 - i1;
                    if (di == 0) continue;
                    Rat s(dj, di);
                    if (s >= Rat(0) && s <= Rat(1)) cuts.push_back(s);
                }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            Rat mid = (cuts[c] + cuts[c + 1]) / Rat(2);
            auto [wx, wy] = weight(mid);
            ValInfinity probe = ValInfinity::monomial(-wx, -wy);
            auto ap = detail::active_monomial(F.P, probe);
            auto aq = detail::active_monomial(F.Q, probe);
            if (!ap || !aq) continue;
            // value of P is (i s + j) against lambda * s (family 0); the
            // fixed-weight equations give a quadratic in s on the cell
            long long iP = family == 0 ? ap->first : ap->second;
            long long jP = family == 0 ? ap->second : ap->first;
            long long iQ = family == 0 ? aq->first : aq->second;
            long long jQ = family == 0 ? aq->second : aq->first;
            long long A2, A1, A0;
            if (family == 0) {
                // lambda = iQ s + jQ, equation iP s + jP = lambda s
                A2 = iQ;
                A1 = jQ - iP;
                A0 = -jP;
            } else {
                // lambda = iP s + jP (value of the x-component), equation
                // iQ s + jQ = lambda s
                A2 = iP;
                A1 = jP - iQ;
                A0 = -jQ;
            }
            if (A2 == 0 && A1 == 0 && A0 == 0) {
                // the whole cell is fixed: keep exact endpoints
                for (const Rat& s : {cuts[c], cuts[c + 1], mid}) {
                    auto [ex, ey] = weight(s);
                    if (auto fv = try_fixed(ex, ey)) record(*fv);
                }
                out.is_segment = true;
                continue;
            }
            std::vector<QuadReal> roots;
            if (A2 == 0) {
                if (A1 != 0) roots.push_back(QuadReal(Rat(-A0, A1)));
            } else {
                Rat disc = Rat(A1) * Rat(A1) - Rat(4) * Rat(A2) * Rat(A0);
                if (disc.sign() >= 0) {
                    QuadReal sq = QuadReal::sqrt_of(disc);
                    roots.push_back((QuadReal(Rat(-A1)) + sq) / QuadReal(Rat(2 * A2)));
                    roots.push_back((QuadReal(Rat(-A1)) - sq) / QuadReal(Rat(2 * A2)));
                }
            }
            for (auto& s : roots) {
                if (s < QuadReal(Rat(cuts[c])) || s > QuadReal(Rat(cuts[c + 1]))) continue;
                QuadReal ex = family == 0 ? s : QuadReal(1);
                QuadReal ey = family == 0 ? QuadReal(1) : s;
                if (auto fv = try_fixed(ex, ey)) record(*fv);
            }
        }
    }
    out.fixed = std::move(found);
    if (out.fixed.size() > 1) out.is_segment = true;
    return out;
}

// Search for a divisorial valuation with d(F, v) = 0 (a witness that F is
// not proper); sound but not complete.
inline std::optional<ValInfinity> non_properness_witness(const PolyMap& F, int bound) {
    auto d_zero = [&](const ValInfinity& v) {
        try {
            return d_of(F, v).is_zero();
        } catch (const Error&) {
            return false;
        }
    };
    int pmax = bound * (F.degree() + 1);
    for (int q = 1; q <= bound; ++q) {
        for (int p = 0; p <= pmax; ++p) {
            if (BigInt::gcd(BigInt(p), BigInt(q)).to_int64() != 1) continue;
            for (int sign = -1; sign <= 1; sign += 2) {
                Rat s(sign * p, q);
                ValInfinity v1 = ValInfinity::monomial(QuadReal(s), QuadReal(-1));
                if (d_zero(v1)) return v1;
                ValInfinity v2 = ValInfinity::monomial(QuadReal(-1), QuadReal(s));
                if (d_zero(v2)) return v2;
            }
        }
    }
    // curve-adjacent data along common linear directions of the top forms
    BiPoly tp = F.P.leading_part(QuadReal(-1), QuadReal(-1));
    BiPoly tq = F.Q.leading_part(QuadReal(-1), QuadReal(-1));
    for (int cn = -bound; cn <= bound; ++cn) {
        if (cn == 0) continue;
        Coeff c{Rat(cn)};
        BiPoly line = BiPoly::var_y() - c * BiPoly::var_x();
        auto vanishes = [&](const BiPoly& R) {
            // R restricted to y = c x: substitute and test
            BiPoly r = R.substitute(BiPoly::var_x(), c * BiPoly::var_x());
            return r.is_zero();
        };
        if (!vanishes(tp) || !vanishes(tq)) continue;
        for (int tden = 1; tden <= bound; ++tden)
            for (int tnum = tden - 1; tnum >= -bound; --tnum) {
                Rat t(tnum, tden);
                if (t >= Rat(1)) continue;
                ValInfinity v = ValInfinity::minus_deg().with_term(Rat(1), c, QuadReal(t),
                                                                   TailKind::Generic);
                if (d_zero(v)) return v;
            }
    }
    return std::nullopt;
}

enum class Branch {
    C1Skew,
    C2Toric,
    AutomorphismBounded,
    SmallTopologicalDegree,
    General,
};

struct Classification {
    QuadReal lambda1;
    long long lambda2 = 0;
    Branch branch = Branch::General;
    std::vector<BigInt> degrees;
    Recurrence recurrence;
    EigenReport eigen;
    bool skew_form = false;                         // C1: shape verified in the given coordinates
    std::vector<std::pair<Rat, Rat>> toric_rays;    // C2: monomial weights (|nu(x)|, |nu(y)|)
    bool extends_P2 = false;                        // C2 with (p, q) = (1, 1)

    std::string branch_str() const {
        switch (branch) {
            case Branch::C1Skew: return "C1-skew-product";
            case Branch::C2Toric: return "C2-toric";
            case Branch::AutomorphismBounded: return "automorphism-bounded";
            case Branch::SmallTopologicalDegree: return "small-topological-degree";
            default: return "general-l2-below-l1-squared";
        }
    }
};

// Degree-growth classifier: lambda2 is computed first so the
// lambda2 = lambda1^2 branch is decided exactly. The degree budget grows
// until an integral recurrence validates on all computed terms; deep
// orbits of automorphism type are expensive in exact arithmetic, so the
// search starts small.
inline Classification classify(const PolyMap& F, uint64_t seed = kDefaultSeed, int N_max = 12,
                               int max_order = 5) {
    Classification out;
    out.lambda2 = topological_degree(F, seed);
    std::tie(out.degrees, out.recurrence) = degrees_with_recurrence(F, N_max, max_order);
    out.lambda1 = out.recurrence.dominant_root;
    out.eigen = eigenvaluation(F);

    QuadReal l1sq = out.lambda1 * out.lambda1;
    if (l1sq == QuadReal(Rat(out.lambda2))) {
        if (out.lambda1 == QuadReal(1)) {
            out.branch = Branch::AutomorphismBounded;
        } else if (out.recurrence.dominant_double) {
            out.branch = Branch::C1Skew;
            // skew normal form in the given coordinates: P univariate in x,
            // Q = A(x) y^l1 + lower order in y with deg A >= 1
            if (out.lambda1.is_integer() && F.P.deg_y() <= 0) {
                long long l1 = out.lambda1.to_rat().num_int64();
                if (F.Q.deg_y() == l1) {
                    int dega = -1;
                    for (auto& [e, c] : F.Q.terms())
                        if (e.second == l1) dega = std::max(dega, e.first);
                    out.skew_form = dega >= 1;
                }
            }
        } else {
            out.branch = Branch::C2Toric;
            TfSegment tf = tf_segment(F, seed);
            auto push_ray = [&](const ValInfinity& v) {
                Rat px = (-v.nu_x()).to_rat(), py = (-v.nu_y()).to_rat();
                for (auto& r : out.toric_rays)
                    if (r.first == px && r.second == py) return;
                out.toric_rays.push_back({px, py});
            };
            if (out.eigen.exact && out.eigen.nu_star.is_monomial() &&
                out.eigen.nu_star.tail_exponent().is_rational()) {
                push_ray(out.eigen.nu_star);
                if (out.eigen.nu_star.nu_x() == QuadReal(-1) &&
                    out.eigen.nu_star.nu_y() == QuadReal(-1)) {
                    try {
                        out.extends_P2 = extends_to_weighted_P2(F, 1, 1);
                    } catch (const Error&) {
                        out.extends_P2 = false;
                    }
                }
            } else if (tf.applicable && !tf.fixed.empty()) {
                // irrational eigenvaluation: emit the divisorial pair
                // (v, F.v) around it
                ValInfinity v0 = ValInfinity::minus_deg();
                PushResult pr = pushforward(F, v0);
                push_ray(v0);
                if (!pr.truncated && pr.image.is_monomial()) push_ray(pr.image);
            }
        }
    } else {
        out.branch = QuadReal(Rat(out.lambda2)) < out.lambda1
                         ? Branch::SmallTopologicalDegree
                         : Branch::General;
    }
    return out;
}

}  // namespace valdyn
