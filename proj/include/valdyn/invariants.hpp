#pragma once

#include <optional>
#include <tuple>

#include "valdyn/blowup.hpp"
#include "valdyn/valuation.hpp"

namespace valdyn {

// Skewness, thinness, and multiplicity of a valuation at infinity.
// `truncated` marks values computed from an infinitely-singular
// truncation; consumers must surface it.
struct TreeInvariants {
    QuadReal alpha;
    QuadReal thinness;
    long long multiplicity = 1;
    bool truncated = false;
};

namespace detail {

inline std::pair<Rat, Rat> alpha_A_of_divisorial(const ValInfinity& v) {
    auto [g, id] = realize_divisorial(v);
    const PrimeRecord& r = g.record(id);
    return {r.alpha, r.thinness};
}

// multiplicity just above v: the stabilized ratio dA / (-d alpha) across
// successive tail perturbations below the tail exponent
inline long long multiplicity_above(const ValInfinity& v, const Rat& tail) {
    std::optional<Rat> prev_m;
    Rat step(1, 4);
    for (int iter = 0; iter < 60; ++iter) {
        Rat t1 = tail - step;
        Rat t2 = tail - step * Rat(1, 2);
        step = step * Rat(1, 2);
        auto [a1, A1] = alpha_A_of_divisorial(v.with_tail_exponent(QuadReal(t1)));
        auto [a2, A2] = alpha_A_of_divisorial(v.with_tail_exponent(QuadReal(t2)));
        if (a1 == a2) continue;
        Rat m = (A2 - A1) / (a1 - a2);
        if (prev_m && *prev_m == m) {
            if (!m.is_integer() || m.sign() <= 0)
                throw Error("MultiplicityUnstable", "slope " + m.to_string() +
                                                        " is not a positive integer");
            return m.num_int64();
        }
        prev_m = m;
    }
    throw Error("MultiplicityUnstable", "finite differences did not stabilize");
}

}  // namespace detail

inline TreeInvariants invariants(const ValInfinity& v) {
    if (v.tail_kind() == TailKind::Curve)
        throw Error("NotQuasimonomial", "invariants need tail_kind != curve");
    TreeInvariants out;
    out.truncated = v.is_truncated();
    const QuadReal& t = v.tail_exponent();
    if (t.is_rational()) {
        ValInfinity vd = out.truncated ? v.with_tail_exponent(t) : v;
        auto [a, A] = detail::alpha_A_of_divisorial(vd);
        out.alpha = QuadReal(a);
        out.thinness = QuadReal(A);
        out.multiplicity = detail::multiplicity_above(vd, t.to_rat());
        return out;
    }
    // irrational tail: affine interpolation between enclosing rational
    // convergents; on a constant-multiplicity segment A is affine in
    // alpha with slope -m, and alpha is affine in the tail parameter
    std::optional<std::pair<QuadReal, QuadReal>> prev;
    Rat step(1, 16);
    for (int iter = 0; iter < 60; ++iter) {
        BigInt f = (t / QuadReal(step)).floor();
        Rat t1 = Rat(f) * step;
        Rat t2 = t1 + step;
        step = step * Rat(1, 2);
        Rat a1, A1, a2, A2;
        try {
            std::tie(a1, A1) = detail::alpha_A_of_divisorial(v.with_tail_exponent(QuadReal(t1)));
            std::tie(a2, A2) = detail::alpha_A_of_divisorial(v.with_tail_exponent(QuadReal(t2)));
        } catch (const Error&) {
            continue;  // bracket crossed a datum bound; shrink further
        }
        QuadReal lam = (t - QuadReal(t1)) / QuadReal(t2 - t1);
        QuadReal alpha = QuadReal(a1) + (QuadReal(a2) - QuadReal(a1)) * lam;
        QuadReal thin = QuadReal(A1) + (QuadReal(A2) - QuadReal(A1)) * lam;
        if (prev && prev->first == alpha && prev->second == thin) {
            out.alpha = alpha;
            out.thinness = thin;
            Rat m = (A2 - A1) / (a1 - a2);
            if (!m.is_integer() || m.sign() <= 0)
                throw Error("MultiplicityUnstable", "slope " + m.to_string() +
                                                        " is not a positive integer");
            out.multiplicity = m.num_int64();
            return out;
        }
        prev = {alpha, thin};
    }
    throw Error("MultiplicityUnstable", "interpolation did not stabilize");
}

// V1 membership: skewness >= 0 and thinness <= 0.
inline bool in_V1(const ValInfinity& v) {
    TreeInvariants i = invariants(v);
    return i.alpha.sign() >= 0 && i.thinness.sign() <= 0;
}

// Rational pencil valuation: divisorial with alpha = 0 and A < 0.
inline bool is_rational_pencil(const ValInfinity& v) {
    if (!v.is_divisorial())
        throw Error("NotDivisorial", "pencil test needs a divisorial valuation");
    TreeInvariants i = invariants(v);
    return i.alpha.is_zero() && i.thinness.sign() < 0;
}

// Monomializable in some affine coordinates iff A + m * alpha < 0.
inline bool is_monomializable(const ValInfinity& v) {
    TreeInvariants i = invariants(v);
    QuadReal lhs = i.thinness + QuadReal(Rat(i.multiplicity)) * i.alpha;
    return lhs.sign() < 0;
}

// Tree intersection number (Z_v . Z_w) = alpha(v ^ w).
inline QuadReal intersect(const ValInfinity& v, const ValInfinity& w) {
    auto [ord, m] = meet(v, w);
    (void)ord;
    return invariants(m).alpha;
}

}  // namespace valdyn
