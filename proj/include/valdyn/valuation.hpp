#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "valdyn/bipoly.hpp"
#include "valdyn/errors.hpp"
#include "valdyn/quadreal.hpp"

namespace valdyn {

enum class Chart { XMajor, YMajor };
enum class TailKind { Generic, Curve, Infinite };
enum class Ordering { Less, Greater, Equal, Incomparable };

struct QuadLess {
    bool operator()(const QuadReal& a, const QuadReal& b) const {
        return QuadReal::cmp(a, b) < 0;
    }
};

// Coefficient polynomial in the generic tail marker theta.
using ThetaPoly = std::map<int, Coeff>;

inline ThetaPoly theta_mul(const ThetaPoly& a, const ThetaPoly& b) {
    ThetaPoly r;
    for (auto& [da, ca] : a)
        for (auto& [db, cb] : b) {
            Coeff p = ca * cb;
            if (p.is_zero()) continue;
            auto [it, fresh] = r.try_emplace(da + db, p);
            if (!fresh) {
                it->second += p;
                if (it->second.is_zero()) r.erase(it);
            }
        }
    return r;
}

// Exact expansion of a polynomial under a Puiseux datum: a finite sum of
// powers of the major variable with ThetaPoly coefficients. The key is
// the exponent of the major variable (larger = deeper pole).
class ThetaSeries {
  public:
    using Map = std::map<QuadReal, ThetaPoly, QuadLess>;

    ThetaSeries() = default;
    static ThetaSeries term(QuadReal exp, int theta_deg, Coeff c) {
        ThetaSeries s;
        if (!c.is_zero()) s.m_[std::move(exp)][theta_deg] = std::move(c);
        return s;
    }
    static ThetaSeries one() { return term(QuadReal(0), 0, Coeff(1)); }

    bool is_zero() const { return m_.empty(); }
    const Map& entries() const { return m_; }

    void add_in(const QuadReal& exp, int theta_deg, const Coeff& c) {
        if (c.is_zero()) return;
        auto& poly = m_[exp];
        auto [it, fresh] = poly.try_emplace(theta_deg, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) poly.erase(it);
        }
        if (poly.empty()) m_.erase(exp);
    }

    friend ThetaSeries operator+(const ThetaSeries& a, const ThetaSeries& b) {
        ThetaSeries r = a;
        for (auto& [e, p] : b.m_)
            for (auto& [d, c] : p) r.add_in(e, d, c);
        return r;
    }
    friend ThetaSeries operator-(const ThetaSeries& a, const ThetaSeries& b) {
        ThetaSeries r = a;
        for (auto& [e, p] : b.m_)
            for (auto& [d, c] : p) r.add_in(e, d, -c);
        return r;
    }
    friend ThetaSeries operator*(const ThetaSeries& a, const ThetaSeries& b) {
        ThetaSeries r;
        for (auto& [ea, pa] : a.m_)
            for (auto& [eb, pb] : b.m_) {
                QuadReal e = ea + eb;
                ThetaPoly prod = theta_mul(pa, pb);
                for (auto& [d, c] : prod) r.add_in(e, d, c);
            }
        return r;
    }
    friend ThetaSeries operator*(const Coeff& c, const ThetaSeries& b) {
        ThetaSeries r;
        for (auto& [e, p] : b.m_)
            for (auto& [d, x] : p) r.add_in(e, d, c * x);
        return r;
    }
    ThetaSeries pow(unsigned e) const {
        ThetaSeries r = one(), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    // exponent and theta form of the deepest pole
    const QuadReal& lead_exp() const { return m_.rbegin()->first; }
    const ThetaPoly& lead_form() const { return m_.rbegin()->second; }

  private:
    Map m_;
};

// A valuation on C[x,y] centered at infinity, given by a Puiseux-style
// datum: the minor variable as a fractional-power series in the major
// variable plus a tail. The major variable carries the (weakly) deeper
// pole; ties default to x-major. eval() returns values normalized by
// nu(L) = -1 for generic affine L.
class ValInfinity {
  public:
    struct Term {
        Rat exponent;
        Coeff coeff;
        bool operator==(const Term& o) const {
            return exponent == o.exponent && coeff == o.coeff;
        }
    };

    struct EvalResult {
        bool infinite = false;
        QuadReal value;  // meaningful when !infinite
    };

    // Monomial valuation from raw weights (wx, wy) = (nu(x), nu(y)); the
    // datum keeps the input scale and the normalizer makes nu(L) = -1.
    static ValInfinity monomial(const QuadReal& wx, const QuadReal& wy) {
        QuadReal zero(0);
        if (QuadReal::cmp(wx, zero) >= 0 && QuadReal::cmp(wy, zero) >= 0)
            throw Error("NotCenteredAtInfinity", "min(nu(x), nu(y), 0) must be negative");
        ValInfinity v;
        v.chart_ = wx <= wy ? Chart::XMajor : Chart::YMajor;
        const QuadReal& wmaj = v.chart_ == Chart::XMajor ? wx : wy;
        const QuadReal& wmin = v.chart_ == Chart::XMajor ? wy : wx;
        v.scale_ = -wmaj;
        v.tail_exp_ = wmin / wmaj;  // both negative-major: ratio is the datum exponent
        v.tail_kind_ = TailKind::Generic;
        v.finish();
        return v;
    }

    static ValInfinity minus_deg() { return monomial(QuadReal(-1), QuadReal(-1)); }

    static ValInfinity from_datum(Chart chart, QuadReal scale, std::vector<Term> terms,
                                  QuadReal tail_exp, TailKind kind = TailKind::Generic,
                                  Coeff curve_coeff = Coeff()) {
        ValInfinity v;
        v.chart_ = chart;
        v.scale_ = std::move(scale);
        v.terms_ = std::move(terms);
        v.tail_exp_ = std::move(tail_exp);
        v.tail_kind_ = kind;
        v.curve_coeff_ = std::move(curve_coeff);
        v.validate();
        v.finish();
        return v;
    }

    Chart chart() const { return chart_; }
    const std::vector<Term>& terms() const { return terms_; }
    const QuadReal& tail_exponent() const { return tail_exp_; }
    TailKind tail_kind() const { return tail_kind_; }
    const Coeff& curve_coeff() const { return curve_coeff_; }
    const QuadReal& scale() const { return scale_; }
    const QuadReal& normalizer() const { return normalizer_; }
    bool is_monomial() const { return terms_.empty() && tail_kind_ == TailKind::Generic; }
    bool is_truncated() const { return tail_kind_ == TailKind::Infinite; }
    bool is_quasimonomial() const { return tail_kind_ == TailKind::Generic; }
    // rational datum <=> divisorial (for quasimonomial data)
    bool is_divisorial() const {
        return tail_kind_ == TailKind::Generic && tail_exp_.is_rational();
    }

    const BiPoly& major_poly() const {
        static const BiPoly x = BiPoly::var_x(), y = BiPoly::var_y();
        return chart_ == Chart::XMajor ? x : y;
    }
    const BiPoly& minor_poly() const {
        static const BiPoly x = BiPoly::var_x(), y = BiPoly::var_y();
        return chart_ == Chart::XMajor ? y : x;
    }

    // normalized values on the coordinates
    QuadReal nu_x() const { return chart_ == Chart::XMajor ? nu_major() : nu_minor(); }
    QuadReal nu_y() const { return chart_ == Chart::XMajor ? nu_minor() : nu_major(); }
    QuadReal nu_major() const { return -(scale_ / normalizer_); }
    QuadReal nu_minor() const { return -(scale_ * first_level() / normalizer_); }

    // Exact expansion of R under the datum (theta marks the tail).
    ThetaSeries expand(const BiPoly& R) const {
        ThetaSeries minor = minor_series();
        std::vector<ThetaSeries> mp{ThetaSeries::one()};
        auto minor_pow = [&](int j) -> const ThetaSeries& {
            while (static_cast<int>(mp.size()) <= j) mp.push_back(mp.back() * minor);
            return mp[static_cast<std::size_t>(j)];
        };
        ThetaSeries out;
        for (auto& [e, c] : R.terms()) {
            int imaj = chart_ == Chart::XMajor ? e.first : e.second;
            int jmin = chart_ == Chart::XMajor ? e.second : e.first;
            ThetaSeries t = Coeff(c) * minor_pow(jmin);
            for (auto& [ex, p] : t.entries())
                for (auto& [d, cc] : p) out.add_in(ex + QuadReal(Rat(imaj)), d, cc);
        }
        return out;
    }

    EvalResult eval(const BiPoly& R) const {
        if (R.is_zero()) throw Error("ZeroPolynomial", "valuation of the zero polynomial");
        ThetaSeries s = expand(R);
        EvalResult res;
        if (s.is_zero()) {
            if (tail_kind_ == TailKind::Curve) {
                res.infinite = true;
                return res;
            }
            throw Error("CurveValueIndeterminate",
                        "expansion vanished identically on a non-curve datum");
        }
        res.value = -(scale_ * s.lead_exp()) / normalizer_;
        return res;
    }

    // convenience for callers that know the value is finite
    QuadReal operator()(const BiPoly& R) const {
        EvalResult r = eval(R);
        if (r.infinite) throw Error("CurveValueIndeterminate", "value is +infinity");
        return r.value;
    }

    // normalized value of a series exponent: -scale * exp / normalizer
    QuadReal value_of_exponent(const QuadReal& exp) const {
        return -(scale_ * exp) / normalizer_;
    }
    // inverse: series exponent with the given normalized value
    QuadReal exponent_of_value(const QuadReal& val) const {
        return -(val * normalizer_) / scale_;
    }

    bool operator==(const ValInfinity& o) const {
        return chart_ == o.chart_ && terms_ == o.terms_ && tail_exp_ == o.tail_exp_ &&
               tail_kind_ == o.tail_kind_ &&
               (tail_kind_ != TailKind::Curve || curve_coeff_ == o.curve_coeff_);
    }
    bool operator!=(const ValInfinity& o) const { return !(*this == o); }

    // Replace the tail exponent (used for convergent perturbations).
    ValInfinity with_tail_exponent(QuadReal t) const {
        return from_datum(chart_, scale_, terms_, std::move(t), TailKind::Generic);
    }
    // Append a concrete term and continue with a generic tail below it.
    ValInfinity with_term(Rat exp, Coeff c, QuadReal new_tail, TailKind kind) const {
        std::vector<Term> ts = terms_;
        ts.push_back({std::move(exp), std::move(c)});
        return from_datum(chart_, scale_, std::move(ts), std::move(new_tail), kind);
    }
    ValInfinity truncated() const {
        return from_datum(chart_, scale_, terms_, tail_exp_, TailKind::Infinite);
    }

    std::string render() const {
        std::string maj = chart_ == Chart::XMajor ? "x" : "y";
        std::string min = chart_ == Chart::XMajor ? "y" : "x";
        std::string out = "chart=" + maj + "-major; ";
        if (is_monomial()) {
            out += "nu(x)=" + nu_x().to_string() + "; nu(y)=" + nu_y().to_string();
            return out;
        }
        out += min + " = ";
        for (auto& t : terms_) {
            std::string cs = t.coeff.to_string();
            if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
            out += cs + "*" + maj + "^(" + t.exponent.to_string() + ") + ";
        }
        switch (tail_kind_) {
            case TailKind::Generic:
                out += "theta*" + maj + "^(" + tail_exp_.to_string() + ")";
                break;
            case TailKind::Curve: {
                std::string cs = curve_coeff_.to_string();
                if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
                out += cs + "*" + maj + "^(" + tail_exp_.to_string() + ") (curve)";
                break;
            }
            case TailKind::Infinite:
                out += "theta*" + maj + "^(" + tail_exp_.to_string() + ") (truncated)";
                break;
        }
        return out;
    }

    // Tree meet: longest common chart-compatible prefix of the data.
    friend std::pair<Ordering, ValInfinity> meet(const ValInfinity& v, const ValInfinity& w) {
        if (v == w) return {Ordering::Equal, v};
        ValInfinity md = minus_deg();
        if (v.chart_ != w.chart_) {
            if (v == md) return {Ordering::Less, v};
            if (w == md) return {Ordering::Greater, w};
            return {Ordering::Incomparable, md};
        }
        // comparison form: a curve tail becomes a final concrete term and
        // the datum is then exhausted (the curve's deeper coefficients all
        // vanish)
        auto comp_terms = [](const ValInfinity& a) {
            std::vector<Term> t = a.terms_;
            if (a.tail_kind_ == TailKind::Curve)
                t.push_back({a.tail_exp_.to_rat(), a.curve_coeff_});
            return t;
        };
        std::vector<Term> tv = comp_terms(v), tw = comp_terms(w);
        bool v_has_tail = v.tail_kind_ != TailKind::Curve;
        bool w_has_tail = w.tail_kind_ != TailKind::Curve;
        std::size_t k = 0;
        while (k < tv.size() && k < tw.size() && tv[k] == tw[k]) ++k;

        // next action level; nullopt = exhausted curve datum
        auto next_of = [&](const std::vector<Term>& t, bool has_tail,
                           const ValInfinity& a) -> std::optional<QuadReal> {
            if (k < t.size()) return QuadReal(t[k].exponent);
            if (has_tail) return a.tail_exp_;
            return std::nullopt;
        };
        std::optional<QuadReal> ev = next_of(tv, v_has_tail, v);
        std::optional<QuadReal> ew = next_of(tw, w_has_tail, w);

        if (k == tv.size() && v_has_tail && (!ew || v.tail_exp_ >= *ew))
            return {Ordering::Less, v};
        if (k == tw.size() && w_has_tail && (!ev || w.tail_exp_ >= *ev))
            return {Ordering::Greater, w};

        QuadReal level = ev && ew ? (*ev > *ew ? *ev : *ew) : (ev ? *ev : *ew);
        ValInfinity m = from_datum(v.chart_, QuadReal(1),
                                   std::vector<Term>(tv.begin(), tv.begin() + static_cast<long>(k)),
                                   level, TailKind::Generic);
        return {Ordering::Incomparable, m};
    }

  private:
    Chart chart_ = Chart::XMajor;
    QuadReal scale_ = QuadReal(1);
    std::vector<Term> terms_;
    QuadReal tail_exp_ = QuadReal(1);
    TailKind tail_kind_ = TailKind::Generic;
    Coeff curve_coeff_;
    QuadReal normalizer_ = QuadReal(1);

    QuadReal first_level() const {
        return terms_.empty() ? tail_exp_ : QuadReal(terms_[0].exponent);
    }

    ThetaSeries minor_series() const {
        ThetaSeries s;
        for (auto& t : terms_) s.add_in(QuadReal(t.exponent), 0, t.coeff);
        if (tail_kind_ == TailKind::Curve)
            s.add_in(tail_exp_, 0, curve_coeff_);
        else
            s.add_in(tail_exp_, 1, Coeff(1));
        return s;
    }

    void validate() const {
        if (scale_.sign() <= 0) throw Error("BadDatum", "scale must be positive");
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].coeff.is_zero()) throw Error("BadDatum", "zero datum coefficient");
            if (i && !(terms_[i].exponent < terms_[i - 1].exponent))
                throw Error("BadDatum", "datum exponents must strictly decrease");
        }
        if (!terms_.empty() && !(tail_exp_ < QuadReal(terms_.back().exponent)))
            throw Error("BadDatum", "tail exponent must lie below the last term");
        QuadReal lvl = first_level();
        if (chart_ == Chart::XMajor) {
            if (lvl > QuadReal(1)) throw Error("BadDatum", "x-major datum with level > 1");
        } else {
            if (lvl >= QuadReal(1)) throw Error("BadDatum", "y-major datum with level >= 1");
        }
        if (tail_kind_ == TailKind::Curve && curve_coeff_.is_zero())
            throw Error("BadDatum", "curve tail needs a nonzero coefficient");
    }

    void finish() {
        // normalizer = -min(raw x, raw y, 0) = scale * max(1, first level, 0)
        QuadReal lvl = first_level();
        QuadReal m(1);
        if (lvl > m) m = lvl;
        normalizer_ = scale_ * m;
        if (normalizer_.sign() <= 0)
            throw Error("NotCenteredAtInfinity", "datum does not define a pole at infinity");
    }
};

// normalize(raw weights): reports the normalizer alongside the valuation.
struct Normalized {
    ValInfinity val;
    QuadReal normalizer;
};

inline Normalized normalize_weights(const QuadReal& wx, const QuadReal& wy) {
    ValInfinity v = ValInfinity::monomial(wx, wy);
    return {v, v.normalizer()};
}

}  // namespace valdyn
