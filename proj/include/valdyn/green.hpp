#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "valdyn/bipoly.hpp"
#include "valdyn/errors.hpp"

namespace valdyn {

// Scaled double: value = mantissa * 2^exponent with |mantissa| in [1,2)
// or 0. Orbits of log+||F^n p|| overflow native doubles almost
// immediately; this keeps the mantissa in range and the scale exact.
class ExtFloat {
  public:
    ExtFloat() = default;
    ExtFloat(double v) { assign(v, 0); }

    static ExtFloat scaled(double mantissa, long long exponent) {
        ExtFloat r;
        r.assign(mantissa, exponent);
        return r;
    }

    double mantissa() const { return m_; }
    long long exponent() const { return e_; }
    bool is_zero() const { return m_ == 0.0; }
    int sign() const { return m_ == 0.0 ? 0 : (m_ < 0 ? -1 : 1); }

    friend ExtFloat operator-(const ExtFloat& a) { return scaled(-a.m_, a.e_); }
    friend ExtFloat operator+(const ExtFloat& a, const ExtFloat& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const ExtFloat& hi = a.e_ >= b.e_ ? a : b;
        const ExtFloat& lo = a.e_ >= b.e_ ? b : a;
        long long d = hi.e_ - lo.e_;
        if (d > 128) return hi;
        return scaled(hi.m_ + std::ldexp(lo.m_, static_cast<int>(-d)), hi.e_);
    }
    friend ExtFloat operator-(const ExtFloat& a, const ExtFloat& b) { return a + (-b); }
    friend ExtFloat operator*(const ExtFloat& a, const ExtFloat& b) {
        if (a.is_zero() || b.is_zero()) return ExtFloat();
        return scaled(a.m_ * b.m_, a.e_ + b.e_);
    }
    ExtFloat& operator+=(const ExtFloat& b) { return *this = *this + b; }
    ExtFloat& operator*=(const ExtFloat& b) { return *this = *this * b; }

    ExtFloat abs() const { return scaled(std::fabs(m_), e_); }

    static ExtFloat sqrt_nonneg(const ExtFloat& a) {
        if (a.is_zero()) return ExtFloat();
        double m = a.m_;
        long long e = a.e_;
        if (e % 2 != 0) {
            m *= 2.0;
            e -= 1;
        }
        return scaled(std::sqrt(m), e / 2);
    }

    // natural log of |value|; exact up to double rounding
    double log_abs() const {
        if (is_zero()) throw Error("DegenerateArithmetic", "log of zero");
        return std::log(std::fabs(m_)) + static_cast<double>(e_) * 0.6931471805599453;
    }

    friend bool operator<(const ExtFloat& a, const ExtFloat& b) { return (a - b).sign() < 0; }
    friend bool operator>(const ExtFloat& a, const ExtFloat& b) { return (a - b).sign() > 0; }

    double to_double() const { return std::ldexp(m_, static_cast<int>(std::max(-1000ll, std::min(1000ll, e_)))); }

  private:
    double m_ = 0.0;
    long long e_ = 0;

    void assign(double v, long long e) {
        if (v == 0.0) {
            m_ = 0.0;
            e_ = 0;
            return;
        }
        if (!std::isfinite(v)) throw Error("DegenerateArithmetic", "non-finite mantissa");
        int sh = 0;
        double m = std::frexp(v, &sh);  // m in [0.5, 1)
        m_ = m * 2.0;
        e_ = e + sh - 1;
        if (std::llabs(e_) > (1ll << 62)) throw Error("DegenerateArithmetic", "exponent overflow");
    }
};

struct CValue {
    ExtFloat re, im;

    friend CValue operator+(const CValue& a, const CValue& b) { return {a.re + b.re, a.im + b.im}; }
    friend CValue operator*(const CValue& a, const CValue& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    ExtFloat modulus() const { return ExtFloat::sqrt_nonneg(re * re + im * im); }
};

struct CPoint {
    CValue x, y;
};

namespace detail {

struct DoubleMap {
    // coefficients flattened once; avoids exact arithmetic in orbits
    struct Term {
        int i, j;
        double c;
    };
    std::vector<Term> p, q;

    static std::vector<Term> flatten(const BiPoly& f) {
        std::vector<Term> out;
        for (auto& [e, c] : f.terms()) out.push_back({e.first, e.second, c.to_rat().to_double()});
        return out;
    }
    explicit DoubleMap(const PolyMap& F) : p(flatten(F.P)), q(flatten(F.Q)) {}

    CPoint apply(const CPoint& pt) const {
        int dx = 0, dy = 0;
        for (auto& t : p) {
            dx = std::max(dx, t.i);
            dy = std::max(dy, t.j);
        }
        for (auto& t : q) {
            dx = std::max(dx, t.i);
            dy = std::max(dy, t.j);
        }
        std::vector<CValue> xp(static_cast<std::size_t>(dx) + 1), yp(static_cast<std::size_t>(dy) + 1);
        xp[0] = {ExtFloat(1.0), ExtFloat()};
        yp[0] = {ExtFloat(1.0), ExtFloat()};
        for (int i = 1; i <= dx; ++i) xp[static_cast<std::size_t>(i)] = xp[static_cast<std::size_t>(i - 1)] * pt.x;
        for (int j = 1; j <= dy; ++j) yp[static_cast<std::size_t>(j)] = yp[static_cast<std::size_t>(j - 1)] * pt.y;
        auto eval = [&](const std::vector<Term>& f) {
            CValue acc;
            for (auto& t : f) {
                CValue mono = xp[static_cast<std::size_t>(t.i)] * yp[static_cast<std::size_t>(t.j)];
                acc = acc + CValue{mono.re * ExtFloat(t.c), mono.im * ExtFloat(t.c)};
            }
            return acc;
        };
        return {eval(p), eval(q)};
    }
};

// log+ ||(x,y)|| with ||(x,y)|| = max(1, |x|, |y|)
inline double log_plus_norm(const CPoint& p) {
    ExtFloat mx = p.x.modulus(), my = p.y.modulus();
    ExtFloat best = mx > my ? mx : my;
    if (!(best > ExtFloat(1.0))) return 0.0;
    return best.log_abs();
}

}  // namespace detail

struct GreenSample {
    double x = 0, y = 0;   // real parts of the sampled point
    double estimate = 0;   // g_n = lambda1^{-n} log+ ||F^n p||
    int n_used = 0;
    bool converged = false;
};

// Green function estimate at one point: iterate in scaled-double
// arithmetic; converged when successive estimates differ by < tol, or the
// orbit stays inside the escape radius for n_max steps (then 0, flagged
// as the undecided bounded case).
inline GreenSample green_value(const PolyMap& F, double x_re, double y_re, double lambda1,
                               int n_max = 40, double tol = 1e-9, double x_im = 0,
                               double y_im = 0, double escape_radius = 1e4) {
    if (!(lambda1 > 1.0))
        throw Error("BadArgument", "green_value needs lambda1 > 1");
    detail::DoubleMap dm(F);
    CPoint p{{ExtFloat(x_re), ExtFloat(x_im)}, {ExtFloat(y_re), ExtFloat(y_im)}};
    GreenSample out;
    out.x = x_re;
    out.y = y_re;
    double inv_l = 1.0 / lambda1;
    double scale = 1.0;
    double prev_g = detail::log_plus_norm(p);
    double escape_log = std::log(2.0 * escape_radius);
    bool escaped = prev_g > escape_log;
    for (int n = 1; n <= n_max; ++n) {
        p = dm.apply(p);
        scale *= inv_l;
        double ln = detail::log_plus_norm(p);
        double g = ln * scale;
        out.n_used = n;
        out.estimate = g;
        if (!escaped && ln > escape_log) escaped = true;
        if (escaped && std::fabs(g - prev_g) < tol) {
            out.converged = true;
            return out;
        }
        prev_g = g;
    }
    if (!escaped) out.estimate = 0.0;  // undecided bounded orbit, treated as 0
    return out;
}

struct GreenGrid {
    int resolution = 0;
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    std::vector<GreenSample> samples;  // row-major: y outer, x inner

    std::string csv() const {
        std::string out = "x,y,G,converged,n\n";
        char buf[160];
        for (const auto& s : samples) {
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%d,%d\n", s.x, s.y, s.estimate,
                          s.converged ? 1 : 0, s.n_used);
            out += buf;
        }
        return out;
    }

    // binary portable graymap, 8-bit, G clamped to [0, gmax] linearly
    std::string pgm(double gmax = -1) const {
        double mx = gmax;
        if (mx <= 0) {
            mx = 0;
            for (const auto& s : samples) mx = std::max(mx, s.estimate);
            if (mx <= 0) mx = 1;
        }
        std::string out = "P5\n" + std::to_string(resolution) + " " + std::to_string(resolution) +
                          "\n255\n";
        for (const auto& s : samples) {
            double v = std::min(std::max(s.estimate, 0.0), mx) / mx;
            out.push_back(static_cast<char>(static_cast<unsigned char>(v * 255.0 + 0.5)));
        }
        return out;
    }
};

// Raster of green_value over a real 2-plane slice of C^2; deterministic
// row-major order, sample points at the inclusive grid corners.
inline GreenGrid grid(const PolyMap& F, double x0, double x1, double y0, double y1,
                      int resolution, double lambda1, int n_max = 40, double tol = 1e-9,
                      double x_im = 0, double y_im = 0) {
    if (resolution < 1) throw Error("BadArgument", "resolution must be >= 1");
    GreenGrid g;
    g.resolution = resolution;
    g.x0 = x0;
    g.x1 = x1;
    g.y0 = y0;
    g.y1 = y1;
    for (int r = 0; r < resolution; ++r) {
        double y = resolution == 1 ? y0 : y0 + (y1 - y0) * r / (resolution - 1);
        for (int c = 0; c < resolution; ++c) {
            double x = resolution == 1 ? x0 : x0 + (x1 - x0) * c / (resolution - 1);
            GreenSample s = green_value(F, x, y, lambda1, n_max, tol, x_im, y_im);
            s.x = x;
            s.y = y;
            g.samples.push_back(s);
        }
    }
    return g;
}

struct GrowthBoundRow {
    int n = 0;
    double log_norm = 0;
    double bound = 0;  // (lambda2 + eps)^n (log+||p|| + C)
};

struct GrowthBoundReport {
    std::vector<GrowthBoundRow> rows;
    double fitted_C = 0;

    std::string render() const {
        std::string out = "n log_norm bound\n";
        char buf[128];
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof buf, "%d %.12g %.12g\n", r.n, r.log_norm, r.bound);
            out += buf;
        }
        std::snprintf(buf, sizeof buf, "C = %.12g\n", fitted_C);
        out += buf;
        return out;
    }
};

// For p in K+ (green estimate 0): the sequence log+||F^n p|| and the
// smallest C with log+||F^n p|| <= (lambda2+eps)^n (log+||p|| + C) over
// the computed range. Diagnostic only.
inline GrowthBoundReport growth_bound_report(const PolyMap& F, double x_re, double y_re,
                                             double lambda1, double lambda2, double eps,
                                             int n_max = 40) {
    GreenSample probe = green_value(F, x_re, y_re, lambda1, n_max);
    if (probe.estimate > 1e-6)
        throw Error("BadArgument", "growth bound needs a point with green estimate 0");
    detail::DoubleMap dm(F);
    CPoint p{{ExtFloat(x_re), ExtFloat()}, {ExtFloat(y_re), ExtFloat()}};
    double base = std::max(lambda2 + eps, 1.0 + eps);
    double l0 = detail::log_plus_norm(p);
    GrowthBoundReport rep;
    double C = 0;
    std::vector<double> lognorms{l0};
    double pw = 1;
    for (int n = 1; n <= n_max; ++n) {
        p = dm.apply(p);
        lognorms.push_back(detail::log_plus_norm(p));
        pw *= base;
        C = std::max(C, lognorms.back() / pw - l0);
    }
    pw = 1;
    for (int n = 0; n <= n_max; ++n) {
        rep.rows.push_back({n, lognorms[static_cast<std::size_t>(n)], pw * (l0 + C)});
        pw *= base;
    }
    rep.fitted_C = C;
    return rep;
}

}  // namespace valdyn
