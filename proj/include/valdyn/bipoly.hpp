#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "valdyn/coeff.hpp"
#include "valdyn/errors.hpp"
#include "valdyn/quadreal.hpp"

namespace valdyn {

// Graded lexicographic term order, highest first, so that map iteration
// is the printing order and output is reproducible byte-for-byte.
struct GradedLexDesc {
    bool operator()(const std::pair<int, int>& a, const std::pair<int, int>& b) const {
        int da = a.first + a.second, db = b.first + b.second;
        if (da != db) return da > db;
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    }
};

// Sparse bivariate polynomial over Coeff. No zero coefficients stored,
// the zero polynomial is the empty map.
class BiPoly {
  public:
    using Terms = std::map<std::pair<int, int>, Coeff, GradedLexDesc>;

    BiPoly() = default;
    explicit BiPoly(Coeff c) {
        if (!c.is_zero()) terms_[{0, 0}] = std::move(c);
    }
    static BiPoly var_x() { return monomial(1, 0, Coeff(1)); }
    static BiPoly var_y() { return monomial(0, 1, Coeff(1)); }
    static BiPoly monomial(int i, int j, Coeff c) {
        BiPoly p;
        if (!c.is_zero()) p.terms_[{i, j}] = std::move(c);
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == std::pair<int, int>{0, 0});
    }
    Coeff coeff(int i, int j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? Coeff() : it->second;
    }

    int degree() const {
        int d = -1;
        for (auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
        return d;
    }
    int deg_x() const {
        int d = -1;
        for (auto& [e, c] : terms_) d = std::max(d, e.first);
        return d;
    }
    int deg_y() const {
        int d = -1;
        for (auto& [e, c] : terms_) d = std::max(d, e.second);
        return d;
    }

    void add_term(int i, int j, const Coeff& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace({i, j}, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend BiPoly operator-(const BiPoly& a) {
        BiPoly r = a;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        BiPoly r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e.first, e.second, c);
        return r;
    }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
        BiPoly r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e.first, e.second, -c);
        return r;
    }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly r;
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_)
                r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
        return r;
    }
    friend BiPoly operator*(const Coeff& c, const BiPoly& b) { return BiPoly(c) * b; }
    BiPoly& operator+=(const BiPoly& b) { return *this = *this + b; }
    BiPoly& operator-=(const BiPoly& b) { return *this = *this - b; }
    BiPoly& operator*=(const BiPoly& b) { return *this = *this * b; }

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return (a - b).is_zero(); }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    BiPoly pow(unsigned e) const {
        BiPoly r(Coeff(1)), b = *this;
        while (e) {
            if (e & 1) r *= b;
            if (e >>= 1) b *= b;
        }
        return r;
    }

    BiPoly d_dx() const {
        BiPoly r;
        for (auto& [e, c] : terms_)
            if (e.first > 0) r.add_term(e.first - 1, e.second, Coeff(Rat(e.first)) * c);
        return r;
    }
    BiPoly d_dy() const {
        BiPoly r;
        for (auto& [e, c] : terms_)
            if (e.second > 0) r.add_term(e.first, e.second - 1, Coeff(Rat(e.second)) * c);
        return r;
    }

    // Substitute x -> X, y -> Y with memoized powers.
    BiPoly substitute(const BiPoly& X, const BiPoly& Y) const {
        std::vector<BiPoly> xp{BiPoly(Coeff(1))}, yp{BiPoly(Coeff(1))};
        auto power = [](std::vector<BiPoly>& cache, const BiPoly& base, int e) -> const BiPoly& {
            while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * base);
            return cache[static_cast<std::size_t>(e)];
        };
        BiPoly r;
        for (auto& [e, c] : terms_)
            r += BiPoly(c) * power(xp, X, e.first) * power(yp, Y, e.second);
        return r;
    }

    // Sum of monomials minimizing i*wx + j*wy (valuation-leading part).
    BiPoly leading_part(const QuadReal& wx, const QuadReal& wy) const {
        if (is_zero()) throw Error("ZeroPolynomial", "leading part of the zero polynomial");
        bool have = false;
        QuadReal best;
        for (auto& [e, c] : terms_) {
            QuadReal w = QuadReal(Rat(e.first)) * wx + QuadReal(Rat(e.second)) * wy;
            if (!have || w < best) {
                best = w;
                have = true;
            }
        }
        BiPoly r;
        for (auto& [e, c] : terms_) {
            QuadReal w = QuadReal(Rat(e.first)) * wx + QuadReal(Rat(e.second)) * wy;
            if (w == best) r.add_term(e.first, e.second, c);
        }
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto& [e, c] : terms_) {
            bool neg = false;
            Coeff a = c;
            if (a.is_rational() && a.to_rat().is_negative()) {
                neg = true;
                a = -a;
            }
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            std::string mono;
            if (e.first) mono += e.first == 1 ? "x" : "x^" + std::to_string(e.first);
            if (e.second) {
                if (!mono.empty()) mono += "*";
                mono += e.second == 1 ? "y" : "y^" + std::to_string(e.second);
            }
            std::string cs = a.to_string();
            if (mono.empty()) {
                out += cs.find(' ') != std::string::npos ? "(" + cs + ")" : cs;
            } else if (a.is_one()) {
                out += mono;
            } else {
                out += (cs.find(' ') != std::string::npos ? "(" + cs + ")" : cs) + "*" + mono;
            }
        }
        return out;
    }

  private:
    Terms terms_;
};

// The polynomial map F(x,y) = (P(x,y), Q(x,y)).
struct PolyMap {
    BiPoly P, Q;

    int degree() const { return std::max(std::max(P.degree(), Q.degree()), 0); }
    BiPoly& component(int k) { return k == 0 ? P : Q; }
    const BiPoly& component(int k) const { return k == 0 ? P : Q; }

    static PolyMap identity() { return {BiPoly::var_x(), BiPoly::var_y()}; }
};

// F after G, i.e. (F o G)(x,y) = F(G(x,y)).
inline PolyMap compose(const PolyMap& F, const PolyMap& G) {
    return {F.P.substitute(G.P, G.Q), F.Q.substitute(G.P, G.Q)};
}

inline BiPoly jacobian_det(const PolyMap& F) {
    return F.P.d_dx() * F.Q.d_dy() - F.P.d_dy() * F.Q.d_dx();
}

inline bool is_dominant(const PolyMap& F) { return !jacobian_det(F).is_zero(); }

namespace detail {

struct MapToken {
    enum Kind { Ident, Number, Op, End } kind = End;
    std::string text;
    int line = 1, col = 1;
};

class MapLexer {
  public:
    explicit MapLexer(const std::string& src) : src_(src) {}

    MapToken next() {
        skip_space_and_comments();
        MapToken t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) {
            t.kind = MapToken::End;
            return t;
        }
        char c = src_[pos_];
        if (c == '\n') {
            advance();
            t.kind = MapToken::Op;
            t.text = ";";
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            t.kind = MapToken::Ident;
            while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) {
                t.text += src_[pos_];
                advance();
            }
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = MapToken::Number;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                t.text += src_[pos_];
                advance();
            }
            return t;
        }
        if (std::string("=+-*/^();").find(c) != std::string::npos) {
            t.kind = MapToken::Op;
            t.text = std::string(1, c);
            advance();
            return t;
        }
        throw Error("SyntaxError", "unexpected character '" + std::string(1, c) + "' at line " +
                                       std::to_string(line_) + ", column " + std::to_string(col_));
    }

  private:
    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_space_and_comments() {
        for (;;) {
            while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r'))
                advance();
            if (pos_ < src_.size() && src_[pos_] == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
                continue;
            }
            return;
        }
    }
};

class MapParser {
  public:
    explicit MapParser(const std::string& src) : lex_(src) { shift(); }

    PolyMap parse_file() {
        bool have_p = false, have_q = false;
        BiPoly P, Q;
        for (;;) {
            while (cur_.kind == MapToken::Op && cur_.text == ";") shift();
            if (cur_.kind == MapToken::End) break;
            if (cur_.kind != MapToken::Ident || (cur_.text != "P" && cur_.text != "Q")) {
                if (cur_.kind == MapToken::Ident)
                    throw err("UnknownIdentifier", "expected 'P' or 'Q', found '" + cur_.text + "'");
                throw err("SyntaxError", "expected a statement 'P = ...' or 'Q = ...'");
            }
            bool is_p = cur_.text == "P";
            if ((is_p && have_p) || (!is_p && have_q))
                throw err("SyntaxError", std::string(is_p ? "P" : "Q") + " defined twice");
            shift();
            expect_op("=");
            BiPoly e = parse_expr();
            (is_p ? P : Q) = e;
            (is_p ? have_p : have_q) = true;
            if (cur_.kind == MapToken::End) break;
            expect_op(";");
        }
        if (!have_p || !have_q)
            throw Error("SyntaxError", std::string("map file must define both P and Q; missing ") +
                                           (!have_p ? "P" : "Q"));
        return {P, Q};
    }

  private:
    MapLexer lex_;
    MapToken cur_;

    void shift() { cur_ = lex_.next(); }
    Error err(const std::string& code, const std::string& msg) const {
        return Error(code, msg + " at line " + std::to_string(cur_.line) + ", column " +
                               std::to_string(cur_.col));
    }
    void expect_op(const std::string& op) {
        if (cur_.kind != MapToken::Op || cur_.text != op)
            throw err("SyntaxError", "expected '" + op + "'");
        shift();
    }
    bool at_op(const std::string& op) const {
        return cur_.kind == MapToken::Op && cur_.text == op;
    }

    BiPoly parse_expr() {
        BiPoly r = parse_term();
        while (at_op("+") || at_op("-")) {
            bool plus = cur_.text == "+";
            shift();
            BiPoly t = parse_term();
            r = plus ? r + t : r - t;
        }
        return r;
    }
    BiPoly parse_term() {
        BiPoly r = parse_factor();
        while (at_op("*")) {
            shift();
            r *= parse_factor();
        }
        return r;
    }
    BiPoly parse_factor() {
        BiPoly b = parse_base();
        if (at_op("^")) {
            shift();
            if (cur_.kind != MapToken::Number) throw err("SyntaxError", "expected an exponent");
            unsigned long e = std::stoul(cur_.text);
            shift();
            return b.pow(static_cast<unsigned>(e));
        }
        return b;
    }
    BiPoly parse_base() {
        if (cur_.kind == MapToken::Ident) {
            if (cur_.text == "x") {
                shift();
                return BiPoly::var_x();
            }
            if (cur_.text == "y") {
                shift();
                return BiPoly::var_y();
            }
            throw err("UnknownIdentifier", "unknown identifier '" + cur_.text + "'");
        }
        bool neg = false;
        if (at_op("-")) {
            neg = true;
            shift();
        }
        if (cur_.kind == MapToken::Number) {
            BigInt num = BigInt::from_string(cur_.text);
            shift();
            Rat v(num);
            if (at_op("/")) {
                shift();
                if (cur_.kind != MapToken::Number) throw err("SyntaxError", "expected a denominator");
                v = Rat(num, BigInt::from_string(cur_.text));
                shift();
            }
            if (neg) v = -v;
            return BiPoly(Coeff(v));
        }
        if (neg) throw err("SyntaxError", "expected a number after '-'");
        if (at_op("(")) {
            shift();
            BiPoly e = parse_expr();
            expect_op(")");
            return e;
        }
        throw err("SyntaxError", "expected 'x', 'y', a number, or '('");
    }
};

}  // namespace detail

// Parses the map grammar; total on the grammar, everything else is
// rejected with a position-tagged error.
inline PolyMap parse_map(const std::string& text) {
    return detail::MapParser(text).parse_file();
}

}  // namespace valdyn
