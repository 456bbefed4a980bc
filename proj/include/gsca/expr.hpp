#pragma once

#include <cctype>
#include <string>

#include "quadform.hpp"

namespace gsca {

namespace detail {

/// Recursive-descent parser for form expressions: sums and differences of
/// terms, where a term is a '*'-joined product of integer literals,
/// generators z<i>, and parenthesized subexpressions, any factor optionally
/// raised to a small power. Products expand through the skew relations.
class ExprParser {
  public:
    ExprParser(const SkewRing& R, const std::string& text) : R_(R), text_(text) {}

    SkewPoly parse() {
        SkewPoly p = expr();
        skip_ws();
        if (pos_ != text_.size()) err("unexpected trailing input");
        return p;
    }

  private:
    SkewPoly expr() {
        skip_ws();
        bool negate = false;
        if (peek() == '+' || peek() == '-') negate = get() == '-';
        SkewPoly acc = term();
        if (negate) acc = R_.scale(acc, R_.field().neg(R_.field().one()));
        while (true) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            get();
            SkewPoly t = term();
            acc = c == '+' ? R_.add(acc, t) : R_.sub(acc, t);
        }
        return acc;
    }

    SkewPoly term() {
        SkewPoly acc = factor();
        while (true) {
            skip_ws();
            if (peek() != '*') break;
            get();
            acc = R_.mul(acc, factor());
        }
        return acc;
    }

    SkewPoly factor() {
        SkewPoly base = atom();
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            size_t at = pos_;
            uint64_t e = integer();
            if (e > 8) err("exponent too large", at);
            SkewPoly acc = R_.constant(R_.field().one());
            for (uint64_t i = 0; i < e; ++i) acc = R_.mul(acc, base);
            return acc;
        }
        return base;
    }

    SkewPoly atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            SkewPoly p = expr();
            skip_ws();
            if (peek() != ')') err("expected ')'");
            get();
            return p;
        }
        if (c == 'z') {
            get();
            size_t at = pos_;
            uint64_t i = integer();
            if (i < 1 || i > static_cast<uint64_t>(R_.n()))
                err("generator index out of range 1.." + std::to_string(R_.n()), at);
            return R_.gen(static_cast<int>(i));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            uint64_t v = integer();
            return R_.constant(R_.field().from_int(static_cast<int64_t>(v % R_.field().p())));
        }
        err("expected a number, generator, or '('");
    }

    uint64_t integer() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) err("expected a number");
        uint64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<uint64_t>(get() - '0');
            if (v > (1ULL << 62)) err("number too large");
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() { return text_[pos_++]; }

    [[noreturn]] void err(const std::string& what) const { err(what, pos_); }
    [[noreturn]] void err(const std::string& what, size_t at) const {
        fail(errc::parse_error, what + " at offset " + std::to_string(at) + " in \"" + text_ + "\"");
    }

    const SkewRing& R_;
    const std::string& text_;
    size_t pos_ = 0;
};

} // namespace detail

/// Parse an expression like "(z1+2*z2)^2" or "z2^2 + z4^2 - z2*z3" into a
/// quadratic form, expanding with skew multiplication. Throws ParseError on
/// bad syntax and NonHomogeneous when the result is not of degree 2.
inline QuadForm parse_form_expression(const SkewRing& R, const std::string& text) {
    SkewPoly p = detail::ExprParser(R, text).parse();
    if (p.empty()) return QuadForm::zero(R.n());
    int d = R.homogeneous_degree(p); // throws NonHomogeneous on mixed degrees
    require(d == 2, errc::non_homogeneous, "expression has degree " + std::to_string(d) + ", expected 2");
    return poly_to_form(R, p);
}

/// Render a scalar: plain integer for prime fields, coefficient tuple
/// [c0,c1,...] against the extension generator otherwise.
inline std::string render_scalar(const Field& F, const Scalar& s) {
    if (F.k() == 1) return std::to_string(s.c[0]);
    std::string out = "[";
    for (int i = 0; i < F.k(); ++i) {
        if (i) out += ",";
        out += std::to_string(s.c[i]);
    }
    return out + "]";
}

inline std::string monomial_label(int i, int j) {
    if (i == j) return "z" + std::to_string(i + 1) + "^2";
    return "z" + std::to_string(i + 1) + "*z" + std::to_string(j + 1);
}

/// Render a form in the grammar parse_form_expression accepts, term per
/// canonical pair: "z1^2 + 6*z1*z2 + 4*z2^2". The zero form renders as "0".
inline std::string render_form(const SkewRing& R, const QuadForm& q) {
    const Field& F = R.field();
    std::string out;
    for (int idx = 0; idx < PairBasis::count(R.n()); ++idx) {
        const Scalar& c = q.c[idx];
        if (F.is_zero(c)) continue;
        auto [i, j] = PairBasis::unindex(R.n(), idx);
        if (!out.empty()) out += " + ";
        if (c == F.one())
            out += monomial_label(i, j);
        else
            out += render_scalar(F, c) + "*" + monomial_label(i, j);
    }
    return out.empty() ? "0" : out;
}

/// Render a linear form, e.g. "z1 + 4*z3".
inline std::string render_linear(const SkewRing& R, const Vec& v) {
    const Field& F = R.field();
    std::string out;
    for (int i = 0; i < R.n(); ++i) {
        if (F.is_zero(v[i])) continue;
        if (!out.empty()) out += " + ";
        if (v[i] == F.one())
            out += "z" + std::to_string(i + 1);
        else
            out += render_scalar(F, v[i]) + "*z" + std::to_string(i + 1);
    }
    return out.empty() ? "0" : out;
}

} // namespace gsca
