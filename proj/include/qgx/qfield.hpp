// Exact arithmetic over Q(q): Laurent polynomials and rational functions in
// the deformation parameter, with unique canonical forms and decidable zero
// testing. All coefficients are exact rationals.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgx/errors.hpp"

namespace qgx {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;  // gcd-reduced, positive denominator

inline std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

// Sparse Laurent polynomial over Rat. Invariant: no stored zero coefficient.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(const Rat& c) {
        if (c != 0) c_[0] = c;
    }
    static LaurentPoly monomial(int exp, const Rat& c = Rat(1)) {
        LaurentPoly p;
        if (c != 0) p.c_[exp] = c;
        return p;
    }
    static LaurentPoly q() { return monomial(1); }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_.begin()->first == 0 && c_.begin()->second == 1; }

    // pre: nonzero
    int lowest() const { return c_.begin()->first; }
    int highest() const { return c_.rbegin()->first; }
    const Rat& leading() const { return c_.rbegin()->second; }

    Rat coeff(int exp) const {
        auto it = c_.find(exp);
        return it == c_.end() ? Rat(0) : it->second;
    }
    const std::map<int, Rat>& terms() const { return c_; }

    void add_term(int exp, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = c_.try_emplace(exp, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) c_.erase(it);
        }
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [e, c] : b.c_) r.add_term(e, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [e, c] : b.c_) r.add_term(e, -c);
        return r;
    }
    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : c_) r.c_[e] = -c;
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.c_)
            for (const auto& [eb, cb] : b.c_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly shifted(int k) const {  // multiply by q^k
        LaurentPoly r;
        for (const auto& [e, c] : c_) r.c_[e + k] = c;
        return r;
    }
    LaurentPoly scaled(const Rat& s) const {
        LaurentPoly r;
        if (s == 0) return r;
        for (const auto& [e, c] : c_) r.c_[e] = c * s;
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }

    // Exact evaluation; q0 must be nonzero when negative exponents occur.
    Rat eval(const Rat& q0) const {
        Rat acc(0);
        for (const auto& [e, c] : c_) {
            Rat p(1);
            int k = e < 0 ? -e : e;
            for (int i = 0; i < k; ++i) p *= q0;
            if (e < 0) p = Rat(1) / p;
            acc += c * p;
        }
        return acc;
    }

private:
    std::map<int, Rat> c_;
};

namespace detail {

// Dense ordinary-polynomial helpers for gcd computation (lowest exponent 0).
using DensePoly = std::vector<Rat>;  // index = exponent, no trailing zeros

inline DensePoly to_dense(const LaurentPoly& p) {
    DensePoly d;
    if (p.is_zero()) return d;
    d.assign(static_cast<std::size_t>(p.highest() - p.lowest()) + 1, Rat(0));
    for (const auto& [e, c] : p.terms()) d[static_cast<std::size_t>(e - p.lowest())] = c;
    return d;
}

inline void trim(DensePoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a by b; b nonzero.
inline DensePoly poly_rem(DensePoly a, const DensePoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        trim(a);
    }
    return a;
}

inline DensePoly poly_divide_exact(DensePoly a, const DensePoly& b) {
    DensePoly quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        quot[off] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        trim(a);
    }
    return quot;
}

inline DensePoly poly_gcd(DensePoly a, DensePoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        DensePoly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
        if (!b.empty()) {  // keep monic to tame coefficient growth
            Rat lc = b.back();
            for (auto& c : b) c /= lc;
        }
    }
    if (!a.empty()) {
        Rat lc = a.back();
        for (auto& c : a) c /= lc;
    }
    return a;
}

inline LaurentPoly from_dense(const DensePoly& d, int shift = 0) {
    LaurentPoly p;
    for (std::size_t i = 0; i < d.size(); ++i) p.add_term(static_cast<int>(i) + shift, d[i]);
    return p;
}

} // namespace detail

// Rational function num/den in q. Canonical representative: den is an
// ordinary polynomial with nonzero constant term, monic, coprime to num;
// zero is 0/1. Canonical forms make equality structural.
class RatFunc {
public:
    RatFunc() : den_(Rat(1)) {}
    RatFunc(int v) : num_(Rat(v)), den_(Rat(1)) {}
    explicit RatFunc(const Rat& v) : num_(v), den_(Rat(1)) {}
    explicit RatFunc(LaurentPoly p) : num_(std::move(p)), den_(Rat(1)) {}
    RatFunc(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw division_by_zero();
        reduce();
    }

    static RatFunc q_power(int k) { return RatFunc(LaurentPoly::monomial(k)); }
    static RatFunc q() { return q_power(1); }
    static RatFunc lambda() {  // q - q^-1
        LaurentPoly p = LaurentPoly::monomial(1);
        p.add_term(-1, Rat(-1));
        return RatFunc(p);
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw division_by_zero();
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    // Total order for use as map key (lexicographic on terms); not numeric.
    friend bool operator<(const RatFunc& a, const RatFunc& b) {
        auto cmp = [](const LaurentPoly& x, const LaurentPoly& y) -> int {
            auto ix = x.terms().begin(), iy = y.terms().begin();
            for (; ix != x.terms().end() && iy != y.terms().end(); ++ix, ++iy) {
                if (ix->first != iy->first) return ix->first < iy->first ? -1 : 1;
                if (ix->second != iy->second) return ix->second < iy->second ? -1 : 1;
            }
            if (ix != x.terms().end()) return 1;
            if (iy != y.terms().end()) return -1;
            return 0;
        };
        int c = cmp(a.num_, b.num_);
        if (c != 0) return c < 0;
        return cmp(a.den_, b.den_) < 0;
    }

    // Exact evaluation at q0 != 0. A vanishing denominator is a genuine pole
    // because canonical forms are gcd-reduced.
    Rat eval_at(const Rat& q0) const {
        if (q0 == 0) throw qgx_error("evaluation at q = 0 is not defined (Laurent exponents)");
        Rat d = den_.eval(q0);
        if (d == 0) throw pole_error(rat_to_string(q0));
        return num_.eval(q0) / d;
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = LaurentPoly(Rat(1));
            return;
        }
        int a = num_.lowest(), b = den_.lowest();
        detail::DensePoly n0 = detail::to_dense(num_);
        detail::DensePoly d0 = detail::to_dense(den_);
        detail::DensePoly g = detail::poly_gcd(n0, d0);
        if (g.size() > 1) {
            n0 = detail::poly_divide_exact(n0, g);
            d0 = detail::poly_divide_exact(d0, g);
        }
        Rat lc = d0.back();
        for (auto& c : n0) c /= lc;
        for (auto& c : d0) c /= lc;
        num_ = detail::from_dense(n0, a - b);
        den_ = detail::from_dense(d0, 0);
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

inline RatFunc arith(const RatFunc& a, const RatFunc& b, char op) {
    switch (op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        default: throw qgx_error(std::string("unknown arithmetic op '") + op + "'");
    }
}

// ---- text syntax -----------------------------------------------------------
//
// integers, `q`, `^` with (possibly negative) integer exponents, + - * /,
// parentheses. Examples: q^2 - 1, 1/(q - q^-1), 3/2*q^3 + q^-2.

inline std::string poly_to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        bool neg = c < 0;
        Rat mag = neg ? Rat(-c) : c;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        if (e == 0) {
            out += rat_to_string(mag);
        } else {
            if (mag != 1) out += rat_to_string(mag) + "*";
            out += e == 1 ? "q" : "q^" + std::to_string(e);
        }
    }
    return out;
}

inline std::string to_string(const RatFunc& f) {
    if (f.den().is_one()) return poly_to_string(f.num());
    return "(" + poly_to_string(f.num()) + ")/(" + poly_to_string(f.den()) + ")";
}

namespace detail {

class RatFuncParser {
public:
    explicit RatFuncParser(std::string_view s) : s_(s) {}

    RatFunc parse() {
        RatFunc v = expr();
        skip_ws();
        if (pos_ != s_.size()) throw parse_error(pos_, "trailing input");
        return v;
    }

private:
    RatFunc expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        RatFunc acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                RatFunc t = term();
                acc = c == '+' ? acc + t : acc - t;
            } else {
                return acc;
            }
        }
    }

    RatFunc term() {
        RatFunc acc = power();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                RatFunc f = power();
                if (c == '/') {
                    if (f.is_zero()) throw parse_error(pos_, "division by zero");
                    acc = acc / f;
                } else {
                    acc = acc * f;
                }
            } else {
                return acc;
            }
        }
    }

    RatFunc power() {
        RatFunc base = atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            int e = integer();
            RatFunc acc(1);
            RatFunc b = e < 0 ? RatFunc(1) / base : base;
            int k = e < 0 ? -e : e;
            for (int i = 0; i < k; ++i) acc = acc * b;
            return acc;
        }
        return base;
    }

    RatFunc atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            RatFunc v = expr();
            skip_ws();
            if (peek() != ')') throw parse_error(pos_, "expected ')'");
            ++pos_;
            return v;
        }
        if (c == 'q') {
            ++pos_;
            return RatFunc::q();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return RatFunc(Rat(BigInt(digits())));
        }
        throw parse_error(pos_, "expected number, 'q' or '('");
    }

    int integer() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        std::string d = digits();
        long v = std::stol(d);
        return static_cast<int>(neg ? -v : v);
    }

    std::string digits() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw parse_error(pos_, "expected digits");
        return std::string(s_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline RatFunc parse_ratfunc(std::string_view text) {
    return detail::RatFuncParser(text).parse();
}

} // namespace qgx
