#pragma once

// Exact complex rationals for weight input. Strings like "1/3", "-0.25",
// "2.5e-3" parse exactly; doubles convert exactly to their binary value.

#include <cctype>
#include <string>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace biorth {

struct crat {
    rational re{0}, im{0};

    crat() = default;
    crat(rational r, rational i = rational(0)) : re(std::move(r)), im(std::move(i)) {}
    crat(int r) : re(r), im(0) {}

    friend crat operator+(const crat& a, const crat& b) { return {a.re + b.re, a.im + b.im}; }
    friend crat operator-(const crat& a, const crat& b) { return {a.re - b.re, a.im - b.im}; }
    friend crat operator-(const crat& a) { return {-a.re, -a.im}; }
    friend crat operator*(const crat& a, const crat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend crat operator/(const crat& a, const crat& b) {
        rational d = b.re * b.re + b.im * b.im;
        if (d == 0) throw ConfigError("division by zero in exact arithmetic");
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    crat& operator+=(const crat& b) { return *this = *this + b; }
    crat& operator-=(const crat& b) { return *this = *this - b; }
    crat& operator*=(const crat& b) { return *this = *this * b; }
    friend bool operator==(const crat& a, const crat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const crat& a, const crat& b) { return !(a == b); }

    bool is_zero() const { return re == 0 && im == 0; }
};

template <class R>
cplx<R> to_complex(const crat& q) {
    return cplx<R>(from_rational<R>(q.re), from_rational<R>(q.im));
}

// Exact value of a double.
inline rational rational_from_double(double x) {
    return rational(x);
}

// Parses "p/q", decimals and scientific notation exactly.
inline rational parse_rational(const std::string& s0) {
    std::string s;
    for (char ch : s0)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ConfigError("empty number");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        rational num = parse_rational(s.substr(0, slash));
        rational den = parse_rational(s.substr(slash + 1));
        if (den == 0) throw ConfigError("zero denominator in '" + s0 + "'");
        return num / den;
    }
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    mp::cpp_int mant = 0;
    int scale = 0;
    bool digits = false, dot = false;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            mant = mant * 10 + (ch - '0');
            if (dot) --scale;
            digits = true;
        } else if (ch == '.' && !dot) {
            dot = true;
        } else {
            break;
        }
    }
    if (!digits) throw ConfigError("malformed number '" + s0 + "'");
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw ConfigError("malformed number '" + s0 + "'");
        std::size_t used = 0;
        int ex = 0;
        try {
            ex = std::stoi(s.substr(i + 1), &used);
        } catch (...) {
            throw ConfigError("malformed exponent in '" + s0 + "'");
        }
        if (i + 1 + used != s.size()) throw ConfigError("malformed number '" + s0 + "'");
        scale += ex;
    }
    rational q(mant);
    mp::cpp_int ten = 10;
    if (scale > 0) q *= rational(mp::pow(ten, unsigned(scale)));
    if (scale < 0) q /= rational(mp::pow(ten, unsigned(-scale)));
    return neg ? rational(-q) : q;
}

inline bool is_nonnegative_integer(const crat& q) {
    return q.im == 0 && q.re >= 0 && mp::denominator(q.re) == 1;
}

inline bool is_integer(const crat& q) {
    return q.im == 0 && mp::denominator(q.re) == 1;
}

inline std::string to_string(const rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

}  // namespace biorth
