#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>

namespace biorth {

namespace mp = boost::multiprecision;

template <unsigned Bits>
using real_mp = mp::number<mp::cpp_bin_float<Bits, mp::digit_base_2>, mp::et_off>;

template <unsigned Bits>
using complex_mp = mp::number<mp::complex_adaptor<mp::cpp_bin_float<Bits, mp::digit_base_2>>, mp::et_off>;

using real53 = double;
using real128 = real_mp<128>;
using real256 = real_mp<256>;

template <class R>
struct complex_of {
    using type = std::complex<R>;
};

template <unsigned Bits>
struct complex_of<real_mp<Bits>> {
    using type = complex_mp<Bits>;
};

template <class R>
using cplx = typename complex_of<R>::type;

using rational = mp::cpp_rational;

template <class R>
inline int bits_of() {
    return std::numeric_limits<R>::digits;
}

template <class R>
inline R eps_of() {
    return std::numeric_limits<R>::epsilon();
}

template <class R>
inline R pi_of() {
    return boost::math::constants::pi<R>();
}

// 2^e in R, e may be negative
template <class R>
inline R pow2(int e) {
    using std::ldexp;
    return ldexp(R(1), e);
}

template <class R>
inline R from_rational(const rational& q) {
    if constexpr (std::is_same_v<R, double>)
        return q.convert_to<double>();
    else
        return R(q);
}

template <class R>
inline cplx<R> make_c(const R& re, const R& im = R(0)) {
    return cplx<R>(re, im);
}

template <class C>
inline auto re(const C& z) {
    using std::real;
    return real(z);
}

template <class C>
inline auto im(const C& z) {
    using std::imag;
    return imag(z);
}

template <class R>
inline double to_double(const R& x) {
    if constexpr (std::is_same_v<R, double>)
        return x;
    else
        return x.template convert_to<double>();
}

// Shortest round-trip digits for R, e.g. 17 for double, 40 for 128 bits.
template <class R>
inline int decimal_digits() {
    return std::numeric_limits<R>::max_digits10;
}

template <class R>
inline std::string to_decimal(const R& x, int digits = decimal_digits<R>()) {
    std::ostringstream os;
    os.precision(digits);
    os << std::scientific << x;
    return os.str();
}

template <class R>
inline R from_string(const std::string& s) {
    if constexpr (std::is_same_v<R, double>)
        return std::stod(s);
    else
        return R(s);
}

// Relative difference |a-b| / max(|a|,|b|,floor).
template <class C, class R>
inline R rel_diff(const C& a, const C& b, const R& floor) {
    using std::abs;
    using std::max;
    R s = max(max(R(abs(a)), R(abs(b))), floor);
    return R(abs(a - b)) / s;
}

}  // namespace biorth
