#pragma once

// Fixed-digit MPFR floats and a minimal complex type over them. Each digit
// count is its own type, so there is no shared precision state.

#include <complex>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace sint {

template <unsigned Digits>
using Float = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits>,
                                            boost::multiprecision::et_off>;

template <unsigned Digits>
struct BigComplex {
    Float<Digits> re{0};
    Float<Digits> im{0};

    BigComplex() = default;
    BigComplex(Float<Digits> r, Float<Digits> i = Float<Digits>(0)) : re(std::move(r)), im(std::move(i)) {}

    template <unsigned Other>
    static BigComplex convert(const BigComplex<Other>& z) {
        return {Float<Digits>(z.re), Float<Digits>(z.im)};
    }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator*(const BigComplex& a, const Float<Digits>& s) { return {a.re * s, a.im * s}; }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        const Float<Digits> d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
    BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }

    Float<Digits> norm() const { return re * re + im * im; }
    Float<Digits> abs() const { return sqrt(norm()); }
    BigComplex conj() const { return {re, -im}; }

    std::complex<double> to_double() const { return {re.template convert_to<double>(), im.template convert_to<double>()}; }
    std::complex<long double> to_long_double() const {
        return {re.template convert_to<long double>(), im.template convert_to<long double>()};
    }
};

}  // namespace sint
