#pragma once

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nilcalc {

/// Exact arbitrary-precision rational, the reference scalar. All identity
/// suites run over this type; `double` is the opt-in tolerance-based mode.
using Rational = mpq_class;

/// mpq_class(n, d) does not canonicalize on its own.
inline Rational make_rational(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename S>
concept Scalar = requires(S a, S b) {
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { -a } -> std::convertible_to<S>;
    { a == b } -> std::convertible_to<bool>;
    S{0};
};

template <Scalar S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_long(long v) { return Rational(v); }
    static Rational from_parts(long long n, long long d) { return make_rational(n, d); }
    static bool is_zero(const Rational& v) { return sgn(v) == 0; }
    // Exact mode ignores the tolerance.
    static bool eq(const Rational& a, const Rational& b, double) { return a == b; }
    static Rational div(const Rational& a, const Rational& b) {
        if (sgn(b) == 0) throw Error("division by zero");
        return a / b;
    }
    static std::string str(const Rational& v) { return v.get_str(); }
    static double to_double(const Rational& v) { return v.get_d(); }
    static Rational abs(const Rational& v) { return sgn(v) < 0 ? Rational(-v) : v; }
    static bool less(const Rational& a, const Rational& b) { return a < b; }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_long(long v) { return static_cast<double>(v); }
    static double from_parts(long long n, long long d) {
        return static_cast<double>(n) / static_cast<double>(d);
    }
    static bool is_zero(double v) { return v == 0.0; }
    static bool eq(double a, double b, double tol) { return std::fabs(a - b) <= tol; }
    static double div(double a, double b) { return a / b; }
    static std::string str(double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }
    static double to_double(double v) { return v; }
    static double abs(double v) { return std::fabs(v); }
    static bool less(double a, double b) { return a < b; }
};

}  // namespace nilcalc
