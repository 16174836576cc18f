#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace essr {

using Rational = mpq_class;

/// Parses "p/q", "p", or a finite decimal such as "-0.45" into an exact
/// rational. Throws ValidationError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

/// num/den in lowest terms.
inline Rational ratio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}
inline void canonicalize(Rational& q) { q.canonicalize(); }
inline void canonicalize(double&) {}

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

/// Rounds x to the nearest multiple of 2^-40. The result is an exact dyadic
/// rational still representable as a double; used for breakpoints produced by
/// smooth inverse branches.
double snap_breakpoint(double x);

inline constexpr double kSnapQuantum = 0x1p-40;

/// Complex number with exact rational parts.
struct QComplex {
    Rational re;
    Rational im;

    QComplex() : re(0), im(0) {}
    QComplex(Rational r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    QComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    QComplex(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
    QComplex(int v) : re(v), im(0) {}   // NOLINT(google-explicit-constructor)

    [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    [[nodiscard]] QComplex conj() const { return {re, -im}; }
    [[nodiscard]] Rational norm2() const { return re * re + im * im; }
    [[nodiscard]] std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    QComplex& operator+=(const QComplex& o) {
        re += o.re;
        if (sgn(o.im) != 0) im += o.im;
        return *this;
    }
    QComplex& operator-=(const QComplex& o) {
        re -= o.re;
        if (sgn(o.im) != 0) im -= o.im;
        return *this;
    }
    QComplex& operator*=(const Rational& s) {
        re *= s;
        if (sgn(im) != 0) im *= s;
        return *this;
    }
};

inline QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
inline QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
inline QComplex operator-(const QComplex& a) { return {-a.re, -a.im}; }
inline QComplex operator*(const QComplex& a, const QComplex& b) {
    if (sgn(b.im) == 0) return {a.re * b.re, sgn(a.im) == 0 ? Rational(0) : Rational(a.im * b.re)};
    if (sgn(a.im) == 0) return {a.re * b.re, a.re * b.im};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline QComplex operator*(QComplex a, const Rational& s) { return a *= s; }
inline QComplex operator*(const Rational& s, QComplex a) { return a *= s; }
inline bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }

/// Lexicographic (re, im) order, for use as a set key.
inline bool operator<(const QComplex& a, const QComplex& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
}

/// Throws DomainError for zero.
QComplex inverse(const QComplex& a);
QComplex power(const QComplex& a, long exponent);

/// |a| when it is rational (norm² a perfect square), otherwise nullopt.
std::optional<Rational> exact_magnitude(const QComplex& a);

inline double magnitude(const QComplex& a) { return std::abs(a.to_complex()); }
inline double magnitude(const std::complex<double>& a) { return std::abs(a); }
inline std::complex<double> to_complex(const QComplex& a) { return a.to_complex(); }
inline std::complex<double> to_complex(const std::complex<double>& a) { return a; }
inline bool is_zero(const QComplex& a) { return a.is_zero(); }
inline bool is_zero(const std::complex<double>& a) { return a == std::complex<double>{}; }
inline QComplex conj_value(const QComplex& a) { return a.conj(); }
inline std::complex<double> conj_value(const std::complex<double>& a) { return std::conj(a); }

/// Parses a complex literal: "a", "a+bi", "a-bi", "bi", where a, b are
/// rationals or decimals ("0.4i", "-9/20", "3/10+1/5i").
QComplex parse_qcomplex(std::string_view text);
std::string to_string(const QComplex& z);

}  // namespace essr
