#include "essr/rational.hpp"

#include "essr/errors.hpp"

#include <cctype>
#include <cmath>

namespace essr {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    if (s.empty()) throw ValidationError("empty rational literal");

    bool negative = false;
    std::string_view body = s;
    if (body.front() == '+' || body.front() == '-') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational out;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw ValidationError("malformed rational '" + s + "'");
        mpz_class d{std::string(den), 10};
        if (d == 0) throw ValidationError("zero denominator in '" + s + "'");
        out = Rational(mpz_class(std::string(num), 10), d);
    } else {
        std::string_view mant = body;
        long exp10 = 0;
        if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
            mant = body.substr(0, e);
            std::string ex(body.substr(e + 1));
            try {
                std::size_t used = 0;
                exp10 = std::stol(ex, &used);
                if (used != ex.size()) throw ValidationError("malformed exponent in '" + s + "'");
            } catch (const std::logic_error&) {
                throw ValidationError("malformed exponent in '" + s + "'");
            }
        }
        std::string digits;
        auto dot = mant.find('.');
        if (dot == std::string_view::npos) {
            digits = std::string(mant);
        } else {
            digits = std::string(mant.substr(0, dot)) + std::string(mant.substr(dot + 1));
            exp10 -= static_cast<long>(mant.size() - dot - 1);
        }
        if (!all_digits(digits)) throw ValidationError("malformed number '" + s + "'");
        mpz_class n(digits, 10);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
        out = exp10 >= 0 ? Rational(n * scale) : Rational(n, scale);
    }
    out.canonicalize();
    return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("non-finite value cannot be converted to a rational");
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

double snap_breakpoint(double x) { return std::nearbyint(x / kSnapQuantum) * kSnapQuantum; }

QComplex inverse(const QComplex& a) {
    Rational n = a.norm2();
    if (sgn(n) == 0) throw DomainError("inverse of zero");
    return {a.re / n, -a.im / n};
}

QComplex power(const QComplex& a, long exponent) {
    if (exponent < 0) return power(inverse(a), -exponent);
    QComplex result(1);
    QComplex base = a;
    unsigned long e = static_cast<unsigned long>(exponent);
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

QComplex parse_qcomplex(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ValidationError("empty complex literal");
    if (s.back() != 'i' && s.back() != 'j') return {parse_rational(s), 0};

    s.pop_back();
    // Split at the last sign that is not the leading one and not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imag_of = [](std::string part) {
        if (part.empty() || part == "+") return Rational(1);
        if (part == "-") return Rational(-1);
        return parse_rational(part);
    };
    if (split == std::string::npos) return {0, imag_of(s)};
    return {parse_rational(s.substr(0, split)), imag_of(s.substr(split))};
}

std::optional<Rational> exact_magnitude(const QComplex& a) {
    if (sgn(a.im) == 0) return abs(a.re);
    if (sgn(a.re) == 0) return abs(a.im);
    Rational n2 = a.norm2();
    if (!mpz_perfect_square_p(n2.get_num_mpz_t()) || !mpz_perfect_square_p(n2.get_den_mpz_t())) return std::nullopt;
    mpz_class num, den;
    mpz_sqrt(num.get_mpz_t(), n2.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), n2.get_den_mpz_t());
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const QComplex& z) {
    if (sgn(z.im) == 0) return to_string(z.re);
    std::string im = to_string(z.im) + "i";
    if (sgn(z.re) == 0) return im;
    return to_string(z.re) + (sgn(z.im) > 0 ? "+" : "") + im;
}

}  // namespace essr
