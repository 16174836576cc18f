#pragma once

#include "essr/fixtures.hpp"
#include "essr/interval_maps.hpp"
#include "essr/step_function.hpp"

#include <doctest.h>

namespace testing {

using essr::QComplex;
using essr::Rational;
using essr::StepFunction;

inline Rational q(long a, long b = 1) { return essr::ratio(a, b); }

inline StepFunction step(std::vector<Rational> breaks, std::vector<QComplex> values) {
    return StepFunction(std::move(breaks), std::move(values));
}

inline StepFunction indicator(const Rational& lo, const Rational& hi, QComplex c = QComplex(1)) {
    return StepFunction::indicator(lo, hi, std::move(c));
}

// ψ = 1_[0,½) − 1_[½,1)
inline StepFunction d2_psi() { return step({q(0), q(1, 2), q(1)}, {QComplex(1), QComplex(-1)}); }

// ψ = 2·1_[0,½) − 4·1_[½,¾)
inline StepFunction l3_psi() { return step({q(0), q(1, 2), q(3, 4), q(1)}, {QComplex(2), QComplex(-4), QComplex(0)}); }

}  // namespace testing

#include "../oracles.hpp"

namespace testing {

inline std::vector<std::complex<double>> oracle_values(const StepFunction& f) {
    return oracle::piece_values(f, Rational(0), Rational(1));
}

}  // namespace testing
