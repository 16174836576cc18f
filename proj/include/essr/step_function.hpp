#pragma once

#include "essr/errors.hpp"
#include "essr/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace essr {

/// Exact carrier: rational breakpoints, complex-rational values.
struct ExactField {
    using Point = Rational;
    using Value = QComplex;
    static constexpr bool exact = true;
};

/// Floating carrier for smooth maps. Breakpoints are dyadic rationals on the
/// 2^-40 grid stored as doubles; values are complex doubles.
struct FloatField {
    using Point = double;
    using Value = std::complex<double>;
    static constexpr bool exact = false;
};

/// Right-continuous step function on [0,1]: value_j on [b_j, b_{j+1}).
template <class Field>
class BasicStepFunction {
public:
    using field_type = Field;
    using Point = typename Field::Point;
    using Value = typename Field::Value;

    BasicStepFunction() : breaks_{Point(0), Point(1)}, values_{Value(0)} {}

    BasicStepFunction(std::vector<Point> breaks, std::vector<Value> values)
        : breaks_(std::move(breaks)), values_(std::move(values)) {
        if (breaks_.size() < 2 || values_.size() + 1 != breaks_.size())
            throw ValidationError("step function needs n+1 breakpoints for n values");
        for (auto& b : breaks_) canonicalize(b);
        if (breaks_.front() != Point(0) || breaks_.back() != Point(1))
            throw ValidationError("step function breakpoints must start at 0 and end at 1");
        for (std::size_t i = 1; i < breaks_.size(); ++i)
            if (!(breaks_[i - 1] < breaks_[i])) throw ValidationError("step function breakpoints must increase strictly");
    }

    static BasicStepFunction constant(Value c) { return BasicStepFunction({Point(0), Point(1)}, {std::move(c)}); }

    /// c * 1_[lo, hi).
    static BasicStepFunction indicator(const Point& lo, const Point& hi, Value c = Value(1)) {
        if (!(Point(0) <= lo && lo < hi && hi <= Point(1)))
            throw ValidationError("indicator interval must satisfy 0 <= lo < hi <= 1");
        std::vector<Point> b{Point(0)};
        std::vector<Value> v;
        if (Point(0) < lo) {
            b.push_back(lo);
            v.push_back(Value(0));
        }
        b.push_back(hi);
        v.push_back(c);
        if (hi < Point(1)) {
            b.push_back(Point(1));
            v.push_back(Value(0));
        }
        return BasicStepFunction(std::move(b), std::move(v));
    }

    [[nodiscard]] const std::vector<Point>& breakpoints() const noexcept { return breaks_; }
    [[nodiscard]] const std::vector<Value>& values() const noexcept { return values_; }
    [[nodiscard]] std::size_t pieces() const noexcept { return values_.size(); }
    [[nodiscard]] const Point& lo(std::size_t i) const { return breaks_[i]; }
    [[nodiscard]] const Point& hi(std::size_t i) const { return breaks_[i + 1]; }
    [[nodiscard]] Point length(std::size_t i) const { return Point(breaks_[i + 1] - breaks_[i]); }

    /// Index of the piece containing x, with x = 1 mapped to the last piece.
    [[nodiscard]] std::size_t piece_index(const Point& x) const {
        if (x < Point(0) || Point(1) < x) throw DomainError("step function evaluated outside [0,1]");
        auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
        auto idx = static_cast<std::size_t>(it - breaks_.begin());
        return std::min(idx == 0 ? 0 : idx - 1, values_.size() - 1);
    }

    [[nodiscard]] const Value& operator()(const Point& x) const { return values_[piece_index(x)]; }

    /// Merges adjacent pieces with equal values.
    [[nodiscard]] BasicStepFunction canonical() const {
        std::vector<Point> b{breaks_.front()};
        std::vector<Value> v{values_.front()};
        for (std::size_t i = 1; i < values_.size(); ++i) {
            if (values_[i] == v.back()) continue;
            b.push_back(breaks_[i]);
            v.push_back(values_[i]);
        }
        b.push_back(breaks_.back());
        return BasicStepFunction(std::move(b), std::move(v), Unchecked{});
    }

    [[nodiscard]] bool is_zero() const {
        return std::all_of(values_.begin(), values_.end(), [](const Value& v) { return essr::is_zero(v); });
    }

    struct Unchecked {};
    BasicStepFunction(std::vector<Point> breaks, std::vector<Value> values, Unchecked)
        : breaks_(std::move(breaks)), values_(std::move(values)) {}

private:
    std::vector<Point> breaks_;
    std::vector<Value> values_;
};

using StepFunction = BasicStepFunction<ExactField>;
using FloatStepFunction = BasicStepFunction<FloatField>;

/// Equality as functions (canonical forms compared).
template <class F>
bool same_function(const BasicStepFunction<F>& a, const BasicStepFunction<F>& b) {
    auto ca = a.canonical();
    auto cb = b.canonical();
    return ca.breakpoints() == cb.breakpoints() && ca.values() == cb.values();
}

/// Pointwise op(f, g) on the common refinement, canonicalized.
template <class F, class Op>
BasicStepFunction<F> merge(const BasicStepFunction<F>& f, const BasicStepFunction<F>& g, Op op) {
    using Point = typename F::Point;
    using Value = typename F::Value;
    const auto& fb = f.breakpoints();
    const auto& gb = g.breakpoints();
    std::vector<Point> b{Point(0)};
    std::vector<Value> v;
    b.reserve(fb.size() + gb.size());
    v.reserve(fb.size() + gb.size());
    std::size_t i = 0, j = 0;
    while (i < f.pieces() && j < g.pieces()) {
        Value val = op(f.values()[i], g.values()[j]);
        const Point& fe = fb[i + 1];
        const Point& ge = gb[j + 1];
        const Point& end = fe < ge ? fe : ge;
        if (!v.empty() && v.back() == val) {
            b.back() = end;
        } else {
            v.push_back(std::move(val));
            b.push_back(end);
        }
        bool adv_f = !(ge < fe);
        bool adv_g = !(fe < ge);
        if (adv_f) ++i;
        if (adv_g) ++j;
    }
    return BasicStepFunction<F>(std::move(b), std::move(v), typename BasicStepFunction<F>::Unchecked{});
}

template <class F>
BasicStepFunction<F> operator+(const BasicStepFunction<F>& f, const BasicStepFunction<F>& g) {
    return merge(f, g, [](const auto& a, const auto& b) { return a + b; });
}

template <class F>
BasicStepFunction<F> operator-(const BasicStepFunction<F>& f, const BasicStepFunction<F>& g) {
    return merge(f, g, [](const auto& a, const auto& b) { return a - b; });
}

template <class F>
BasicStepFunction<F> operator*(const BasicStepFunction<F>& f, const BasicStepFunction<F>& g) {
    return merge(f, g, [](const auto& a, const auto& b) { return a * b; });
}

template <class F>
BasicStepFunction<F> scale(const BasicStepFunction<F>& f, const typename F::Value& c) {
    if (essr::is_zero(c)) return BasicStepFunction<F>::constant(typename F::Value(0));
    std::vector<typename F::Value> v;
    v.reserve(f.pieces());
    for (const auto& x : f.values()) v.push_back(c * x);
    return BasicStepFunction<F>(f.breakpoints(), std::move(v), typename BasicStepFunction<F>::Unchecked{});
}

template <class F>
BasicStepFunction<F> conj(const BasicStepFunction<F>& f) {
    std::vector<typename F::Value> v;
    v.reserve(f.pieces());
    for (const auto& x : f.values()) v.push_back(conj_value(x));
    return BasicStepFunction<F>(f.breakpoints(), std::move(v), typename BasicStepFunction<F>::Unchecked{});
}

/// sum_i coeffs[i] * fs[i]. Throws ValidationError on empty or mismatched lists.
template <class F>
BasicStepFunction<F> combine(std::span<const typename F::Value> coeffs, std::span<const BasicStepFunction<F>> fs) {
    if (coeffs.empty() || coeffs.size() != fs.size())
        throw ValidationError("combine needs equally many coefficients and functions (at least one)");
    auto acc = scale(fs[0], coeffs[0]);
    for (std::size_t i = 1; i < fs.size(); ++i)
        acc = merge(acc, fs[i], [&c = coeffs[i]](const auto& a, const auto& b) { return a + c * b; });
    return acc;
}

template <class F>
BasicStepFunction<F> combine(const std::vector<typename F::Value>& coeffs, const std::vector<BasicStepFunction<F>>& fs) {
    return combine<F>(std::span<const typename F::Value>(coeffs), std::span<const BasicStepFunction<F>>(fs));
}

template <class F>
typename F::Value integrate(const BasicStepFunction<F>& f) {
    typename F::Value acc(0);
    for (std::size_t i = 0; i < f.pieces(); ++i) acc += f.values()[i] * f.length(i);
    return acc;
}

/// Integral over [lo, hi) ⊆ [0,1].
template <class F>
typename F::Value integrate_over(const BasicStepFunction<F>& f, const typename F::Point& lo, const typename F::Point& hi) {
    using Point = typename F::Point;
    typename F::Value acc(0);
    if (!(lo < hi)) return acc;
    std::size_t i = f.piece_index(lo);
    for (; i < f.pieces() && f.lo(i) < hi; ++i) {
        const Point& a = f.lo(i) < lo ? lo : f.lo(i);
        const Point& b = hi < f.hi(i) ? hi : f.hi(i);
        if (a < b) acc += f.values()[i] * Point(b - a);
    }
    return acc;
}

/// L^p norm; pass infinity for the sup norm. Throws DomainError for p < 1.
template <class F>
double lp_norm(const BasicStepFunction<F>& f, double p) {
    if (!(p >= 1.0)) throw DomainError("L^p norm requires p >= 1");
    if (std::isinf(p)) {
        double m = 0;
        for (const auto& v : f.values()) m = std::max(m, magnitude(v));
        return m;
    }
    double acc = 0;
    for (std::size_t i = 0; i < f.pieces(); ++i) {
        double a = magnitude(f.values()[i]);
        if (a == 0) continue;
        acc += (p == 1.0 ? a : (p == 2.0 ? a * a : std::pow(a, p))) * to_double(f.length(i));
    }
    return p == 1.0 ? acc : std::pow(acc, 1.0 / p);
}

/// <f, g> = ∫ f conj(g) dm on the common refinement.
template <class F>
typename F::Value inner_product(const BasicStepFunction<F>& f, const BasicStepFunction<F>& g) {
    using Point = typename F::Point;
    typename F::Value acc(0);
    const auto& fb = f.breakpoints();
    const auto& gb = g.breakpoints();
    std::size_t i = 0, j = 0;
    Point start(0);
    while (i < f.pieces() && j < g.pieces()) {
        const Point& fe = fb[i + 1];
        const Point& ge = gb[j + 1];
        const Point& end = fe < ge ? fe : ge;
        if (!is_zero(f.values()[i]) && !is_zero(g.values()[j]))
            acc += f.values()[i] * conj_value(g.values()[j]) * Point(end - start);
        start = end;
        bool adv_f = !(ge < fe);
        bool adv_g = !(fe < ge);
        if (adv_f) ++i;
        if (adv_g) ++j;
    }
    return acc;
}

/// f * 1_[lo, hi).
template <class F>
BasicStepFunction<F> restrict_to(const BasicStepFunction<F>& f, const typename F::Point& lo, const typename F::Point& hi) {
    return f * BasicStepFunction<F>::indicator(lo, hi);
}

FloatStepFunction to_float(const StepFunction& f);
/// Exact conversion (doubles are dyadic rationals).
StepFunction to_exact(const FloatStepFunction& f);

/// x ↦ f(a·x + b) where a·x + b ∈ [0,1], and 0 elsewhere. a ≠ 0. For a < 0 the
/// result is returned as its right-continuous representative.
StepFunction compose_affine(const StepFunction& f, const Rational& a, const Rational& b);

}  // namespace essr
