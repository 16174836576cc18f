#include "essr/observables.hpp"

#include "essr/errors.hpp"

#include <algorithm>
#include <cmath>

namespace essr {

FloatStepFunction to_float(const StepFunction& f) {
    std::vector<double> b;
    std::vector<std::complex<double>> v;
    for (const auto& x : f.breakpoints()) b.push_back(to_double(x));
    for (const auto& x : f.values()) v.push_back(x.to_complex());
    return FloatStepFunction(std::move(b), std::move(v));
}

StepFunction to_exact(const FloatStepFunction& f) {
    std::vector<Rational> b;
    std::vector<QComplex> v;
    for (double x : f.breakpoints()) b.push_back(rational_from_double(x));
    for (const auto& x : f.values()) v.emplace_back(rational_from_double(x.real()), rational_from_double(x.imag()));
    return StepFunction(std::move(b), std::move(v));
}

StepFunction compose_affine(const StepFunction& f, const Rational& a, const Rational& b) {
    if (sgn(a) == 0) throw DomainError("compose_affine needs a nonzero slope");
    // Preimage of [0,1] under x ↦ a·x + b, clipped to [0,1].
    Rational p = (Rational(0) - b) / a, q = (Rational(1) - b) / a;
    if (q < p) std::swap(p, q);
    Rational lo = std::max(p, Rational(0)), hi = std::min(q, Rational(1));

    struct Piece {
        Rational lo, hi;
        QComplex value;
    };
    std::vector<Piece> pieces;
    if (lo < hi) {
        for (std::size_t j = 0; j < f.pieces(); ++j) {
            Rational x0 = (f.lo(j) - b) / a, x1 = (f.hi(j) - b) / a;
            if (x1 < x0) std::swap(x0, x1);
            x0 = std::max(x0, lo);
            x1 = std::min(x1, hi);
            if (x0 < x1) pieces.push_back({x0, x1, f.values()[j]});
        }
        if (sgn(a) < 0) std::reverse(pieces.begin(), pieces.end());
    }
    std::vector<Rational> breaks{Rational(0)};
    std::vector<QComplex> values;
    auto push = [&](const Rational& end, const QComplex& v) {
        if (!values.empty() && values.back() == v)
            breaks.back() = end;
        else {
            values.push_back(v);
            breaks.push_back(end);
        }
    };
    if (0 < lo) push(lo, QComplex(0));
    for (const auto& pc : pieces) push(pc.hi, pc.value);
    if (hi < 1) push(Rational(1), QComplex(0));
    return StepFunction(std::move(breaks), std::move(values));
}

namespace {

// One step f ↦ f∘T. InverseFn(i, y) returns sᵢ(y) as a Point.
template <class F, class Domain, class Image, class InverseFn>
BasicStepFunction<F> pullback_once(const BasicStepFunction<F>& f, std::size_t branches, Domain domain, Image image,
                                   const std::vector<bool>& decreasing, InverseFn inv, const Limits& limits) {
    using Point = typename F::Point;
    using Value = typename F::Value;
    std::vector<Point> breaks{Point(0)};
    std::vector<Value> values;
    breaks.reserve(branches * f.pieces() + 1);
    values.reserve(branches * f.pieces());
    auto push = [&](const Point& end, const Value& v) {
        if (!(breaks.back() < end)) return;
        if (!values.empty() && values.back() == v)
            breaks.back() = end;
        else {
            values.push_back(v);
            breaks.push_back(end);
        }
    };
    for (std::size_t i = 0; i < branches; ++i) {
        auto [dlo, dhi] = domain(i);
        auto [ilo, ihi] = image(i);
        // Pieces of f meeting the branch image, in y order.
        const std::size_t first = f.piece_index(ilo);
        std::size_t last = first;
        while (last < f.pieces() && f.lo(last) < ihi) ++last;
        if (!decreasing[i]) {
            for (std::size_t s = first; s < last; ++s) push(s + 1 == last ? dhi : inv(i, f.hi(s)), f.values()[s]);
        } else {
            // y increasing ↔ x decreasing: walk the pieces backwards.
            for (std::size_t s = last; s-- > first;) push(s == first ? dhi : inv(i, f.lo(s)), f.values()[s]);
        }
        if (values.size() > limits.cylinder_cap)
            throw ResourceError("pullback exceeds the piece cap of " + std::to_string(limits.cylinder_cap));
        (void)dlo;
    }
    return BasicStepFunction<F>(std::move(breaks), std::move(values), typename BasicStepFunction<F>::Unchecked{});
}

}  // namespace

StepFunction pullback(const PiecewiseMap& map, const StepFunction& f, int ell, const Limits& limits) {
    if (ell < 0) throw DomainError("pullback needs l >= 0");
    const auto& lm = map.linear();
    std::vector<bool> dec;
    for (const auto& b : lm.branches) dec.push_back(sgn(b.slope) < 0);
    auto domain = [&](std::size_t i) { return std::pair{lm.branches[i].domain.lo, lm.branches[i].domain.hi}; };
    auto image = [&](std::size_t i) { return std::pair{lm.branches[i].image.lo, lm.branches[i].image.hi}; };
    auto inv = [&](std::size_t i, const Rational& y) { return lm.branches[i].inverse(y); };
    StepFunction out = f.canonical();
    for (int l = 0; l < ell; ++l) out = pullback_once(out, lm.branches.size(), domain, image, dec, inv, limits);
    return out;
}

FloatStepFunction pullback(const PiecewiseMap& map, const FloatStepFunction& f, int ell, const Limits& limits) {
    if (ell < 0) throw DomainError("pullback needs l >= 0");
    std::vector<bool> dec(map.branch_count(), false);
    if (map.is_linear())
        for (std::size_t i = 0; i < map.branch_count(); ++i) dec[i] = sgn(map.linear().branches[i].slope) < 0;
    else if (map.smooth().offsets.back() != 1.0)
        throw ValidationError("pullback needs branch domains that tile [0,1)");
    auto domain = [&](std::size_t i) { return std::pair{map.domain_lo(i), map.domain_hi(i)}; };
    auto image = [&](std::size_t i) { return std::pair{map.image_lo(i), map.image_hi(i)}; };
    auto inv = [&](std::size_t i, double y) { return snap_breakpoint(map.inverse_branch(i, y)); };
    FloatStepFunction out = f.canonical();
    for (int l = 0; l < ell; ++l) out = pullback_once(out, map.branch_count(), domain, image, dec, inv, limits);
    return out;
}

SampledObservable::SampledObservable(std::vector<std::complex<double>> samples, Interpolation interp)
    : samples_(std::move(samples)), interp_(interp) {
    if (samples_.size() < 2) throw ValidationError("sampled observable needs N >= 2");
}

std::complex<double> SampledObservable::operator()(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("sampled observable evaluated outside [0,1]");
    const std::size_t n = samples_.size();
    if (interp_ == Interpolation::PiecewiseConstant)
        return samples_[std::min(n - 1, static_cast<std::size_t>(x * static_cast<double>(n)))];
    double t = x * static_cast<double>(n - 1);
    std::size_t j = std::min(n - 2, static_cast<std::size_t>(t));
    double u = t - static_cast<double>(j);
    return (1.0 - u) * samples_[j] + u * samples_[j + 1];
}

std::complex<double> SampledObservable::integral_over(double lo, double hi) const {
    std::complex<double> acc = 0;
    if (!(lo < hi)) return acc;
    const std::size_t n = samples_.size();
    if (interp_ == Interpolation::PiecewiseConstant) {
        const double h = 1.0 / static_cast<double>(n);
        std::size_t j = std::min(n - 1, static_cast<std::size_t>(lo * static_cast<double>(n)));
        for (; j < n && j * h < hi; ++j) {
            double a = std::max(lo, j * h), b = std::min(hi, (j + 1) * h);
            if (a < b) acc += samples_[j] * (b - a);
        }
        return acc;
    }
    const double h = 1.0 / static_cast<double>(n - 1);
    std::size_t j = std::min(n - 2, static_cast<std::size_t>(lo * static_cast<double>(n - 1)));
    for (; j + 1 < n && j * h < hi; ++j) {
        double a = std::max(lo, j * h), b = std::min(hi, (j + 1) * h);
        if (a < b) acc += 0.5 * ((*this)(a) + (*this)(b)) * (b - a);
    }
    return acc;
}

std::complex<double> SampledObservable::integral() const { return integral_over(0.0, 1.0); }

Quantization quantize(const SampledObservable& f, int level) {
    if (level < 1 || level > 30) throw DomainError("quantization level must lie in [1, 30]");
    const std::size_t cells = std::size_t{1} << level;
    const double h = std::ldexp(1.0, -level);
    std::vector<double> b(cells + 1);
    std::vector<std::complex<double>> v(cells);
    double err = 0;
    const std::size_t n = f.grid();
    for (std::size_t c = 0; c < cells; ++c) {
        double lo = c * h, hi = (c + 1) * h;
        b[c] = lo;
        v[c] = f.integral_over(lo, hi) / h;
        // The interpolant is monotone between its nodes, so extremes sit at
        // cell ends or at nodes inside the cell.
        err = std::max({err, std::abs(f(lo) - v[c]), std::abs(f(std::min(hi, 1.0)) - v[c])});
        double scale = f.interpolation() == Interpolation::PiecewiseConstant ? static_cast<double>(n)
                                                                             : static_cast<double>(n - 1);
        for (auto k = static_cast<std::size_t>(std::ceil(lo * scale)); k / scale < hi; ++k) {
            double x = k / scale;
            err = std::max(err, std::abs(f(x) - v[c]));
            if (f.interpolation() == Interpolation::PiecewiseConstant && x > 0)
                err = std::max(err, std::abs(f(std::nextafter(x, 0.0)) - v[c]));
        }
    }
    b[cells] = 1.0;
    return {FloatStepFunction(std::move(b), std::move(v)).canonical(), err};
}

}  // namespace essr
