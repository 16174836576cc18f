#include "essr/interval_maps.hpp"

#include "essr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace essr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t find_linear_branch(const LinearMarkov& lm, const Rational& x) {
    auto it = std::upper_bound(lm.branches.begin(), lm.branches.end(), x,
                               [](const Rational& v, const LinearBranch& b) { return v < b.domain.lo; });
    return static_cast<std::size_t>(it - lm.branches.begin()) - 1;
}

std::size_t find_smooth_branch(const SmoothFullBranch& sm, double x) {
    auto it = std::upper_bound(sm.offsets.begin(), sm.offsets.end(), x);
    auto idx = static_cast<std::size_t>(it - sm.offsets.begin());
    idx = idx == 0 ? 0 : idx - 1;
    return std::min(idx, sm.weights.size() - 1);
}

// Solves sᵢ(t) = y for t in [0,1] by bisection; sᵢ is increasing.
double invert_smooth_branch(const SmoothFullBranch& sm, std::size_t i, double y, double tol) {
    double lo = 0.0, hi = 1.0;
    const auto& w = sm.weights[i];
    const double a = sm.offsets[i];
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (a + w.antiderivative(mid) <= y)
            lo = mid;
        else
            hi = mid;
    }
    double t = 0.5 * (lo + hi);
    // Newton polish to machine precision.
    for (int it = 0; it < 3; ++it) {
        double d = w(t);
        if (!(d > 0)) break;
        double next = t - (a + w.antiderivative(t) - y) / d;
        if (!(next >= lo && next <= hi)) break;
        t = next;
    }
    return t;
}

}  // namespace

Interval::Interval(Rational l, Rational h, bool cl, bool cr)
    : lo(std::move(l)), hi(std::move(h)), closed_left(cl), closed_right(cr) {
    lo.canonicalize();
    hi.canonicalize();
    if (!(0 <= lo && lo < hi && hi <= 1)) throw ValidationError("interval must satisfy 0 <= lo < hi <= 1");
}

LinearBranch make_linear_branch(const Rational& lo, const Rational& hi, const Rational& slope, const Rational& offset) {
    if (abs(slope) <= 1) throw ValidationError("linear branch slope must satisfy |slope| > 1");
    Interval domain(lo, hi);
    Rational a = slope * lo + offset;
    Rational b = slope * hi + offset;
    if (b < a) std::swap(a, b);
    if (a < 0 || b > 1)
        throw ValidationError("branch on [" + to_string(lo) + ", " + to_string(hi) + ") maps outside [0,1]");
    return LinearBranch{domain, slope, offset, Interval(a, b)};
}

WeightFunction WeightFunction::constant(double c) { return WeightFunction(Kind::Constant, {c}); }

WeightFunction WeightFunction::fourier(std::vector<double> coeffs) {
    if (coeffs.empty()) throw ValidationError("fourier weight needs at least the mean coefficient");
    if (coeffs.size() % 2 == 0) coeffs.push_back(0.0);
    return WeightFunction(Kind::Fourier, std::move(coeffs));
}

double WeightFunction::operator()(double x) const {
    double v = coeffs_[0];
    for (std::size_t k = 1; 2 * k <= coeffs_.size() - 1; ++k) {
        double arg = kTwoPi * static_cast<double>(k) * x;
        v += coeffs_[2 * k - 1] * std::cos(arg) + coeffs_[2 * k] * std::sin(arg);
    }
    return v;
}

double WeightFunction::derivative(double x) const {
    double v = 0;
    for (std::size_t k = 1; 2 * k <= coeffs_.size() - 1; ++k) {
        double w = kTwoPi * static_cast<double>(k);
        v += w * (-coeffs_[2 * k - 1] * std::sin(w * x) + coeffs_[2 * k] * std::cos(w * x));
    }
    return v;
}

double WeightFunction::antiderivative(double x) const {
    double v = coeffs_[0] * x;
    for (std::size_t k = 1; 2 * k <= coeffs_.size() - 1; ++k) {
        double w = kTwoPi * static_cast<double>(k);
        v += (coeffs_[2 * k - 1] * std::sin(w * x) + coeffs_[2 * k] * (1.0 - std::cos(w * x))) / w;
    }
    return v;
}

double WeightFunction::derivative_bound() const {
    double v = 0;
    for (std::size_t k = 1; 2 * k <= coeffs_.size() - 1; ++k)
        v += kTwoPi * static_cast<double>(k) * (std::abs(coeffs_[2 * k - 1]) + std::abs(coeffs_[2 * k]));
    return v;
}

WeightFunction WeightFunction::scaled(double factor) const {
    auto c = coeffs_;
    for (auto& x : c) x *= factor;
    return WeightFunction(kind_, std::move(c));
}

PiecewiseMap PiecewiseMap::linear_markov(std::vector<LinearBranch> branches, std::optional<double> smoothness) {
    if (branches.size() < 2) throw ValidationError("a piecewise expanding map needs at least two branches");
    if (branches.front().domain.lo != 0 || branches.back().domain.hi != 1)
        throw ValidationError("branch domains must cover [0,1)");
    for (std::size_t i = 1; i < branches.size(); ++i)
        if (branches[i].domain.lo != branches[i - 1].domain.hi)
            throw ValidationError("branch domains must be contiguous and ordered");

    std::set<Rational> ends;
    for (const auto& b : branches) {
        ends.insert(b.domain.lo);
        ends.insert(b.domain.hi);
    }
    bool markov = true, full = true;
    for (const auto& b : branches) {
        markov = markov && ends.count(b.image.lo) && ends.count(b.image.hi);
        full = full && b.image.lo == 0 && b.image.hi == 1;
    }

    PiecewiseMap m;
    m.k_ = branches.size();
    m.variant_ = LinearMarkov{std::move(branches)};
    m.smoothness_ = smoothness;
    m.markov_ = markov;
    m.full_branch_ = full;
    return m;
}

PiecewiseMap make_smooth_map(std::vector<WeightFunction> weights, std::vector<double> offsets,
                             std::optional<double> smoothness) {
    PiecewiseMap m;
    m.k_ = weights.size();
    m.variant_ = SmoothFullBranch{std::move(weights), std::move(offsets)};
    m.smoothness_ = smoothness;
    m.markov_ = true;
    m.full_branch_ = true;
    return m;
}

const LinearMarkov& PiecewiseMap::linear() const {
    if (!is_linear()) throw UnsupportedVariant("operation requires a piecewise-linear Markov map");
    return std::get<LinearMarkov>(variant_);
}

const SmoothFullBranch& PiecewiseMap::smooth() const {
    if (is_linear()) throw UnsupportedVariant("operation requires a smooth full-branch map");
    return std::get<SmoothFullBranch>(variant_);
}

double PiecewiseMap::domain_lo(std::size_t i) const {
    return is_linear() ? to_double(linear().branches[i].domain.lo) : smooth().offsets[i];
}
double PiecewiseMap::domain_hi(std::size_t i) const {
    return is_linear() ? to_double(linear().branches[i].domain.hi) : smooth().offsets[i + 1];
}
double PiecewiseMap::image_lo(std::size_t i) const { return is_linear() ? to_double(linear().branches[i].image.lo) : 0.0; }
double PiecewiseMap::image_hi(std::size_t i) const { return is_linear() ? to_double(linear().branches[i].image.hi) : 1.0; }

double PiecewiseMap::inverse_branch(std::size_t i, double y) const {
    if (is_linear()) {
        const auto& b = linear().branches[i];
        return (y - to_double(b.offset)) / to_double(b.slope);
    }
    const auto& sm = smooth();
    return sm.offsets[i] + sm.weights[i].antiderivative(y);
}

double PiecewiseMap::inverse_branch_derivative(std::size_t i, double y) const {
    if (is_linear()) return 1.0 / to_double(linear().branches[i].slope);
    return smooth().weights[i](y);
}

PiecewiseMap build_map_from_weights(std::vector<WeightFunction> weights, Normalization mode, double tol,
                                    std::optional<double> smoothness) {
    if (weights.size() < 2) throw ValidationError("a smooth full-branch map needs at least two weights");

    constexpr int kGrid = 4096;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        double lo = weights[i](0.0);
        for (int g = 1; g <= kGrid; ++g) lo = std::min(lo, weights[i](static_cast<double>(g) / kGrid));
        if (!(lo > 0)) throw ValidationError("weight " + std::to_string(i) + " is not strictly positive");
    }

    // Σpᵢ as a Fourier series: the constant term must be 1 and the rest must cancel.
    std::size_t width = 0;
    for (const auto& w : weights) width = std::max(width, w.coefficients().size());
    std::vector<double> total(width, 0.0);
    for (const auto& w : weights)
        for (std::size_t c = 0; c < w.coefficients().size(); ++c) total[c] += w.coefficients()[c];
    double oscillation = 0;
    for (std::size_t c = 1; c < width; ++c) oscillation += std::abs(total[c]);

    if (mode == Normalization::Renormalize) {
        if (oscillation > tol)
            throw ValidationError("weights sum to a non-constant function; pointwise renormalization would leave the Fourier class");
        for (auto& w : weights) w = w.scaled(1.0 / total[0]);
    } else if (mode == Normalization::Strict) {
        double defect = std::abs(total[0] - 1.0) + oscillation;
        if (defect > tol)
            throw ValidationError("weights do not sum to 1 (defect " + std::to_string(defect) + ")");
    }

    for (std::size_t i = 0; i < weights.size(); ++i) {
        double hi = weights[i](0.0);
        for (int g = 1; g <= kGrid; ++g) hi = std::max(hi, weights[i](static_cast<double>(g) / kGrid));
        if (!(hi < 1)) throw ValidationError("weight " + std::to_string(i) + " reaches 1: branch is not expanding");
    }

    std::vector<double> offsets{0.0};
    for (const auto& w : weights) offsets.push_back(snap_breakpoint(offsets.back() + w.mean()));
    if (mode != Normalization::Unchecked) offsets.back() = 1.0;
    return make_smooth_map(std::move(weights), std::move(offsets), smoothness);
}

ExactEvaluation evaluate_exact(const PiecewiseMap& map, const Rational& x) {
    const auto& lm = map.linear();
    if (x < 0 || x >= 1) throw DomainError("evaluate: x must lie in [0,1)");
    auto i = find_linear_branch(lm, x);
    const auto& b = lm.branches[i];
    return {b.apply(x), b.slope, i};
}

Evaluation evaluate(const PiecewiseMap& map, double x) {
    if (!(x >= 0.0 && x < 1.0)) throw DomainError("evaluate: x must lie in [0,1)");
    if (map.is_linear()) {
        auto e = evaluate_exact(map, rational_from_double(x));
        return {to_double(e.value), to_double(e.derivative), e.branch};
    }
    const auto& sm = map.smooth();
    auto i = find_smooth_branch(sm, x);
    double t = invert_smooth_branch(sm, i, x, 1e-12);
    return {t, 1.0 / sm.weights[i](t), i};
}

namespace {

struct AffineCylinder {
    std::vector<std::size_t> word;
    Rational lo, hi;
    Rational slope, offset;  // Tᵏ(x) = slope·x + offset on [lo, hi)
};

std::vector<Cylinder> linear_partition(const LinearMarkov& lm, int k, const Limits& limits) {
    std::vector<AffineCylinder> level;
    for (std::size_t i = 0; i < lm.branches.size(); ++i) {
        const auto& b = lm.branches[i];
        level.push_back({{i}, b.domain.lo, b.domain.hi, b.slope, b.offset});
    }
    for (int depth = 1; depth < k; ++depth) {
        std::vector<AffineCylinder> next;
        for (const auto& c : level) {
            Rational a = c.slope * c.lo + c.offset;
            Rational e = c.slope * c.hi + c.offset;
            if (e < a) std::swap(a, e);
            std::vector<AffineCylinder> children;
            for (std::size_t j = 0; j < lm.branches.size(); ++j) {
                const auto& b = lm.branches[j];
                Rational lo = std::max(a, b.domain.lo);
                Rational hi = std::min(e, b.domain.hi);
                if (!(lo < hi)) continue;
                Rational p = (lo - c.offset) / c.slope;
                Rational q = (hi - c.offset) / c.slope;
                if (q < p) std::swap(p, q);
                auto word = c.word;
                word.push_back(j);
                children.push_back({std::move(word), p, q, b.slope * c.slope, b.slope * c.offset + b.offset});
            }
            std::sort(children.begin(), children.end(),
                      [](const AffineCylinder& u, const AffineCylinder& v) { return u.lo < v.lo; });
            for (auto& ch : children) next.push_back(std::move(ch));
            if (next.size() > limits.cylinder_cap)
                throw ResourceError("level-" + std::to_string(depth + 1) + " partition exceeds the cylinder cap of " +
                                    std::to_string(limits.cylinder_cap));
        }
        level = std::move(next);
    }
    std::vector<Cylinder> out;
    out.reserve(level.size());
    for (auto& c : level) {
        Rational theta = 1 / abs(c.slope);
        out.push_back({std::move(c.word), Interval(c.lo, c.hi), to_double(theta), theta, 0.0});
    }
    return out;
}

std::vector<Cylinder> smooth_partition(const SmoothFullBranch& sm, int k, const Limits& limits, int samples) {
    const std::size_t branches = sm.weights.size();
    double count = std::pow(static_cast<double>(branches), k);
    if (count > static_cast<double>(limits.cylinder_cap))
        throw ResourceError("level-" + std::to_string(k) + " partition exceeds the cylinder cap of " +
                            std::to_string(limits.cylinder_cap));
    if (samples < 2) throw ValidationError("need at least two samples per cylinder");

    // Uniform bound on the Lipschitz constant of log|D s_w|.
    double pmax = 0, pmin = 1, dmax = 0;
    for (const auto& w : sm.weights) {
        for (int g = 0; g <= 1024; ++g) {
            double v = w(g / 1024.0);
            pmax = std::max(pmax, v);
            pmin = std::min(pmin, v);
        }
        dmax = std::max(dmax, w.derivative_bound());
    }
    const double lip = (dmax / pmin) / (1.0 - pmax);
    const double inflation = std::exp(lip * 0.5 / (samples - 1));

    std::vector<Cylinder> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<std::size_t> word(static_cast<std::size_t>(k), 0);
    auto compose = [&](double x, double& deriv) {
        deriv = 1.0;
        for (std::size_t j = word.size(); j-- > 0;) {
            deriv *= sm.weights[word[j]](x);
            x = sm.offsets[word[j]] + sm.weights[word[j]].antiderivative(x);
        }
        return x;
    };
    while (true) {
        double d = 0;
        double lo = snap_breakpoint(compose(0.0, d));
        double hi = snap_breakpoint(compose(1.0, d));
        double best = 0;
        for (int s = 0; s < samples; ++s) {
            compose(static_cast<double>(s) / (samples - 1), d);
            best = std::max(best, d);
        }
        double theta = best * inflation;
        out.push_back({word, Interval(rational_from_double(lo), rational_from_double(hi)), theta, std::nullopt,
                       theta - best});
        // Next word in lexicographic order.
        std::size_t pos = word.size();
        while (pos > 0 && word[pos - 1] + 1 == branches) word[--pos] = 0;
        if (pos == 0) break;
        ++word[pos - 1];
    }
    return out;
}

}  // namespace

std::vector<Cylinder> monotonicity_partition(const PiecewiseMap& map, int k, const Limits& limits,
                                             int samples_per_cylinder) {
    if (k < 1) throw DomainError("monotonicity partition needs k >= 1");
    if (map.is_linear()) return linear_partition(map.linear(), k, limits);
    return smooth_partition(map.smooth(), k, limits, samples_per_cylinder);
}

double theta_sum(const PiecewiseMap& map, double beta, int k, const Limits& limits) {
    if (k == 0) return 1.0;
    auto cylinders = monotonicity_partition(map, k, limits);
    if (map.is_linear()) {
        // Group equal thetas so uniform maps sum as count·θ^β with one rounding.
        std::map<Rational, std::size_t> groups;
        for (const auto& c : cylinders) ++groups[*c.exact_theta];
        double total = 0;
        for (const auto& [theta, count] : groups) total += static_cast<double>(count) * std::pow(to_double(theta), beta);
        return total;
    }
    double total = 0;
    for (const auto& c : cylinders) total += std::pow(c.theta, beta);
    return total;
}

ThetaReport theta_infinity(const PiecewiseMap& map, double beta, int k_max, const Limits& limits) {
    if (k_max < 1) throw DomainError("theta_infinity needs k_max >= 1");
    ThetaReport r;
    r.beta = beta;
    r.k_max = k_max;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= k_max; ++k) {
        double t = theta_sum(map, beta, k, limits);
        r.per_k.emplace_back(k, t);
        best = std::min(best, k == 1 ? t : std::pow(t, 1.0 / k));
        r.fekete_running.push_back(best);
    }
    r.fekete_estimate = best;
    return r;
}

InvarianceCheck verify_lebesgue_invariance(const PiecewiseMap& map, double tol) {
    double defect = 0;
    if (map.is_linear()) {
        const auto& lm = map.linear();
        std::set<Rational> cuts{Rational(0), Rational(1)};
        for (const auto& b : lm.branches) {
            cuts.insert(b.image.lo);
            cuts.insert(b.image.hi);
        }
        for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
            Rational mid = (*it + *std::next(it)) / 2;
            Rational sum = 0;
            for (const auto& b : lm.branches)
                if (b.image.lo <= mid && mid < b.image.hi) sum += 1 / abs(b.slope);
            defect = std::max(defect, to_double(Rational(abs(sum - 1))));
        }
    } else {
        const auto& sm = map.smooth();
        for (int g = 0; g <= 1000; ++g) {
            double x = g / 1000.0;
            double sum = 0;
            for (const auto& w : sm.weights) sum += w(x);
            defect = std::max(defect, std::abs(sum - 1.0));
        }
    }
    return {defect <= tol, defect};
}

}  // namespace essr
