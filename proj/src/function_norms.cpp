#include "essr/function_norms.hpp"

#include "essr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace essr {

namespace {

// Values of the pieces meeting the open interval (lo, hi), in order.
template <class F>
std::vector<typename F::Value> interior_values(const BasicStepFunction<F>& f, const typename F::Point& lo,
                                               const typename F::Point& hi) {
    std::vector<typename F::Value> out;
    if (!(lo < hi)) return out;
    for (std::size_t j = f.piece_index(lo); j < f.pieces() && f.lo(j) < hi; ++j) {
        if (!(lo < f.hi(j))) continue;
        if (out.empty() || !(out.back() == f.values()[j])) out.push_back(f.values()[j]);
    }
    return out;
}

// best[j] = max_{i<j} best[i] + cost(v_i, v_j); the answer is max_j best[j].
template <class T, class Cost>
T subsequence_dp(std::size_t n, Cost cost) {
    std::vector<T> best(n, T(0));
    T answer(0);
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            T cand = best[i] + cost(i, j);
            if (best[j] < cand) best[j] = cand;
        }
        if (answer < best[j]) answer = best[j];
    }
    return answer;
}

}  // namespace

double max_subsequence_variation(const std::vector<std::complex<double>>& values, double p) {
    if (!(p >= 1.0)) throw DomainError("p-variation requires p >= 1");
    if (values.size() < 2) return 0.0;
    if (p == 1.0) {
        double acc = 0;
        for (std::size_t i = 1; i < values.size(); ++i) acc += std::abs(values[i] - values[i - 1]);
        return acc;
    }
    return subsequence_dp<double>(values.size(),
                                  [&](std::size_t i, std::size_t j) { return std::pow(std::abs(values[j] - values[i]), p); });
}

double p_variation(const StepFunction& f, const Interval& J, double p) {
    if (!(p >= 1.0)) throw DomainError("p-variation requires p >= 1");
    std::vector<std::complex<double>> v;
    for (const auto& x : interior_values(f, J.lo, J.hi)) v.push_back(x.to_complex());
    return std::pow(max_subsequence_variation(v, p), 1.0 / p);
}

double p_variation(const FloatStepFunction& f, double lo, double hi, double p) {
    if (!(p >= 1.0)) throw DomainError("p-variation requires p >= 1");
    return std::pow(max_subsequence_variation(interior_values(f, lo, hi), p), 1.0 / p);
}

Rational p_variation_power_exact(const StepFunction& f, const Interval& J, int p) {
    if (p < 1) throw DomainError("p-variation requires p >= 1");
    auto v = interior_values(f, J.lo, J.hi);
    for (const auto& x : v)
        if (sgn(x.im) != 0) throw DomainError("exact p-variation needs a real-valued function");
    auto cost = [&](std::size_t i, std::size_t j) {
        Rational d = abs(v[j].re - v[i].re);
        Rational r = 1;
        for (int e = 0; e < p; ++e) r *= d;
        return r;
    };
    if (v.size() < 2) return Rational(0);
    if (p == 1) {
        Rational acc = 0;
        for (std::size_t i = 1; i < v.size(); ++i) acc += cost(i - 1, i);
        return acc;
    }
    return subsequence_dp<Rational>(v.size(), cost);
}

namespace {

template <class F, class Key>
double grouped_cost(const BasicStepFunction<F>& f, double s, Key key) {
    if (!(s > 0 && s < 1)) throw DomainError("Besov smoothness must lie in (0,1)");
    auto g = f.canonical();
    std::map<decltype(key(g, 0)), std::size_t> groups;
    for (std::size_t j = 0; j < g.pieces(); ++j)
        if (!is_zero(g.values()[j])) ++groups[key(g, j)];
    double cost = 0;
    for (const auto& [k, count] : groups) cost += static_cast<double>(count) * k.first * std::pow(k.second, 1.0 - s);
    return cost;
}

}  // namespace

double besov_atomic_cost(const StepFunction& f, double s) {
    // Group equal (|value|, length) pieces so repeated pieces round once.
    if (!(s > 0 && s < 1)) throw DomainError("Besov smoothness must lie in (0,1)");
    auto g = f.canonical();
    std::map<std::pair<Rational, Rational>, std::size_t> groups;
    for (std::size_t j = 0; j < g.pieces(); ++j)
        if (!g.values()[j].is_zero()) ++groups[{g.values()[j].norm2(), g.length(j)}];
    double cost = 0;
    for (const auto& [k, count] : groups)
        cost += static_cast<double>(count) * std::sqrt(to_double(k.first)) * std::pow(to_double(k.second), 1.0 - s);
    return cost;
}

double besov_atomic_cost(const FloatStepFunction& f, double s) {
    return grouped_cost(f, s, [](const FloatStepFunction& g, std::size_t j) {
        return std::pair{std::abs(g.values()[j]), g.length(j)};
    });
}

AtomicRepresentation besov_atomic_upper(const StepFunction& f, double s) {
    if (!(s > 0 && s < 1)) throw DomainError("Besov smoothness must lie in (0,1)");
    AtomicRepresentation rep;
    rep.s = s;
    auto g = f.canonical();
    for (std::size_t j = 0; j < g.pieces(); ++j) {
        if (g.values()[j].is_zero()) continue;
        rep.atoms.push_back({g.values()[j].to_complex() * std::pow(to_double(g.length(j)), 1.0 - s),
                             Interval(g.lo(j), g.hi(j))});
    }
    rep.cost = besov_atomic_cost(f, s);
    return rep;
}

namespace {

// ∫_a^b |α + (β−α)(x−a)/(b−a) − c| dx for a linear segment.
double linear_l1_deviation(std::complex<double> alpha, std::complex<double> beta, std::complex<double> c, double len) {
    std::complex<double> u = alpha - c, w = beta - c;
    if (u.imag() == 0 && w.imag() == 0) {
        double x = u.real(), y = w.real();
        if (x * y >= 0) return len * std::abs(x + y) / 2;
        return len * (x * x + y * y) / (2 * std::abs(x - y));
    }
    constexpr int kSteps = 64;
    double acc = 0;
    for (int i = 0; i < kSteps; ++i) {
        double t = (i + 0.5) / kSteps;
        acc += std::abs(u + (w - u) * t);
    }
    return acc * len / kSteps;
}

}  // namespace

DyadicBesovResult besov_dyadic_upper(const BesovInput& input, const Interval& J, double s, double p, int depth) {
    if (!(s > 0 && s < 1)) throw DomainError("Besov smoothness must lie in (0,1)");
    if (!(p >= 1.0)) throw DomainError("variation exponent must satisfy p >= 1");
    if (!(s * p < 1.0)) throw DomainError("dyadic Besov bound needs 1/p > s");
    if (depth < 0 || depth > 24) throw DomainError("dyadic depth must lie in [0, 24]");

    const std::size_t cells = std::size_t{1} << depth;
    const Rational width = J.length() / Rational(static_cast<long>(cells));
    auto cell_lo = [&](std::size_t c) { return Rational(J.lo + width * Rational(static_cast<long>(c))); };

    DyadicBesovResult out;
    out.rep.s = s;
    std::vector<std::complex<double>> fine(cells);
    const double jlen = to_double(J.length());

    if (const auto* step = std::get_if<StepFunction>(&input)) {
        auto g = step->canonical();
        for (std::size_t j = 0; j < g.pieces(); ++j)
            if (!g.values()[j].is_zero() && (g.lo(j) < J.lo || J.hi < g.hi(j)))
                throw ValidationError("dyadic Besov bound needs f supported in J");
        std::vector<QComplex> exact(cells);
        for (std::size_t c = 0; c < cells; ++c) {
            exact[c] = integrate_over(g, cell_lo(c), cell_lo(c + 1)) * (1 / width);
            fine[c] = exact[c].to_complex();
        }
        double err = 0;
        for (std::size_t c = 0; c < cells; ++c) {
            Rational a = cell_lo(c), b = cell_lo(c + 1);
            for (std::size_t j = g.piece_index(a); j < g.pieces() && g.lo(j) < b; ++j) {
                Rational lo = std::max(a, g.lo(j)), hi = std::min(b, g.hi(j));
                if (lo < hi) err += magnitude(g.values()[j] - exact[c]) * to_double(Rational(hi - lo));
            }
        }
        out.reconstruction_l1_error = err;
        out.v_p = p_variation(g, J, p);
    } else {
        const auto& f = std::get<SampledObservable>(input);
        const double lo = to_double(J.lo), hi = to_double(J.hi);
        const double h = jlen / static_cast<double>(cells);
        const std::size_t n = f.grid();
        const bool linear = f.interpolation() == Interpolation::PiecewiseLinear;
        const double scale = linear ? static_cast<double>(n - 1) : static_cast<double>(n);
        // Outside J the interpolant must vanish.
        for (std::size_t k = 0; k < n; ++k) {
            double x = linear ? k / scale : (k + 0.5) / scale;
            if ((x < lo || x > hi) && std::abs(f.samples()[k]) != 0)
                throw ValidationError("dyadic Besov bound needs f supported in J");
        }
        double err = 0;
        std::vector<std::complex<double>> seq;
        for (std::size_t c = 0; c < cells; ++c) {
            double a = lo + c * h, b = lo + (c + 1) * h;
            fine[c] = f.integral_over(a, b) / h;
            // Split the cell at sample nodes; the interpolant is linear (or
            // constant) between consecutive split points.
            std::vector<double> cuts{a};
            for (auto k = static_cast<std::size_t>(std::ceil(a * scale)); k / scale < b; ++k)
                if (k / scale > a) cuts.push_back(k / scale);
            cuts.push_back(b);
            for (std::size_t m = 0; m + 1 < cuts.size(); ++m) {
                double u = cuts[m], w = cuts[m + 1];
                if (linear)
                    err += linear_l1_deviation(f(u), f(w), fine[c], w - u);
                else
                    err += std::abs(f(0.5 * (u + w)) - fine[c]) * (w - u);
            }
        }
        out.reconstruction_l1_error = err;
        // The linear interpolant is continuous, so its limits at the ends of J count.
        if (linear) seq.push_back(f(lo));
        for (std::size_t k = 0; k < n; ++k) {
            double x = linear ? k / scale : (k + 0.5) / scale;
            if (x > lo && x < hi) seq.push_back(f.samples()[k]);
        }
        if (linear) seq.push_back(f(hi));
        out.v_p = std::pow(max_subsequence_variation(seq, p), 1.0 / p);
    }

    // Averages at every level by pairwise aggregation of the finest level.
    std::vector<std::vector<std::complex<double>>> levels(static_cast<std::size_t>(depth) + 1);
    levels[static_cast<std::size_t>(depth)] = fine;
    for (int k = depth; k-- > 0;) {
        const auto& child = levels[static_cast<std::size_t>(k) + 1];
        auto& parent = levels[static_cast<std::size_t>(k)];
        parent.resize(child.size() / 2);
        for (std::size_t c = 0; c < parent.size(); ++c) parent[c] = 0.5 * (child[2 * c] + child[2 * c + 1]);
    }

    const std::complex<double> mean = levels[0][0];
    if (mean != 0.0) {
        out.rep.atoms.push_back({mean * std::pow(jlen, 1.0 - s), J});
        out.rep.cost += std::abs(mean) * std::pow(jlen, 1.0 - s);
    }
    for (int k = 0; k < depth; ++k) {
        const auto& parent = levels[static_cast<std::size_t>(k)];
        const auto& child = levels[static_cast<std::size_t>(k) + 1];
        const std::size_t stride = cells >> (k + 1);
        const double qlen = jlen / static_cast<double>(child.size());
        const double weight = std::pow(qlen, 1.0 - s);
        for (std::size_t c = 0; c < child.size(); ++c) {
            std::complex<double> d = child[c] - parent[c / 2];
            if (d == 0.0) continue;
            out.rep.atoms.push_back({d * weight, Interval(cell_lo(c * stride), cell_lo((c + 1) * stride))});
            out.telescoping_cost += std::abs(d) * weight;
        }
    }
    out.rep.cost += out.telescoping_cost;
    out.constant = 4.0 / (1.0 - std::pow(2.0, -(1.0 / p - s)));
    out.bound = out.constant * std::pow(jlen, 1.0 - s) * out.v_p;
    return out;
}

double bv_norm(const StepFunction& f) { return p_variation(f, Interval(0, 1), 1.0) + lp_norm(f, 1.0); }

StepFunction probe_function(ProbeFamily family, const Rational& q) {
    if (!(q > 0 && q <= Rational(3, 4))) throw DomainError("probe scale must lie in (0, 3/4]");
    const Rational lo(1, 4);
    if (family == ProbeFamily::Indicators) return StepFunction::indicator(lo, lo + q);
    static const StepFunction bump({Rational(0), Rational(1, 5), Rational(2, 5), Rational(3, 5), Rational(4, 5), Rational(1)},
                                   {QComplex(1), QComplex(2), QComplex(3), QComplex(2), QComplex(1)});
    // bump∘u with u(x) = (x − lo)/q maps Q onto [0,1].
    return compose_affine(bump, 1 / q, -lo / q);
}

HomogeneityReport homogeneity_probe(const std::string& norm_id, const NormFunctional& norm, ProbeFamily family,
                                    const std::vector<double>& scales) {
    if (scales.size() < 4) throw ValidationError("homogeneity probe needs at least 4 scales");
    auto [mn, mx] = std::minmax_element(scales.begin(), scales.end());
    if (!(*mn > 0) || *mx / *mn < 100.0) throw ValidationError("homogeneity probe scales must span at least 2 decades");

    HomogeneityReport r;
    r.norm_id = norm_id;
    std::vector<double> xs, ys;
    for (double q : scales) {
        double v = norm(probe_function(family, rational_from_double(q)));
        if (!std::isfinite(v) || !(v > 0))
            throw NumericError("norm '" + norm_id + "' returned " + std::to_string(v) + " at scale " + std::to_string(q));
        r.scales.push_back(q);
        r.norms.push_back(v);
        xs.push_back(-std::log(q));
        ys.push_back(std::log(v));
    }
    const double n = static_cast<double>(xs.size());
    double mx_ = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx_ += xs[i] / n;
        my += ys[i] / n;
    }
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx_) * (xs[i] - mx_);
        sxy += (xs[i] - mx_) * (ys[i] - my);
    }
    r.t = sxy / sxx;
    double intercept = my - r.t * mx_;
    r.C = std::exp(intercept);
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double e = ys[i] - (intercept + r.t * xs[i]);
        ss += e * e;
    }
    r.fit_residual = std::sqrt(ss / n);
    return r;
}

}  // namespace essr
