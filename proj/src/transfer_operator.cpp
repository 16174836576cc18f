#include "essr/transfer_operator.hpp"

#include "essr/errors.hpp"
#include "essr/observables.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>

namespace essr {

StepFunction apply_exact(const PiecewiseMap& map, const StepFunction& f) {
    const auto& lm = map.linear();
    struct Segment {
        Rational end;
        QComplex value;
    };
    // Per branch: f(sᵢ(y))/|slope| as segments over y ∈ [0,1].
    std::vector<std::vector<Segment>> lanes(lm.branches.size());
    for (std::size_t i = 0; i < lm.branches.size(); ++i) {
        const auto& b = lm.branches[i];
        const Rational w = 1 / abs(b.slope);
        auto& lane = lanes[i];
        if (0 < b.image.lo) lane.push_back({b.image.lo, QComplex(0)});
        const std::size_t first = f.piece_index(b.domain.lo);
        std::size_t last = first;
        while (last < f.pieces() && f.lo(last) < b.domain.hi) ++last;
        lane.reserve(last - first + 2);
        if (sgn(b.slope) > 0) {
            for (std::size_t j = first; j < last; ++j) {
                Rational y = j + 1 == last ? b.image.hi : Rational(b.slope * f.hi(j) + b.offset);
                lane.push_back({std::move(y), f.values()[j] * w});
            }
        } else {
            for (std::size_t j = last; j-- > first;) {
                Rational y = j == first ? b.image.hi : Rational(b.slope * f.lo(j) + b.offset);
                lane.push_back({std::move(y), f.values()[j] * w});
            }
        }
        if (b.image.hi < 1) lane.push_back({Rational(1), QComplex(0)});
    }
    std::vector<Rational> breaks{Rational(0)};
    std::vector<QComplex> values;
    breaks.reserve(f.pieces() + 1);
    values.reserve(f.pieces());
    std::vector<std::size_t> at(lanes.size(), 0);
    while (breaks.back() < 1) {
        const Rational* end = nullptr;
        for (std::size_t i = 0; i < lanes.size(); ++i)
            if (!end || lanes[i][at[i]].end < *end) end = &lanes[i][at[i]].end;
        QComplex v;
        for (std::size_t i = 0; i < lanes.size(); ++i)
            if (!lanes[i][at[i]].value.is_zero()) v += lanes[i][at[i]].value;
        Rational e = *end;
        for (std::size_t i = 0; i < lanes.size(); ++i)
            if (lanes[i][at[i]].end == e) ++at[i];
        if (!values.empty() && values.back() == v)
            breaks.back() = std::move(e);
        else {
            values.push_back(std::move(v));
            breaks.push_back(std::move(e));
        }
    }
    return StepFunction(std::move(breaks), std::move(values), StepFunction::Unchecked{});
}

std::complex<double> apply_pointwise(const PiecewiseMap& map, const FloatStepFunction& f, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("transfer operator evaluated outside [0,1]");
    std::complex<double> acc = 0;
    for (std::size_t i = 0; i < map.branch_count(); ++i) {
        if (!(map.image_lo(i) <= x && (x < map.image_hi(i) || (x == 1.0 && map.image_hi(i) == 1.0)))) continue;
        double y = std::clamp(map.inverse_branch(i, x), 0.0, 1.0);
        acc += f(y) * std::abs(map.inverse_branch_derivative(i, x));
    }
    return acc;
}

namespace {

std::vector<Interval> ulam_cells(const PiecewiseMap& map, std::size_t resolution) {
    std::vector<Interval> cells;
    if (map.is_linear())
        for (const auto& b : map.linear().branches) cells.push_back(b.domain);
    else
        for (std::size_t i = 0; i < map.branch_count(); ++i)
            cells.emplace_back(rational_from_double(map.domain_lo(i)), rational_from_double(map.domain_hi(i)));
    if (resolution < cells.size())
        throw DomainError("Ulam resolution must be at least the number of branches (" + std::to_string(cells.size()) + ")");
    while (cells.size() < resolution) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < cells.size(); ++c)
            if (cells[best].length() < cells[c].length()) best = c;
        Rational mid = (cells[best].lo + cells[best].hi) / 2;
        Interval right(mid, cells[best].hi);
        cells[best] = Interval(cells[best].lo, mid);
        cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(best) + 1, right);
    }
    return cells;
}

// Branch index whose domain contains the cell.
std::size_t owning_branch(const PiecewiseMap& map, double lo) {
    std::size_t k = 0;
    while (k + 1 < map.branch_count() && map.domain_lo(k + 1) <= lo) ++k;
    return k;
}

// T(x) on branch k by bisection on the increasing map sₖ.
double forward_smooth(const PiecewiseMap& map, std::size_t k, double x) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (map.inverse_branch(k, mid) <= x)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace

UlamMatrix ulam_matrix(const PiecewiseMap& map, std::size_t resolution, const Limits& limits) {
    if (resolution < 2) throw DomainError("Ulam resolution must be at least 2");
    if (resolution > limits.matrix_cap)
        throw ResourceError("Ulam resolution " + std::to_string(resolution) + " exceeds the matrix cap of " +
                            std::to_string(limits.matrix_cap));
    UlamMatrix u;
    u.resolution = resolution;
    u.partition = ulam_cells(map, resolution);
    for (const auto& c : u.partition) u.breaks.push_back(to_double(c.lo));
    u.breaks.push_back(1.0);
    u.entries = RowMatrix::Zero(static_cast<Eigen::Index>(resolution), static_cast<Eigen::Index>(resolution));
    const auto n = static_cast<Eigen::Index>(resolution);

    if (map.is_linear()) {
        const auto& lm = map.linear();
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto& cell = u.partition[static_cast<std::size_t>(i)];
            std::size_t k = owning_branch(map, to_double(cell.lo));
            const auto& b = lm.branches[k];
            Rational a = b.apply(cell.lo), e = b.apply(cell.hi);
            if (e < a) std::swap(a, e);
            for (Eigen::Index j = 0; j < n; ++j) {
                const auto& target = u.partition[static_cast<std::size_t>(j)];
                Rational lo = std::max(a, target.lo), hi = std::min(e, target.hi);
                if (lo < hi) u.entries(i, j) = to_double(Rational((hi - lo) / (e - a)));
            }
        }
    } else {
        for (Eigen::Index i = 0; i < n; ++i) {
            double lo = u.breaks[static_cast<std::size_t>(i)], hi = u.breaks[static_cast<std::size_t>(i) + 1];
            std::size_t k = owning_branch(map, lo);
            double ylo = forward_smooth(map, k, lo);
            double yhi = hi == map.domain_hi(k) ? 1.0 : forward_smooth(map, k, hi);
            for (Eigen::Index j = 0; j < n; ++j) {
                double clo = u.breaks[static_cast<std::size_t>(j)], chi = u.breaks[static_cast<std::size_t>(j) + 1];
                if (chi <= ylo || clo >= yhi) continue;
                double xlo = clo <= ylo ? lo : std::max(lo, map.inverse_branch(k, clo));
                double xhi = chi >= yhi ? hi : std::min(hi, map.inverse_branch(k, chi));
                if (xlo < xhi) u.entries(i, j) = (xhi - xlo) / (hi - lo);
            }
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) u.row_sum_defect = std::max(u.row_sum_defect, std::abs(u.entries.row(i).sum() - 1.0));
    return u;
}

Eigen::VectorXcd project_to_cells(const UlamMatrix& u, const FloatStepFunction& f) {
    Eigen::VectorXcd a(static_cast<Eigen::Index>(u.resolution));
    for (std::size_t c = 0; c < u.resolution; ++c) {
        double lo = u.breaks[c], hi = u.breaks[c + 1];
        a(static_cast<Eigen::Index>(c)) = integrate_over(f, lo, hi) / (hi - lo);
    }
    return a;
}

FloatStepFunction lift_from_cells(const UlamMatrix& u, const Eigen::VectorXcd& averages) {
    std::vector<std::complex<double>> v(averages.data(), averages.data() + averages.size());
    return FloatStepFunction(u.breaks, std::move(v)).canonical();
}

Eigen::VectorXcd apply_discretized(const UlamMatrix& u, const Eigen::VectorXcd& averages) {
    const auto n = static_cast<Eigen::Index>(u.resolution);
    Eigen::VectorXd mass(n);
    for (Eigen::Index c = 0; c < n; ++c)
        mass(c) = u.breaks[static_cast<std::size_t>(c) + 1] - u.breaks[static_cast<std::size_t>(c)];
    Eigen::VectorXcd weighted = averages.cwiseProduct(mass.cast<std::complex<double>>());
    Eigen::VectorXcd out = u.entries.transpose().cast<std::complex<double>>() * weighted;
    return out.cwiseQuotient(mass.cast<std::complex<double>>());
}

FloatStepFunction apply_discretized(const UlamMatrix& u, const FloatStepFunction& f) {
    return lift_from_cells(u, apply_discretized(u, project_to_cells(u, f)));
}

LeadingDensity leading_density(const UlamMatrix& u, int max_iterations, double tol) {
    const auto n = static_cast<Eigen::Index>(u.resolution);
    Eigen::VectorXd mass(n);
    for (Eigen::Index c = 0; c < n; ++c)
        mass(c) = u.breaks[static_cast<std::size_t>(c) + 1] - u.breaks[static_cast<std::size_t>(c)];
    // Start away from the expected answer: mass weighted by a ramp.
    Eigen::VectorXd v(n);
    for (Eigen::Index c = 0; c < n; ++c) v(c) = mass(c) * (1.0 + static_cast<double>(c) / static_cast<double>(n));
    v /= v.sum();
    const Eigen::MatrixXd pt = u.entries.transpose();
    LeadingDensity out;
    double growth = 1;
    for (int it = 1; it <= max_iterations; ++it) {
        Eigen::VectorXd next = pt * v;
        growth = next.sum();
        if (!(growth > 0)) throw NumericError("Ulam operator annihilated the mass vector");
        next /= growth;
        double diff = (next - v).lpNorm<1>();
        v = std::move(next);
        out.iterations = it;
        if (diff < tol) break;
    }
    out.eigenvalue = growth;
    out.density = v.cwiseQuotient(mass);
    out.max_deviation_from_constant = (out.density.array() - 1.0).abs().maxCoeff();
    return out;
}

WeightedMatrix weighted_transfer_matrix(const PiecewiseMap& map, double beta) {
    if (!map.markov()) throw ValidationError("weighted transfer matrix needs a Markov map");
    const auto k = static_cast<Eigen::Index>(map.branch_count());
    WeightedMatrix w;
    w.beta = beta;
    w.entries = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        double theta;
        if (map.is_linear()) {
            theta = to_double(Rational(1 / abs(map.linear().branches[static_cast<std::size_t>(i)].slope)));
        } else {
            const auto& p = map.smooth().weights[static_cast<std::size_t>(i)];
            theta = 0;
            for (int g = 0; g <= 4096; ++g) theta = std::max(theta, p(g / 4096.0));
        }
        double weight = std::pow(theta, beta);
        for (Eigen::Index j = 0; j < k; ++j) {
            bool admissible;
            if (map.is_linear()) {
                const auto& bi = map.linear().branches[static_cast<std::size_t>(i)];
                const auto& bj = map.linear().branches[static_cast<std::size_t>(j)];
                admissible = bi.image.lo <= bj.domain.lo && bj.domain.hi <= bi.image.hi;
            } else {
                admissible = true;
            }
            if (admissible) w.entries(i, j) = weight;
        }
    }
    return w;
}

SpectrumReport spectrum(const Eigen::MatrixXcd& a, const Limits& limits) {
    if (a.rows() != a.cols()) throw ValidationError("spectrum needs a square matrix");
    if (static_cast<std::size_t>(a.rows()) > limits.matrix_cap)
        throw ResourceError("matrix dimension exceeds the cap of " + std::to_string(limits.matrix_cap));
    SpectrumReport r;
    if (a.rows() == 0) return r;
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(a);
    if (schur.info() != Eigen::Success) throw NumericError("Schur iteration did not converge");
    const auto& t = schur.matrixT();
    const auto& u = schur.matrixU();
    r.matrix_norm = a.norm();
    r.backward_error = (a - u * t * u.adjoint()).norm();
    if (r.backward_error > 1e-8 * std::max(r.matrix_norm, 1.0))
        throw NumericError("eigenvalue backward error " + std::to_string(r.backward_error) + " exceeds 1e-8*|A|");
    for (Eigen::Index i = 0; i < t.rows(); ++i) r.eigenvalues.push_back(t(i, i));
    std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), [](const auto& x, const auto& y) {
        double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay) return ax > ay;
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    r.leading = r.eigenvalues.front();
    double lead = std::abs(r.leading);
    r.gap_rate = r.eigenvalues.size() > 1 && lead > 0 ? std::abs(r.eigenvalues[1]) / lead : 0.0;
    return r;
}

SpectrumReport spectrum(const Eigen::MatrixXd& a, const Limits& limits) {
    return spectrum(Eigen::MatrixXcd(a.cast<std::complex<double>>()), limits);
}

double spectral_radius(const Eigen::MatrixXd& a) { return std::abs(spectrum(a).leading); }

}  // namespace essr
