#include "essr/spectral_bounds.hpp"

#include "essr/errors.hpp"
#include "essr/transfer_operator.hpp"

#include <cmath>
#include <cstdio>

namespace essr {

namespace {

// Perron: a nonnegative matrix with constant row sums has that sum as its
// spectral radius. Otherwise fall back to the dense spectrum.
double nonnegative_spectral_radius(const Eigen::MatrixXd& a) {
    double first = a.row(0).sum();
    bool constant = true;
    for (Eigen::Index i = 1; i < a.rows(); ++i) constant = constant && a.row(i).sum() == first;
    if (constant) return first;
    return spectral_radius(a);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

PressureReport pressure(const PiecewiseMap& map, double beta, PressureMethod method, int k_max, const Limits& limits) {
    PressureReport r;
    r.beta = beta;
    r.method = method;
    r.k_max = k_max;
    if (method == PressureMethod::WeightedMatrix) {
        if (!map.is_linear()) throw ValidationError("weighted-matrix pressure needs a piecewise-linear Markov map");
        r.exp_pressure = nonnegative_spectral_radius(weighted_transfer_matrix(map, beta).entries);
        r.k_max = 0;
    } else {
        r.exp_pressure = theta_infinity(map, beta, k_max, limits).fekete_estimate;
    }
    if (!(r.exp_pressure > 0)) throw NumericError("pressure evaluated to a non-positive exponential");
    return r;
}

PressureReport pressure(const PiecewiseMap& map, double beta, int k_max, const Limits& limits) {
    return pressure(map, beta, map.is_linear() ? PressureMethod::WeightedMatrix : PressureMethod::ThetaLimit, k_max,
                    limits);
}

BoundReport bound_main(const PiecewiseMap& map, double s, int k_max, const Limits& limits) {
    if (!(s > 0 && s < 1)) throw DomainError("Besov smoothness must lie in (0,1)");
    BoundReport r;
    r.theorem = BoundKind::Main;
    r.s = s;
    r.lower_bound = 1.0 / theta_infinity(map, 1.0 - s, k_max, limits).fekete_estimate;
    auto inv = verify_lebesgue_invariance(map);
    r.hypothesis_checks.push_back({"lebesgue_invariance", inv.ok, inv.max_defect});
    double beta = map.smoothness().value_or(std::numeric_limits<double>::infinity());
    r.hypothesis_checks.push_back({"s_below_smoothness", s < beta, beta});
    for (const auto& c : r.hypothesis_checks) r.ok = r.ok && c.ok;
    return r;
}

BoundReport bound_bb_new(const PiecewiseMap& map, std::optional<double> r, std::optional<std::string> norm_assertion,
                         const Limits& limits) {
    BoundReport rep;
    rep.theorem = r ? BoundKind::New : BoundKind::BB;
    const double k = static_cast<double>(map.branch_count());
    rep.lower_bound = 1.0 / k;
    rep.norm_assertion = std::move(norm_assertion);
    auto inv = verify_lebesgue_invariance(map);
    rep.hypothesis_checks.push_back({"lebesgue_invariance", inv.ok, inv.max_defect});
    if (!r) {
        rep.hypothesis_checks.push_back({"piecewise_linear", map.is_linear(), 0.0});
    } else {
        if (!(*r > 0)) throw DomainError("smoothness order r must be positive");
        if (!map.full_branch() || !map.markov())
            throw ValidationError("the full-branch bound needs every branch onto [0,1)");
        rep.r = r;
        rep.hypothesis_checks.push_back({"full_branch_markov", true, k});
        double upper = pressure(map, *r + 1.0, 10, limits).exp_pressure;
        rep.collet_isola_upper = upper;
        rep.literal_pressure = std::log(upper);
        rep.hypothesis_checks.push_back({"collet_isola_below_inverse_branch_count", upper < rep.lower_bound, upper});
        rep.hypothesis_checks.push_back({"literal_pressure_below_inverse_branch_count",
                                         *rep.literal_pressure < rep.lower_bound, *rep.literal_pressure});
    }
    for (const auto& c : rep.hypothesis_checks)
        if (c.name != "literal_pressure_below_inverse_branch_count") rep.ok = rep.ok && c.ok;
    return rep;
}

CaseClassification classify_norm(const PiecewiseMap& map, const std::string& norm_id, const NormFunctional& norm,
                                 const ProbeConfig& config) {
    if (!map.full_branch() || !map.markov())
        throw ValidationError("classification needs a full-branch Markov map");
    auto inv = verify_lebesgue_invariance(map);
    if (!inv.ok) throw ValidationError("classification needs a Lebesgue-invariant map");

    std::vector<double> scales = config.scales;
    if (scales.empty())
        for (int e = 8; e <= 20; e += 2) scales.push_back(std::ldexp(1.0, -e));
    CaseClassification c;
    c.probe = homogeneity_probe(norm_id, norm, config.family, scales);
    c.t_max = c.probe.t;
    c.scaling_constant = c.probe.C;
    const double tol = config.tolerance;
    if (c.t_max > tol)
        throw ValidationError("norm '" + norm_id + "': fitted degree t_max = " + format_double(c.t_max) +
                              " exceeds 0; indicator norms must not grow under refinement");
    if (c.t_max <= -1.0 + tol)
        throw ValidationError("norm '" + norm_id + "': fitted degree t_max = " + format_double(c.t_max) +
                              " reaches the lower boundary -1; a norm on which the transfer operator has a spectral "
                              "gap needs t_max > -1");
    if (std::abs(c.t_max) <= tol) {
        c.norm_case = NormCase::I;
        c.lower_bound = 1.0 / static_cast<double>(map.branch_count());
    } else {
        c.norm_case = NormCase::II;
        c.s = 1.0 + c.t_max;
        c.lower_bound = bound_main(map, *c.s, config.k_max).lower_bound;
    }
    return c;
}

StepFunction contrast(const Interval& q1, const Interval& q2) {
    auto a = StepFunction::indicator(q1.lo, q1.hi, QComplex(Rational(1 / q1.length())));
    auto b = StepFunction::indicator(q2.lo, q2.hi, QComplex(Rational(1 / q2.length())));
    return a - b;
}

Rational exact_l1_norm(const StepFunction& f) {
    Rational acc = 0;
    for (std::size_t j = 0; j < f.pieces(); ++j) {
        if (sgn(f.values()[j].im) != 0) throw DomainError("exact L1 norm needs a real-valued function");
        acc += abs(f.values()[j].re) * f.length(j);
    }
    return acc;
}

std::vector<ContrastRow> contrast_decay(const PiecewiseMap& map, int k_min, int k_max,
                                        const std::vector<std::pair<std::string, NormFunctional>>& norms,
                                        const Limits& limits) {
    (void)map.linear();
    if (k_min < 0 || k_max < k_min) throw DomainError("contrast_decay needs 0 <= k_min <= k_max");
    std::vector<ContrastRow> rows;
    for (int k = k_min; k <= k_max; ++k) {
        auto parents = monotonicity_partition(map, k + 1, limits);
        auto children = monotonicity_partition(map, k + 2, limits);
        ContrastRow row;
        row.k = k;
        row.contrasts = parents.size();
        row.min_l1_of_Lk = std::numeric_limits<double>::infinity();
        std::size_t c = 0;
        for (const auto& P : parents) {
            while (c < children.size() && children[c].support.lo < P.support.lo) ++c;
            if (c + 1 >= children.size() || !(children[c + 1].support.hi <= P.support.hi))
                throw ValidationError("cylinder has fewer than two children");
            auto a = contrast(children[c].support, children[c + 1].support);
            row.integrals_zero = row.integrals_zero && integrate(a).is_zero();
            row.l1_norms_two = row.l1_norms_two && exact_l1_norm(a) == 2;
            StepFunction lk = a;
            for (int i = 0; i < k; ++i) lk = apply_exact(map, lk);
            Rational l1 = exact_l1_norm(lk);
            row.lk_l1_two = row.lk_l1_two && l1 == 2;
            row.min_l1_of_Lk = std::min(row.min_l1_of_Lk, to_double(l1));
            row.max_l1_of_Lk = std::max(row.max_l1_of_Lk, to_double(l1));
            for (const auto& [name, fn] : norms) {
                double v = fn(a);
                auto it = row.min_norm.find(name);
                if (it == row.min_norm.end())
                    row.min_norm[name] = v;
                else
                    it->second = std::min(it->second, v);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace essr
