#pragma once

// Piecewise expanding maps of [0,1]: evaluation, inverse branches, iterated
// monotonicity partitions and the growth sums Θᵏ(β) = Σᵢ (θᵏᵢ)^β.

#include "essr/rational.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace essr {

/// Size caps. Operations throw ResourceError instead of truncating.
struct Limits {
    std::size_t cylinder_cap = 1'000'000;
    std::size_t matrix_cap = 4096;
};

/// Subinterval of [0,1]. Branch domains and cylinders use [lo, hi).
struct Interval {
    Rational lo;
    Rational hi;
    bool closed_left = true;
    bool closed_right = false;

    Interval() : lo(0), hi(1) {}
    Interval(Rational l, Rational h, bool cl = true, bool cr = false);

    [[nodiscard]] Rational length() const { return hi - lo; }
    [[nodiscard]] bool contains(const Rational& x) const {
        return (closed_left ? lo <= x : lo < x) && (closed_right ? x <= hi : x < hi);
    }
    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo == b.lo && a.hi == b.hi && a.closed_left == b.closed_left && a.closed_right == b.closed_right;
    }
};

struct LinearBranch {
    Interval domain;
    Rational slope;
    Rational offset;
    Interval image;

    [[nodiscard]] Rational apply(const Rational& x) const { return slope * x + offset; }
    [[nodiscard]] Rational inverse(const Rational& y) const { return (y - offset) / slope; }
};

/// Builds a branch on [lo, hi) and computes its image. Throws ValidationError
/// when |slope| <= 1 or the image leaves [0,1].
LinearBranch make_linear_branch(const Rational& lo, const Rational& hi, const Rational& slope, const Rational& offset);

/// Positive density used as an inverse-branch derivative:
/// p(x) = a₀ + Σₖ aₖ cos(2πkx) + bₖ sin(2πkx), coefficients stored as
/// [a₀, a₁, b₁, a₂, b₂, ...].
class WeightFunction {
public:
    enum class Kind { Constant, Fourier };

    static WeightFunction constant(double c);
    static WeightFunction fourier(std::vector<double> coeffs);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::vector<double>& coefficients() const noexcept { return coeffs_; }
    [[nodiscard]] double mean() const noexcept { return coeffs_.front(); }

    [[nodiscard]] double operator()(double x) const;
    [[nodiscard]] double derivative(double x) const;
    /// ∫₀ˣ p.
    [[nodiscard]] double antiderivative(double x) const;
    /// Bound on |p'| from the coefficients.
    [[nodiscard]] double derivative_bound() const;
    [[nodiscard]] WeightFunction scaled(double factor) const;

private:
    WeightFunction(Kind kind, std::vector<double> coeffs) : kind_(kind), coeffs_(std::move(coeffs)) {}
    Kind kind_;
    std::vector<double> coeffs_;
};

struct LinearMarkov {
    std::vector<LinearBranch> branches;
};

/// Full-branch map whose inverse branches are sᵢ(x) = aᵢ + ∫₀ˣ pᵢ.
struct SmoothFullBranch {
    std::vector<WeightFunction> weights;
    std::vector<double> offsets;  // a₁ = 0, ..., a_{k+1}; branch i lives on [aᵢ, aᵢ₊₁)
};

class PiecewiseMap {
public:
    using Variant = std::variant<LinearMarkov, SmoothFullBranch>;

    /// Throws ValidationError unless the domains tile [0,1) in order.
    static PiecewiseMap linear_markov(std::vector<LinearBranch> branches,
                                      std::optional<double> smoothness = std::nullopt);

    [[nodiscard]] bool is_linear() const noexcept { return std::holds_alternative<LinearMarkov>(variant_); }
    [[nodiscard]] const LinearMarkov& linear() const;
    [[nodiscard]] const SmoothFullBranch& smooth() const;
    [[nodiscard]] const Variant& variant() const noexcept { return variant_; }

    [[nodiscard]] std::size_t branch_count() const noexcept { return k_; }
    /// Hölder exponent of the derivative; nullopt means C^∞.
    [[nodiscard]] std::optional<double> smoothness() const noexcept { return smoothness_; }
    [[nodiscard]] bool markov() const noexcept { return markov_; }
    [[nodiscard]] bool full_branch() const noexcept { return full_branch_; }

    [[nodiscard]] double domain_lo(std::size_t i) const;
    [[nodiscard]] double domain_hi(std::size_t i) const;
    [[nodiscard]] double image_lo(std::size_t i) const;
    [[nodiscard]] double image_hi(std::size_t i) const;

    /// sᵢ(y): the inverse of branch i, for y in the image of branch i.
    [[nodiscard]] double inverse_branch(std::size_t i, double y) const;
    /// sᵢ'(y) = 1/|DT(sᵢ(y))| (signed for decreasing linear branches).
    [[nodiscard]] double inverse_branch_derivative(std::size_t i, double y) const;

    PiecewiseMap with_smoothness(std::optional<double> beta) const {
        PiecewiseMap m = *this;
        m.smoothness_ = beta;
        return m;
    }

private:
    PiecewiseMap() = default;
    friend PiecewiseMap make_smooth_map(std::vector<WeightFunction>, std::vector<double>, std::optional<double>);

    Variant variant_;
    std::size_t k_ = 0;
    std::optional<double> smoothness_;
    bool markov_ = false;
    bool full_branch_ = false;
};

enum class Normalization {
    Strict,       // Σpᵢ must equal 1 within tolerance
    Renormalize,  // divide by Σpᵢ when that sum is constant
    Unchecked,    // accept as given (diagnostics only)
};

/// Smooth full-branch map from inverse-branch weights. Throws ValidationError
/// when a weight is not strictly positive, when some pᵢ ≥ 1 (branch not
/// expanding), or when Σpᵢ ≠ 1 under Strict normalization.
PiecewiseMap build_map_from_weights(std::vector<WeightFunction> weights,
                                    Normalization mode = Normalization::Strict, double tol = 1e-12,
                                    std::optional<double> smoothness = std::nullopt);

struct Evaluation {
    double value;
    double derivative;
    std::size_t branch;
};

struct ExactEvaluation {
    Rational value;
    Rational derivative;
    std::size_t branch;
};

/// T(x), DT(x) and the branch index for x in [0,1); throws DomainError otherwise.
Evaluation evaluate(const PiecewiseMap& map, double x);
/// Exact evaluation for piecewise-linear maps.
ExactEvaluation evaluate_exact(const PiecewiseMap& map, const Rational& x);

struct Cylinder {
    std::vector<std::size_t> word;
    Interval support;
    double theta = 0;                 // sup of 1/|DTᵏ| over the support
    std::optional<Rational> exact_theta;  // set for piecewise-linear maps
    double theta_tolerance = 0;       // inflation applied to the sampled estimate
};

/// Level-k cylinders ordered left to right.
std::vector<Cylinder> monotonicity_partition(const PiecewiseMap& map, int k, const Limits& limits = {},
                                             int samples_per_cylinder = 64);

double theta_sum(const PiecewiseMap& map, double beta, int k, const Limits& limits = {});

struct ThetaReport {
    double beta = 0;
    int k_max = 0;
    std::vector<std::pair<int, double>> per_k;  // (k, Θᵏ(β))
    std::vector<double> fekete_running;         // min_{j≤k} (Θʲ(β))^{1/j}
    double fekete_estimate = 0;
};

ThetaReport theta_infinity(const PiecewiseMap& map, double beta, int k_max, const Limits& limits = {});

struct InvarianceCheck {
    bool ok;
    double max_defect;
};

/// sup |Σᵢ 1/|DT(sᵢ(x))| − 1|: exact over image pieces for linear maps, on a
/// 1001-point grid for smooth maps.
InvarianceCheck verify_lebesgue_invariance(const PiecewiseMap& map, double tol = 1e-12);

}  // namespace essr
