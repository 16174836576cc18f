#pragma once

// Kernel observables ψ with Lψ = 0 and the eigen-objects built from them:
// h_z = Σ zˡ ψ∘Tˡ, its affine-IFS realization, the w series and Gram checks.

#include "essr/interval_maps.hpp"
#include "essr/observables.hpp"
#include "essr/step_function.hpp"
#include "essr/transfer_operator.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace essr {

struct LinearContrast {
    Interval K;                 // common image interval
    std::size_t branch1 = 0;
    std::size_t branch2 = 1;
    std::optional<Rational> scale;  // cⱼ = scale·|σⱼ|; default 1/|σ| for equal slopes, else 1
};

struct WeightCancellation {
    double k_lo = 0, k_hi = 1;  // K = [k_lo, k_hi]
    SampledObservable g;
    int level = 16;             // x-cells of width 2^-level
    std::size_t branch1 = 0;
    std::size_t branch2 = 1;
};

struct KernelObservable {
    std::string construction;
    bool exact = true;
    StepFunction psi;               // exact constructions
    FloatStepFunction psi_float;    // always set
    double residual = 0;            // ‖Lψ‖₁ (cell-projected for weight cancellation)
    bool residual_exactly_zero = false;
    std::optional<double> pointwise_residual;  // quadrature of |Lψ| on a fine grid
};

/// Throws ValidationError when K is not inside both branch images or the
/// construction does not match the map variant.
KernelObservable build_kernel(const PiecewiseMap& map, const LinearContrast& c);
KernelObservable build_kernel(const PiecewiseMap& map, const WeightCancellation& c, int quadrature_points = 1 << 18);

struct TruncatedEigenSeries {
    QComplex z;
    int n = 1;
    int N = 0;
    std::vector<StepFunction> terms;  // z^{ℓn} ψ∘T^{ℓn}
    StepFunction sum;
    StepFunction sum_previous;        // sum up to N−1 (zero when N = 0)
    double tail_bound = 0;            // |z|^{(N+1)n}‖ψ‖_∞/(1−|z|ⁿ)
};

/// Throws DomainError unless |z| < 1, n ≥ 1, N ≥ 0; ResourceError on the cap.
TruncatedEigenSeries h_series(const PiecewiseMap& map, const StepFunction& psi, const QComplex& z, int n, int N,
                              const Limits& limits = {});

struct EigenResidual {
    bool exact_shift_ok = false;  // Lⁿ sum_N = zⁿ sum_{N−1} + Lⁿψ
    double residual_l1 = 0;       // ‖Lⁿ sum_N − zⁿ sum_N − Lⁿψ‖₁
    double predicted = 0;         // |z|^{(N+1)n}‖ψ‖₁
};

EigenResidual eigen_residual(const PiecewiseMap& map, const StepFunction& psi, const TruncatedEigenSeries& series);

/// ‖(−z^{−n}ψ) − (sum∘Tⁿ − z^{−n}sum)‖₁; DomainError for z = 0.
double cohomology_residual(const PiecewiseMap& map, const StepFunction& psi, const TruncatedEigenSeries& series,
                           const Limits& limits = {});

struct ExactGram {
    std::vector<std::vector<QComplex>> entries;
    bool diagonal_constant = false;
    bool off_diagonal_zero = false;
};

/// G_{ij} = ⟨ψ∘Tⁱ, ψ∘Tʲ⟩, exact.
ExactGram orthogonality_gram(const PiecewiseMap& map, const StepFunction& psi, int l_max, const Limits& limits = {});

struct FloatGram {
    Eigen::MatrixXcd entries;
    double off_diagonal_max = 0;
    double diagonal_spread = 0;  // max − min of the real diagonal
};

FloatGram orthogonality_gram(const PiecewiseMap& map, const FloatStepFunction& psi, int l_max, const Limits& limits);

struct AffineIFS {
    QComplex z;
    int n = 1;
    std::vector<QComplex> values;   // distinct values of ψ, first appearance first
    QComplex q0;
    QComplex zn;                    // zⁿ
    double R = 0;                   // 2·diam
    double min_gap = 0;
    double containment_margin = 0;  // min_q R − (|zⁿq₀ + q − q₀| + |z|ⁿR)
    bool containment_ok = false;
    bool disjoint_ok = false;
    bool separation_ok = false;
    std::vector<QComplex> fixed_points;  // q/(1 − zⁿ)
};

/// Throws ValidationError when ψ takes fewer than two values.
AffineIFS cantor_ifs(const std::vector<QComplex>& values, const QComplex& z, int n);
AffineIFS cantor_ifs(const StepFunction& psi, const QComplex& z, int n);

/// Depth-K backward composition applied to q₀ along the exact orbit x, Tⁿx, ….
QComplex backward_limit(const PiecewiseMap& map, const AffineIFS& ifs, const StepFunction& psi, const Rational& x,
                        int K);
/// Σ_{ℓ≤N} z^{ℓn} ψ(T^{ℓn}x) summed directly.
QComplex series_value_at(const PiecewiseMap& map, const StepFunction& psi, const QComplex& z, int n, const Rational& x,
                         int N);

/// Number of distinct values Σ_{ℓ≤K} z^{ℓn} q_ℓ with q_ℓ in the value set.
std::size_t distinct_truncation_values(const AffineIFS& ifs, int K, std::size_t cap = 1u << 22);

struct WSeries {
    std::complex<double> z;
    int n = 1;
    std::size_t resolution = 0;
    std::vector<double> term_norms;  // ‖z^{−ℓn}U^{ℓn}ψ‖₁ for ℓ = 1, 2, …
    Eigen::VectorXcd w;              // cell averages of Σ_{ℓ≥1} z^{−ℓn}U^{ℓn}ψ
    double decay_ratio = 0;
    bool converged = false;
    double tail_estimate = 0;
    double identity_residual = 0;    // ‖Uⁿw − zⁿw + Uⁿψ‖₁
    bool identity_ok = false;
    double second_eigenvalue_modulus = 0;
};

/// Ulam surrogate of the w series. Divergence is reported, never thrown.
WSeries w_series(const PiecewiseMap& map, const FloatStepFunction& psi, std::complex<double> z, int n,
                 std::size_t resolution, int l_max = 400, const Limits& limits = {});

/// Numerical rank of the Gram matrix of truncated h_z built from several
/// kernel observables.
struct RankReport {
    std::size_t observables = 0;
    std::size_t rank = 0;
    std::vector<double> singular_values;
};

RankReport eigenspace_rank(const PiecewiseMap& map, const std::vector<StepFunction>& psis, const QComplex& z, int N,
                           const Limits& limits = {});

/// Kernel observables from d disjoint subintervals K_j = [j/d, (j+1)/d).
std::vector<StepFunction> shifted_kernels(const PiecewiseMap& map, std::size_t d);

}  // namespace essr
