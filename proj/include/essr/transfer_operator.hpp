#pragma once

// Transfer operator with respect to Lebesgue measure: exact action on step
// functions, Ulam discretization, weighted transition matrices, dense spectra.

#include "essr/interval_maps.hpp"
#include "essr/step_function.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace essr {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// (Lf)(x) = Σᵢ f(sᵢx)/|slopeᵢ| over branches whose image contains x.
StepFunction apply_exact(const PiecewiseMap& map, const StepFunction& f);

/// (Lf)(x) evaluated at a single point; works for both map variants.
std::complex<double> apply_pointwise(const PiecewiseMap& map, const FloatStepFunction& f, double x);

struct UlamMatrix {
    std::size_t resolution = 0;
    RowMatrix entries;               // entry(i,j) = m(cellᵢ ∩ T⁻¹cellⱼ)/m(cellᵢ)
    std::vector<Interval> partition;
    std::vector<double> breaks;      // cell endpoints as doubles, size resolution+1
    double row_sum_defect = 0;       // max |Σⱼ entry(i,j) − 1|
};

/// Cells refine the branch domains by halving the longest (then leftmost) cell
/// until there are `resolution` of them. Exact entries for linear maps.
UlamMatrix ulam_matrix(const PiecewiseMap& map, std::size_t resolution, const Limits& limits = {});

/// Cell averages of f on the Ulam partition.
Eigen::VectorXcd project_to_cells(const UlamMatrix& u, const FloatStepFunction& f);
FloatStepFunction lift_from_cells(const UlamMatrix& u, const Eigen::VectorXcd& averages);

/// Ulam-projected Lf: cell averages a ↦ (Σᵢ aᵢ m(cellᵢ) P(i,j)) / m(cellⱼ).
Eigen::VectorXcd apply_discretized(const UlamMatrix& u, const Eigen::VectorXcd& averages);
FloatStepFunction apply_discretized(const UlamMatrix& u, const FloatStepFunction& f);

struct LeadingDensity {
    Eigen::VectorXd density;  // cell values, ∫ density = 1
    double eigenvalue = 0;
    int iterations = 0;
    double max_deviation_from_constant = 0;
};

/// Fixed density of the Ulam operator by power iteration on the mass vector.
LeadingDensity leading_density(const UlamMatrix& u, int max_iterations = 100000, double tol = 1e-15);

struct WeightedMatrix {
    double beta = 0;
    Eigen::MatrixXd entries;  // admissible(i→j)·(sup 1/|DT| on branch i)^β
};

/// Throws ValidationError for non-Markov maps.
WeightedMatrix weighted_transfer_matrix(const PiecewiseMap& map, double beta);

struct SpectrumReport {
    std::vector<std::complex<double>> eigenvalues;  // modulus descending, then re, then im
    std::complex<double> leading;
    double gap_rate = 0;        // |λ₂|/|λ₁|
    double backward_error = 0;  // ‖A − U T Uᴴ‖_F
    double matrix_norm = 0;     // ‖A‖_F
};

/// All eigenvalues from a complex Schur decomposition. Throws ValidationError
/// for non-square input, ResourceError above the cap, and NumericError when
/// the iteration fails or the backward error exceeds 1e-8·‖A‖.
SpectrumReport spectrum(const Eigen::MatrixXcd& a, const Limits& limits = {});
SpectrumReport spectrum(const Eigen::MatrixXd& a, const Limits& limits = {});

double spectral_radius(const Eigen::MatrixXd& a);

}  // namespace essr
