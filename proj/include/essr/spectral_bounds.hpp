#pragma once

// Pressure, lower bounds for the essential spectral radius, the Collet–Isola
// upper expression, and the Case I/II classification of natural norms.

#include "essr/function_norms.hpp"
#include "essr/interval_maps.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace essr {

enum class PressureMethod { WeightedMatrix, ThetaLimit };

struct PressureReport {
    double beta = 0;
    double exp_pressure = 0;  // e^{P(−β log|DT|)}
    PressureMethod method = PressureMethod::WeightedMatrix;
    int k_max = 0;
};

/// Throws ValidationError when the weighted-matrix method meets a smooth map.
PressureReport pressure(const PiecewiseMap& map, double beta, PressureMethod method, int k_max = 10,
                        const Limits& limits = {});

/// Linear maps use the weighted matrix, smooth ones the θ limit.
PressureReport pressure(const PiecewiseMap& map, double beta, int k_max = 10, const Limits& limits = {});

struct HypothesisCheck {
    std::string name;
    bool ok = false;
    double value = 0;
};

enum class BoundKind { Main, BB, New };

struct BoundReport {
    BoundKind theorem = BoundKind::Main;
    std::optional<double> s;
    double lower_bound = 0;
    std::vector<HypothesisCheck> hypothesis_checks;
    std::optional<double> collet_isola_upper;  // exp P(−(r+1) log|DT|)
    std::optional<double> literal_pressure;    // P(−(r+1) log|DT|) without exp
    std::optional<double> r;
    std::optional<std::string> norm_assertion;
    bool ok = true;
};

/// lower_bound = 1/Θ^∞(1−s). Failed hypotheses are reported, not thrown.
BoundReport bound_main(const PiecewiseMap& map, double s, int k_max = 10, const Limits& limits = {});

/// lower_bound = 1/k. With r set, also evaluates exp P(−(r+1) log|DT|) < 1/k;
/// that path throws ValidationError on maps that are not full-branch.
BoundReport bound_bb_new(const PiecewiseMap& map, std::optional<double> r = std::nullopt,
                         std::optional<std::string> norm_assertion = std::nullopt, const Limits& limits = {});

enum class NormCase { I, II };

struct ProbeConfig {
    ProbeFamily family = ProbeFamily::Indicators;
    std::vector<double> scales;  // empty: 2^-8 … 2^-20
    double tolerance = 0.02;
    int k_max = 10;
};

struct CaseClassification {
    NormCase norm_case = NormCase::I;
    double t_max = 0;
    std::optional<double> s;
    double lower_bound = 0;
    double scaling_constant = 0;
    HomogeneityReport probe;
};

/// Throws ValidationError when the map is not full-branch Markov and
/// Lebesgue-invariant, or when t_max leaves (−1, 0] beyond the tolerance.
CaseClassification classify_norm(const PiecewiseMap& map, const std::string& norm_id, const NormFunctional& norm,
                                 const ProbeConfig& config = {});

struct ContrastRow {
    int k = 0;
    std::size_t contrasts = 0;        // number of P ∈ 𝒫^{k+1}
    bool integrals_zero = true;       // ∫a_P = 0 for every P
    bool l1_norms_two = true;         // ‖a_P‖₁ = 2 for every P, exact
    double min_l1_of_Lk = 0;          // min_P ‖Lᵏa_P‖₁
    double max_l1_of_Lk = 0;
    bool lk_l1_two = true;            // ‖Lᵏa_P‖₁ = 2 for every P, exact
    std::map<std::string, double> min_norm;  // min_P ‖a_P‖ per registered norm
};

/// a_P = 1_{Q₁}/|Q₁| − 1_{Q₂}/|Q₂| for the two leftmost children Q₁, Q₂ of P.
StepFunction contrast(const Interval& q1, const Interval& q2);

std::vector<ContrastRow> contrast_decay(const PiecewiseMap& map, int k_min, int k_max,
                                        const std::vector<std::pair<std::string, NormFunctional>>& norms,
                                        const Limits& limits = {});

/// Exact ∫|f| for real-valued f.
Rational exact_l1_norm(const StepFunction& f);

}  // namespace essr
