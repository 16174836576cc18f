#pragma once

// p-variation, atomic Besov B^s_{1,1} upper bounds, BV, and homogeneity probes.

#include "essr/interval_maps.hpp"
#include "essr/observables.hpp"
#include "essr/step_function.hpp"

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace essr {

/// v_p(f, J): sup over increasing points in the interior of J of
/// (Σ|f(x_{i+1}) − f(x_i)|^p)^{1/p}. Throws DomainError for p < 1.
double p_variation(const StepFunction& f, const Interval& J, double p);
double p_variation(const FloatStepFunction& f, double lo, double hi, double p);

/// v_p(f, J)^p computed in rational arithmetic for real-valued f and integer p.
Rational p_variation_power_exact(const StepFunction& f, const Interval& J, int p);

/// Maximal Σ|v_{i+1} − v_i|^p over subsequences of `values` (no root taken).
double max_subsequence_variation(const std::vector<std::complex<double>>& values, double p);

struct Atom {
    std::complex<double> c;
    Interval q;
};

/// f = Σ c_n |Q_n|^{s−1} 1_{Q_n}; cost = Σ|c_n|.
struct AtomicRepresentation {
    double s = 0;
    std::vector<Atom> atoms;
    double cost = 0;
};

/// One atom per nonzero canonical piece.
AtomicRepresentation besov_atomic_upper(const StepFunction& f, double s);
/// Cost of the canonical-piece representation only.
double besov_atomic_cost(const StepFunction& f, double s);
double besov_atomic_cost(const FloatStepFunction& f, double s);

struct DyadicBesovResult {
    AtomicRepresentation rep;  // level-0 atom plus telescoping atoms
    double telescoping_cost = 0;
    double constant = 0;       // C = 4 / (1 − 2^{−(1/p − s)})
    double v_p = 0;
    double bound = 0;          // C·|J|^{1−s}·v_p(f, J)
    double reconstruction_l1_error = 0;  // ‖f − ψ_K‖₁
};

using BesovInput = std::variant<StepFunction, SampledObservable>;

/// Dyadic averaging ψ_k = Σ_{P∈𝒟ᵏ} m(f,P)1_P on J, k ≤ K. Throws DomainError
/// when s·p ≥ 1 and ValidationError when f is not supported in J.
DyadicBesovResult besov_dyadic_upper(const BesovInput& f, const Interval& J, double s, double p, int depth);

/// v₁(f, int I) + ‖f‖₁.
double bv_norm(const StepFunction& f);

enum class ProbeFamily { Indicators, Bump };

struct HomogeneityReport {
    std::string norm_id;
    double t = 0;
    double C = 0;
    double fit_residual = 0;
    std::vector<double> scales;
    std::vector<double> norms;
};

using NormFunctional = std::function<double(const StepFunction&)>;

/// Least-squares fit of log norm(φ∘u) against log|u′| = −log|Q| for
/// rescalings of a fixed shape into Q ⊂ I. Needs ≥ 4 scales spanning ≥ 2
/// decades (ValidationError); a zero or non-finite norm raises NumericError.
HomogeneityReport homogeneity_probe(const std::string& norm_id, const NormFunctional& norm, ProbeFamily family,
                                    const std::vector<double>& scales);

/// The probe input for one scale: 1_Q or the bump rescaled into Q = [¼, ¼ + q).
StepFunction probe_function(ProbeFamily family, const Rational& q);

}  // namespace essr
