#pragma once

// Koopman pullbacks f∘Tˡ of step functions and sampled observables.

#include "essr/interval_maps.hpp"
#include "essr/step_function.hpp"

#include <complex>
#include <vector>

namespace essr {

/// f∘Tˡ on a piecewise-linear map, exact. Throws UnsupportedVariant for smooth
/// maps and ResourceError once an intermediate has more pieces than the cap.
StepFunction pullback(const PiecewiseMap& map, const StepFunction& f, int ell, const Limits& limits = {});

/// f∘Tˡ with breakpoints sᵢ(b) rounded to the 2^-40 grid. Works for both map
/// variants; smooth maps must have offsets ending at 1.
FloatStepFunction pullback(const PiecewiseMap& map, const FloatStepFunction& f, int ell, const Limits& limits = {});

enum class Interpolation { PiecewiseConstant, PiecewiseLinear };

/// Uniformly sampled observable. Piecewise-constant samples sit on the cells
/// [j/N, (j+1)/N); piecewise-linear samples sit on the nodes j/(N-1).
class SampledObservable {
public:
    SampledObservable(std::vector<std::complex<double>> samples, Interpolation interp);

    template <class Fn>
    static SampledObservable from_function(Fn&& fn, std::size_t n, Interpolation interp) {
        std::vector<std::complex<double>> s(n);
        for (std::size_t j = 0; j < n; ++j) {
            double x = interp == Interpolation::PiecewiseConstant ? (j + 0.5) / static_cast<double>(n)
                                                                  : j / static_cast<double>(n - 1);
            s[j] = fn(x);
        }
        return SampledObservable(std::move(s), interp);
    }

    [[nodiscard]] std::size_t grid() const noexcept { return samples_.size(); }
    [[nodiscard]] const std::vector<std::complex<double>>& samples() const noexcept { return samples_; }
    [[nodiscard]] Interpolation interpolation() const noexcept { return interp_; }

    [[nodiscard]] std::complex<double> operator()(double x) const;
    [[nodiscard]] std::complex<double> integral() const;
    /// Exact integral over [lo, hi) of the interpolant.
    [[nodiscard]] std::complex<double> integral_over(double lo, double hi) const;

private:
    std::vector<std::complex<double>> samples_;
    Interpolation interp_;
};

struct Quantization {
    FloatStepFunction step;
    double sup_error = 0;  // sup |f − step|, bounds every Lᵖ error
};

/// Cell averages on the dyadic grid of width 2^-level (default 2^-16).
Quantization quantize(const SampledObservable& f, int level = 16);

}  // namespace essr
