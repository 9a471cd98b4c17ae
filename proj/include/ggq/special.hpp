#pragma once

#include <complex>
#include <functional>

#include "ggq/continuation.hpp"

namespace ggq {

/// Modified Bessel function K_0(x), x > 0. Ascending series for x <= 2,
/// exp(-x)/sqrt(x) times a Chebyshev-fitted correction beyond.
/// Relative error <= 1e-12.
double bessel_k0(double x);

/// exp(x) * K_0(x); the form needed on steepest-descent contours where
/// the exponential decay has been factored into the weight.
double bessel_k0_scaled(double x);

/// H_0^(1)(z) * exp(-iz) for Re z >= 0, |z| >= 10: the Hankel function
/// with its oscillation factored out. Uses the large-argument asymptotic
/// series when its truncation bound certifies 1e-11, otherwise an exact
/// integral representation. Relative error <= 1e-10.
std::complex<double> hankel0_shifted(std::complex<double> z);

/// int_0^1 f(x) H_0^(1)(k x) exp(i k x) dx evaluated by deforming both
/// endpoints onto steepest-descent half-lines.
struct OscillatoryProblem {
    double k_freq = 10.0; // wavenumber, >= 10
    int base_points = 1;  // K; the singular contour gets 2K points, the smooth one K
    std::function<std::complex<double>(std::complex<double>)> f; // analytic near [0,1]
};

struct DemoResult {
    std::complex<double> approx;
    std::complex<double> reference;
    double abs_error = 0.0;
};

/// Evaluates the two deformed contour integrals with the supplied
/// rules: rule_log (2K points, half-line polynomial+log set) handles
/// the weakly singular leg at x=0, rule_laguerre (K points, half-line
/// polynomial set) the smooth leg at x=1. The error is measured against
/// the stored reference value for the problem's wavenumber.
DemoResult steepest_descent_demo(const OscillatoryProblem& problem,
                                 const QuadratureRule& rule_log,
                                 const QuadratureRule& rule_laguerre);

/// f(x) = cos x + sin x, the integrand of the reference table.
std::complex<double> demo_integrand_f(std::complex<double> x);

/// Stored reference values of the oscillatory integral for
/// k in {10, 20, 30, 40}; throws std::invalid_argument otherwise.
std::complex<double> oscillatory_reference(double k_freq);

/// Convenience used by the CLI and bindings: computes the two rules for
/// the given K and runs the demo at wavenumber k.
DemoResult run_demo_cell(int K, double k_freq, const ComputeControls& controls = {});

} // namespace ggq
