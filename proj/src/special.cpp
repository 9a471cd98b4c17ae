#include "ggq/special.hpp"

#include <cmath>

#include "ggq/detail/quadrature.hpp"

namespace ggq {

namespace {

constexpr double kEulerGamma = 0.57721566490153286;

// Chebyshev coefficients of K0(x) e^x sqrt(x) on x in [2, inf),
// variable v = 4/x - 1 in (-1, 1]; series convention c0/2 + sum c_j T_j.
constexpr double kK0FitCoeffs[] = {
    2.4403030820659554547,
    -0.031448101311964500543,
    0.0015698838857300533749,
    -0.00012849549581627802638,
    0.000013949813718876499364,
    -1.8317555227191194848e-6,
    2.7668136394450150761e-7,
    -4.6604898976879476656e-8,
    8.5740340174142260858e-9,
    -1.6975345093890615156e-9,
    3.5773972814003284472e-10,
    -7.9574892444773970377e-11,
    1.855949114954926555e-11,
    -4.5145978833745191751e-12,
    1.1403405882073442347e-12,
    -2.9800969231481783548e-13,
    8.0328907750683743694e-14,
    -2.2275133267462963604e-14,
    6.3400764762766459661e-15,
    -1.8485933779209071694e-15,
    5.5120559994043333649e-16,
    -1.6782311257549006383e-16,
    5.2103917776435541125e-17,
    -1.6475805939842632815e-17,
};

double cheb_series(double v, const double* c, int n) {
    double b1 = 0.0, b2 = 0.0;
    for (int j = n - 1; j >= 1; --j) {
        double b0 = 2.0 * v * b1 - b2 + c[j];
        b2 = b1;
        b1 = b0;
    }
    return v * b1 - b2 + 0.5 * c[0];
}

// Ascending series, x <= 2:
//   I0(x) = sum q_m,    q_m = (x^2/4)^m / (m!)^2
//   K0(x) = -(log(x/2)+gamma) I0(x) + sum q_m H_m
double k0_series(double x) {
    const double u = 0.25 * x * x;
    double q = 1.0, i0 = 1.0, s = 0.0, h = 0.0;
    for (int m = 1; m < 40; ++m) {
        q *= u / (double(m) * m);
        h += 1.0 / m;
        i0 += q;
        s += q * h;
        if (q < 1e-18 * i0) break;
    }
    return -(std::log(0.5 * x) + kEulerGamma) * i0 + s;
}

double k0_fit_scaled(double x) { // e^x K0(x) for x >= 2
    const double v = 4.0 / x - 1.0;
    return cheb_series(v, kK0FitCoeffs, static_cast<int>(std::size(kK0FitCoeffs))) /
           std::sqrt(x);
}

using cplx = std::complex<double>;

// Large-argument asymptotic sum for H0(1)(z) e^{-iz} relative to the
// prefactor sqrt(2/(pi z)) e^{-i pi/4}. Returns false when the
// optimal-truncation bound cannot certify 1e-11.
bool hankel_asymptotic_sum(cplx z, cplx& out) {
    cplx sum = 1.0, term = 1.0;
    double prev_mag = 1.0;
    for (int m = 0; m < 60; ++m) {
        const double num = (2.0 * m + 1.0) * (2.0 * m + 1.0);
        term *= cplx(0.0, -1.0) * num / (8.0 * (m + 1.0) * z);
        const double mag = std::abs(term);
        if (mag >= prev_mag) return false; // divergence onset before the bound
        if (mag <= 1e-12) {
            out = sum + term;
            return true;
        }
        sum += term;
        prev_mag = mag;
    }
    return false;
}

// Exact integral representation of the same normalized sum:
//   S(z) = (2/sqrt(pi)) int_0^inf exp(-s^2) (1 + i s^2/(2z))^{-1/2} ds
cplx hankel_integral_sum(cplx z) {
    const auto& gl = detail::gauss_legendre(32);
    const double panels[] = {0.0, 1.25, 2.5, 4.0, 6.5};
    cplx total = 0.0;
    for (int p = 0; p < 4; ++p) {
        const double mid = 0.5 * (panels[p] + panels[p + 1]);
        const double half = 0.5 * (panels[p + 1] - panels[p]);
        for (int i = 0; i < 32; ++i) {
            const double s = mid + half * gl.nodes[i];
            const cplx w = std::pow(1.0 + cplx(0.0, 1.0) * (s * s) / (2.0 * z), -0.5);
            total += half * gl.weights[i] * std::exp(-s * s) * w;
        }
    }
    return 2.0 / std::sqrt(M_PI) * total;
}

} // namespace

double bessel_k0(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("bessel_k0 requires x > 0");
    if (x <= 2.0) return k0_series(x);
    return k0_fit_scaled(x) * std::exp(-x);
}

double bessel_k0_scaled(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("bessel_k0_scaled requires x > 0");
    if (x <= 2.0) return k0_series(x) * std::exp(x);
    return k0_fit_scaled(x);
}

std::complex<double> hankel0_shifted(std::complex<double> z) {
    if (std::abs(z) < 10.0)
        throw std::invalid_argument("hankel0_shifted requires |z| >= 10");
    if (!(z.real() > 0.0))
        throw std::invalid_argument("hankel0_shifted requires Re z > 0");
    cplx sum;
    if (!hankel_asymptotic_sum(z, sum)) sum = hankel_integral_sum(z);
    const cplx prefactor =
        std::sqrt(2.0 / (M_PI * z)) * std::exp(cplx(0.0, -0.25 * M_PI));
    return prefactor * sum;
}

std::complex<double> demo_integrand_f(std::complex<double> x) {
    return std::cos(x) + std::sin(x);
}

std::complex<double> oscillatory_reference(double k_freq) {
    struct Ref {
        double k;
        cplx value;
    };
    // int_0^1 (cos x + sin x) H0(1)(k x) e^{ikx} dx, converged to ~1e-19
    // by graded high-precision panel quadrature.
    static const Ref refs[] = {
        {10.0, {0.069177443408141616441, -0.014430370082305898806}},
        {20.0, {0.037984510239036322154, +0.000041556485028009027}},
        {30.0, {0.022807827657682868559, +0.003192884148656169280}},
        {40.0, {0.014576256711754318035, +0.001850377829192567163}},
    };
    for (const auto& r : refs)
        if (std::abs(r.k - k_freq) < 1e-12) return r.value;
    throw std::invalid_argument("no stored reference for this wavenumber (use 10/20/30/40)");
}

DemoResult steepest_descent_demo(const OscillatoryProblem& problem,
                                 const QuadratureRule& rule_log,
                                 const QuadratureRule& rule_laguerre) {
    const double k = problem.k_freq;
    if (!(k >= 10.0))
        throw std::invalid_argument("asymptotic Hankel evaluation needs k >= 10");
    const int K = problem.base_points;
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    if (static_cast<int>(rule_log.points.size()) != 2 * K)
        throw std::invalid_argument("rule_log must have 2K points");
    if (static_cast<int>(rule_laguerre.points.size()) != K)
        throw std::invalid_argument("rule_laguerre must have K points");
    auto f = problem.f ? problem.f : demo_integrand_f;

    const cplx i_unit(0.0, 1.0);
    // Leg 1, up from x=0: integrand f(it/2k) H0(1)(it/2) e^{t/2} e^{-t};
    // the bracket reduces to -(2i/pi) f(it/2k) e^{t/2} K0(t/2) e^{-t/2}.
    cplx q_singular = 0.0;
    for (size_t i = 0; i < rule_log.points.size(); ++i) {
        const double t = rule_log.points[i];
        const cplx bracket =
            f(i_unit * t / (2.0 * k)) * (-2.0 * i_unit / M_PI) * bessel_k0_scaled(0.5 * t);
        q_singular += rule_log.weights[i] * bracket;
    }
    // Leg 2, down to x=1: bracket f(1+it/2k) H0(1)(k+it/2) e^{t/2}
    // = f(1+it/2k) * [H0(1)(w) e^{-iw}] * e^{ik} with w = k + it/2.
    const cplx eik = std::exp(i_unit * k);
    cplx q_smooth = 0.0;
    for (size_t i = 0; i < rule_laguerre.points.size(); ++i) {
        const double t = rule_laguerre.points[i];
        const cplx w = cplx(k, 0.5 * t);
        const cplx bracket = f(1.0 + i_unit * t / (2.0 * k)) * hankel0_shifted(w) * eik;
        q_smooth += rule_laguerre.weights[i] * bracket;
    }

    DemoResult res;
    res.approx = i_unit / (2.0 * k) * q_singular - i_unit / (2.0 * k) * eik * q_smooth;
    res.reference = oscillatory_reference(k);
    res.abs_error = std::abs(res.approx - res.reference);
    return res;
}

DemoResult run_demo_cell(int K, double k_freq, const ComputeControls& controls) {
    if (K < 1 || K > 4) throw std::invalid_argument("K must be in 1..4");
    BasisDescriptor log_desc;
    log_desc.family = Family::LaguerreTypePlusLog;
    log_desc.count = 4 * K;
    BasisDescriptor lag_desc;
    lag_desc.family = Family::MonicLaguerreType;
    lag_desc.count = 2 * K;

    ComputeResult rule_log = compute_rule(log_desc, 2 * K, controls);
    ComputeResult rule_lag = compute_rule(lag_desc, K, controls);

    OscillatoryProblem prob;
    prob.k_freq = k_freq;
    prob.base_points = K;
    return steepest_descent_demo(prob, rule_log.rule, rule_lag.rule);
}

} // namespace ggq
