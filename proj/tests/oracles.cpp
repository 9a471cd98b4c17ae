#include "oracles.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

// Gauss rule from a symmetric tridiagonal Jacobi matrix: implicit-shift
// QL sweeps that also rotate a weight vector initialized to e_1.
Rule from_jacobi(std::vector<double> d, std::vector<double> e, double mu0) {
    const int n = static_cast<int>(d.size());
    std::vector<double> z(static_cast<size_t>(n), 0.0);
    z[0] = 1.0;
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw std::runtime_error("QL did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    // sort ascending
    std::vector<int> idx(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] < d[j]; });
    Rule rule;
    for (int i : idx) {
        rule.points.push_back(d[static_cast<size_t>(i)]);
        rule.weights.push_back(mu0 * z[static_cast<size_t>(i)] * z[static_cast<size_t>(i)]);
    }
    return rule;
}

} // namespace

Rule gauss_legendre(int n, double a, double b) {
    std::vector<double> d(static_cast<size_t>(n), 0.0), e;
    for (int i = 1; i < n; ++i) e.push_back(std::sqrt(i * i / (4.0 * i * i - 1.0)));
    Rule r = from_jacobi(std::move(d), std::move(e), 2.0);
    for (double& x : r.points) x = 0.5 * (a + b) + 0.5 * (b - a) * x;
    for (double& w : r.weights) w *= 0.5 * (b - a);
    return r;
}

Rule gauss_laguerre(int n) {
    std::vector<double> d, e;
    for (int i = 0; i < n; ++i) d.push_back(2.0 * i + 1.0);
    for (int i = 1; i < n; ++i) e.push_back(double(i));
    return from_jacobi(std::move(d), std::move(e), 1.0);
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    const double c = 0.5 * (b - a), m = 0.5 * (a + b);
    auto g = [&](double t) { // node and weight on [-1,1]
        const double u = 0.5 * M_PI * std::sinh(t);
        const double x = std::tanh(u);
        const double w = 0.5 * M_PI * std::cosh(t) / (std::cosh(u) * std::cosh(u));
        const double xs = m + c * x;
        if (xs <= a || xs >= b) return 0.0; // underflowed to the endpoint
        return c * w * f(xs);
    };
    double sum = g(0.0);
    double h = 1.0;
    for (int i = 1; i * h <= 7.5; ++i) sum += g(i * h) + g(-i * h);
    double est_prev = h * sum;
    for (int level = 1; level <= 12; ++level) {
        h *= 0.5;
        for (int i = 1; i * h <= 7.5; i += 2) sum += g(i * h) + g(-i * h);
        const double est = h * sum;
        if (level >= 4 && std::abs(est - est_prev) <= rel_tol * std::abs(est)) return est;
        est_prev = est;
    }
    return est_prev;
}

namespace {

void j0y0_series(double x, double& j0, double& y0) {
    // Compensated ascending series; fine through x ~ 9.
    const double u = 0.25 * x * x;
    double term = 1.0, jsum = 1.0, jc = 0.0;
    double hsum = 0.0, hc = 0.0, harmonic = 0.0;
    for (int m = 1; m < 60; ++m) {
        term *= -u / (double(m) * m);
        harmonic += 1.0 / m;
        double y = term - jc;
        double t = jsum + y;
        jc = (t - jsum) - y;
        jsum = t;
        const double hterm = -term * harmonic; // (-1)^{m+1} H_m u^m/(m!)^2
        y = hterm - hc;
        t = hsum + y;
        hc = (t - hsum) - y;
        hsum = t;
        if (std::abs(term) < 1e-20 * std::abs(jsum)) break;
    }
    j0 = jsum;
    constexpr double kGamma = 0.57721566490153286;
    y0 = 2.0 / M_PI * ((std::log(0.5 * x) + kGamma) * jsum + hsum);
}

// Steed's method with Lentz continued fractions (nu = 0), x >= 2.
void j0y0_steed(double x, double& j0, double& y0) {
    constexpr double EPS = 1e-16, FPMIN = 1e-300;
    constexpr int MAXIT = 10000;
    const double xi = 1.0 / x, xi2 = 2.0 * xi;

    // CF1 for J0'/J0
    int isign = 1;
    double h = FPMIN;
    double b = xi2 * 0.0, c = h, d = 0.0;
    for (int i = 1; i <= MAXIT; ++i) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < FPMIN) d = FPMIN;
        c = b - 1.0 / c;
        if (std::abs(c) < FPMIN) c = FPMIN;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) < EPS) break;
    }
    const double rjl = isign * FPMIN;
    const double f = h; // J0'/J0 scaled consistently with rjl

    // CF2 for p + i q
    const double a0 = 0.25;
    double p = -0.5 * xi, q = 1.0;
    double br = 2.0 * x, bi = 2.0;
    double fact = a0 * xi / (p * p + q * q);
    double cr = br + q * fact, ci = bi + p * fact;
    double den = br * br + bi * bi;
    double dr = br / den, di = -bi / den;
    double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
    double temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    double aa = a0;
    for (int i = 2; i <= MAXIT; ++i) {
        aa += 2.0 * (i - 1);
        bi += 2.0;
        dr = aa * dr + br;
        di = aa * di + bi;
        if (std::abs(dr) + std::abs(di) < FPMIN) dr = FPMIN;
        fact = aa / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if (std::abs(cr) + std::abs(ci) < FPMIN) cr = FPMIN;
        den = dr * dr + di * di;
        dr = dr / den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (std::abs(dlr - 1.0) + std::abs(dli) < EPS) break;
    }
    const double w = xi2 / M_PI; // Wronskian
    const double gam = (p - f) / q;
    double rjmu = std::sqrt(w / ((p - f) * gam + q));
    rjmu = std::copysign(rjmu, rjl);
    j0 = rjmu;
    y0 = rjmu * gam;
}

} // namespace

void bessel_j0y0(double x, double& j0, double& y0) {
    if (!(x > 0.0)) throw std::invalid_argument("bessel_j0y0 needs x > 0");
    if (x <= 9.0) j0y0_series(x, j0, y0);
    else j0y0_steed(x, j0, y0);
}

std::complex<double> hankel1_0(double x) {
    double j, y;
    bessel_j0y0(x, j, y);
    return {j, y};
}

std::vector<double> rational_solve(const std::vector<double>& matrix,
                                   const std::vector<double>& rhs, int n) {
    using rational = boost::multiprecision::cpp_rational;
    std::vector<rational> a(matrix.begin(), matrix.end());
    std::vector<rational> b(rhs.begin(), rhs.end());
    auto at = [&](int i, int j) -> rational& { return a[static_cast<size_t>(i) * n + j]; };
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (abs(at(r, col)) > abs(at(piv, col))) piv = r;
        if (at(piv, col) == 0) throw std::runtime_error("rational oracle: singular matrix");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(at(col, j), at(piv, j));
            std::swap(b[static_cast<size_t>(col)], b[static_cast<size_t>(piv)]);
        }
        for (int r = col + 1; r < n; ++r) {
            const rational f = at(r, col) / at(col, col);
            for (int j = col; j < n; ++j) at(r, j) -= f * at(col, j);
            b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
        }
    }
    std::vector<double> x(static_cast<size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        rational s = b[static_cast<size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= at(i, j) * rational(x[static_cast<size_t>(j)]);
        x[static_cast<size_t>(i)] = static_cast<double>(s / at(i, i));
    }
    return x;
}

std::complex<double> oscillatory_integral_reference(double k) {
    // Real-axis integration with panels ~1/k wide and logarithmic grading
    // toward the Y0 singularity at 0. 30-point Gauss-Legendre per panel
    // (nodes via the Jacobi-matrix oracle, not the library).
    static const Rule gl = gauss_legendre(30);
    auto integrand = [&](double x) {
        return (std::cos(x) + std::sin(x)) * hankel1_0(k * x) *
               std::exp(std::complex<double>(0.0, k * x));
    };
    auto panel = [&](double lo, double hi) {
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        std::complex<double> s = 0.0;
        for (size_t i = 0; i < gl.points.size(); ++i)
            s += gl.weights[i] * half * integrand(mid + half * gl.points[i]);
        return s;
    };
    std::complex<double> total = 0.0;
    const int n_osc = static_cast<int>(std::ceil(4.0 * k));
    // Dyadic grading into the Y0 log singularity; the leftover
    // [0, 1e-18] sliver contributes O(1e-17 log k).
    for (double hi = 1.0 / n_osc; hi > 1e-18; hi *= 0.5) total += panel(0.5 * hi, hi);
    // Oscillation-resolving panels across the rest of [0, 1].
    for (int i = 1; i < n_osc; ++i)
        total += panel(double(i) / n_osc, double(i + 1) / n_osc);
    return total;
}

} // namespace oracle
