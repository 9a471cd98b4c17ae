#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ggq::detail {

/// Gauss-Legendre nodes/weights on [-1,1], computed by Newton iteration
/// on the Legendre recurrence and cached per n.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

/// integral of f over [lo, hi] with an n-point Gauss-Legendre rule.
double gl_panel(const std::function<double(double)>& f, double lo, double hi, int n = 30);

/// Adaptive bisection with 30-point panels; error estimated by
/// comparing a panel against its two halves. Throws QuadratureError
/// when the subdivision budget is exhausted.
double adaptive_panels(const std::function<double(double)>& f, double lo, double hi,
                       double abs_tol, int max_panels = 20000);

/// Integral over [a, b] of an integrand with an integrable singularity
/// at a: splits off [a, a+h], h = (b-a)/8, and covers it with
/// geometrically graded panels (ratio 1/4) until the remaining sliver
/// contributes less than abs_tol; the smooth part is handled
/// adaptively.
double graded_singular(const std::function<double(double)>& f, double a, double b,
                       double abs_tol);

} // namespace ggq::detail
