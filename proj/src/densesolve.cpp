#include "ggq/densesolve.hpp"

#include <algorithm>
#include <cmath>

namespace ggq {

DenseSystem DenseSystem::zeros(int n) {
    DenseSystem s;
    s.n = n;
    s.a.assign(static_cast<size_t>(n) * n, 0.0);
    s.rhs.assign(static_cast<size_t>(n), 0.0);
    return s;
}

LuSolver::LuSolver(const DenseSystem& system) : LuSolver(system.a, system.n) {}

LuSolver::LuSolver(std::vector<double> matrix, int n)
    : n_(n), lu_(std::move(matrix)), perm_(static_cast<size_t>(n)), orig_(lu_),
      pivot_growth_(0.0) {
    if (static_cast<int>(lu_.size()) != n * n)
        throw std::invalid_argument("matrix size mismatch");
    double amax = 0.0;
    for (double v : lu_) {
        if (!std::isfinite(v)) throw std::invalid_argument("matrix entries must be finite");
        amax = std::max(amax, std::abs(v));
    }
    auto at = [&](int i, int j) -> double& { return lu_[static_cast<size_t>(i) * n_ + j]; };
    for (int col = 0; col < n_; ++col) {
        int piv = col;
        double best = std::abs(at(col, col));
        for (int r = col + 1; r < n_; ++r) {
            if (std::abs(at(r, col)) > best) {
                best = std::abs(at(r, col));
                piv = r;
            }
        }
        perm_[static_cast<size_t>(col)] = piv;
        if (piv != col)
            for (int j = 0; j < n_; ++j) std::swap(at(col, j), at(piv, j));
        const double d = at(col, col);
        if (d == 0.0) throw SingularSystemError("exactly singular pivot in LU factorization");
        for (int r = col + 1; r < n_; ++r) {
            const double f = at(r, col) / d;
            at(r, col) = f;
            for (int j = col + 1; j < n_; ++j) at(r, j) -= f * at(col, j);
        }
    }
    double umax = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) umax = std::max(umax, std::abs(lu_[static_cast<size_t>(i) * n_ + j]));
    pivot_growth_ = amax > 0.0 ? umax / amax : 0.0;
}

std::vector<double> LuSolver::solve(std::span<const double> rhs) const {
    std::vector<double> x(rhs.begin(), rhs.end());
    for (int i = 0; i < n_; ++i) {
        const int p = perm_[static_cast<size_t>(i)];
        if (p != i) std::swap(x[static_cast<size_t>(i)], x[static_cast<size_t>(p)]);
        for (int j = 0; j < i; ++j) x[static_cast<size_t>(i)] -= lu_[static_cast<size_t>(i) * n_ + j] * x[static_cast<size_t>(j)];
    }
    for (int i = n_ - 1; i >= 0; --i) {
        for (int j = i + 1; j < n_; ++j) x[static_cast<size_t>(i)] -= lu_[static_cast<size_t>(i) * n_ + j] * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(i)] /= lu_[static_cast<size_t>(i) * n_ + i];
    }
    return x;
}

std::vector<double> LuSolver::solve_transposed(std::span<const double> rhs) const {
    // A^T x = b with PA = LU: U^T L^T P x = b.
    std::vector<double> x(rhs.begin(), rhs.end());
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < i; ++j) x[static_cast<size_t>(i)] -= lu_[static_cast<size_t>(j) * n_ + i] * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(i)] /= lu_[static_cast<size_t>(i) * n_ + i];
    }
    for (int i = n_ - 1; i >= 0; --i) {
        for (int j = i + 1; j < n_; ++j) x[static_cast<size_t>(i)] -= lu_[static_cast<size_t>(j) * n_ + i] * x[static_cast<size_t>(j)];
        const int p = perm_[static_cast<size_t>(i)];
        if (p != i) std::swap(x[static_cast<size_t>(i)], x[static_cast<size_t>(p)]);
    }
    return x;
}

double LuSolver::condition_estimate() const {
    double norm1 = 0.0; // ||A||_1
    for (int j = 0; j < n_; ++j) {
        double s = 0.0;
        for (int i = 0; i < n_; ++i) s += std::abs(orig_[static_cast<size_t>(i) * n_ + j]);
        norm1 = std::max(norm1, s);
    }
    // Hager power iteration for ||A^{-1}||_1, 5 sweeps.
    std::vector<double> x(static_cast<size_t>(n_), 1.0 / n_);
    double est = 0.0;
    for (int sweep = 0; sweep < 5; ++sweep) {
        std::vector<double> y = solve(x);
        double y1 = 0.0;
        for (double v : y) y1 += std::abs(v);
        est = std::max(est, y1);
        std::vector<double> xi(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) xi[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] >= 0.0 ? 1.0 : -1.0;
        std::vector<double> z = solve_transposed(xi);
        int jmax = 0;
        double zmax = 0.0, zdotx = 0.0;
        for (int i = 0; i < n_; ++i) {
            zdotx += z[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
            if (std::abs(z[static_cast<size_t>(i)]) > zmax) {
                zmax = std::abs(z[static_cast<size_t>(i)]);
                jmax = i;
            }
        }
        if (zmax <= zdotx + 1e-30) break;
        std::fill(x.begin(), x.end(), 0.0);
        x[static_cast<size_t>(jmax)] = 1.0;
    }
    return std::max(1.0, norm1 * est);
}

SolveReport solve(const DenseSystem& system) {
    if (system.n <= 0) throw std::invalid_argument("empty system");
    if (static_cast<int>(system.rhs.size()) != system.n)
        throw std::invalid_argument("rhs size mismatch");
    LuSolver lu(system);
    SolveReport report;
    report.solution = lu.solve(system.rhs);
    report.condition_estimate = lu.condition_estimate();
    report.pivot_growth = lu.pivot_growth();
    if (report.condition_estimate > 1e8) {
        // One step of residual refinement for ill-conditioned systems.
        std::vector<double> r(system.rhs);
        for (int i = 0; i < system.n; ++i) {
            double s = 0.0;
            for (int j = 0; j < system.n; ++j)
                s += system.at(i, j) * report.solution[static_cast<size_t>(j)];
            r[static_cast<size_t>(i)] -= s;
        }
        std::vector<double> d = lu.solve(r);
        for (int i = 0; i < system.n; ++i) report.solution[static_cast<size_t>(i)] += d[static_cast<size_t>(i)];
    }
    return report;
}

std::vector<double> interpolatory_weights(const ChebyshevSet& set,
                                          std::span<const double> points,
                                          const MomentVector& moments) {
    const int k = static_cast<int>(points.size());
    if (k == 0) throw std::invalid_argument("no points");
    if (moments.size() < k) throw std::invalid_argument("need as many moments as points");
    for (int i = 1; i < k; ++i)
        if (!(points[static_cast<size_t>(i - 1)] < points[static_cast<size_t>(i)]))
            throw std::invalid_argument("points must be strictly increasing");

    DenseSystem sys = DenseSystem::zeros(k);
    std::vector<double> colscale(static_cast<size_t>(k), 0.0);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i) {
            const double v = set.eval(j, points[static_cast<size_t>(i)]) / moments.scale(j);
            sys.at(j, i) = v;
            colscale[static_cast<size_t>(i)] = std::max(colscale[static_cast<size_t>(i)], std::abs(v));
        }
    for (int i = 0; i < k; ++i)
        if (colscale[static_cast<size_t>(i)] == 0.0) colscale[static_cast<size_t>(i)] = 1.0;
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i) sys.at(j, i) /= colscale[static_cast<size_t>(i)];
    for (int j = 0; j < k; ++j) sys.rhs[static_cast<size_t>(j)] = moments[j] / moments.scale(j);

    SolveReport rep = ggq::solve(sys);
    for (int i = 0; i < k; ++i) rep.solution[static_cast<size_t>(i)] /= colscale[static_cast<size_t>(i)];
    return rep.solution;
}

} // namespace ggq
