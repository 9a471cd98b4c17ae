#pragma once

#include <span>
#include <vector>

#include "ggq/basis.hpp"

namespace ggq {

/// Small dense square system A x = b, row-major.
struct DenseSystem {
    int n = 0;
    std::vector<double> a;   // n*n entries
    std::vector<double> rhs; // n entries

    static DenseSystem zeros(int n);
    double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

struct SolveReport {
    std::vector<double> solution;
    double condition_estimate = 1.0; // 1-norm estimate, >= 1
    double pivot_growth = 0.0;
};

/// LU factorization with partial pivoting, kept around so Newton
/// iterations can reuse a factorization for several right-hand sides.
class LuSolver {
public:
    explicit LuSolver(const DenseSystem& system); // throws SingularSystemError
    LuSolver(std::vector<double> matrix, int n);

    int size() const { return n_; }
    std::vector<double> solve(std::span<const double> rhs) const;
    std::vector<double> solve_transposed(std::span<const double> rhs) const;
    /// Hager-style 1-norm condition estimate (5 sweeps).
    double condition_estimate() const;
    double pivot_growth() const { return pivot_growth_; }

private:
    int n_;
    std::vector<double> lu_;
    std::vector<int> perm_;
    std::vector<double> orig_; // kept for the condition estimator
    double pivot_growth_;
};

/// Row-pivoted elimination. One step of residual refinement is applied
/// when the condition estimate exceeds 1e8.
SolveReport solve(const DenseSystem& system);

/// Weights of the interpolatory quadrature rule in the given points:
/// solves sum_i w_i u_j(x_i) = c_j for j = 0..k-1 with k = #points.
std::vector<double> interpolatory_weights(const ChebyshevSet& set,
                                          std::span<const double> points,
                                          const MomentVector& moments);

} // namespace ggq
