#include <doctest.h>

#include <cmath>
#include <random>

#include "ggq/densesolve.hpp"
#include "oracles.hpp"

using namespace ggq;

TEST_CASE("solve: closed-form systems") {
    DenseSystem id = DenseSystem::zeros(2);
    id.at(0, 0) = id.at(1, 1) = 1.0;
    id.rhs = {3.0, -1.0};
    SolveReport r = solve(id);
    CHECK(r.solution[0] == 3.0);
    CHECK(r.solution[1] == -1.0);
    CHECK(r.condition_estimate >= 1.0);

    // the k=1 canonical system with xi = -0.2 and b = 1
    DenseSystem s = DenseSystem::zeros(2);
    s.at(0, 0) = 1.0;
    s.at(0, 1) = 1.0;
    s.at(1, 0) = -0.2;
    s.at(1, 1) = 1.0;
    s.rhs = {2.0, 0.0};
    r = solve(s);
    CHECK(r.solution[0] == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    CHECK(r.solution[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("solve: exact singularity raises") {
    DenseSystem s = DenseSystem::zeros(2);
    s.at(0, 0) = 1.0;
    s.at(0, 1) = 2.0;
    s.at(1, 0) = 2.0;
    s.at(1, 1) = 4.0;
    s.rhs = {1.0, 2.0};
    CHECK_THROWS_AS(solve(s), SingularSystemError);
}

TEST_CASE("solve: residual bound over random well-conditioned systems") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    int tested = 0;
    while (tested < 1000) {
        const int n = 1 + int(rng() % 20);
        DenseSystem s = DenseSystem::zeros(n);
        for (double& v : s.a) v = dist(rng);
        for (double& v : s.rhs) v = dist(rng);
        SolveReport r;
        try {
            r = solve(s);
        } catch (const SingularSystemError&) {
            continue;
        }
        if (r.condition_estimate > 1e6) continue; // property targets cond < 1e6
        ++tested;
        double anorm = 0.0, xnorm = 0.0, resid = 0.0;
        for (int i = 0; i < n; ++i) {
            double row = 0.0, ax = 0.0;
            for (int j = 0; j < n; ++j) {
                row += std::abs(s.at(i, j));
                ax += s.at(i, j) * r.solution[size_t(j)];
            }
            anorm = std::max(anorm, row);
            resid = std::max(resid, std::abs(ax - s.rhs[size_t(i)]));
        }
        for (double v : r.solution) xnorm = std::max(xnorm, std::abs(v));
        CHECK(resid <= 1e-12 * anorm * xnorm);
    }
}

TEST_CASE("solve: collocation system against the exact rational oracle") {
    BasisDescriptor d;
    d.family = Family::ChebyshevPolyPlusLog;
    d.count = 10;
    d.interval = {0.0, 1.0};
    ChebyshevSet set = make_set(d);
    oracle::Rule nodes = oracle::gauss_legendre(10, 0.0, 1.0);

    const int n = 10;
    DenseSystem s = DenseSystem::zeros(n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) s.at(j, i) = set.eval(j, nodes.points[size_t(i)]);
    MomentVector mom = moments(set, {}, n);
    s.rhs = mom.values;

    SolveReport r = solve(s);
    std::vector<double> exact = oracle::rational_solve(s.a, s.rhs, n);
    double scale = 0.0;
    for (double v : exact) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < n; ++i)
        CHECK(std::abs(r.solution[size_t(i)] - exact[size_t(i)]) <= 1e-9 * scale);
}

TEST_CASE("condition estimate is in the right ballpark") {
    const int n = 6; // Hilbert matrix, cond_1 ~ 2.9e7
    DenseSystem s = DenseSystem::zeros(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s.at(i, j) = 1.0 / (i + j + 1.0);
    s.rhs.assign(size_t(n), 1.0);
    SolveReport r = solve(s);
    CHECK(r.condition_estimate >= 1e6);
    CHECK(r.condition_estimate <= 1e9);
    CHECK(r.pivot_growth > 0.0);
}

TEST_CASE("interpolatory weights") {
    // single constant element
    ChebyshevSet c1 = make_custom_set({0.0, 1.0}, 2, [](int j, double t) {
        return j == 0 ? 1.0 : t;
    });
    MomentVector one;
    one.values = {1.0};
    std::vector<double> pts{0.5};
    CHECK(interpolatory_weights(c1, pts, one)[0] == doctest::Approx(1.0));

    // midpoint rule on [-1,1]
    BasisDescriptor leg;
    leg.family = Family::ChebyshevPoly;
    leg.count = 4;
    leg.interval = {-1.0, 1.0};
    ChebyshevSet set = make_set(leg);
    MomentVector m2;
    m2.values = {2.0};
    std::vector<double> mid{0.0};
    CHECK(interpolatory_weights(set, mid, m2)[0] == doctest::Approx(2.0));

    // symmetric 2-point rule on [0,1]
    BasisDescriptor u01 = leg;
    u01.interval = {0.0, 1.0};
    ChebyshevSet set01 = make_set(u01);
    MomentVector m01 = moments(set01, {}, 2);
    const double h = 0.5 / std::sqrt(3.0);
    std::vector<double> sym{0.5 - h, 0.5 + h};
    auto w = interpolatory_weights(set01, sym, m01);
    CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-14));

    // exactness property at an oracle Gauss rule
    MomentVector m8 = moments(set01, {}, 8);
    BasisDescriptor big = u01;
    big.count = 8;
    ChebyshevSet set8 = make_set(big);
    oracle::Rule g4 = oracle::gauss_legendre(4, 0.0, 1.0);
    // 4 points integrate 4 moments interpolatory-exactly; compare with
    // the oracle's own weights, which satisfy the same system.
    auto wi = interpolatory_weights(set8, g4.points, m8);
    for (int i = 0; i < 4; ++i)
        CHECK(wi[size_t(i)] == doctest::Approx(g4.weights[size_t(i)]).epsilon(1e-12));

    std::vector<double> bad{0.5, 0.5};
    CHECK_THROWS_AS(interpolatory_weights(set01, bad, m01), std::invalid_argument);
}
