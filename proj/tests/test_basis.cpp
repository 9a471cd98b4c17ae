#include <doctest.h>

#include <cmath>
#include <random>

#include "ggq/basis.hpp"
#include "oracles.hpp"

using namespace ggq;

namespace {
constexpr double kGamma = 0.57721566490153286;

BasisDescriptor desc(Family f, int count, Interval iv = {}, bool monomial = false) {
    BasisDescriptor d;
    d.family = f;
    d.count = count;
    d.interval = iv;
    d.monomial = monomial;
    return d;
}
} // namespace

TEST_CASE("built-in family evaluation") {
    ChebyshevSet leg = make_set(desc(Family::ChebyshevPoly, 6, {-1.0, 1.0}));
    CHECK(leg.eval(2, 0.5) == doctest::Approx(-0.5).epsilon(1e-15)); // 2x^2-1
    CHECK(leg.eval(0, 0.3) == 1.0);
    CHECK(leg.eval(3, 0.2) == doctest::Approx(4 * 0.008 - 3 * 0.2).epsilon(1e-14));

    ChebyshevSet unit = make_set(desc(Family::ChebyshevPoly, 4, {0.0, 1.0}));
    CHECK(unit.eval(0, 0.3) == 1.0);
    CHECK(unit.eval(1, 0.75) == doctest::Approx(0.5)); // 2t-1

    ChebyshevSet cl = make_set(desc(Family::ChebyshevPolyPlusLog, 10, {0.0, 1.0}));
    CHECK(cl.eval(5, 1.0) == 0.0); // first log element, log 1 = 0
    CHECK(cl.eval(5, 0.5) == doctest::Approx(std::log(0.5)));
    CHECK(cl.eval(6, 0.5) == doctest::Approx(0.0)); // C_1(0) log(0.5)
    CHECK_THROWS_AS(cl.eval(5, 0.0), std::domain_error);

    ChebyshevSet lag = make_set(desc(Family::MonicLaguerreType, 4));
    CHECK(lag.domain().half_line);
    CHECK(lag.domain().b == doctest::Approx(2 * 4 + 45.0));
    CHECK(lag.eval(1, 3.0) == doctest::Approx(2.0));        // t-1
    CHECK(lag.eval(2, 1.0) == doctest::Approx(1.0 - 4.0 + 2.0)); // t^2-4t+2

    ChebyshevSet lagm = make_set(desc(Family::MonicLaguerreType, 4, {}, true));
    CHECK(lagm.eval(3, 2.0) == doctest::Approx(8.0)); // monomial t^3
}

TEST_CASE("descriptor validation") {
    CHECK_THROWS_AS(make_set(desc(Family::ChebyshevPolyPlusLog, 5, {0.0, 1.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_set(desc(Family::ChebyshevPoly, 1, {0.0, 1.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_set(desc(Family::ChebyshevPoly, 4, {1.0, 0.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_set(desc(Family::MonicLaguerreType, 16, {}, true)),
                    std::invalid_argument); // monomial degree cap
    CHECK_THROWS_AS(make_custom_set({0.0, 1.0}, 2, nullptr), std::invalid_argument);
}

TEST_CASE("derivatives match finite differences") {
    std::mt19937 rng(7);
    auto check_family = [&](const BasisDescriptor& d, double lo, double hi) {
        ChebyshevSet set = make_set(d);
        std::uniform_real_distribution<double> dist(lo, hi);
        for (int rep = 0; rep < 40; ++rep) {
            const double t = dist(rng);
            const int j = int(rng() % unsigned(set.size()));
            const double h = 1e-6 * (set.domain().length());
            const double fd = (set.eval(j, t + h) - set.eval(j, t - h)) / (2 * h);
            const double an = set.deriv(j, t);
            CHECK(an == doctest::Approx(fd).epsilon(1e-5).scale(std::max(1.0, std::abs(an))));
        }
    };
    check_family(desc(Family::ChebyshevPoly, 8, {-1.0, 1.0}), -0.95, 0.95);
    check_family(desc(Family::ChebyshevPolyPlusLog, 8, {0.0, 1.0}), 0.05, 0.95);
    check_family(desc(Family::MonicLaguerreType, 6), 0.5, 30.0);
    check_family(desc(Family::LaguerreTypePlusLog, 8), 0.5, 30.0);
    check_family(desc(Family::LaguerreTypePlusLog, 6, {}, true), 0.5, 20.0);
}

TEST_CASE("chebyshev pair determinant never vanishes (spot check)") {
    std::mt19937 rng(11);
    for (auto d : {desc(Family::ChebyshevPoly, 4, {-1.0, 1.0}),
                   desc(Family::ChebyshevPolyPlusLog, 4, {0.0, 1.0}),
                   desc(Family::MonicLaguerreType, 4),
                   desc(Family::LaguerreTypePlusLog, 4)}) {
        ChebyshevSet set = make_set(d);
        const double a = set.domain().a, b = set.domain().b;
        std::uniform_real_distribution<double> dist(a + 1e-6 * (b - a), b - 1e-9 * (b - a));
        for (int rep = 0; rep < 200; ++rep) {
            double t0 = dist(rng), t1 = dist(rng);
            if (t0 == t1) continue;
            if (t0 > t1) std::swap(t0, t1);
            const double det = set.eval(0, t0) * set.eval(1, t1) -
                               set.eval(0, t1) * set.eval(1, t0);
            CHECK(det != 0.0);
        }
    }
}

TEST_CASE("closed-form moments: polynomial families") {
    ChebyshevSet leg = make_set(desc(Family::ChebyshevPoly, 6, {-1.0, 1.0}));
    MomentVector m = moments(leg, {}, 3);
    CHECK(m.source == MomentSource::Analytic);
    CHECK(m[0] == doctest::Approx(2.0));
    CHECK(m[1] == doctest::Approx(0.0));
    CHECK(m[2] == doctest::Approx(-2.0 / 3.0));

    // monomial variant of the log family on [0,1]: x log x integrates to -1/4
    ChebyshevSet xlog = make_set(desc(Family::ChebyshevPolyPlusLog, 4, {0.0, 1.0}, true));
    MomentVector mx = moments(xlog, {}, 4);
    CHECK(mx[2] == doctest::Approx(-1.0)); // log x
    CHECK(mx[3] == doctest::Approx(-0.25));
}

TEST_CASE("half-line closed-form moments") {
    WeightSpec w;
    w.kind = WeightSpec::Kind::ExpDecay;

    ChebyshevSet lag = make_set(desc(Family::MonicLaguerreType, 6));
    MomentVector m = moments(lag, w, 6);
    CHECK(m.source == MomentSource::Analytic);
    CHECK(m[0] == doctest::Approx(1.0));
    for (int j = 1; j < 6; ++j) CHECK(m[j] == 0.0);

    ChebyshevSet lagm = make_set(desc(Family::MonicLaguerreType, 8, {}, true));
    MomentVector mm = moments(lagm, w, 8);
    double fact = 1.0;
    for (int j = 0; j < 8; ++j) {
        if (j > 0) fact *= j;
        CHECK(mm[j] == doctest::Approx(fact).epsilon(1e-15));
    }

    ChebyshevSet laglog = make_set(desc(Family::LaguerreTypePlusLog, 4));
    MomentVector ml = moments(laglog, w, 4);
    CHECK(ml[2] == doctest::Approx(-kGamma).epsilon(1e-15)); // int e^-x log x
    CHECK(ml[3] == doctest::Approx(1.0).epsilon(1e-15));     // int (x-1) log x e^-x

    ChebyshevSet laglogm = make_set(desc(Family::LaguerreTypePlusLog, 4, {}, true));
    MomentVector mlm = moments(laglogm, w, 4);
    CHECK(mlm[2] == doctest::Approx(-kGamma));
    CHECK(mlm[3] == doctest::Approx(1.0 - kGamma));
}

TEST_CASE("laguerre_log_moment values and overflow") {
    CHECK(laguerre_log_moment(0) == doctest::Approx(-0.5772156649).epsilon(1e-9));
    CHECK(laguerre_log_moment(1) == doctest::Approx(0.4227843351).epsilon(1e-9));
    CHECK(laguerre_log_moment(2) == doctest::Approx(1.8455686702).epsilon(1e-9));
    CHECK_THROWS_AS(laguerre_log_moment(200), Error);
    CHECK_THROWS_AS(laguerre_log_moment(-1), std::invalid_argument);

    // independent quadrature oracle for the gamma-function derivative values
    for (int j = 0; j <= 3; ++j) {
        const double ref = oracle::tanh_sinh(
            [&](double x) { return std::pow(x, j) * std::log(x) * std::exp(-x); }, 0.0, 80.0,
            1e-14);
        CHECK(laguerre_log_moment(j) ==
              doctest::Approx(ref).epsilon(1e-12).scale(std::max(1.0, std::abs(ref))));
    }
}

TEST_CASE("graded quadrature cross-checks for the chebyshev-log moments") {
    ChebyshevSet cl = make_set(desc(Family::ChebyshevPolyPlusLog, 12, {0.0, 1.0}));
    MomentVector m = moments(cl, {}, 12);
    CHECK(m.source == MomentSource::AdaptiveQuadrature);
    // analytic anchors: int_0^1 C_j(2x-1) log x dx
    const double expected[6] = {-1.0, 0.5, 1.0 / 9.0, -1.0 / 6.0, 23.0 / 225.0, -7.0 / 90.0};
    for (int j = 0; j < 6; ++j)
        CHECK(m[6 + j] == doctest::Approx(expected[j]).epsilon(1e-13));
}

TEST_CASE("analytic and numeric moment paths agree") {
    WeightSpec exp_w;
    exp_w.kind = WeightSpec::Kind::ExpDecay;

    auto agree = [](const ChebyshevSet& set, const WeightSpec& w, int m, double tol) {
        MomentVector a = moments(set, w, m);
        MomentVector b = numeric_moments(set, w, m);
        CHECK(b.source == MomentSource::AdaptiveQuadrature);
        const double scale = std::max(a.max_abs(), 1.0);
        for (int j = 0; j < m; ++j)
            CHECK(std::abs(a[j] - b[j]) / scale <= tol);
    };
    agree(make_set(desc(Family::ChebyshevPoly, 16, {-1.0, 1.0})), {}, 16, 1e-13);
    agree(make_set(desc(Family::ChebyshevPoly, 8, {0.2, 2.5})), {}, 8, 1e-13);
    agree(make_set(desc(Family::ChebyshevPolyPlusLog, 12, {0.0, 1.0})), {}, 12, 1e-12);
    agree(make_set(desc(Family::MonicLaguerreType, 6)), exp_w, 6, 1e-12);
    agree(make_set(desc(Family::LaguerreTypePlusLog, 6)), exp_w, 6, 1e-11);
    agree(make_set(desc(Family::LaguerreTypePlusLog, 8, {}, true)), exp_w, 8, 1e-12);
}

TEST_CASE("monomial factorial moments against the quadrature oracle") {
    // j! stays exact in double through j = 15; the oracle integrates the
    // (positive) integrand independently.
    double fact = 1.0;
    for (int j = 0; j <= 15; ++j) {
        if (j > 0) fact *= j;
        const double ref = oracle::tanh_sinh(
            [&](double x) { return std::pow(x, j) * std::exp(-x); }, 0.0, 140.0, 1e-14);
        CHECK(std::abs(ref - fact) / fact <= 1e-13);
    }
}

TEST_CASE("custom sets") {
    ChebyshevSet lin = make_custom_set({0.0, 1.0}, 2, [](int j, double t) {
        return j == 0 ? 1.0 : t;
    });
    CHECK(!lin.differentiable());
    CHECK_THROWS_AS(lin.deriv(1, 0.5), Error);
    MomentVector m = numeric_moments(lin, {}, 2);
    CHECK(m[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m[1] == doctest::Approx(0.5).epsilon(1e-13));
}
