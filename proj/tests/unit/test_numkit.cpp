#include <doctest.h>

#include "becomp/error.hpp"
#include "becomp/numkit.hpp"
#include "../support/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace becomp;
using namespace becomp::numkit;

TEST_CASE("tolerance validation") {
    CHECK_NOTHROW(Tolerance{}.validate());
    CHECK_THROWS_AS((Tolerance{0.0, 1e-6, 100}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Tolerance{1e-8, 1.0, 100}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Tolerance{1e-8, 1e-6, 15}.validate()), std::invalid_argument);
}

TEST_CASE("ode: exponential growth") {
    const Tolerance tol{1e-12, 1e-12, 100000};
    auto traj = integrate_ode([](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0]; }, 0.0,
                              {1.0}, 1.0, tol);
    CHECK(std::abs(traj.back()[0] - std::exp(1.0)) < 1e-9);
    CHECK(traj.t_begin() == 0.0);
    CHECK(traj.t_end() == 1.0);
    CHECK(traj.nodes().front().y[0] == 1.0);
    for (std::size_t i = 1; i < traj.size(); ++i) CHECK(traj.nodes()[i].t > traj.nodes()[i - 1].t);
}

TEST_CASE("ode: harmonic oscillator and dense output") {
    const Tolerance tol{1e-12, 1e-12, 100000};
    auto rhs = [](double, std::span<const double> y, std::span<double> dy) {
        dy[0] = y[1];
        dy[1] = -y[0];
    };
    auto traj = integrate_ode(rhs, 0.0, {0.0, 1.0}, std::numbers::pi / 2, tol);
    CHECK(std::abs(traj.back()[0] - 1.0) < 1e-10);
    for (int i = 0; i <= 100; ++i) {
        const double t = i * (std::numbers::pi / 2) / 100;
        CHECK(std::abs(traj.at(t, 0) - std::sin(t)) < 1e-9);
        CHECK(std::abs(traj.at(t, 1) - std::cos(t)) < 1e-9);
    }
    CHECK_THROWS_AS(traj.at(2.0), DomainError);
}

TEST_CASE("ode: Riccati m' = -m^2 from m(1) = 1") {
    const Tolerance tol{1e-12, 1e-12, 100000};
    auto traj = integrate_ode([](double, std::span<const double> y, std::span<double> dy) { dy[0] = -y[0] * y[0]; },
                              1.0, {1.0}, 4.0, tol);
    CHECK(std::abs(traj.back()[0] - 0.25) < 1e-10);
    CHECK(std::abs(traj.at(2.0, 0) - 0.5) < 1e-9);
}

TEST_CASE("ode: blow-up and step limits are reported") {
    // m' = m^2 from m(0) = 1 blows up at t = 1.
    auto rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0] * y[0]; };
    CHECK_THROWS_AS(integrate_ode(rhs, 0.0, {1.0}, 2.0, Tolerance{1e-10, 1e-10, 2000}), NumericError);
    auto osc = [](double, std::span<const double> y, std::span<double> dy) {
        dy[0] = 1000.0 * y[1];
        dy[1] = -1000.0 * y[0];
    };
    try {
        integrate_ode(osc, 0.0, {0.0, 1.0}, 100.0, Tolerance{1e-10, 1e-10, 20});
        FAIL("expected step limit");
    } catch (const NumericError& e) {
        CHECK(e.kind() == NumericError::Kind::StepLimit);
    }
}

TEST_CASE("ode property: linear constant-coefficient systems match exp(At)") {
    auto g = oracle::rng(20240611);
    const Tolerance tol{1e-11, 1e-11, 200000};
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::array<double, 4> A;
        for (double& x : A) x = oracle::uniform(g, -2.0, 2.0);
        const double y0a = oracle::uniform(g, -1.0, 1.0), y0b = oracle::uniform(g, -1.0, 1.0);
        auto rhs = [&A](double, std::span<const double> y, std::span<double> dy) {
            dy[0] = A[0] * y[0] + A[1] * y[1];
            dy[1] = A[2] * y[0] + A[3] * y[1];
        };
        auto traj = integrate_ode(rhs, 0.0, {y0a, y0b}, 1.0, tol);
        const auto E = oracle::expm2(A, 1.0);
        const double ya = E[0] * y0a + E[1] * y0b, yb = E[2] * y0a + E[3] * y0b;
        const double scale = 1.0 + std::max(std::abs(ya), std::abs(yb));
        worst = std::max(worst, std::max(std::abs(traj.back()[0] - ya), std::abs(traj.back()[1] - yb)) / scale);
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("quad: closed-form integrals") {
    const Tolerance tol{1e-12, 1e-12, 1000000};
    CHECK(std::abs(quad_adaptive([](double t) { return std::sin(t); }, 0.0, std::numbers::pi, tol).value - 2.0) <
          1e-11);
    CHECK(std::abs(quad_adaptive([](double t) { return t * t * t; }, 0.0, 2.0, tol).value - 4.0) < 1e-12);
    const double vol = quad_adaptive([](double t) { return 4 * std::numbers::pi * std::sin(t) * std::sin(t); }, 0.0,
                                     std::numbers::pi, tol)
                           .value;
    CHECK(std::abs(vol - 2 * std::numbers::pi * std::numbers::pi) < 1e-10);
    CHECK(quad_adaptive([](double t) { return t; }, 1.5, 1.5, tol).value == 0.0);
}

TEST_CASE("quad: failure modes") {
    CHECK_THROWS_AS(quad_adaptive([](double t) { return 1.0 / t; }, 0.0, 1.0, Tolerance{1e-10, 1e-10, 1000}),
                    NumericError);
    CHECK_THROWS_AS(quad_adaptive([](double t) { return std::sin(1.0 / (t + 1e-9)); }, 0.0, 1.0,
                                  Tolerance{1e-13, 1e-13, 5000}),
                    NumericError);
}

TEST_CASE("quad property: additivity over interior split points") {
    auto g = oracle::rng(7);
    const Tolerance tol{1e-10, 1e-10, 1000000};
    for (int trial = 0; trial < 50; ++trial) {
        const double w = oracle::uniform(g, 0.5, 4.0), p = oracle::uniform(g, -1.0, 1.0);
        auto f = [w, p](double t) { return std::exp(p * t) * std::cos(w * t) + t * t; };
        const double a = oracle::uniform(g, -2.0, 0.0), b = oracle::uniform(g, 0.5, 3.0);
        const double c = oracle::uniform(g, a, b);
        const double whole = quad_adaptive(f, a, b, tol).value;
        const double split = quad_adaptive(f, a, c, tol).value + quad_adaptive(f, c, b, tol).value;
        const double allowed = 2.0 * std::max(tol.abs_tol, tol.rel_tol * std::abs(whole));
        CHECK(std::abs(whole - split) <= allowed);
    }
}

TEST_CASE("cumulative integral agrees with direct quadrature") {
    auto f = [](double t) { return std::cos(t) + 0.5 * t; };
    auto F = CumulativeIntegral::uniform(f, 0.0, 3.0, 16, kPrecise);
    for (double t : {0.0, 0.1, 0.77, 1.5, 2.999, 3.0}) CHECK(std::abs(F(t) - (std::sin(t) + 0.25 * t * t)) < 1e-12);
    CHECK_THROWS_AS(F(3.5), DomainError);
}

TEST_CASE("roots: bracketed examples") {
    const Tolerance tol{1e-12, 1e-12, 1000};
    CHECK(std::abs(find_root_bracketed([](double x) { return std::cos(x); }, 0.0, 2.0, tol) - std::numbers::pi / 2) <
          1e-11);
    CHECK(std::abs(find_root_bracketed([](double x) { return x * x - 2.0; }, 0.0, 2.0, tol) - std::sqrt(2.0)) <
          1e-11);
    auto res = bracket_root([](double x) { return x * x * x - x - 1.0; }, 1.0, 2.0, tol, false);
    CHECK((res.hi - res.lo <= tol.abs_tol || std::abs(res.f_x) <= tol.abs_tol));
    try {
        find_root_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0, tol);
        FAIL("expected invalid bracket");
    } catch (const NumericError& e) {
        CHECK(e.kind() == NumericError::Kind::InvalidBracket);
    }
}

TEST_CASE("gamma: reference values") {
    CHECK(oracle::rel_err(gamma_real(0.5), std::sqrt(std::numbers::pi)) < 1e-13);
    CHECK(oracle::rel_err(gamma_real(5.0), 24.0) < 1e-13);
    CHECK(oracle::rel_err(gamma_real(2.5), 1.5 * 0.5 * std::sqrt(std::numbers::pi)) < 1e-13);
    CHECK(oracle::rel_err(gamma_real(1.0), 1.0) < 1e-13);
    // (2m)! / (4^m m!) sqrt(pi) = Gamma(m + 1/2)
    double fact = 1.0;
    for (int m = 1; m <= 20; ++m) {
        fact *= m;
        double expected = std::sqrt(std::numbers::pi);
        for (int j = 1; j <= m; ++j) expected *= (j - 0.5);
        CHECK(oracle::rel_err(gamma_real(m + 0.5), expected) < 1e-12);
        CHECK(oracle::rel_err(gamma_real(m + 1.0), fact) < 1e-12);
    }
    CHECK_THROWS_AS(gamma_real(0.0), DomainError);
    CHECK_THROWS_AS(gamma_real(-1.5), DomainError);
}

TEST_CASE("gamma property: recurrence on [0.5, 20]") {
    for (int i = 0; i <= 390; ++i) {
        const double x = 0.5 + 0.05 * i;
        CHECK(oracle::rel_err(gamma_real(x + 1.0), x * gamma_real(x)) < 1e-11);
    }
}

TEST_CASE("sphere areas") {
    for (int d = 1; d <= 7; ++d) CHECK(oracle::rel_err(sphere_area(d), oracle::sphere_area_int(d)) < 1e-13);
    CHECK(oracle::rel_err(sphere_area(5.0), 26.31894506957162) < 1e-12);
    for (int i = 0; i <= 200; ++i) {
        const double d = 1.0 + 0.1 * i;
        CHECK(oracle::rel_err(sphere_area(d + 2.0), sphere_area(d) * 2.0 * std::numbers::pi / d) < 1e-11);
    }
    CHECK_THROWS_AS(sphere_area(0.5), DomainError);
}
