#include <doctest.h>

#include "becomp/error.hpp"
#include "becomp/model.hpp"
#include "../support/oracles.hpp"

#include <cmath>
#include <numbers>

using namespace becomp;
using namespace becomp::model;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("sn reference values") {
    CHECK(std::abs(sn(1.0, pi / 2) - 1.0) < 1e-15);
    CHECK(sn(0.0, 3.7) == 3.7);
    CHECK(oracle::rel_err(sn(-1.0, 1.0), 1.1752011936438014) < 1e-14);
    CHECK(std::abs(sn_prime(1.0, pi / 3) - 0.5) < 1e-15);
    CHECK(sn_prime(0.0, 2.0) == 1.0);
}

TEST_CASE("sn property: curvature scaling") {
    for (double H : {0.25, 2.0, 9.0, -0.5, -4.0}) {
        const double s = std::sqrt(std::abs(H));
        const double base = H > 0 ? 1.0 : -1.0;
        for (int i = 0; i < 64; ++i) {
            const double r = (H > 0 ? 0.99 * pi / s : 3.0) * i / 63.0;
            CHECK(std::abs(sn(H, r) - sn(base, s * r) / s) <= 1e-12 * (1.0 + std::abs(sn(H, r))));
        }
    }
}

TEST_CASE("sn property: continuity in H at 0") {
    for (int i = 0; i <= 100; ++i) {
        const double r = 0.1 * i;
        CHECK(std::abs(sn(1e-8, r) - r) <= 1e-7 * (1.0 + r * r * r));
        CHECK(std::abs(sn(-1e-8, r) - r) <= 1e-7 * (1.0 + r * r * r));
    }
}

TEST_CASE("mean curvature reference values and domain") {
    CHECK(std::abs(mean_curvature_model(3, 0.0, 2.0) - 1.0) < 1e-15);
    CHECK(std::abs(mean_curvature_model(3, 1.0, pi / 4) - 2.0) < 1e-14);
    CHECK(std::abs(mean_curvature_model(5, 0.0, 2.0) - 2.0) < 1e-15);
    CHECK_THROWS_AS(mean_curvature_model(3, 1.0, pi), DomainError);
    CHECK_THROWS_AS(mean_curvature_model(3, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(mean_curvature_model(3, 4.0, pi / 2 - 1e-13), DomainError);
    CHECK_NOTHROW(mean_curvature_model(3, 4.0, pi / 2 - 1e-9));
}

TEST_CASE("mean curvature: pole series matches closed form across the switch") {
    for (double H : {-1.0, 1.0, 4.0}) {
        const double scale = 1.0 / std::sqrt(std::abs(H));
        for (double f : {0.5, 0.99, 1.01, 2.0}) {
            const double r = f * 1e-4 * scale;
            const double s = std::sqrt(std::abs(H));
            const double exact = H > 0 ? 2.0 * s / std::tan(s * r) : 2.0 * s / std::tanh(s * r);
            CHECK(oracle::rel_err(mean_curvature_model(3, H, r), exact) < 1e-13);
        }
    }
}

TEST_CASE("mean curvature property: strictly decreasing") {
    for (double d : {2.0, 3.0, 4.5, 7.0}) {
        for (double H : {-2.0, -1.0, 0.0, 0.5, 1.0, 3.0}) {
            const double top = H > 0 ? pi / std::sqrt(H) * 0.999 : 5.0;
            double prev = mean_curvature_model(d, H, top * 1e-3);
            for (int i = 2; i <= 500; ++i) {
                const double m = mean_curvature_model(d, H, top * i / 500.0);
                CHECK(m < prev);
                prev = m;
            }
        }
    }
}

TEST_CASE("area and volume reference values") {
    CHECK(oracle::rel_err(area_model(ModelSpace(3, 0.0), 1.7), 4 * pi * 1.7 * 1.7) < 1e-14);
    CHECK(oracle::rel_err(area_model(ModelSpace(3, 1.0), pi / 2), 4 * pi) < 1e-14);
    CHECK(oracle::rel_err(area_model(ModelSpace(2, 0.0, 1.0), 1.0), 2 * pi * std::exp(1.0)) < 1e-14);
    CHECK(oracle::rel_err(volume_model(ModelSpace(3, 0.0), 1.0), 4 * pi / 3) < 1e-12);
    CHECK(oracle::rel_err(volume_model(ModelSpace(3, 1.0), pi), 2 * pi * pi) < 1e-12);
    CHECK(volume_model(ModelSpace(3, 0.0), 0.0) == 0.0);
    CHECK_THROWS_AS(area_model(ModelSpace(3, 1.0), 3.5), DomainError);
    CHECK_THROWS_AS(ModelSpace(0.5, 0.0), DomainError);
    CHECK_THROWS_AS(ModelSpace(3, 0.0, -1.0), DomainError);
}

TEST_CASE("model closed forms on 64-point grids, d = 2..5, H = -1, 0, 1") {
    for (int d = 2; d <= 5; ++d) {
        for (double H : {-1.0, 0.0, 1.0}) {
            const ModelSpace m(d, H);
            const double top = H > 0 ? 0.999 * pi : 3.0;
            for (int i = 1; i <= 64; ++i) {
                const double r = top * i / 64.0;
                CHECK(oracle::rel_err(sn(H, r), oracle::sn(H, r)) < 1e-9);
                CHECK(oracle::rel_err(mean_curvature_model(d, H, r), oracle::mean_curvature(d, H, r)) < 1e-9);
                CHECK(oracle::rel_err(area_model(m, r), oracle::sphere_area_int(d) * std::pow(oracle::sn(H, r), d - 1)) <
                      1e-9);
                CHECK(oracle::rel_err(volume_model(m, r), oracle::model_volume(d, H, r)) < 1e-9);
            }
        }
    }
}

TEST_CASE("volume property: derivative equals area") {
    auto g = oracle::rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const double d = oracle::uniform(g, 2.0, 6.0);
        const double H = oracle::uniform(g, -1.0, 1.0);
        const double a = oracle::uniform(g, 0.0, 1.0);
        const ModelSpace m(d, H, a);
        const double R = oracle::uniform(g, 0.2, H > 0 ? 0.9 * pi / std::sqrt(H) : 3.0);
        const double h = 1e-3 * R;
        const double deriv = (volume_model(m, R + h) - volume_model(m, R - h)) / (2 * h);
        const double curv = (area_model(m, R + h) - 2 * area_model(m, R) + area_model(m, R - h)) / (h * h);
        // Central difference error is h^2/6 * A''.
        CHECK(std::abs(deriv - area_model(m, R)) <= 1e-8 * area_model(m, R) + h * h * std::abs(curv));
    }
}

TEST_CASE("c_const") {
    for (int n = 2; n <= 8; ++n)
        for (double H : {-1.0, 0.0, 2.0}) CHECK(c_const(n, 0.0, H) == 1.0);
    CHECK(oracle::rel_err(c_const(3, 0.5, 0.0), 2 * pi / 3) < 1e-10);
    CHECK(oracle::rel_err(c_const(2, 0.25, 1.0), 2.0) < 1e-12);
    CHECK(oracle::rel_err(oracle::sphere_area_int(5) / oracle::sphere_area_int(3), 2 * pi / 3) < 1e-14);
    CHECK_THROWS_AS(c_const(1, 0.0, 0.0), DomainError);
}

TEST_CASE("tabulated model volume") {
    for (double H : {-1.0, 0.0, 1.0}) {
        const ModelSpace m(4, H);
        const double T = H > 0 ? pi / 2 : 2.0;
        const ModelVolume mv(m, T);
        for (int i = 0; i <= 40; ++i) {
            const double t = T * i / 40.0;
            if (t == 0.0) {
                CHECK(mv.volume(0.0) == 0.0);
                continue;
            }
            // Gauss-Legendre reference; the closed form cancels badly for small t.
            const double ref = oracle::gauss5([H](double x) { return 2 * pi * pi * std::pow(oracle::sn(H, x), 3); },
                                              0.0, t, 200);
            CHECK(oracle::rel_err(mv.volume(t), ref) < 1e-10);
            CHECK(oracle::rel_err(mv.log_derivative(t), area_model(m, t) / ref) < 1e-10);
        }
        // Near the pole A/V -> d/t.
        CHECK(oracle::rel_err(mv.log_derivative(1e-5), 4.0 / 1e-5) < 1e-6);
        CHECK(mv.growth_integrand(0.7, 0.0) == doctest::Approx(2.8));
        CHECK(oracle::rel_err(mv.growth_integrand(0.7, 1e-5), 2.8) < 1e-4);
    }
}
