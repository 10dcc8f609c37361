#include <doctest.h>

#include "becomp/error.hpp"
#include "becomp/global.hpp"
#include "../support/oracles.hpp"

#include <cmath>

using namespace becomp;
using namespace becomp::global;
using smms::make_space;

namespace {
constexpr double pi = oracle::pi;
}

TEST_CASE("Myers bounds: formula values") {
    CHECK(myers_bound_bounded_f(3, 1.0, 0.0, 0.0) == pi);
    CHECK(myers_bound_bounded_f(3, 1.0, 1.0, 0.0) == doctest::Approx(pi + 2.0));
    CHECK(myers_bound_bounded_f(3, 1.0, 0.0, 1.0) == doctest::Approx(pi + 1.0));
    CHECK(myers_bound_gradient(3, 1.0, 0.0, 0.0) == pi);
    CHECK(myers_bound_gradient(3, 1.0, 1.0, 0.0) == doctest::Approx(pi + 1.0));
    CHECK(myers_bound_gradient(5, 4.0, 2.0, 2.0) == doctest::Approx(pi / 2 + 0.5));
    CHECK(myers_bound_indexform(3, 1.0, 0.0, 0.0) == doctest::Approx(2 * pi));
    CHECK(myers_bound_indexform(3, 1.0, pi / 4, 0.0) == doctest::Approx(2 * pi * std::sqrt(2.0)));
    CHECK(myers_bound_indexform(3, 1.0, 0.0, 2 * pi) == doctest::Approx(2 * pi * std::sqrt(2.0) + 2 * pi));
    CHECK_THROWS_AS(myers_bound_bounded_f(3, 0.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(myers_bound_gradient(3, -1.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(myers_bound_indexform(3, 0.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(myers_bound_indexform(3, 1.0, -1.0, 0.0), DomainError);
}

TEST_CASE("Myers bounds: monotone in the hypotheses, sharp at zero") {
    auto g = oracle::rng(31337);
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + static_cast<int>(oracle::uniform(g, 0, 5));
        const double H = oracle::uniform(g, 0.1, 4.0);
        const double b = oracle::uniform(g, 0, 2), l = oracle::uniform(g, 0, 2);
        const double db = oracle::uniform(g, 0, 1), dl = oracle::uniform(g, 0, 1);
        CHECK(myers_bound_bounded_f(n, H, b + db, l) >= myers_bound_bounded_f(n, H, b, l));
        CHECK(myers_bound_bounded_f(n, H, b, l + dl) >= myers_bound_bounded_f(n, H, b, l));
        CHECK(myers_bound_gradient(n, H, b + db, l) >= myers_bound_gradient(n, H, b, l));
        CHECK(myers_bound_gradient(n, H, b, l + dl) >= myers_bound_gradient(n, H, b, l));
        CHECK(myers_bound_indexform(n, H, b + db, l) >= myers_bound_indexform(n, H, b, l));
        CHECK(myers_bound_indexform(n, H, b, l + dl) >= myers_bound_indexform(n, H, b, l));
        CHECK(myers_bound_bounded_f(n, H, 0, 0) == pi / std::sqrt(H));
        CHECK(myers_bound_gradient(n, H, 0, 0) == pi / std::sqrt(H));
    }
}

TEST_CASE("actual diameter of closed spaces") {
    CHECK(actual_diameter(make_space("sphere", 3)) == pi);
    CHECK(actual_diameter(make_space("sphere", 3, {{"H", 4.0}})) == doctest::Approx(pi / 2));
    const auto ps = make_space("perturbed_sphere", 3, {{"eps", 0.05}, {"omega", 3.0}});
    CHECK(actual_diameter(ps) == doctest::Approx(pi));
    CHECK(chord_excess(ps) <= 1e-12);
    CHECK_THROWS_AS(actual_diameter(make_space("euclidean", 3)), DomainError);
}

TEST_CASE("index form along the radial geodesic") {
    const auto sphere = make_space("sphere", 3);
    CHECK(std::abs(index_form_total(sphere, pi)) < 1e-8);
    CHECK(index_form_total(sphere, pi / 2) == doctest::Approx(3 * pi / 2).epsilon(1e-10));
    const auto flat = make_space("euclidean", 3);
    CHECK(index_form_total(flat, 2.0) == doctest::Approx(pi * pi / 2).epsilon(1e-10));

    // Independent midpoint evaluation on a perturbed profile with w'' by hand.
    const double eps = 0.05, om = 3.0;
    const auto ps = make_space("perturbed_sphere", 3, {{"eps", eps}, {"omega", om}});
    auto ric = [&](double t) {
        const double s = std::sin(om * t);
        const double p = 1 + eps * s * s, p1 = eps * om * std::sin(2 * om * t), p2 = 2 * eps * om * om * std::cos(2 * om * t);
        // w = sin t p, w'' = -sin t p + 2 cos t p' + sin t p''
        const double ratio = (-p + 2 * std::cos(t) / std::sin(t) * p1 + p2) / p;
        return -2.0 * ratio;
    };
    const double L = 2.5;
    const double want = oracle::midpoint_sum(
        [&](double t) {
            const double w = pi / L;
            return 2 * w * w * std::pow(std::cos(w * t), 2) - std::pow(std::sin(w * t), 2) * ric(t);
        },
        0.0, L, 400000);
    CHECK(index_form_total(ps, L) == doctest::Approx(want).epsilon(1e-8));
    CHECK_THROWS_AS(index_form_total(sphere, 4.0), DomainError);
}

TEST_CASE("index form nonnegative on minimizing radial segments") {
    for (const auto& s : {make_space("sphere", 3), make_space("sphere", 4, {{"H", 2.0}}),
                          make_space("perturbed_sphere", 3, {{"eps", 0.08}, {"omega", 2.0}}),
                          make_space("perturbed_sphere", 2, {{"eps", -0.05}, {"omega", 4.0}})}) {
        for (int i = 1; i <= 20; ++i) CHECK(index_form_total(s, s.r_max() * i / 20.0) >= -1e-8);
    }
}

TEST_CASE("check_myers end to end") {
    const auto round = check_myers(make_space("sphere", 3), 1.0);
    CHECK(round.pass);
    CHECK(std::abs(round.bounds.at("MYERS_F") - pi) < 1e-12);
    CHECK(std::abs(round.bounds.at("MYERS_GRAD") - pi) < 1e-12);
    CHECK(round.bounds.at("MYERS_INDEX") == doctest::Approx(2 * pi));
    CHECK(round.actual_diameter == pi);
    CHECK(!round.chord_caveat);
    CHECK(round.hypothesis_coverage.find("antipode") != std::string::npos);

    const auto cosf = check_myers(make_space("sphere", 3, {{"fcos", 0.1}}), 1.0);
    CHECK(cosf.k == doctest::Approx(0.1));
    CHECK(cosf.pass);
    CHECK(cosf.bounds.at("MYERS_F") > pi);

    const auto bumped = check_myers(make_space("perturbed_sphere", 3, {{"eps", 0.05}, {"omega", 3.0}}), 1.0);
    CHECK(bumped.l > 0.0);
    CHECK(bumped.pass);
    for (const auto& [name, b] : bumped.bounds) CHECK(b >= pi);

    CHECK_THROWS_AS(check_myers(make_space("euclidean", 3), 1.0), DomainError);
    CHECK_THROWS_AS(check_myers(make_space("sphere", 3), 0.0), DomainError);
}
