#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "vbl/errors.hpp"
#include "vbl/quadrature.hpp"

using namespace vbl;
using oracle::kPi;

TEST_CASE("integrate_1d basics") {
    quad::QuadSpec spec;
    CHECK(std::abs(quad::integrate_1d([](double x) { return x; }, 0.0, 1.0, spec).value - 0.5) < 1e-15);
    CHECK(quad::integrate_1d([](double) { return 1.0; }, 2.0, 2.0, spec).value == 0.0);
    CHECK_THROWS_AS(quad::integrate_1d([](double x) { return x; }, 1.0, 0.0, spec), DomainError);

    const auto edge = quad::integrate_1d(
        [](double p) { return 2.0 / (kPi + 2.0 * p + std::sin(2.0 * p)); }, 0.0, kPi / 2, spec);
    CHECK(std::abs(edge.value - 0.61082) < 1e-5);
    CHECK(edge.converged);

    for (double R : {0.5, 1.0, 2.0}) {
        const auto r = quad::integrate_1d([](double x) { return std::exp(-kPi * x * x) * 2.0 * kPi * x; }, 0.0, R, spec);
        CHECK(std::abs(r.value - (1.0 - std::exp(-kPi * R * R))) < 1e-12);
    }
}

TEST_CASE("integrate_1d handles endpoint singularities and reports failure") {
    quad::QuadSpec spec;
    const auto r = quad::integrate_1d([](double x) { return std::sqrt(x); }, 0.0, 1.0, spec);
    CHECK(std::abs(r.value - 2.0 / 3.0) < 1e-10);
    const auto l = quad::integrate_1d([](double x) { return std::log(x); }, 0.0, 1.0, spec);
    CHECK(std::abs(l.value + 1.0) < 1e-10);

    spec.max_depth = 10;
    spec.rel_tol = 1e-12;
    const auto bad = quad::try_integrate_1d([](double x) { return std::sin(1.0 / x) / x; }, 1e-6, 1.0, spec);
    CHECK_FALSE(bad.converged);
    CHECK_THROWS_AS(quad::integrate_1d([](double x) { return std::sin(1.0 / x) / x; }, 1e-6, 1.0, spec),
                    QuadratureError);
}

TEST_CASE("QuadSpec validation") {
    quad::QuadSpec s;
    s.rel_tol = 0.5;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = {};
    s.max_depth = 3;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = {};
    s.truncation_margin = 0.5;
    CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("integrate_radial_semi_infinite") {
    quad::QuadSpec spec;
    const auto r = quad::integrate_radial_semi_infinite([](double x) { return x * std::exp(-kPi * x * x); }, 0.0, kPi,
                                                        spec);
    CHECK(std::abs(r.value - 1.0 / (2.0 * kPi)) < 1e-10);

    // Corner mean: inner angle integral of the radial integrand.
    auto ring = [&](double phi) {
        return quad::integrate_radial_semi_infinite(
                   [phi](double x) { return x * std::exp(-x * x * (kPi / 2 + std::sin(2 * phi))); }, 0.0, kPi / 4, spec)
            .value;
    };
    const auto corner = quad::integrate_1d(ring, 0.0, kPi / 2, spec);
    CHECK(std::abs(corner.value - 0.36351) < 1e-5);

    // Cut radius is large enough that doubling it changes nothing.
    const double cut = quad::truncation_radius(0.0, kPi, 0.0, spec.abs_tol / spec.truncation_margin);
    auto f = [](double x) { return x * std::exp(-kPi * x * x); };
    const double a = quad::integrate_1d(f, 0.0, cut, spec).value;
    const double b = quad::integrate_1d(f, 0.0, 2.0 * cut, spec).value;
    CHECK(std::abs(a - b) < spec.abs_tol);

    // Shifted Gaussian.
    const auto s = quad::integrate_radial_semi_infinite(
        [](double x) { return x * std::exp(-(x - 3.0) * (x - 3.0)); }, 0.0, 1.0, spec, 3.0);
    const double ref = double(oracle::simpson(
        [](long double x) { return x * std::exp(-(x - 3) * (x - 3)); }, 0, 20, 200000));
    CHECK(std::abs(s.value - ref) < 1e-10);
}

TEST_CASE("gaussian_tail_bound dominates the true tail") {
    for (double shift : {0.0, 1.0, 2.5})
        for (double cut : {shift, shift + 0.5, shift + 2.0}) {
            const double c = 0.8;
            const double tail = double(oracle::simpson(
                [=](long double x) { return x * std::exp(-c * (x - shift) * (x - shift)); }, cut, cut + 40, 400000));
            CHECK(quad::gaussian_tail_bound(cut, c, shift) >= tail * (1 - 1e-12));
        }
}

TEST_CASE("integrate_3d_iterated") {
    quad::QuadSpec spec;
    spec.rel_tol = 1e-10;
    quad::Region3 simplex{0.0,
                          1.0,
                          [](double) { return 0.0; },
                          [](double t) { return t; },
                          [](double, double) { return 0.0; },
                          [](double, double w1) { return w1; }};
    const auto vol = quad::integrate_3d_iterated([](double, double, double) { return 1.0; }, simplex, spec);
    CHECK(std::abs(vol.value - 1.0 / 6.0) < 1e-12);

    // Exchanging the roles of the two inner variables on a symmetric region.
    auto f = [](double w1, double w2) {
        return std::sin(w1 + w2) / std::pow(std::cos(w1) * std::cos(w2), 3) * std::exp(-(w1 * w1 + w2 * w2));
    };
    quad::Region3 square{0.0,
                         1.0,
                         [](double) { return -0.7; },
                         [](double) { return 0.7; },
                         [](double, double w1) { return std::max(-0.7, -w1); },
                         [](double, double) { return 0.7; }};
    const double fwd = quad::integrate_3d_iterated([&](double, double a, double b) { return f(a, b); }, square, spec).value;
    const double swp = quad::integrate_3d_iterated([&](double, double a, double b) { return f(b, a); }, square, spec).value;
    CHECK(std::abs(fwd - swp) < 1e-8);
}
