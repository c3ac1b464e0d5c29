#include "vbl/moments.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <optional>

#include "vbl/errors.hpp"
#include "vbl/special_functions.hpp"

namespace vbl::moments {

namespace {

using geom::PolarPoint;
using quad::QuadSpec;

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

QuadSpec tighter(const QuadSpec& spec, double factor = 0.1) {
    QuadSpec s = spec;
    s.rel_tol = spec.rel_tol * factor;
    s.abs_tol = spec.abs_tol * factor;
    return s;
}

// ---- quadrant ---------------------------------------------------------------

// r * int_0^{pi/2} e^{-V(r, phi)} dphi for r >= a/2, split at the case
// thresholds and at the kink of |r cos(phi) - a|.
double quadrant_ring(double r, double a, const QuadSpec& inner, bool& ok) {
    double sum = 0.0;
    auto piece = [&](double lo, double hi, auto&& area) {
        if (!(hi > lo)) return;
        auto res = quad::try_integrate_1d(
            [&](double phi) { return std::exp(-area(PolarPoint{r, phi}, a)); }, lo, hi, inner);
        ok = ok && res.converged;
        sum += res.value;
    };
    const double p1 = geom::phi1(r, a);
    const double p2 = geom::phi2(r, a);
    const double kink = (a > 0.0 && r > a) ? std::acos(a / r) : 0.0;
    if (kink > 0.0 && kink < p1) {
        piece(0.0, kink, geom::void_area_quadrant_v1);
        piece(kink, p1, geom::void_area_quadrant_v1);
    } else {
        piece(0.0, p1, geom::void_area_quadrant_v1);
    }
    piece(p1, p2, geom::void_area_quadrant_v2);
    piece(p2, kHalfPi, geom::void_area_quadrant_v3);
    return r * sum;
}

// Inner disk r < a/2: the void always contains the corner.
double quadrant_core(double r, double a, const QuadSpec& inner, bool& ok) {
    auto res = quad::try_integrate_1d(
        [&](double phi) { return std::exp(-geom::void_area_quadrant_v3(PolarPoint{r, phi}, a)); }, 0.0,
        kHalfPi, inner);
    ok = ok && res.converged;
    return r * res.value;
}

// ---- half-plane -------------------------------------------------------------

double halfplane_clipped(const PolarPoint& p, double h) {
    const double d = geom::seed_distance_halfplane(p, h);
    const double omega = std::acos(std::clamp(p.r * std::sin(p.phi) / d, -1.0, 1.0));
    return (kPi - omega + 0.5 * std::sin(2.0 * omega)) * d * d;
}

double halfplane_ring(double r, double h, const QuadSpec& inner, bool& ok) {
    const double p0 = geom::phi0(r, h);
    double sum = 0.0;
    if (p0 > 0.0) {
        auto res = quad::try_integrate_1d(
            [&](double phi) { return std::exp(-halfplane_clipped(PolarPoint{r, phi}, h)); }, 0.0, p0, inner);
        ok = ok && res.converged;
        sum += res.value;
    }
    if (p0 < kHalfPi) {
        auto res = quad::try_integrate_1d(
            [&](double phi) {
                const double d = geom::seed_distance_halfplane(PolarPoint{r, phi}, h);
                return std::exp(-kPi * d * d);
            },
            p0, kHalfPi, inner);
        ok = ok && res.converged;
        sum += res.value;
    }
    return r * sum;
}

double halfplane_core(double r, double h, const QuadSpec& inner, bool& ok) {
    auto res = quad::try_integrate_1d(
        [&](double phi) { return std::exp(-halfplane_clipped(PolarPoint{r, phi}, h)); }, 0.0, kHalfPi, inner);
    ok = ok && res.converged;
    return r * res.value;
}

// ---- two-point integrands ---------------------------------------------------

inline double pair_weight(double w1, double w2, double v) {
    const double c1 = std::cos(w1);
    const double c2 = std::cos(w2);
    return std::sin(w1 + w2) / (c1 * c1 * c1 * c2 * c2 * c2 * v * v);
}

MomentResult second_moment_result(geom::SeedLocation loc, double value, double err) {
    return MomentResult{loc, 2, value, err, Method::quadrature};
}

}  // namespace

QuadSpec default_mean_spec() {
    QuadSpec s;
    s.rel_tol = 1e-9;
    s.abs_tol = 1e-11;
    return s;
}

QuadSpec default_second_moment_spec() {
    QuadSpec s;
    s.rel_tol = 1e-6;
    s.abs_tol = 1e-9;
    return s;
}

MomentResult mean_corner() {
    const double value = std::acos(2.0 / kPi) / std::sqrt(kPi * kPi - 4.0);
    return MomentResult{geom::Corner{}, 1, value, 0.0, Method::closed_form};
}

MomentResult mean_edge() {
    QuadSpec spec;
    spec.rel_tol = 1e-13;
    spec.abs_tol = 0.0;
    const auto res = quad::integrate_1d(
        [](double phi) { return 2.0 / (kPi + 2.0 * phi + std::sin(2.0 * phi)); }, 0.0, kHalfPi, spec);
    return MomentResult{geom::Edge{}, 1, res.value, res.err_estimate, Method::quadrature};
}

MomentResult mean_quadrant(double a, const QuadSpec& spec) {
    spec.validate();
    if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("mean_quadrant: a must be finite and >= 0");
    if (a > kQuadrantEdgeCrossover) {
        auto edge = mean_edge();
        edge.location = geom::QuadrantBoundary{a};
        return edge;
    }
    const QuadSpec inner = tighter(spec);
    bool ok = true;
    double value = 0.0;
    double err = 0.0;
    if (a > 0.0) {
        const auto core = quad::try_integrate_1d([&](double r) { return quadrant_core(r, a, inner, ok); }, 0.0,
                                                 0.5 * a, spec);
        ok = ok && core.converged;
        value += core.value;
        err += core.err_estimate;
    }
    try {
        // The void always holds the quarter disk of radius d >= r - a.
        const auto outer = quad::integrate_radial_semi_infinite(
            [&](double r) { return quadrant_ring(r, a, inner, ok); }, 0.5 * a, 0.25 * kPi, spec, a);
        value += outer.value;
        err += outer.err_estimate;
    } catch (const QuadratureError& e) {
        throw QuadratureError("mean_quadrant: tolerance not met", value + e.value(), err + e.err_estimate());
    }
    if (!ok) throw QuadratureError("mean_quadrant: inner tolerance not met", value, err);
    return MomentResult{geom::QuadrantBoundary{a}, 1, value, err, Method::quadrature};
}

MomentResult mean_halfplane(double h, const QuadSpec& spec) {
    spec.validate();
    if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("mean_halfplane: h must be finite and >= 0");
    const QuadSpec inner = tighter(spec);
    bool ok = true;
    double value = 0.0;
    double err = 0.0;
    if (h > 0.0) {
        const auto core = quad::try_integrate_1d([&](double r) { return halfplane_core(r, h, inner, ok); }, 0.0,
                                                 0.5 * h, spec);
        ok = ok && core.converged;
        value += core.value;
        err += core.err_estimate;
    }
    try {
        // The void always holds a half disk of radius d >= |r - h|.
        const auto outer = quad::integrate_radial_semi_infinite(
            [&](double r) { return halfplane_ring(r, h, inner, ok); }, 0.5 * h, kHalfPi, spec, h);
        value += outer.value;
        err += outer.err_estimate;
    } catch (const QuadratureError& e) {
        throw QuadratureError("mean_halfplane: tolerance not met", 2.0 * (value + e.value()),
                              2.0 * (err + e.err_estimate()));
    }
    if (!ok) throw QuadratureError("mean_halfplane: inner tolerance not met", 2.0 * value, 2.0 * err);
    // Mirror image phi in [pi/2, pi].
    return MomentResult{geom::HalfPlaneOffset{h}, 1, 2.0 * value, 2.0 * err, Method::quadrature};
}

MomentResult upper_bound_mean_quadrant(double a) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("upper_bound_mean_quadrant: a must be finite and >= 0");
    const double value = std::exp(-a * a * kPi / 4.0) - sf::erfc(a * std::sqrt(kPi) / 2.0) -
                         kPi / 4.0 * sf::struve_m1(2.0 * a * a) + mean_corner().value;
    return MomentResult{geom::QuadrantBoundary{a}, 1, value, 0.0, Method::bound_upper};
}

MomentResult lower_bound_mean_quadrant(double a) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("lower_bound_mean_quadrant: a must be finite and >= 0");
    const double value = 0.25 * (1.0 + sf::erf(a * std::sqrt(kPi)));
    return MomentResult{geom::QuadrantBoundary{a}, 1, value, 0.0, Method::bound_lower};
}

MomentResult trivial_lower_bound_mean_halfplane(double h) {
    if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("lower_bound_mean_halfplane: h must be finite and >= 0");
    const double value = 0.5 * (1.0 + sf::erf(h * std::sqrt(kPi)));
    return MomentResult{geom::HalfPlaneOffset{h}, 1, value, 0.0, Method::bound_lower};
}

MomentResult lower_bound_mean_halfplane(double h) {
    if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("lower_bound_mean_halfplane: h must be finite and >= 0");
    if (h == 0.0) return trivial_lower_bound_mean_halfplane(h);
    const double s = kPi * h * h;
    auto e1 = [](double x) { return sf::expint_upper(x); };
    const double value =
        1.0 - 0.5 * std::exp(-s) + 0.5 * (e1(10.0 * s / 3.0) - e1(5.0 * s / 6.0) + e1(0.5 * s) - e1(2.0 * s));
    return MomentResult{geom::HalfPlaneOffset{h}, 1, value, 0.0, Method::bound_lower};
}

MomentResult second_moment_corner(const QuadSpec& spec) {
    spec.validate();
    // Q in the open quadrant.
    quad::Region3 first{0.0,
                        kHalfPi,
                        [](double t) { return t - kHalfPi; },
                        [](double t) { return t; },
                        [](double, double w1) { return -w1; },
                        [](double t, double) { return kHalfPi - t; }};
    // Q below the x-axis; only P2 shapes the void. Q left of the y-axis is
    // the mirror image and contributes the same amount.
    quad::Region3 second{-kHalfPi,
                         0.0,
                         [](double) { return -kHalfPi; },
                         [](double t) { return t; },
                         [](double, double w1) { return -w1; },
                         [](double, double) { return kHalfPi; }};
    const QuadSpec part = tighter(spec, 0.5);
    const auto i1 = quad::try_integrate_3d_iterated(
        [](double t, double w1, double w2) { return pair_weight(w1, w2, geom::corner_v1(t, w1, w2)); }, first, part);
    const auto i2 = quad::try_integrate_3d_iterated(
        [](double t, double w1, double w2) { return pair_weight(w1, w2, geom::corner_v2(t, w2)); }, second, part);
    const double value = i1.value + 2.0 * i2.value;
    const double err = i1.err_estimate + 2.0 * i2.err_estimate;
    if (!i1.converged || !i2.converged) throw QuadratureError("second_moment_corner: tolerance not met", value, err);
    return second_moment_result(geom::Corner{}, value, err);
}

MomentResult second_moment_edge(const QuadSpec& spec) {
    spec.validate();
    auto w1_lo_upper = [](double t) { return t - kHalfPi; };
    auto w1_hi_upper = [](double t) { return t; };
    quad::Region3 both_right{0.0, kHalfPi, w1_lo_upper, w1_hi_upper, [](double, double w1) { return -w1; },
                             [](double t, double) { return kHalfPi - t; }};
    quad::Region3 split{0.0, kHalfPi, w1_lo_upper, w1_hi_upper, [](double t, double) { return kHalfPi - t; },
                        [](double, double) { return kHalfPi; }};
    quad::Region3 both_left{0.0, kHalfPi, [](double) { return -kHalfPi; }, [](double t) { return t - kHalfPi; },
                            [](double, double w1) { return -w1; }, [](double, double) { return kHalfPi; }};
    quad::Region3 below{-kHalfPi, 0.0, [](double) { return -kHalfPi; }, [](double t) { return t; },
                        [](double, double w1) { return -w1; }, [](double, double) { return kHalfPi; }};
    const QuadSpec part = tighter(spec, 0.25);
    const auto j1 = quad::try_integrate_3d_iterated(
        [](double t, double w1, double w2) { return pair_weight(w1, w2, geom::edge_v1(t, w1, w2)); }, both_right,
        part);
    const auto j2 = quad::try_integrate_3d_iterated(
        [](double t, double w1, double w2) { return pair_weight(w1, w2, geom::edge_v2(t, w1, w2)); }, split, part);
    const auto j3 = quad::try_integrate_3d_iterated(
        [](double t, double w1, double w2) { return pair_weight(w1, w2, geom::edge_v3(t, w1, w2)); }, both_left,
        part);
    const auto j4 = quad::try_integrate_3d_iterated(
        [](double t, double w1, double w2) { return pair_weight(w1, w2, geom::edge_v4(t, w2)); }, below, part);
    const double value = 2.0 * (j1.value + j2.value + j3.value + j4.value);
    const double err = 2.0 * (j1.err_estimate + j2.err_estimate + j3.err_estimate + j4.err_estimate);
    if (!(j1.converged && j2.converged && j3.converged && j4.converged))
        throw QuadratureError("second_moment_edge: tolerance not met", value, err);
    return second_moment_result(geom::Edge{}, value, err);
}

MomentResult second_moment_bulk(const QuadSpec& spec) {
    spec.validate();
    // The integrand does not depend on theta, which contributes 2 pi.
    const QuadSpec inner = tighter(spec);
    bool ok = true;
    double max_inner_err = 0.0;
    auto over_w2 = [&](double w1) {
        auto res = quad::try_integrate_1d(
            [w1](double w2) { return pair_weight(w1, w2, geom::normalized_void_bulk(w1, w2)); }, -w1, kHalfPi,
            inner);
        ok = ok && res.converged;
        max_inner_err = std::max(max_inner_err, res.err_estimate);
        return res.value;
    };
    const auto outer = quad::try_integrate_1d(over_w2, -kHalfPi, kHalfPi, spec);
    const double value = 2.0 * kPi * outer.value;
    const double err = 2.0 * kPi * (outer.err_estimate + kPi * max_inner_err);
    if (!ok || !outer.converged) throw QuadratureError("second_moment_bulk: tolerance not met", value, err);
    return second_moment_result(geom::Bulk{}, value, err);
}

MomentResult mean_at(const geom::SeedLocation& loc, const QuadSpec& spec) {
    if (std::holds_alternative<geom::Corner>(loc)) return mean_corner();
    if (std::holds_alternative<geom::Edge>(loc)) return mean_edge();
    if (std::holds_alternative<geom::Bulk>(loc)) return MomentResult{geom::Bulk{}, 1, 1.0, 0.0, Method::closed_form};
    if (const auto* q = std::get_if<geom::QuadrantBoundary>(&loc)) return mean_quadrant(q->a, spec);
    return mean_halfplane(std::get<geom::HalfPlaneOffset>(loc).h, spec);
}

MomentResult second_moment_at(const geom::SeedLocation& loc, const QuadSpec& spec) {
    const auto c = geom::canonical(loc);
    if (const auto* q = std::get_if<geom::QuadrantBoundary>(&c); q && q->a == 0.0) return second_moment_corner(spec);
    if (const auto* e = std::get_if<geom::HalfPlaneOffset>(&c); e && e->h == 0.0) return second_moment_edge(spec);
    if (std::holds_alternative<geom::Bulk>(c)) return second_moment_bulk(spec);
    throw DomainError("second_moment_at: second moments are available at the corner, edge and bulk only");
}

GammaParams fit_gamma(double mean, double second_moment) {
    if (!(mean > 0.0)) throw DomainError("fit_gamma: mean must be > 0");
    const double var = second_moment - mean * mean;
    if (!(var > 0.0)) throw DomainError("fit_gamma: variance must be > 0");
    const double k = mean * mean / var;
    return GammaParams{k, mean / k};
}

GammaParams gamma_params_at(const geom::SeedLocation& loc) {
    static std::once_flag flags[3];
    static std::optional<GammaParams> cache[3];
    const auto c = geom::canonical(loc);
    int idx = -1;
    if (const auto* q = std::get_if<geom::QuadrantBoundary>(&c); q && q->a == 0.0) idx = 0;
    if (const auto* e = std::get_if<geom::HalfPlaneOffset>(&c); e && e->h == 0.0) idx = 1;
    if (std::holds_alternative<geom::Bulk>(c)) idx = 2;
    if (idx < 0) throw DomainError("gamma_params_at: fitted parameters exist for corner, edge and bulk only");
    std::call_once(flags[idx], [&] {
        const auto m1 = mean_at(loc);
        const auto m2 = second_moment_at(loc);
        cache[idx] = fit_gamma(m1.value, m2.value);
    });
    return *cache[idx];
}

MomentResult rescale_intensity(const MomentResult& m, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("rescale_intensity: lambda must be > 0");
    MomentResult out = m;
    const double scale = m.order == 2 ? lambda * lambda : lambda;
    out.value = m.value / scale;
    out.err_estimate = m.err_estimate / scale;
    const double len = 1.0 / std::sqrt(lambda);
    if (auto* q = std::get_if<geom::QuadrantBoundary>(&out.location)) q->a *= len;
    if (auto* h = std::get_if<geom::HalfPlaneOffset>(&out.location)) h->h *= len;
    return out;
}

}  // namespace vbl::moments
