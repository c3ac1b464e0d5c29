#include "vbl/void_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <type_traits>

#include "vbl/errors.hpp"

namespace vbl::geom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

double safe_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }
double safe_asin(double x) { return std::asin(std::clamp(x, -1.0, 1.0)); }

void require_quadrant_point(const PolarPoint& p) {
    if (!(p.r >= 0.0) || !(p.phi >= 0.0 && p.phi <= kHalfPi))
        throw DomainError("quadrant void: point must satisfy r >= 0 and phi in [0, pi/2]");
}

void require_angle(double w) {
    if (!(std::abs(w) < kHalfPi)) throw DomainError("two-point void: |w| must be < pi/2");
}

// Void of a single point at unit-free radius 1/cos(w) seen from S0, split
// into the pieces the region formulas are built from.
double bulk_half(double w) {
    const double c = std::cos(w);
    return (kPi + 2.0 * w + std::sin(2.0 * w)) / (2.0 * c * c);
}

// P1's contribution when its void is cut by the boundary below S0.
double clipped_first(double theta, double w1) {
    const double c = std::cos(w1);
    return (2.0 * theta + std::sin(2.0 * (theta - w1)) + std::sin(2.0 * w1)) / (2.0 * c * c);
}

// P2's contribution when P2 sits on the far side of the normal through S0.
double clipped_second_left(double theta, double w2) {
    const double c = std::cos(w2);
    return (2.0 * kPi - 2.0 * theta + std::sin(2.0 * w2) - std::sin(2.0 * (theta + w2))) / (2.0 * c * c);
}

}  // namespace

SeedLocation canonical(const SeedLocation& loc) {
    return std::visit(
        [](const auto& v) -> SeedLocation {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Corner>) {
                return QuadrantBoundary{0.0};
            } else if constexpr (std::is_same_v<T, Edge>) {
                return HalfPlaneOffset{0.0};
            } else if constexpr (std::is_same_v<T, QuadrantBoundary>) {
                if (!(v.a >= 0.0)) throw DomainError("SeedLocation: a must be >= 0");
                return v;
            } else if constexpr (std::is_same_v<T, HalfPlaneOffset>) {
                if (!(v.h >= 0.0)) throw DomainError("SeedLocation: h must be >= 0");
                return v;
            } else {
                return v;
            }
        },
        loc);
}

// ---- quadrant ---------------------------------------------------------------

double phi1(double r, double a) {
    if (a == 0.0) return 0.0;
    if (!(r >= 0.5 * a)) throw DomainError("phi1: requires r >= a/2");
    return safe_acos((-a + std::sqrt(2.0 * a * a + r * r)) / r);
}

double phi2(double r, double a) {
    if (a == 0.0) return kHalfPi;
    if (!(r >= 0.5 * a)) throw DomainError("phi2: requires r >= a/2");
    return safe_acos(a / (2.0 * r));
}

double seed_distance_quadrant(const PolarPoint& p, double a) {
    return std::hypot(p.r * std::cos(p.phi) - a, p.r * std::sin(p.phi));
}

VoidCase classify_quadrant(const PolarPoint& p, double a) {
    require_quadrant_point(p);
    if (!(a >= 0.0)) throw DomainError("quadrant void: a must be >= 0");
    if (seed_distance_quadrant(p, a) == 0.0) throw DegenerateError("quadrant void: point coincides with the seed");
    if (a > 0.0 && p.r <= 0.5 * a) return VoidCase::Q3small;
    if (p.phi < phi1(p.r, a)) return VoidCase::Q1;
    if (p.phi < phi2(p.r, a)) return VoidCase::Q2;
    return VoidCase::Q3;
}

double void_area_quadrant_v1(const PolarPoint& p, double a) {
    const double d = seed_distance_quadrant(p, a);
    const double x = p.r * std::cos(p.phi);
    const double y = p.r * std::sin(p.phi);
    const double omega = safe_acos(y / d);
    return (kPi - omega) * d * d + y * std::abs(x - a);
}

double void_area_quadrant_v2(const PolarPoint& p, double a) {
    const double d = seed_distance_quadrant(p, a);
    const double x = p.r * std::cos(p.phi);
    const double y = p.r * std::sin(p.phi);
    const double omega1 = safe_acos(y / d);
    const double omega2 = safe_acos(x / d);
    return (kPi - omega1 - omega2) * d * d + y * std::abs(x - a) + x * d * std::sin(omega2);
}

double void_area_quadrant_v3(const PolarPoint& p, double a) {
    const double d = seed_distance_quadrant(p, a);
    const double x = p.r * std::cos(p.phi);
    const double y = p.r * std::sin(p.phi);
    const double omega3 = safe_acos(x / d);
    const double omega4 = safe_acos(y / d);
    return 0.5 * y * (x + a) + 0.5 * x * d * std::sin(omega3) + 0.5 * (1.5 * kPi - omega3 - omega4) * d * d;
}

double void_area_quadrant(const PolarPoint& p, double a) {
    switch (classify_quadrant(p, a)) {
        case VoidCase::Q1: return void_area_quadrant_v1(p, a);
        case VoidCase::Q2: return void_area_quadrant_v2(p, a);
        default: return void_area_quadrant_v3(p, a);
    }
}

// ---- half-plane -------------------------------------------------------------

double phi0(double r, double h) {
    if (h == 0.0) return kHalfPi;
    if (!(r >= 0.5 * h)) throw DomainError("phi0: requires r >= h/2");
    return safe_asin((-h + std::sqrt(2.0 * h * h + r * r)) / r);
}

double seed_distance_halfplane(const PolarPoint& p, double h) {
    return std::hypot(p.r * std::cos(p.phi), p.r * std::sin(p.phi) - h);
}

VoidCase classify_halfplane(const PolarPoint& p, double h) {
    if (!(h >= 0.0)) throw DomainError("half-plane void: h must be >= 0");
    if (!(p.r >= 0.0) || !(p.phi >= 0.0 && p.phi <= kPi))
        throw DomainError("half-plane void: point must satisfy r >= 0 and phi in [0, pi]");
    if (seed_distance_halfplane(p, h) == 0.0) throw DegenerateError("half-plane void: point coincides with the seed");
    const double phi = p.phi > kHalfPi ? kPi - p.phi : p.phi;
    if (h > 0.0 && p.r <= 0.5 * h) return VoidCase::Hsmall;
    return phi < phi0(p.r, h) ? VoidCase::H1 : VoidCase::H2;
}

double void_area_halfplane(const PolarPoint& p, double h) {
    const VoidCase c = classify_halfplane(p, h);
    const double d = seed_distance_halfplane(p, h);
    if (c == VoidCase::H2) return kPi * d * d;
    const double omega = safe_acos(p.r * std::sin(p.phi) / d);
    return (kPi - omega + 0.5 * std::sin(2.0 * omega)) * d * d;
}

// ---- two-point voids ----------------------------------------------------------

double jacobian_factor(double w1, double w2) {
    require_angle(w1);
    require_angle(w2);
    if (!(w1 + w2 > 0.0)) throw DomainError("jacobian_factor: requires w1 + w2 > 0");
    const double c1 = std::cos(w1);
    const double c2 = std::cos(w2);
    return std::sin(w1 + w2) / (c1 * c1 * c1 * c2 * c2 * c2);
}

double normalized_void_bulk(double w1, double w2) {
    require_angle(w1);
    require_angle(w2);
    return bulk_half(w1) + bulk_half(w2);
}

double corner_v1(double theta, double w1, double w2) {
    const double c2 = std::cos(w2);
    return clipped_first(theta, w1) +
           (kPi - 2.0 * theta + std::sin(2.0 * (theta + w2)) + std::sin(2.0 * w2)) / (2.0 * c2 * c2);
}

double corner_v2(double theta, double w2) {
    const double c2 = std::cos(w2);
    return (kPi + 2.0 * std::sin(2.0 * (theta + w2))) / (2.0 * c2 * c2);
}

double corner_v3(double theta, double w1) {
    const double c1 = std::cos(w1);
    return (kPi + 2.0 * std::sin(2.0 * (theta - w1))) / (2.0 * c1 * c1);
}

int corner_region(double theta, double w1, double w2) {
    if (!(std::abs(w1) < kHalfPi && std::abs(w2) < kHalfPi)) return 0;
    if (theta >= 0.0 && theta < kHalfPi) {
        if (w1 >= theta - kHalfPi && w1 <= theta && w2 >= -w1 && w2 <= kHalfPi - theta) return 1;
    } else if (theta >= -kHalfPi && theta < 0.0) {
        if (w1 <= theta && w2 >= -w1) return 2;
    } else if (theta >= kHalfPi && theta <= kPi) {
        if (w2 <= kHalfPi - theta && w1 >= -w2) return 3;
    }
    return 0;
}

double normalized_void_corner(double theta, double w1, double w2) {
    switch (corner_region(theta, w1, w2)) {
        case 1: return corner_v1(theta, w1, w2);
        case 2: return corner_v2(theta, w2);
        case 3: return corner_v3(theta, w1);
        default: throw RegionError("normalized_void_corner: angles lie in no integration region");
    }
}

double edge_v1(double theta, double w1, double w2) { return clipped_first(theta, w1) + bulk_half(w2); }

double edge_v2(double theta, double w1, double w2) {
    return clipped_first(theta, w1) + clipped_second_left(theta, w2);
}

double edge_v3(double theta, double w1, double w2) { return bulk_half(w1) + clipped_second_left(theta, w2); }

double edge_v4(double theta, double w2) {
    const double c2 = std::cos(w2);
    return (kPi + 2.0 * theta + 2.0 * w2 + std::sin(2.0 * (theta + w2))) / (2.0 * c2 * c2);
}

int edge_region(double theta, double w1, double w2) {
    if (!(std::abs(w1) < kHalfPi && std::abs(w2) < kHalfPi)) return 0;
    if (theta >= 0.0 && theta <= kHalfPi) {
        if (w2 < -w1) return 0;
        if (w1 >= theta - kHalfPi && w1 <= theta) return w2 < kHalfPi - theta ? 1 : 2;
        if (w1 < theta - kHalfPi) return 3;
    } else if (theta >= -kHalfPi && theta < 0.0) {
        if (w1 <= theta && w2 >= -w1) return 4;
    }
    return 0;
}

double normalized_void_edge(double theta, double w1, double w2) {
    switch (edge_region(theta, w1, w2)) {
        case 1: return edge_v1(theta, w1, w2);
        case 2: return edge_v2(theta, w1, w2);
        case 3: return edge_v3(theta, w1, w2);
        case 4: return edge_v4(theta, w2);
        default: throw RegionError("normalized_void_edge: angles lie in no integration region");
    }
}

}  // namespace vbl::geom
