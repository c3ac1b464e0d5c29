#pragma once

// Closed-form void areas: the part of the disk centred at a point P with
// radius d(P, S0) that lies inside the bounded domain (quadrant or
// half-plane). A point P belongs to the cell of S0 exactly when its void is
// free of other seeds, so these areas drive every moment integral.

#include <variant>

namespace vbl::geom {

struct PolarPoint {
    double r = 0.0;
    double phi = 0.0;
};

/// Seed on the quadrant boundary at distance `a` from the corner.
struct QuadrantBoundary {
    double a = 0.0;
};
/// Seed at distance `h` from the boundary of a half-plane.
struct HalfPlaneOffset {
    double h = 0.0;
};
struct Corner {};
struct Edge {};
struct Bulk {};

using SeedLocation = std::variant<QuadrantBoundary, HalfPlaneOffset, Corner, Edge, Bulk>;

/// Maps Corner to QuadrantBoundary{0} and Edge to HalfPlaneOffset{0}; throws
/// DomainError on negative offsets.
SeedLocation canonical(const SeedLocation& loc);

enum class VoidCase { Q1, Q2, Q3, Q3small, H1, H2, Hsmall };

// ---- quadrant, seed at (a, 0) on the x-axis ---------------------------------

/// Angle at which the void of a point at radius r becomes tangent to the
/// y-axis: the root of d(r, phi) = r cos(phi). Requires r >= a/2.
double phi1(double r, double a);

/// Angle at which the void passes through the corner: arccos(a / (2r)).
/// Requires r >= a/2.
double phi2(double r, double a);

/// Distance from (r, phi) to the seed at (a, 0).
double seed_distance_quadrant(const PolarPoint& p, double a);

VoidCase classify_quadrant(const PolarPoint& p, double a);

/// Void area for the case chosen by classify_quadrant.
double void_area_quadrant(const PolarPoint& p, double a);

/// The individual closed forms, exposed so the case boundaries can be
/// checked for continuity. Each is only meaningful inside its own case.
double void_area_quadrant_v1(const PolarPoint& p, double a);
double void_area_quadrant_v2(const PolarPoint& p, double a);
double void_area_quadrant_v3(const PolarPoint& p, double a);

// ---- half-plane, boundary y = 0, seed at (0, h) -----------------------------

/// Angle above which the void no longer reaches the boundary. r >= h/2.
double phi0(double r, double h);

double seed_distance_halfplane(const PolarPoint& p, double h);

/// Uses the right-hand side phi in [0, pi/2]; the left side is its mirror.
VoidCase classify_halfplane(const PolarPoint& p, double h);

double void_area_halfplane(const PolarPoint& p, double h);

// ---- two-point voids, seed at the origin, normalised to z = 1 ---------------
//
// (theta, w1, w2): theta is the polar angle of the foot Q of the perpendicular
// from S0 onto the line P1 P2 (|S0 Q| = z = 1), w1 the clockwise angle Q S0 P1
// and w2 the counter-clockwise angle Q S0 P2.

/// sin(w1 + w2) / (cos^3 w1 cos^3 w2); the Jacobian is z^3 times this.
double jacobian_factor(double w1, double w2);

/// Union of the two disks in the unbounded plane.
double normalized_void_bulk(double w1, double w2);

/// Seed at the corner of the quadrant. Regions (half-open, last one closed):
///   1: theta in [0, pi/2),   w1 in [theta - pi/2, theta), w2 in [-w1, pi/2 - theta]
///   2: theta in [-pi/2, 0),  w1 in (-pi/2, theta),        w2 in [-w1, pi/2)
///   3: theta in [pi/2, pi],  mirror image of region 2.
/// Throws RegionError outside all regions.
double normalized_void_corner(double theta, double w1, double w2);
int corner_region(double theta, double w1, double w2);

/// Seed on the boundary of the half-plane y >= 0, theta in [-pi/2, pi/2]:
///   1: theta in [0, pi/2),  w1 in [theta - pi/2, theta), w2 in [-w1, pi/2 - theta)
///   2: theta in [0, pi/2),  w1 in [theta - pi/2, theta), w2 in [pi/2 - theta, pi/2)
///   3: theta in [0, pi/2),  w1 in (-pi/2, theta - pi/2), w2 in [-w1, pi/2)
///   4: theta in [-pi/2, 0), w1 in (-pi/2, theta),        w2 in [-w1, pi/2)
double normalized_void_edge(double theta, double w1, double w2);
int edge_region(double theta, double w1, double w2);

/// Region formulas without membership checks.
double corner_v1(double theta, double w1, double w2);
double corner_v2(double theta, double w2);
double corner_v3(double theta, double w1);
double edge_v1(double theta, double w1, double w2);
double edge_v2(double theta, double w1, double w2);
double edge_v3(double theta, double w1, double w2);
double edge_v4(double theta, double w2);

}  // namespace vbl::geom
