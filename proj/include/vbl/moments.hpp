#pragma once

// First and second moments of the area of the Voronoi cell of a seed S0
// near the boundary of a quadrant or half-plane, for a unit-intensity
// Poisson process, together with the closed-form bounds and the two-moment
// Gamma fit.

#include "vbl/quadrature.hpp"
#include "vbl/void_geometry.hpp"

namespace vbl::moments {

enum class Method { closed_form, quadrature, bound_upper, bound_lower };

struct MomentResult {
    geom::SeedLocation location;
    int order = 1;
    double value = 0.0;
    double err_estimate = 0.0;
    Method method = Method::quadrature;
};

/// Shape k and scale nu; mean k nu, variance k nu^2.
struct GammaParams {
    double k = 1.0;
    double nu = 1.0;

    double mean() const { return k * nu; }
    double variance() const { return k * nu * nu; }
};

/// Tolerances used when the caller does not pass a QuadSpec.
quad::QuadSpec default_mean_spec();
quad::QuadSpec default_second_moment_spec();

/// Offsets beyond which mean_quadrant returns the edge value directly.
inline constexpr double kQuadrantEdgeCrossover = 8.0;

MomentResult mean_corner();
MomentResult mean_edge();
MomentResult mean_quadrant(double a, const quad::QuadSpec& spec = default_mean_spec());
MomentResult mean_halfplane(double h, const quad::QuadSpec& spec = default_mean_spec());

MomentResult upper_bound_mean_quadrant(double a);
MomentResult lower_bound_mean_quadrant(double a);
/// Exponential-integral lower bound; at h = 0 falls back to the trivial one.
MomentResult lower_bound_mean_halfplane(double h);
/// (1 + erf(h sqrt(pi))) / 2, from ignoring the boundary altogether.
MomentResult trivial_lower_bound_mean_halfplane(double h);

MomentResult second_moment_corner(const quad::QuadSpec& spec = default_second_moment_spec());
MomentResult second_moment_edge(const quad::QuadSpec& spec = default_second_moment_spec());
MomentResult second_moment_bulk(const quad::QuadSpec& spec = default_second_moment_spec());

/// Mean at any location (Bulk gives 1).
MomentResult mean_at(const geom::SeedLocation& loc, const quad::QuadSpec& spec = default_mean_spec());

/// Second moment at Corner, Edge or Bulk (and their canonical aliases with
/// zero offset). Throws DomainError elsewhere.
MomentResult second_moment_at(const geom::SeedLocation& loc,
                              const quad::QuadSpec& spec = default_second_moment_spec());

/// k = mean^2 / var, nu = mean / k. Throws DomainError unless
/// second_moment > mean^2.
GammaParams fit_gamma(double mean, double second_moment);

/// Gamma fit at Corner, Edge or Bulk from moments at default tolerances.
/// Results are computed once per process and cached.
GammaParams gamma_params_at(const geom::SeedLocation& loc);

/// Converts a unit-intensity result to intensity lambda: first moments scale
/// by 1/lambda, second moments by 1/lambda^2, and location offsets by
/// 1/sqrt(lambda).
MomentResult rescale_intensity(const MomentResult& m, double lambda);

}  // namespace vbl::moments
