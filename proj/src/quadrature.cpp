#include "vbl/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace vbl::quad {

void QuadSpec::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw DomainError("QuadSpec: rel_tol must lie in (0, 1e-2]");
    if (!(abs_tol >= 0.0)) throw DomainError("QuadSpec: abs_tol must be >= 0");
    if (max_depth < 10) throw DomainError("QuadSpec: max_depth must be >= 10");
    if (!(truncation_margin >= 1.0)) throw DomainError("QuadSpec: truncation_margin must be >= 1");
}

double gaussian_tail_bound(double cut, double decay_coeff, double shift) {
    // int_{cut}^inf (u + shift) e^{-c u^2} du with u = r - shift
    const double u = cut - shift;
    const double sc = std::sqrt(decay_coeff);
    return std::exp(-decay_coeff * u * u) / (2.0 * decay_coeff) +
           shift * std::sqrt(std::numbers::pi) / (2.0 * sc) * std::erfc(sc * u);
}

double truncation_radius(double lo, double decay_coeff, double shift, double target) {
    const double floor_target = std::max(target, 1e-300);
    double cut = std::max(lo, shift);
    const double step = 0.25 / std::sqrt(decay_coeff);
    while (gaussian_tail_bound(cut, decay_coeff, shift) > floor_target) cut += step;
    return cut;
}

}  // namespace vbl::quad
