#pragma once

// Adaptive Gauss-Kronrod integration (G7/K15 pair, QUADPACK-style error
// estimate) plus the semi-infinite and iterated drivers used by the moment
// integrals. Header-only so the integrands inline into the rule loops.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "vbl/errors.hpp"

namespace vbl::quad {

struct QuadSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    /// Maximum bisection depth of any subinterval.
    int max_depth = 40;
    /// Gaussian tails are cut where the analytic bound drops below
    /// abs_tol / truncation_margin.
    double truncation_margin = 10.0;

    /// Throws DomainError when the fields violate their invariants.
    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
    long evals = 0;
    bool converged = true;
};

namespace detail {

// Kronrod 15-point abscissae; odd indices are the Gauss 7-point nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double err;
    int depth;
};

/// One K15 panel on [lo, hi]. Endpoints are never evaluated.
template <class F>
Segment gk15(F& f, double lo, double hi, int depth) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    double res_abs = std::abs(res_k);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double sum = f1[j] + f2[j];
        res_k += kWgk[j] * sum;
        res_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) res_g += kWg[j / 2] * sum;
    }
    const double mean = 0.5 * res_k;
    double res_asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double abs_half = std::abs(half);
    res_k *= half;
    res_abs *= abs_half;
    res_asc *= abs_half;
    double err = std::abs((res_k - res_g * half));
    if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min();
    if (res_abs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
    return {lo, hi, res_k, err, depth};
}

}  // namespace detail

/// Globally adaptive integration on [lo, hi]. Never throws on tolerance
/// failure; check `converged`.
template <class F>
QuadResult try_integrate_1d(F&& f, double lo, double hi, const QuadSpec& spec) {
    QuadResult out;
    if (!(lo < hi)) {
        if (lo == hi) return out;
        throw DomainError("integrate_1d: require lo < hi");
    }
    constexpr int kMaxSegments = 2000;
    std::vector<detail::Segment> segs;
    segs.reserve(64);
    segs.push_back(detail::gk15(f, lo, hi, 0));
    out.evals = 15;
    double total = segs[0].value;
    double total_err = segs[0].err;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        auto worst = std::max_element(segs.begin(), segs.end(),
                                      [](const auto& a, const auto& b) { return a.err < b.err; });
        if (worst->depth >= spec.max_depth || static_cast<int>(segs.size()) >= kMaxSegments) {
            out.converged = false;
            break;
        }
        const detail::Segment parent = *worst;
        const double mid = 0.5 * (parent.lo + parent.hi);
        const auto left = detail::gk15(f, parent.lo, mid, parent.depth + 1);
        const auto right = detail::gk15(f, mid, parent.hi, parent.depth + 1);
        out.evals += 30;
        *worst = left;
        segs.push_back(right);
        // Re-sum rather than update incrementally so the result does not
        // depend on accumulated cancellation.
        total = 0.0;
        total_err = 0.0;
        for (const auto& s : segs) {
            total += s.value;
            total_err += s.err;
        }
    }
    out.value = total;
    out.err_estimate = total_err;
    return out;
}

/// Adaptive integration; throws QuadratureError if the tolerance is not met.
template <class F>
QuadResult integrate_1d(F&& f, double lo, double hi, const QuadSpec& spec) {
    spec.validate();
    auto res = try_integrate_1d(std::forward<F>(f), lo, hi, spec);
    if (!res.converged)
        throw QuadratureError("integrate_1d: tolerance not met", res.value, res.err_estimate);
    return res;
}

/// Upper bound of the tail integral of r * exp(-c (r - shift)^2) over
/// [cut, inf), valid for cut >= shift >= 0.
double gaussian_tail_bound(double cut, double decay_coeff, double shift);

/// Smallest cut on a fixed grid whose gaussian_tail_bound is below `target`.
double truncation_radius(double lo, double decay_coeff, double shift, double target);

/// Integrates f over [lo, inf) where |f(r)| <= r exp(-c (r - shift)^2)
/// beyond `shift`. The range is cut at the radius whose analytic tail bound
/// falls below abs_tol / truncation_margin.
template <class F>
QuadResult integrate_radial_semi_infinite(F&& f, double lo, double decay_coeff, const QuadSpec& spec,
                                          double shift = 0.0) {
    spec.validate();
    if (!(decay_coeff > 0.0)) throw DomainError("integrate_radial_semi_infinite: decay_coeff must be > 0");
    const double cut = truncation_radius(lo, decay_coeff, std::max(shift, 0.0),
                                         spec.abs_tol / spec.truncation_margin);
    if (cut <= lo) return {};
    auto res = try_integrate_1d(std::forward<F>(f), lo, cut, spec);
    res.err_estimate += gaussian_tail_bound(cut, decay_coeff, std::max(shift, 0.0));
    if (!res.converged)
        throw QuadratureError("integrate_radial_semi_infinite: tolerance not met", res.value,
                              res.err_estimate);
    return res;
}

/// theta in [theta_lo, theta_hi]; w1 in [w1_lo(theta), w1_hi(theta)];
/// w2 in [w2_lo(theta, w1), w2_hi(theta, w1)].
struct Region3 {
    double theta_lo = 0.0;
    double theta_hi = 0.0;
    std::function<double(double)> w1_lo;
    std::function<double(double)> w1_hi;
    std::function<double(double, double)> w2_lo;
    std::function<double(double, double)> w2_hi;
};

/// Iterated adaptive integration, innermost over w2. Inner tolerances are a
/// decade tighter than the outer one; inner error estimates are added to the
/// outer estimate weighted by the outer interval length.
template <class F>
QuadResult try_integrate_3d_iterated(F&& f, const Region3& region, const QuadSpec& spec) {
    QuadSpec mid_spec = spec;
    mid_spec.rel_tol = spec.rel_tol * 0.1;
    mid_spec.abs_tol = spec.abs_tol * 0.1;
    QuadSpec inner_spec = mid_spec;
    inner_spec.rel_tol = mid_spec.rel_tol * 0.1;
    inner_spec.abs_tol = mid_spec.abs_tol * 0.1;

    long evals = 0;
    bool converged = true;
    double max_mid_err = 0.0;
    double max_inner_err = 0.0;

    auto over_w1 = [&](double theta) {
        const double a = region.w1_lo(theta);
        const double b = region.w1_hi(theta);
        if (!(a < b)) return 0.0;
        auto over_w2 = [&](double w1) {
            const double c = region.w2_lo(theta, w1);
            const double d = region.w2_hi(theta, w1);
            if (!(c < d)) return 0.0;
            auto inner = try_integrate_1d([&](double w2) { return f(theta, w1, w2); }, c, d, inner_spec);
            evals += inner.evals;
            converged = converged && inner.converged;
            max_inner_err = std::max(max_inner_err, inner.err_estimate);
            return inner.value;
        };
        auto mid = try_integrate_1d(over_w2, a, b, mid_spec);
        converged = converged && mid.converged;
        max_mid_err = std::max(max_mid_err, mid.err_estimate + (b - a) * max_inner_err);
        return mid.value;
    };
    auto outer = try_integrate_1d(over_w1, region.theta_lo, region.theta_hi, spec);
    outer.evals = evals;
    outer.converged = outer.converged && converged;
    outer.err_estimate += (region.theta_hi - region.theta_lo) * max_mid_err;
    return outer;
}

template <class F>
QuadResult integrate_3d_iterated(F&& f, const Region3& region, const QuadSpec& spec) {
    spec.validate();
    auto res = try_integrate_3d_iterated(std::forward<F>(f), region, spec);
    if (!res.converged)
        throw QuadratureError("integrate_3d_iterated: tolerance not met", res.value, res.err_estimate);
    return res;
}

}  // namespace vbl::quad
