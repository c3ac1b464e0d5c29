#include "vbl/secrecy.hpp"

#include <algorithm>
#include <cmath>

#include "vbl/errors.hpp"
#include "vbl/special_functions.hpp"

namespace vbl::secrecy {

namespace {

void require_p(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("secrecy: intensity ratio p must be finite and > 0");
}

void require_gamma(const GammaParams& g) {
    if (!(g.k > 0.0 && g.nu > 0.0)) throw DomainError("secrecy: Gamma parameters must be > 0");
}

}  // namespace

IntensityRatio::IntensityRatio(double lambda_l, double lambda_e) : lambda_l_(lambda_l), lambda_e_(lambda_e) {
    if (!(lambda_l > 0.0) || !(lambda_e > 0.0)) throw DomainError("IntensityRatio: intensities must be > 0");
}

double in_degree_pmf(int n, double p, const GammaParams& g) {
    require_p(p);
    require_gamma(g);
    if (n < 0) return 0.0;
    const double pn = p * g.nu;
    const double log_pmf = n * std::log(pn) + sf::ln_gamma(g.k + n) - sf::ln_gamma(n + 1.0) - sf::ln_gamma(g.k) -
                           (n + g.k) * std::log1p(pn);
    return std::exp(log_pmf);
}

double in_degree_cdf(int n, double p, const GammaParams& g) {
    require_p(p);
    require_gamma(g);
    if (n < 0) return 0.0;
    const double pn = p * g.nu;
    const double z = pn / (1.0 + pn);
    const double log_pref = (1.0 + n) * std::log(pn) + sf::ln_gamma(1.0 + g.k + n) -
                            (1.0 + g.k + n) * std::log1p(pn) - sf::ln_gamma(g.k) - sf::ln_gamma(2.0 + n);
    const double tail = std::exp(log_pref) * sf::hyp2f1_secrecy(g.k, n, z);
    return std::clamp(1.0 - tail, 0.0, 1.0);
}

double in_degree_cdf_by_summation(int n, double p, const GammaParams& g) {
    double sum = 0.0;
    for (int m = 0; m <= n; ++m) sum += in_degree_pmf(m, p, g);
    return std::min(sum, 1.0);
}

std::pair<double, double> in_degree_moments(double p, double mean_area, double second_area) {
    require_p(p);
    if (!(second_area > mean_area * mean_area)) throw DomainError("in_degree_moments: requires E{A^2} > E{A}^2");
    const double mean = p * mean_area;
    return {mean, mean + p * p * (second_area - mean_area * mean_area)};
}

double out_degree_pmf(int n, double p) {
    require_p(p);
    if (n < 0) return 0.0;
    return std::pow(p / (1.0 + p), n) / (1.0 + p);
}

double out_degree_cdf(int n, double p) {
    require_p(p);
    if (n < 0) return 0.0;
    return 1.0 - std::pow(p / (1.0 + p), n + 1);
}

double in_isolation(double p, const GammaParams& g) {
    require_p(p);
    require_gamma(g);
    return std::exp(-g.k * std::log1p(p * g.nu));
}

double out_isolation(double p) {
    require_p(p);
    return 1.0 / (1.0 + p);
}

int in_degree_support_limit(double p, const GammaParams& g, double tail) {
    require_p(p);
    require_gamma(g);
    const double z = p * g.nu / (1.0 + p * g.nu);
    double pmf = in_degree_pmf(0, p, g);
    for (int n = 0; n < 10'000'000; ++n) {
        const double next_ratio = (g.k + n + 1.0) / (n + 2.0) * z;
        const double q = std::max(next_ratio, z);
        if (q < 1.0 && pmf * q / (1.0 - q) < tail) return n;
        pmf *= (g.k + n) / (n + 1.0) * z;
    }
    throw ConvergenceError("in_degree_support_limit: tail bound not reached");
}

std::vector<IsolationRow> isolation_comparison(double lambda_l, const std::vector<double>& lambda_e_grid,
                                               const GammaParams& g) {
    std::vector<IsolationRow> rows;
    rows.reserve(lambda_e_grid.size());
    for (double lambda_e : lambda_e_grid) {
        const IntensityRatio ratio(lambda_l, lambda_e);
        rows.push_back({lambda_e, in_isolation(ratio.p(), g), out_isolation(ratio.p())});
    }
    return rows;
}

std::vector<IsolationRow> isolation_comparison(double lambda_l, const std::vector<double>& lambda_e_grid,
                                               const geom::SeedLocation& location) {
    return isolation_comparison(lambda_l, lambda_e_grid, moments::gamma_params_at(location));
}

}  // namespace vbl::secrecy
