#pragma once

// Secure in- and out-degree of a virtual node S0 when legitimate users and
// eavesdroppers form independent Poisson processes. The in-degree is the
// number of legitimate users inside the Voronoi cell of S0 with respect to
// the eavesdroppers, modelled as a Poisson count mixed over the Gamma-fitted
// cell area. The out-degree is geometric regardless of where S0 sits.

#include <utility>
#include <vector>

#include "vbl/moments.hpp"
#include "vbl/void_geometry.hpp"

namespace vbl::secrecy {

using moments::GammaParams;

class IntensityRatio {
public:
    IntensityRatio(double lambda_l, double lambda_e);

    double lambda_l() const { return lambda_l_; }
    double lambda_e() const { return lambda_e_; }
    double p() const { return lambda_l_ / lambda_e_; }

private:
    double lambda_l_;
    double lambda_e_;
};

/// Poisson(p A) averaged over A ~ Gamma(k, nu): a negative binomial.
double in_degree_pmf(int n, double p, const GammaParams& g);

/// Closed form through 2F1(1, 1 + k + n; 2 + n; p nu / (1 + p nu)).
double in_degree_cdf(int n, double p, const GammaParams& g);

/// Same CDF by direct summation of in_degree_pmf.
double in_degree_cdf_by_summation(int n, double p, const GammaParams& g);

/// Mean and variance of the in-degree from the first two area moments.
std::pair<double, double> in_degree_moments(double p, double mean_area, double second_area);

double out_degree_pmf(int n, double p);
double out_degree_cdf(int n, double p);

double in_isolation(double p, const GammaParams& g);
double out_isolation(double p);

/// Smallest N such that the in-degree mass above N is below `tail`, using
/// the geometric decay of consecutive pmf ratios past the mode.
int in_degree_support_limit(double p, const GammaParams& g, double tail = 1e-12);

struct IsolationRow {
    double lambda_e = 0.0;
    double p_in_isolation = 0.0;
    double p_out_isolation = 0.0;
};

std::vector<IsolationRow> isolation_comparison(double lambda_l, const std::vector<double>& lambda_e_grid,
                                               const GammaParams& g);

/// Uses the fitted Gamma parameters for Corner, Edge or Bulk; throws
/// DomainError for any other location.
std::vector<IsolationRow> isolation_comparison(double lambda_l, const std::vector<double>& lambda_e_grid,
                                               const geom::SeedLocation& location);

}  // namespace vbl::secrecy
