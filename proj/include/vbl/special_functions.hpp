#pragma once

// Real-argument special functions needed by the closed-form moments, bounds
// and the in-degree CDF. All functions are pure and thread-safe.

namespace vbl::sf {

struct FuncEvalPolicy {
    double rel_tol = 1e-12;
    int max_terms = 10'000;

    void validate() const;
};

double erf(double x);
double erfc(double x);

/// Modified Bessel function of the first kind, order one. x >= 0.
double bessel_i1(double x, const FuncEvalPolicy& policy = {});

/// Modified Struve function of the first kind, order one (ascending series).
/// Intended for moderate x; grows like e^x. x >= 0.
double struve_l1(double x, const FuncEvalPolicy& policy = {});

/// M1(x) = L1(x) - I1(x), computed without cancellation for large x.
/// Tends to -2/pi as x grows.
double struve_m1(double x, const FuncEvalPolicy& policy = {});

/// Argument at which struve_m1 switches from the series difference to the
/// integral representation.
inline constexpr double kStruveM1Crossover = 8.0;

/// int_x^inf e^{-t} / t dt for x > 0 (often written E1).
double expint_upper(double x, const FuncEvalPolicy& policy = {});

/// log Gamma(x) for x > 0.
double ln_gamma(double x);

/// z above which hyp2f1_secrecy abandons the raw series.
inline constexpr double kHyp2f1Switch = 0.9;

/// 2F1(1, 1 + k + n; 2 + n; z) for k > 0, n >= 0, z in [0, 1).
/// Above kHyp2f1Switch the value is recovered from the complement of the
/// finite negative-binomial sum sum_{m<=n} C(k+m-1, m) z^m (1-z)^k whenever
/// that complement is large enough to be free of cancellation.
double hyp2f1_secrecy(double k, int n, double z, const FuncEvalPolicy& policy = {});

}  // namespace vbl::sf
