#include "vbl/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "vbl/errors.hpp"
#include "vbl/quadrature.hpp"

namespace vbl::sf {

namespace {

constexpr double kPi = std::numbers::pi;

double i1_series(double x, const FuncEvalPolicy& policy) {
    const double half = 0.5 * x;
    const double q = half * half;
    double term = half;
    double sum = term;
    for (int k = 0; k < policy.max_terms; ++k) {
        term *= q / ((k + 1.0) * (k + 2.0));
        sum += term;
        if (term <= policy.rel_tol * 1e-3 * sum) return sum;
    }
    throw ConvergenceError("bessel_i1: series did not converge");
}

// Hankel expansion e^x / sqrt(2 pi x) * sum_k (-1)^k a_k(1) / x^k, stopped at
// the smallest term.
double i1_asymptotic(double x) {
    constexpr double mu = 4.0;
    double term = 1.0;
    double sum = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(term) >= prev) break;
        sum += term;
        prev = std::abs(term);
        if (prev < 1e-17 * std::abs(sum)) break;
    }
    return std::exp(x) / std::sqrt(2.0 * kPi * x) * sum;
}

// M1(x) = -(2/pi) int_0^x sqrt(1 - (v/x)^2) e^{-v} dv, i.e. the standard
// representation -(2x/pi) int_0^{pi/2} e^{-x cos t} sin^2 t dt after v = x cos t.
double m1_integral(double x, const FuncEvalPolicy& policy) {
    quad::QuadSpec spec;
    spec.rel_tol = std::max(policy.rel_tol, 1e-14);
    spec.abs_tol = 0.0;
    spec.max_depth = 50;
    const double upper = std::min(x, 45.0);
    auto integrand = [x](double v) {
        const double s = v / x;
        return std::sqrt((1.0 - s) * (1.0 + s)) * std::exp(-v);
    };
    const auto res = quad::try_integrate_1d(integrand, 0.0, upper, spec);
    if (!res.converged) throw ConvergenceError("struve_m1: integral representation did not converge");
    return -2.0 / kPi * res.value;
}

}  // namespace

void FuncEvalPolicy::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) throw DomainError("FuncEvalPolicy: rel_tol must lie in (0, 1e-3]");
    if (max_terms < 50) throw DomainError("FuncEvalPolicy: max_terms must be >= 50");
}

double erf(double x) { return std::erf(x); }

double erfc(double x) { return std::erfc(x); }

double bessel_i1(double x, const FuncEvalPolicy& policy) {
    policy.validate();
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("bessel_i1: x must be finite and >= 0");
    if (x == 0.0) return 0.0;
    return x <= 30.0 ? i1_series(x, policy) : i1_asymptotic(x);
}

double struve_l1(double x, const FuncEvalPolicy& policy) {
    policy.validate();
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("struve_l1: x must be finite and >= 0");
    if (x == 0.0) return 0.0;
    const double q = 0.25 * x * x;
    // leading term (x/2)^2 / (Gamma(3/2) Gamma(5/2))
    double term = q * 8.0 / (3.0 * kPi);
    double sum = term;
    for (int k = 0; k < policy.max_terms; ++k) {
        term *= q / ((k + 1.5) * (k + 2.5));
        sum += term;
        if (term <= policy.rel_tol * 1e-3 * sum) return sum;
    }
    throw ConvergenceError("struve_l1: series did not converge");
}

double struve_m1(double x, const FuncEvalPolicy& policy) {
    policy.validate();
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("struve_m1: x must be finite and >= 0");
    if (x == 0.0) return 0.0;
    if (x <= kStruveM1Crossover) return struve_l1(x, policy) - i1_series(x, policy);
    return m1_integral(x, policy);
}

double expint_upper(double x, const FuncEvalPolicy& policy) {
    policy.validate();
    if (!(x > 0.0)) throw DomainError("expint_upper: x must be > 0");
    if (std::isinf(x)) return 0.0;
    if (x <= 1.0) {
        // -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
        double sum = 0.0;
        double fact = 1.0;
        for (int k = 1; k < policy.max_terms; ++k) {
            fact *= -x / k;
            const double term = fact / k;
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return -std::numbers::egamma - std::log(x) - sum;
    }
    // Lentz continued fraction.
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < policy.max_terms; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return h * std::exp(-x);
    }
    throw ConvergenceError("expint_upper: continued fraction did not converge");
}

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma: x must be > 0");
    if (std::isinf(x)) return x;
    if (x < 0.5) return std::log(kPi / std::sin(kPi * x)) - ln_gamma(1.0 - x);
    // Lanczos, g = 7, n = 9.
    static constexpr std::array<double, 9> coef = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    const double y = x - 1.0;
    double sum = coef[0];
    for (int i = 1; i < 9; ++i) sum += coef[i] / (y + i);
    const double t = y + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (y + 0.5) * std::log(t) - t + std::log(sum);
}

double hyp2f1_secrecy(double k, int n, double z, const FuncEvalPolicy& policy) {
    policy.validate();
    if (!(k > 0.0)) throw DomainError("hyp2f1_secrecy: k must be > 0");
    if (n < 0) throw DomainError("hyp2f1_secrecy: n must be >= 0");
    if (!(z >= 0.0 && z < 1.0)) throw DomainError("hyp2f1_secrecy: z must lie in [0, 1)");
    if (z == 0.0) return 1.0;

    const double b = 1.0 + k + n;
    const double c = 2.0 + n;

    if (z > kHyp2f1Switch) {
        // Negative-binomial head sum; its complement equals prefactor * 2F1.
        double pmf = std::exp(k * std::log1p(-z));
        double head = pmf;
        for (int m = 0; m < n; ++m) {
            pmf *= (k + m) / (m + 1.0) * z;
            head += pmf;
        }
        const double tail = 1.0 - head;
        if (tail > 1e-4) {
            const double log_pref = (n + 1.0) * std::log(z) + k * std::log1p(-z) + ln_gamma(b) -
                                    ln_gamma(k) - ln_gamma(c);
            return tail * std::exp(-log_pref);
        }
    }

    double term = 1.0;
    double sum = 1.0;
    for (int j = 0; j < policy.max_terms; ++j) {
        const double ratio = (b + j) / (c + j) * z;
        term *= ratio;
        sum += term;
        const double q = std::max((b + j + 1) / (c + j + 1) * z, z);
        if (q < 1.0 && term * q / (1.0 - q) <= policy.rel_tol * 1e-3 * sum) return sum;
    }
    throw ConvergenceError("hyp2f1_secrecy: series did not converge within max_terms");
}

}  // namespace vbl::sf
