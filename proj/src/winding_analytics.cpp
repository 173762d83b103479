#include "winding_atlas/winding_analytics.hpp"

#include <cmath>
#include <stdexcept>

#include "winding_atlas/specfun.hpp"

namespace watlas {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286;

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::domain_error("alpha must lie in [0, 1]");
}

// 1 - G_alpha(x)^m, with log1p/expm1 care where G is close to 1.
double one_minus_g_pow(double alpha, double x, int m) {
    const double g = g_alpha(alpha, x);
    if (g <= 0.0) return 1.0;
    if (g >= 1.0) return 0.0;
    return -std::expm1(static_cast<double>(m) * std::log1p(-(1.0 - g)));
}

}  // namespace

double g_alpha(double alpha, double x, const SeriesTolerance& tol) {
    check_alpha(alpha);
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error("g_alpha: x must be finite and >= 0");
    if (alpha == 0.0 || alpha == 1.0) return 1.0;
    if (x == 0.0) return 0.0;
    // Canonicalize so that the result is bitwise symmetric in alpha -> 1-alpha:
    // the order multiset {|k - alpha|} = {a, 1-a, 1+a, 2-a, 2+a, ...}.
    const double a = std::min(alpha, 1.0 - alpha);
    double sum = bessel_i_scaled(a, x);
    for (std::size_t j = 1; j <= tol.max_terms; ++j) {
        const double jj = static_cast<double>(j);
        const double pair = bessel_i_scaled(jj - a, x) + bessel_i_scaled(jj + a, x);
        sum += pair;
        if (pair <= tol.rel_tol * sum)
            return std::min(sum, 1.0);
    }
    throw ConvergenceError("g_alpha: order sum did not converge");
}

double g_alpha_complement(double alpha, double x, const QuadratureSpec& quad) {
    check_alpha(alpha);
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error("g_alpha_complement: x must be finite and >= 0");
    if (alpha == 0.0 || alpha == 1.0) return 0.0;
    if (x > 350.0) return 0.0;  // below double underflow
    const double a = std::min(alpha, 1.0 - alpha);
    const auto f = [a, x](double u) -> double {
        return std::exp(-x * (1.0 + std::cosh(u))) *
               (std::exp(-a * u) + std::exp(-(1.0 - a) * u)) / (1.0 + std::exp(-u));
    };
    // Truncate where both the cosh and the exponential order factors are spent.
    const double u_max =
        std::min(std::acosh(1.0 + 60.0 / std::max(x, 1e-12)), 60.0 / a);
    const double scale = std::exp(-2.0 * x);  // integrand magnitude at u = 0
    const double val = quad::adaptive(f, 0.0, u_max, quad.abs_tol * scale,
                                      quad.rel_tol, quad.max_subdivisions);
    return std::sin(kPi * a) / kPi * val;
}

double g_alpha_deriv(double alpha, double x) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("g_alpha_deriv: requires 0 < alpha < 1");
    if (!(x > 0.0))
        throw std::domain_error("g_alpha_deriv: requires x > 0");
    // The U-representation needs a = alpha - 1/2 > 0; below 1/2 evaluate the
    // reflected charge (G is symmetric under alpha -> 1-alpha).
    const double ae = alpha < 0.5 ? 1.0 - alpha : alpha;
    const double a = ae - 0.5;
    const double u = (a == 0.0) ? 1.0 : hyper_u(a, 2.0 * ae, 2.0 * x);
    return (2.0 / std::sqrt(kPi)) * std::sin(kPi * ae) *
           std::exp(-2.0 * x + (ae - 1.0) * std::log(2.0 * x)) * u;
}

double g_alpha_tail(double alpha, double x) {
    check_alpha(alpha);
    if (!(x > 0.0)) throw std::domain_error("g_alpha_tail: requires x > 0");
    return std::sin(kPi * alpha) / std::sqrt(2.0 * kPi * x) * std::exp(-2.0 * x);
}

double z_alpha(int m, double alpha, double t, const QuadratureSpec& quad) {
    if (m < 1) throw std::domain_error("z_alpha: requires m >= 1");
    if (!(t > 0.0)) throw std::domain_error("z_alpha: requires t > 0");
    check_alpha(alpha);
    if (alpha == 0.0 || alpha == 1.0) return 0.0;
    // Union bound 1 - G^m <= m (1 - G) sets the cutoff via the tail form.
    const double x_max = 0.5 * std::log(static_cast<double>(m) / quad.x_cutoff_eps) + 5.0;
    const auto f = [alpha, m](double x) { return one_minus_g_pow(alpha, x, m); };
    // Split at 1: the left panel carries the x^{min(alpha,1-alpha)} kink.
    const double tol_split = 0.5 * quad.abs_tol / (kPi * t);
    const double left = quad::adaptive(f, 0.0, 1.0, tol_split, quad.rel_tol,
                                       quad.max_subdivisions);
    const double right = quad::adaptive(f, 1.0, x_max, tol_split, quad.rel_tol,
                                        quad.max_subdivisions);
    return kPi * t * (left + right);
}

double mean_sector_area(int n, int m, double t, const QuadratureSpec& quad) {
    if (n == 0) throw std::domain_error("mean_sector_area: requires n != 0");
    if (m < 1) throw std::domain_error("mean_sector_area: requires m >= 1");
    if (!(t > 0.0)) throw std::domain_error("mean_sector_area: requires t > 0");
    // Z is symmetric about alpha = 1/2 and cos(2 pi n alpha) shares that
    // symmetry, so integrate half the range and double.  Computed at t = 1
    // and scaled (Z is linear in t).
    const auto f = [n, m, &quad](double alpha) {
        return z_alpha(m, alpha, 1.0, quad) * std::cos(2.0 * kPi * n * alpha);
    };
    const double val = -2.0 * quad::gauss_composite(f, 0.0, 0.5, quad.abs_tol, quad.rel_tol);
    return t * val;
}

double mean_total_minus_zero(int m, double t, const QuadratureSpec& quad) {
    if (m < 1) throw std::domain_error("mean_total_minus_zero: requires m >= 1");
    if (!(t > 0.0)) throw std::domain_error("mean_total_minus_zero: requires t > 0");
    const auto f = [m, &quad](double alpha) { return z_alpha(m, alpha, 1.0, quad); };
    return t * 2.0 * quad::gauss_composite(f, 0.0, 0.5, quad.abs_tol, quad.rel_tol);
}

SectorSpectrum sector_spectrum(int m, double t, int n_max, const QuadratureSpec& quad) {
    if (n_max < 1) throw std::domain_error("sector_spectrum: requires n_max >= 1");
    SectorSpectrum spec;
    spec.m = m;
    spec.t = t;
    for (int n = 1; n <= n_max; ++n) {
        const double s = mean_sector_area(n, m, t, quad);
        spec.coefficients[n] = s;
        spec.coefficients[-n] = s;  // reflection symmetry of Z under alpha -> 1-alpha
    }
    spec.total_minus_zero = mean_total_minus_zero(m, t, quad);
    return spec;
}

double asymptotic_leading(double m, double t) {
    if (!(m >= 2.0)) throw std::domain_error("asymptotic_leading: requires m >= 2");
    if (!(t > 0.0)) throw std::domain_error("asymptotic_leading: requires t > 0");
    return 0.5 * kPi * t * std::log(m);
}

double asymptotic_subleading(double m, double t) {
    if (!(m > std::exp(1.0)))
        throw std::domain_error("asymptotic_subleading: requires m > e");
    if (!(t > 0.0)) throw std::domain_error("asymptotic_subleading: requires t > 0");
    return t * (0.5 * kPi * std::log(m) - 0.25 * kPi * std::log(std::log(m)) -
                0.5 * kPi * (std::log(std::sqrt(4.0 * kPi)) - kEulerGamma));
}

double heaviside_limit_check(double alpha, double y, int m) {
    check_alpha(alpha);
    if (!(y >= 0.0)) throw std::domain_error("heaviside_limit_check: requires y >= 0");
    if (m < 2) throw std::domain_error("heaviside_limit_check: requires m >= 2");
    if (y == 0.0) return alpha == 0.0 || alpha == 1.0 ? 1.0 : 0.0;
    const double g = g_alpha(alpha, 0.5 * y * std::log(static_cast<double>(m)));
    if (g <= 0.0) return 0.0;
    return std::exp(static_cast<double>(m) * std::log(g));
}

}  // namespace watlas
