#include "winding_atlas/specfun.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

namespace watlas {

namespace {

constexpr double kPi = 3.14159265358979323846;

void neumaier_add(double& sum, double& comp, double term) {
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
        comp += (sum - t) + term;
    else
        comp += (term - t) + sum;
    sum = t;
}

// Ascending power series for e^{-x} I_nu(x).  All terms are positive, so the
// only hazards are intermediate overflow (handled by rescaling) and the final
// exp() round trip.
double bessel_series_scaled(double nu, double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0, comp = 0.0;
    double log_scale = 0.0;
    constexpr double kBig = 1e280;
    constexpr double kLogBig = 644.654630613213934;  // ln(1e280)
    for (std::size_t k = 0;; ++k) {
        term *= q / (static_cast<double>(k + 1) * (nu + static_cast<double>(k) + 1.0));
        neumaier_add(sum, comp, term);
        if (term > kBig) {
            term /= kBig;
            sum /= kBig;
            comp /= kBig;
            log_scale += kLogBig;
        }
        if (term < 1e-18 * sum && q < static_cast<double>(k + 2) * (nu + static_cast<double>(k) + 2.0))
            break;
        if (k > 200000)
            throw ConvergenceError("bessel_i_scaled: series did not terminate");
    }
    const double log_pref = nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) - x + log_scale;
    return std::exp(log_pref) * (sum + comp);
}

// Large-argument (Hankel) expansion of e^{-x} I_nu(x).  Returns false when
// the optimally truncated series cannot certify ~1e-13 relative accuracy.
bool bessel_asymptotic_scaled(double nu, double x, double& out) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0, comp = 0.0;
    for (int k = 0; k < 60; ++k) {
        const double odd = 2.0 * k + 1.0;
        const double next = -term * (mu - odd * odd) / (8.0 * x * (k + 1.0));
        if (std::abs(next) >= std::abs(term)) break;  // divergence onset
        term = next;
        neumaier_add(sum, comp, term);
        if (std::abs(term) < 1e-17 * std::abs(sum)) {
            out = (sum + comp) / std::sqrt(2.0 * kPi * x);
            return true;
        }
    }
    if (std::abs(term) < 5e-14 * std::abs(sum)) {
        out = (sum + comp) / std::sqrt(2.0 * kPi * x);
        return true;
    }
    return false;
}

}  // namespace

double AreaDensityParams::rescaled_area() const {
    return area / (t * std::sqrt(static_cast<double>(m)));
}

double bessel_i_scaled(double nu, double x) {
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw std::domain_error("bessel_i_scaled: nu must be finite and >= 0");
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error("bessel_i_scaled: x must be finite and >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    if (x > std::max(20.0, 2.0 * nu)) {
        double out;
        if (bessel_asymptotic_scaled(nu, x, out)) return out;
    }
    return bessel_series_scaled(nu, x);
}

double hyper_u(double a, double b, double z) {
    if (!(a > 0.0)) throw std::domain_error("hyper_u: requires a > 0");
    if (!(z > 0.0)) throw std::domain_error("hyper_u: requires z > 0");
    const double c = b - a - 1.0;
    const auto integrand = [a, c, z](double t) -> double {
        return std::exp(-t + (a - 1.0) * std::log(t) + c * std::log1p(t / z));
    };
    const double integral = quad::de_semi_infinite(integrand, 1e-13);
    return std::exp(-a * std::log(z) - std::lgamma(a)) * integral;
}

double levy_density(double area, double t) {
    if (!(t > 0.0)) throw std::domain_error("levy_density: requires t > 0");
    const double u = std::abs(kPi * area / t);
    const double e = std::exp(-u);
    const double sech = 2.0 * e / (1.0 + e * e);
    return (kPi / (2.0 * t)) * sech * sech;
}

double pm_char_fn(double b_var, int m, double t) {
    if (m < 1) throw std::domain_error("pm_char_fn: requires m >= 1");
    if (!(t > 0.0)) throw std::domain_error("pm_char_fn: requires t > 0");
    const double u = std::abs(0.5 * b_var * t);
    double f;
    if (u < 1e-4) {
        const double u2 = u * u;
        f = 1.0 - u2 / 6.0 + 7.0 * u2 * u2 / 360.0;
    } else {
        // u / sinh(u) = 2 u e^{-u} / (1 - e^{-2u}), overflow-free; expm1
        // keeps the denominator accurate for small u.
        f = -2.0 * u * std::exp(-u) / std::expm1(-2.0 * u);
    }
    return std::pow(f, m);
}

double pm_density_series(const AreaDensityParams& params, const SeriesTolerance& tol) {
    if (params.m < 1) throw std::domain_error("pm_density_series: requires m >= 1");
    if (!(params.t > 0.0)) throw std::domain_error("pm_density_series: requires t > 0");
    if (!(tol.rel_tol > 0.0) || tol.max_terms < 1)
        throw std::domain_error("pm_density_series: invalid tolerance");

    const int m = params.m;
    const double t = params.t;
    const double a = params.area / t;
    const double half_m = 0.5 * m;
    const std::complex<double> c(half_m, a);
    const double pref_log = std::lgamma(m + 1.0) - std::log(2.0 * kPi * t);

    // Partial sum of the k-series in log-magnitude form (no cancellation in
    // the binomial/power factors; Neumaier-compensated accumulation).
    double sum = 0.0, comp = 0.0;
    double logC = 0.0;  // log C(k+m-1, k), advanced recursively
    std::size_t k = 0;
    const auto add_block = [&](std::size_t k_end) {
        for (; k < k_end; ++k) {
            const double kk = static_cast<double>(k);
            const double u = kk + half_m;
            const double log_mod = 0.5 * std::log(u * u + a * a);
            const double phase = std::atan2(a, u);
            const double term =
                2.0 * std::exp(pref_log + logC - (m + 1.0) * log_mod) *
                std::cos((m + 1.0) * phase);
            neumaier_add(sum, comp, term);
            logC += std::log1p((m - 1.0) / (kk + 1.0));
        }
    };

    // Euler-Maclaurin completion of the tail.  The binomial is a degree-m-1
    // polynomial in k; expanded in powers of (k+c) the tail becomes a sum of
    // polygamma-style tails, each with an explicit remainder bound.
    const auto tail_sum = [&](std::size_t k_start, double& remainder_bound)
        -> std::complex<double> {
        // Elementary symmetric functions of { i - c : i = 1..m-1 }.
        std::vector<std::complex<double>> e(static_cast<std::size_t>(m), 0.0);
        e[0] = 1.0;
        for (int i = 1; i <= m - 1; ++i) {
            const std::complex<double> d = static_cast<double>(i) - c;
            for (int j = std::min(i, m - 1); j >= 1; --j) e[j] += d * e[j - 1];
        }
        static constexpr double kB[4] = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0};
        static constexpr double kFact[4] = {2.0, 24.0, 720.0, 40320.0};
        const std::complex<double> w = static_cast<double>(k_start) + c;
        std::complex<double> total = 0.0;
        remainder_bound = 0.0;
        for (int j = 0; j < m; ++j) {
            const double s = j + 2.0;
            std::complex<double> tj = std::pow(w, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(w, -s);
            double rising = s;  // s (s+1) ... running product
            for (int r = 0; r < 4; ++r) {
                tj += (kB[r] / kFact[r]) * rising * std::pow(w, -s - (2.0 * r + 1.0));
                rising *= (s + 2.0 * r + 1.0) * (s + 2.0 * r + 2.0);
            }
            // Magnitude of the first omitted Bernoulli term (B10/10!).
            remainder_bound += std::abs(e[static_cast<std::size_t>(j)]) *
                               (5.0 / 66.0 / 3628800.0) * rising *
                               std::pow(std::abs(w), -s - 9.0);
            total += e[static_cast<std::size_t>(j)] * tj;
        }
        const double tail_pref = m / (2.0 * kPi * t);  // m!/(2 pi t (m-1)!)
        remainder_bound *= 2.0 * tail_pref;
        return 2.0 * tail_pref * total;
    };

    std::size_t block = std::max<std::size_t>(64, static_cast<std::size_t>(4 * m));
    for (;;) {
        if (block > tol.max_terms)
            throw ConvergenceError("pm_density_series: max_terms reached before tolerance");
        add_block(block);
        double rem = 0.0;
        const std::complex<double> tail = tail_sum(block, rem);
        const double value = sum + comp + tail.real();
        if (rem <= tol.rel_tol * std::abs(value)) return std::max(value, 0.0);
        block *= 2;
    }
}

double pm_density_quad(const AreaDensityParams& params) {
    if (params.m < 1) throw std::domain_error("pm_density_quad: requires m >= 1");
    if (!(params.t > 0.0)) throw std::domain_error("pm_density_quad: requires t > 0");
    const int m = params.m;
    const double t = params.t;
    // Truncate where (u/sinh u)^m drops below 1e-18: bisect on
    // m ln(sinh u / u) = 41.5, with ln(sinh u / u) = u + log1p(-e^{-2u}) - ln 2u.
    const auto log_decay = [](double u) {
        return u + std::log1p(-std::exp(-2.0 * u)) - std::log(2.0 * u);
    };
    double lo = 1e-8, hi = 41.5 / m + 50.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (m * log_decay(mid) < 41.5 ? lo : hi) = mid;
    }
    const double b_max = 2.0 * hi / t;
    const double area = params.area;
    const auto integrand = [m, t, area](double b) -> double {
        return pm_char_fn(b, m, t) * std::cos(b * area);
    };
    return quad::adaptive(integrand, 0.0, b_max, 1e-12, 1e-11, 40000) / kPi;
}

double p2_rescaled(double a_prime) {
    const double u = kPi * std::sqrt(2.0) * std::abs(a_prime);
    const double pref = kPi * std::sqrt(2.0);
    if (u < 0.05) {
        // (u coth u - 1)/sinh^2 u with both factors expanded; the leading u^2
        // cancels exactly, leaving a well-conditioned ratio.
        const double u2 = u * u;
        const double num = 1.0 / 3.0 - u2 / 45.0 + 2.0 * u2 * u2 / 945.0;
        const double den = 1.0 + u2 / 3.0 + 2.0 * u2 * u2 / 45.0;
        return pref * num / den;
    }
    if (u > 300.0) return 4.0 * pref * (u - 1.0) * std::exp(-2.0 * u);
    const double sh = std::sinh(u);
    return pref * (u * std::cosh(u) / sh - 1.0) / (sh * sh);
}

double p3_rescaled(double a_prime) {
    const double v = kPi * std::sqrt(3.0) * a_prime;
    if (std::abs(v) > 300.0) {
        const double av = std::abs(v);
        return (kPi * std::sqrt(3.0) / 2.0) * 4.0 * std::exp(-2.0 * av) *
               (2.0 * v * v - 6.0 * av + 3.0 + kPi * kPi / 2.0);
    }
    const double ch = std::cosh(v);
    const double th = std::tanh(v);
    const double expr = 3.0 - 6.0 * v * th -
                        (v * v + kPi * kPi / 4.0) * (1.0 - 3.0 * th * th);
    return (kPi * std::sqrt(3.0) / 2.0) * expr / (ch * ch);
}

double pinf_rescaled(double a_prime) {
    return std::sqrt(6.0 / kPi) * std::exp(-6.0 * a_prime * a_prime);
}

double pm_variance(int m, double t) {
    if (m < 1) throw std::domain_error("pm_variance: requires m >= 1");
    if (!(t > 0.0)) throw std::domain_error("pm_variance: requires t > 0");
    return m * t * t / 12.0;
}

}  // namespace watlas
