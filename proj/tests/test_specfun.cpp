#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "winding_atlas/quadrature.hpp"
#include "winding_atlas/specfun.hpp"

using namespace watlas;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Trapezoid-free fixed oracle for U(a;b;z): 4096-panel Gauss-Legendre-ish
// midpoint rule on t in [0, T] after the substitution t = u^2 (regularizes
// the t^{a-1} endpoint for a < 1).
double hyper_u_oracle(double a, double b, double z) {
    const double t_max = 60.0;
    const double u_max = std::sqrt(t_max);
    const int n = 200000;
    const double h = u_max / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = (i + 0.5) * h;
        const double t = u * u;
        sum += 2.0 * u * std::exp(-z * t) * std::pow(t, a - 1.0) *
               std::pow(1.0 + t, b - a - 1.0);
    }
    return sum * h / std::tgamma(a);
}

}  // namespace

TEST_CASE("scaled Bessel I: half-integer closed form") {
    // I_{1/2}(x) = sqrt(2/(pi x)) sinh x.
    for (double x : {0.1, 0.5, 1.0, 3.0, 10.0, 40.0}) {
        const double exact = std::sqrt(2.0 / (kPi * x)) * std::sinh(x) * std::exp(-x);
        CHECK(bessel_i_scaled(0.5, x) == doctest::Approx(exact).epsilon(1e-12));
    }
    // I_{3/2}(x) = sqrt(2/(pi x)) (cosh x - sinh(x)/x).
    for (double x : {0.5, 2.0, 15.0}) {
        const double exact =
            std::sqrt(2.0 / (kPi * x)) * (std::cosh(x) - std::sinh(x) / x) * std::exp(-x);
        CHECK(bessel_i_scaled(1.5, x) == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("scaled Bessel I: limits and edge cases") {
    CHECK(bessel_i_scaled(0.0, 0.0) == 1.0);
    CHECK(bessel_i_scaled(0.7, 0.0) == 0.0);
    CHECK(bessel_i_scaled(3.0, 0.0) == 0.0);
    // e^{-x} I_0(x) -> 1/sqrt(2 pi x) for large x.
    const double x = 1e4;
    CHECK(bessel_i_scaled(0.0, x) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * kPi * x)).epsilon(1e-4));
}

TEST_CASE("scaled Bessel I: three-term recurrence") {
    // I_{nu-1}(x) - I_{nu+1}(x) = (2 nu / x) I_nu(x), preserved by the scaling.
    for (double nu : {0.5, 1.3, 4.0, 12.5, 50.0}) {
        for (double x : {0.1, 1.0, 7.0, 30.0, 100.0}) {
            const double lhs = bessel_i_scaled(nu - 0.5, x) - bessel_i_scaled(nu + 1.5, x);
            const double rhs = (2.0 * (nu + 0.5) / x) * bessel_i_scaled(nu + 0.5, x);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
    }
}

TEST_CASE("hyper U: z^{-a} small-b identity") {
    // U(a; a+1; z) = z^{-a} exactly.
    for (double a : {0.1, 0.5, 0.9}) {
        for (double z : {0.5, 5.0, 500.0}) {
            CHECK(hyper_u(a, a + 1.0, z) == doctest::Approx(std::pow(z, -a)).epsilon(1e-10));
        }
    }
}

TEST_CASE("hyper U: large-z asymptotics and fixed oracle") {
    // U(a;b;z) ~ z^{-a} as z -> inf regardless of b.
    CHECK(hyper_u(0.4, 0.8, 2000.0) == doctest::Approx(std::pow(2000.0, -0.4)).epsilon(1e-3));
    CHECK(hyper_u(1.2, 0.3, 5000.0) == doctest::Approx(std::pow(5000.0, -1.2)).epsilon(1e-3));
    CHECK(hyper_u(0.5, 1.0, 1.0) == doctest::Approx(hyper_u_oracle(0.5, 1.0, 1.0)).epsilon(1e-8));
    CHECK(hyper_u(0.75, 1.5, 2.0) ==
          doctest::Approx(hyper_u_oracle(0.75, 1.5, 2.0)).epsilon(1e-7));
}

TEST_CASE("hyper U: domain errors") {
    CHECK_THROWS(hyper_u(-0.5, 1.0, 1.0));
    CHECK_THROWS(hyper_u(0.5, 1.0, -1.0));
}

TEST_CASE("one-path area density") {
    // Peak value pi/(2t) at A = 0.
    CHECK(levy_density(0.0, 1.0) == doctest::Approx(kPi / 2.0).epsilon(1e-14));
    CHECK(levy_density(0.0, 4.0) == doctest::Approx(kPi / 8.0).epsilon(1e-14));
    // Even in A.
    CHECK(levy_density(0.37, 2.0) == levy_density(-0.37, 2.0));
    // Normalization and variance by direct quadrature.
    QuadratureSpec spec;
    const double norm =
        quad::adaptive([](double a) { return levy_density(a, 1.0); }, -30.0, 30.0, spec);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
    // Split at 0: the integrand a^2 sech^2(pi a) vanishes at most coarse
    // nodes of one wide symmetric panel, which defeats the error estimate.
    const double var =
        2.0 * quad::adaptive([](double a) { return a * a * levy_density(a, 1.0); }, 0.0, 8.0,
                             spec);
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(1e-9));
}

TEST_CASE("area characteristic function") {
    CHECK(pm_char_fn(0.0, 3, 2.0) == 1.0);
    // u/sinh(u) at Bt/2 = 1.
    const double one = 1.0 / std::sinh(1.0);
    CHECK(pm_char_fn(2.0, 1, 1.0) == doctest::Approx(one).epsilon(1e-14));
    // m paths = m-th power of one path.
    const double f1 = pm_char_fn(0.8, 1, 1.5);
    CHECK(pm_char_fn(0.8, 5, 1.5) == doctest::Approx(std::pow(f1, 5)).epsilon(1e-13));
    // Small-argument branch joins the direct formula smoothly.
    CHECK(pm_char_fn(2e-4, 2, 1.0) ==
          doctest::Approx(std::pow(1e-4 / std::sinh(1e-4), 2)).epsilon(1e-13));
    CHECK(pm_char_fn(1.9e-4, 2, 1.0) ==
          doctest::Approx(std::pow(0.95e-4 / std::sinh(0.95e-4), 2)).epsilon(1e-13));
}

TEST_CASE("area density: series vs Fourier quadrature") {
    SeriesTolerance tol;
    for (int m : {1, 2, 3, 6}) {
        for (double a_over_t : {0.0, 0.1, 0.5, 1.2}) {
            AreaDensityParams p{m, 2.0, 2.0 * a_over_t};
            const double s = pm_density_series(p, tol);
            const double q = pm_density_quad(p);
            CHECK(s == doctest::Approx(q).epsilon(2e-8).scale(1.0));
        }
    }
}

TEST_CASE("area density: m=1 series reproduces the sech^2 law") {
    SeriesTolerance tol;
    for (double a : {0.0, 0.2, 1.0, 3.0}) {
        AreaDensityParams p{1, 1.0, a};
        CHECK(pm_density_series(p, tol) == doctest::Approx(levy_density(a, 1.0)).epsilon(1e-10));
    }
}

TEST_CASE("area density: closed forms for m = 2, 3") {
    SeriesTolerance tol;
    for (double ap : {0.0, 0.15, 0.6, 1.4}) {
        // Series evaluated at A = A' t sqrt(m), converted to the rescaled density.
        AreaDensityParams p2{2, 1.0, ap * std::sqrt(2.0)};
        CHECK(std::sqrt(2.0) * pm_density_series(p2, tol) ==
              doctest::Approx(p2_rescaled(ap)).epsilon(1e-9));
        AreaDensityParams p3{3, 1.0, ap * std::sqrt(3.0)};
        CHECK(std::sqrt(3.0) * pm_density_series(p3, tol) ==
              doctest::Approx(p3_rescaled(ap)).epsilon(1e-9));
    }
    // Peak values from the series expansions at A' = 0.
    CHECK(p2_rescaled(0.0) == doctest::Approx(kPi * std::sqrt(2.0) / 3.0).epsilon(1e-12));
    CHECK(p3_rescaled(0.0) ==
          doctest::Approx(kPi * std::sqrt(3.0) / 2.0 * (3.0 - kPi * kPi / 4.0)).epsilon(1e-12));
    // Branch continuity around the small-u switch of p2.
    CHECK(p2_rescaled(0.05 / (kPi * std::sqrt(2.0)) - 1e-9) ==
          doctest::Approx(p2_rescaled(0.05 / (kPi * std::sqrt(2.0)) + 1e-9)).epsilon(1e-7));
}

TEST_CASE("area density: Gaussian limit and moments") {
    CHECK(pinf_rescaled(0.0) == doctest::Approx(std::sqrt(6.0 / kPi)).epsilon(1e-14));
    QuadratureSpec spec;
    const double norm = quad::adaptive(pinf_rescaled, -4.0, 4.0, spec);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
    const double var =
        quad::adaptive([](double a) { return a * a * pinf_rescaled(a); }, -4.0, 4.0, spec);
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(1e-9));
    CHECK(pm_variance(7, 2.0) == doctest::Approx(7.0 * 4.0 / 12.0).epsilon(1e-15));
    // Large m: the rescaled Fourier-inversion density approaches the
    // Gaussian limit.
    const int m = 200;
    AreaDensityParams p{m, 1.0, 0.3 * std::sqrt(static_cast<double>(m))};
    CHECK(std::sqrt(static_cast<double>(m)) * pm_density_quad(p) ==
          doctest::Approx(pinf_rescaled(0.3)).epsilon(2e-2));
}

TEST_CASE("area density: scaling in t") {
    // P_m(A; t) = P_m(A/s; t/s)/s for any rescaling s.
    SeriesTolerance tol;
    AreaDensityParams a{4, 3.0, 1.1};
    AreaDensityParams b{4, 1.0, 1.1 / 3.0};
    CHECK(pm_density_series(a, tol) ==
          doctest::Approx(pm_density_series(b, tol) / 3.0).epsilon(1e-10));
}
