#pragma once

#include <cstdint>

#include "winding_atlas/quadrature.hpp"

namespace watlas {

/// Parameters of the algebraic-area density of m superposed closed paths.
struct AreaDensityParams {
    int m = 1;        // number of paths, >= 1
    double t = 1.0;   // path duration, > 0
    double area = 0.0;  // algebraic area A, same units as t

    /// Rescaled area A' = A / (t sqrt(m)).
    double rescaled_area() const;
};

/// Exponentially scaled modified Bessel function e^{-x} I_nu(x), nu >= 0,
/// x >= 0.  Accurate to ~1e-12 relative for x <= 1e4, nu <= 1e3.
double bessel_i_scaled(double nu, double x);

/// Tricomi confluent hypergeometric function U(a; b; z) for a > 0, z > 0,
/// evaluated from its real integral representation.
double hyper_u(double a, double b, double z);

/// Levy's law: density of the algebraic area of one closed path of duration t.
double levy_density(double area, double t);

/// Characteristic function (Bt/2 / sinh(Bt/2))^m of the m-path algebraic area.
double pm_char_fn(double b_var, int m, double t);

/// m-path algebraic-area density from the k-series representation.
double pm_density_series(const AreaDensityParams& params, const SeriesTolerance& tol);

/// m-path algebraic-area density by direct Fourier inversion of the
/// characteristic function (brute-force cosine transform, the oracle route).
double pm_density_quad(const AreaDensityParams& params);

/// Closed-form rescaled densities: m = 2, m = 3, and the Gaussian m -> inf
/// limit, all as functions of A' = A / (t sqrt(m)).
double p2_rescaled(double a_prime);
double p3_rescaled(double a_prime);
double pinf_rescaled(double a_prime);

/// Variance of the m-path algebraic area: m t^2 / 12.
double pm_variance(int m, double t);

}  // namespace watlas
