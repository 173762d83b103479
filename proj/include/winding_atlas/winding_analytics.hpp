#pragma once

#include <map>

#include "winding_atlas/quadrature.hpp"

namespace watlas {

/// Fourier spectrum of mean sector areas for m paths of duration t:
/// coefficients[n] = <S_n(m)> for n != 0, plus the summed total.
struct SectorSpectrum {
    int m = 1;
    double t = 1.0;
    std::map<int, double> coefficients;
    double total_minus_zero = 0.0;
};

/// Winding-phase average G_alpha(x) = e^{-x} sum_k I_{|k-alpha|}(x),
/// 0 <= alpha <= 1, x = r^2/t >= 0.  Symmetric under alpha -> 1-alpha.
double g_alpha(double alpha, double x, const SeriesTolerance& tol = {});

/// 1 - G_alpha(x) without cancellation, from the resummed order sum
/// (sin(pi a)/pi) Integral_0^inf e^{-x(1+cosh t)}
///     (e^{-a t} + e^{-(1-a) t}) / (1 + e^{-t}) dt.
/// Full relative accuracy even where G is within an ulp of 1.
double g_alpha_complement(double alpha, double x, const QuadratureSpec& quad = {});

/// dG_alpha/dx through the degenerate hypergeometric representation.
/// For alpha < 1/2 the reflection G_alpha = G_{1-alpha} is used.
double g_alpha_deriv(double alpha, double x);

/// Large-x approximation of 1 - G_alpha(x).
double g_alpha_tail(double alpha, double x);

/// Regularized sector-area generating integral
/// Z_alpha(m) = pi t Integral_0^inf (1 - G_alpha(x)^m) dx.
double z_alpha(int m, double alpha, double t, const QuadratureSpec& quad = {});

/// Mean arithmetic area <S_n(m)> of the n-winding sectors, n != 0.
double mean_sector_area(int n, int m, double t, const QuadratureSpec& quad = {});

/// <S(m) - S_0(m)> = Integral_0^1 Z_alpha(m) d(alpha).
double mean_total_minus_zero(int m, double t, const QuadratureSpec& quad = {});

/// Sector spectrum for |n| <= n_max plus the total.
SectorSpectrum sector_spectrum(int m, double t, int n_max, const QuadratureSpec& quad = {});

/// Leading large-m form (pi t / 2) ln m, valid for m >= 2.
double asymptotic_leading(double m, double t);

/// Leading plus subleading large-m form
/// t [ (pi/2) ln m - (pi/4) ln ln m - (pi/2)(ln sqrt(4 pi) - gamma) ],
/// valid for m > e.
double asymptotic_subleading(double m, double t);

/// Diagnostic for the sharpening of G_alpha(y ln m / 2)^m towards a step
/// function at y = 1.
double heaviside_limit_check(double alpha, double y, int m);

}  // namespace watlas
