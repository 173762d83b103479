#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "winding_atlas/errors.hpp"

namespace watlas {

/// Truncation control for infinite series.
struct SeriesTolerance {
    double rel_tol = 1e-12;
    std::size_t max_terms = 100000;
};

/// Tolerances and budgets for the semi-infinite and [0,1] integrations.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    double x_cutoff_eps = 1e-12;   // tail-truncation target for semi-infinite ranges
    std::size_t max_subdivisions = 4000;
};

namespace quad {

/// Gauss-Kronrod 7-15 rule on [a,b]. Returns the K15 estimate, writes the
/// |K15-G7| error proxy to err.
double gk15(const std::function<double(double)>& f, double a, double b, double& err);

/// Globally adaptive bisection driven by gk15. Throws ConvergenceError when
/// the subdivision budget is exhausted before abs_tol/rel_tol is met.
double adaptive(const std::function<double(double)>& f, double a, double b,
                double abs_tol, double rel_tol, std::size_t max_subdivisions);

inline double adaptive(const std::function<double(double)>& f, double a, double b,
                       const QuadratureSpec& spec) {
    return adaptive(f, a, b, spec.abs_tol, spec.rel_tol, spec.max_subdivisions);
}

/// Double-exponential quadrature for integral of f over (0, inf) where f decays
/// at least exponentially and may have an integrable algebraic singularity
/// at 0.  Substitution t = exp(s - exp(-s)), trapezoid with step halving.
double de_semi_infinite(const std::function<double(double)>& f,
                        double rel_tol, std::size_t max_levels = 12);

/// Composite n-panel 32-point Gauss-Legendre on [a,b] with panel doubling
/// until two successive refinements agree to tolerance.  Node set is fixed
/// once converged, so the result is deterministic.
double gauss_composite(const std::function<double(double)>& f, double a, double b,
                       double abs_tol, double rel_tol, std::size_t max_panels = 4096);

}  // namespace quad
}  // namespace watlas
