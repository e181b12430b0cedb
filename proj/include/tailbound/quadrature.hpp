#pragma once

#include <functional>

namespace tailbound::quad {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    int panels = 0;
    bool converged = false;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    int max_panels = 1 << 12;
};

/// Quadrature tolerance honoring the TAILBOUND_QUAD_TOL environment override.
double default_abs_tol();

/// Options with abs_tol = default_abs_tol().
QuadOptions default_options();

/// Adaptive 7/15-point Gauss-Kronrod on a finite interval [lo, hi]. The panel
/// with the largest error estimate is bisected until the summed estimate falls
/// below abs_tol or the panel budget is exhausted. Endpoints are never sampled,
/// so integrable endpoint singularities are allowed.
QuadResult integrate(const std::function<double(double)>& fn, double lo, double hi,
                     const QuadOptions& opts = default_options());

/// Integral over [lo, +inf) using t = lo + u / (1 - u), u in [0, 1).
QuadResult integrate_upper(const std::function<double(double)>& fn, double lo,
                           const QuadOptions& opts = default_options());

/// Integral over (-inf, hi] using t = hi - u / (1 - u), u in [0, 1).
QuadResult integrate_lower(const std::function<double(double)>& fn, double hi,
                           const QuadOptions& opts = default_options());

/// Integral over an arbitrary interval whose ends may be infinite.
QuadResult integrate_any(const std::function<double(double)>& fn, double lo, double hi,
                         const QuadOptions& opts = default_options());

}  // namespace tailbound::quad
