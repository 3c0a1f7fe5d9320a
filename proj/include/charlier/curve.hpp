#pragma once

#include <vector>

#include "charlier/types.hpp"

namespace charlier {

/// One traced point of the zero-attractor arc, z = x + iy with
/// y = 2 sqrt(a) (1-t).
struct CurveSample {
    double t = 0.0;         // normalized parameter in [0,1]
    double y = 0.0;
    double x = 0.0;
    double rho_real = 0.0;  // Re rho(z); principal value (sign flips at t=1)
    double density = 0.0;   // d mu_1 / dt; 0 at the degenerate corner t=0
};

/// The arc Omega_0 sampled on a uniform t grid, t ascending from the corner
/// (t=0, z = 1+2i sqrt(a)) to the real end point (t=1, z = gamma1).
struct TracedCurve {
    double a = 0.0;
    std::vector<CurveSample> samples;
    double gamma1 = 0.0;
};

/// x-coordinate of the unique point of Omega_0 on the horizontal line at
/// height y, by bisection of g over [0,1]. y = 2 sqrt(a) returns 1 exactly.
double curve_x_at_y(double a, double y);

/// Traces Omega_0 on m uniform t samples. Per-slice bisections are
/// independent; exec selects the parallel or the serial reference path.
TracedCurve trace_curve(double a, int m, Exec exec = Exec::parallel);

/// Real end point gamma(1): the unique zero of g on (0,1).
double gamma1(double a);

/// Threshold a* solving a e^{1+a} = 1 (Newton, |residual| <= 1e-14).
double threshold_a();

/// a* by the fixed-point iteration a <- e^{-1-a}; cross-check route.
double threshold_a_fixed_point();

/// Unique positive solution of y = coth(y).
double solve_y0();

struct Gamma1Min {
    double a0 = 0.0;
    double value = 0.0;
};

/// Minimizes a -> gamma1(a) over [search_lo, search_hi] (golden section).
Gamma1Min gamma1_min(double search_lo = 0.05, double search_hi = 1.0);

/// Max residual of x'(t) log|(1+xi_+)/(1+xi_-)| + 2 sqrt(a) arg(...) over
/// interior samples, with x'(t) by central differences. Needs >= 9 samples.
double ode_residual(const TracedCurve& curve);

}  // namespace charlier
