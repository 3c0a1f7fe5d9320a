#pragma once

#include "charlier/types.hpp"

namespace charlier {

/// The two critical points of f(.;z), roots of a xi^2 + (z-1) xi - 1 = 0.
struct SaddlePair {
    Complex xi_plus;
    Complex xi_minus;
    Complex z;
    double a = 0.0;
};

enum class Region { OmegaPlus, OmegaMinus, OmegaZero };

/// Phase function f(xi;z) = (a-z) log(1+xi) + log(xi) - a xi, principal
/// branches. Rejects xi on (-inf,-1] and xi = 0.
Complex f_eval(Complex xi, Complex z, double a);

/// xi_pm = (1 - z +- sqrt((1-z)^2 + 4a)) / (2a), principal square root.
SaddlePair saddle_points(Complex z, double a);

/// g(z) = Re f(xi_+;z) - Re f(xi_-;z), continuously extended through the
/// kink at z = a where g(a) = -log(a) - a - 1.
double g_value(Complex z, double a);

/// Default classification tolerance, 1e-12 * (1 + |f(xi_+)| + |f(xi_-)|).
double classification_tol(Complex z, double a);

/// OmegaPlus if g > tol, OmegaMinus if g < -tol, OmegaZero otherwise.
/// tol < 0 selects classification_tol(z,a).
Region classify(Complex z, double a, double tol = -1.0);

/// Limiting Cauchy transform: log(1+xi_-) on OmegaPlus, log(1+xi_+) on
/// OmegaMinus; the lower half-plane is reached by conjugation symmetry.
/// Signals "on attractor" for OmegaZero.
Complex limiting_cauchy(Complex z, double a);

/// rho(z) = (f(xi_+;z) - f(xi_-;z)) / (2 pi i). Full complex value; on the
/// traced curve the imaginary part is a diagnostic that should vanish.
Complex rho(Complex z, double a);

namespace detail {
/// f with real arguments of the logarithms taken as upper-side limits
/// (imaginary part +0). Total except at xi = 0 and xi = -1.
Complex f_principal(Complex xi, Complex z, double a);
/// Re f(xi;z) = (a-Re z) log|1+xi| + (Im z) arg(1+xi) + log|xi| - a Re xi.
double re_f(Complex xi, Complex z, double a);
}  // namespace detail

}  // namespace charlier
