#pragma once

#include "charlier/curve.hpp"
#include "charlier/types.hpp"

namespace charlier {

/// Mass decomposition of the limiting measure mu = mu_1 + mu_2.
/// total = 2 mu1_mass + mu2_mass and must equal 1.
struct MeasureSummary {
    double a = 0.0;
    double gamma1 = 0.0;
    double mu1_mass = 0.0;   // mass of one arc
    double mu2_mass = 0.0;   // mass of [a, gamma1], 0 when a >= gamma1
    double total = 0.0;
    double quadrature_total = 0.0;  // independent route through the density
};

/// Arc density d mu_1/dt at a traced sample. Signals degeneracy at t = 0
/// where the saddle points coincide.
double density_mu1(const CurveSample& sample, double a);

/// mu_1 mass of the arc between parameters t_alpha <= t_beta, through rho.
/// Nonnegative.
double mu1_arc_mass(double t_alpha, double t_beta, const TracedCurve& curve);

/// Cumulative one-arc mass mu_1(gamma([0,t])).
double mu1_mass_to(double t, const TracedCurve& curve);

/// Density of mu_2: 1 on [a, gamma1] when a < gamma1, else 0.
double mu2_density(double x, double a, double gamma1);

/// Total mass by two routes (closed form through rho; tanh-sinh quadrature
/// of the density). Signals inconsistency if they disagree beyond 1e-5.
MeasureSummary total_mass(double a, const TracedCurve& curve);

namespace detail {
/// Pointwise arc density at z on the curve; throws on coincident saddles.
double arc_density_at(Complex z, double a);
}  // namespace detail

}  // namespace charlier
