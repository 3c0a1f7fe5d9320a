#pragma once

#include <cstdint>
#include <vector>

#include "charlier/curve.hpp"
#include "charlier/types.hpp"

namespace charlier {

/// All n roots of p_n(.;a) with diagnostics. residuals[i] is the scaled
/// |p_n(root)| mantissa: |p_n| relative to the peak magnitude reached by
/// the evaluating recurrence. multiplicity[i] counts roots merged within
/// 1e-8 of root i (1 = simple).
struct RootSet {
    int n = 0;
    double a = 0.0;
    std::vector<Complex> roots;
    std::vector<double> residuals;
    std::vector<int> multiplicity;
    int iterations = 0;
};

/// Empirical counting of upper-half-plane roots along the curve parameter.
/// counts[k] = number of arc-assigned roots with projected t <= grid[k].
struct EmpiricalCdf {
    std::vector<double> grid;
    std::vector<int> counts;
    int n = 0;
    int real_cluster_count = 0;  // roots assigned to the mu_2 interval
    int far_count = 0;           // roots farther than the warning distance
    double max_assign_distance = 0.0;
};

/// Aberth-Ehrlich simultaneous iteration with p, p' from eval_pn. Initial
/// guesses: 70% jittered along the theoretical support, 30% uniform in the
/// localization rectangle, deterministic for a fixed seed. Sweeps update
/// all roots from the previous sweep's snapshot, so the parallel and serial
/// paths agree bitwise.
RootSet find_roots(int n, double a, std::uint64_t seed,
                   Exec exec = Exec::parallel,
                   Precision precision = precision_from_env());

/// Number of zeros of p_n(.;a) strictly inside the axis-aligned rectangle
/// [Re lo, Re hi] x [Im lo, Im hi], by the winding of p_n over the boundary.
/// Doubles samples_per_side until the winding integer is stable; retries a
/// perturbed rectangle when a boundary sample sits on a root.
int count_zeros(Complex rect_lo, Complex rect_hi, int n, double a,
                int samples_per_side = 256, Exec exec = Exec::parallel,
                Precision precision = precision_from_env());

/// Projects each upper-half root to the nearest curve sample; roots with
/// |Im| < max(0.02, 5/n) and Re within [a - 0.05, gamma1 + 0.05] go to the
/// real cluster instead (only when mu_2 is nontrivial).
EmpiricalCdf empirical_cdf_on_curve(const RootSet& rs, const TracedCurve& curve);

/// sup_t |counts(t)/n - mu_1(gamma([0,t]))| between the empirical CDF and
/// the rho-based arc mass.
double cdf_sup_distance(const EmpiricalCdf& cdf, const TracedCurve& curve);

}  // namespace charlier
