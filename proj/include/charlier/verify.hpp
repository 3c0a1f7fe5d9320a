#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "charlier/types.hpp"

namespace charlier {

/// End-to-end comparison of a finite-n root cloud against the limiting
/// objects. Serialized as one key=value pair per line.
struct VerificationReport {
    double a = 0.0;
    int n = 0;
    bool localization_ok = false;
    bool symmetry_ok = false;
    double trace_error = 0.0;        // |sum of roots - (n+1)/2|
    double trace_tol = 1e-7;         // mode-dependent bound on trace_error
    double mass_total = 0.0;
    double cdf_sup_distance = 0.0;
    std::vector<std::pair<Complex, double>> cauchy_errors;  // probe, |C_mu_n - C_mu|
    double threshold = 0.0;
    double gamma1 = 0.0;
    std::vector<std::string> warnings;

    bool mass_ok() const;
    bool cdf_ok() const;
    bool cauchy_ok() const;
    bool all_ok() const;
};

/// Runs the full pipeline (roots, curve, measure, Cauchy probes) for one
/// (n, a, seed).
VerificationReport run_verification(int n, double a, std::uint64_t seed);

/// Deterministic probe points inside Omega_plus and Omega_minus, per_region
/// each, away from the attractor and the rectangle boundary.
std::vector<Complex> cauchy_probes(double a, int per_region);

void write_report(std::ostream& os, const VerificationReport& report);

}  // namespace charlier
