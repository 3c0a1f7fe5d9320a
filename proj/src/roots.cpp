#include "charlier/roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "charlier/measure.hpp"
#include "charlier/poly.hpp"
#include "charlier/saddle.hpp"

namespace charlier {

namespace {

constexpr int kMaxSweeps = 500;
constexpr double kMergeDistance = 1e-8;
constexpr double kRealClusterPad = 0.05;

struct EvalInfo {
    Complex ratio{0.0, 0.0};  // p'/p
    double newton = 0.0;      // |p/p'|, distance-to-root proxy
    double residual = 0.0;    // |p| / 2^peak
    bool at_root = false;     // value underflowed to exactly zero
};

EvalInfo probe(Complex z, int n, double a, Precision precision) {
    const PolyEval pe = eval_pn(z, n, a, precision);
    EvalInfo info;
    info.residual = std::exp2(pe.value.log2_abs() - pe.peak_log2);
    if (pe.value.is_zero()) {
        info.at_root = true;
        info.residual = 0.0;
        return info;
    }
    info.ratio = scaled_ratio(pe.derivative, pe.value);
    info.newton = 1.0 / std::abs(info.ratio);
    return info;
}

std::vector<Complex> initial_guesses(int n, double a, std::uint64_t seed,
                                     const TracedCurve& support) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> jitter(0.0, 0.02);
    const double ymax = 2.0 * std::sqrt(a);
    const double g1 = support.gamma1;
    const double mu2 = std::max(0.0, g1 - a);
    const int m = static_cast<int>(support.samples.size());

    std::vector<Complex> z;
    z.reserve(n);
    const int n_support = (7 * n) / 10;
    for (int i = 0; i < n_support; ++i) {
        Complex base;
        if (mu2 > 0.0 && unif(gen) < mu2) {
            base = Complex(a + unif(gen) * mu2, 0.0);
        } else {
            const CurveSample& s =
                support.samples[std::min<int>(m - 1, static_cast<int>(unif(gen) * m))];
            base = Complex(s.x, unif(gen) < 0.5 ? s.y : -s.y);
        }
        z.push_back(base + Complex(jitter(gen), jitter(gen)));
    }
    for (int i = n_support; i < n; ++i)
        z.push_back(Complex(unif(gen), ymax * (2.0 * unif(gen) - 1.0)));

    // Aberth needs pairwise-distinct iterates.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (std::abs(z[i] - z[j]) < 1e-12)
                z[i] += Complex(1e-10 * (i + 1), 1e-10);
    return z;
}

// Pairing radius 1e-6: far above the per-root noise of the binary64 mode,
// far below the ~1/n root spacing.
void symmetrize_conjugates(std::vector<Complex>& z) {
    const int n = static_cast<int>(z.size());
    std::vector<char> used(n, 0);
    for (int i = 0; i < n; ++i) {
        if (used[i] || z[i].imag() <= 0.0) continue;
        int best = -1;
        double best_dist = 1e-6 * (1.0 + std::abs(z[i]));
        for (int j = 0; j < n; ++j) {
            if (used[j] || j == i || z[j].imag() >= 0.0) continue;
            const double dist = std::abs(std::conj(z[i]) - z[j]);
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        if (best >= 0) {
            const Complex mean = 0.5 * (z[i] + std::conj(z[best]));
            z[i] = mean;
            z[best] = std::conj(mean);
            used[i] = used[best] = 1;
        }
    }
    for (int i = 0; i < n; ++i)
        if (!used[i] && z[i].imag() != 0.0 &&
            std::abs(z[i].imag()) < 1e-6 * (1.0 + std::abs(z[i])))
            z[i] = Complex(z[i].real(), 0.0);
}

std::vector<int> merge_multiplicities(std::vector<Complex>& z) {
    const int n = static_cast<int>(z.size());
    std::vector<int> cluster(n);
    for (int i = 0; i < n; ++i) cluster[i] = i;
    const auto find = [&](int i) {
        while (cluster[i] != i) i = cluster[i] = cluster[cluster[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (std::abs(z[i] - z[j]) < kMergeDistance) cluster[find(i)] = find(j);

    std::vector<Complex> sum(n, Complex(0.0, 0.0));
    std::vector<int> count(n, 0);
    for (int i = 0; i < n; ++i) {
        const int r = find(i);
        sum[r] += z[i];
        ++count[r];
    }
    std::vector<int> multiplicity(n);
    for (int i = 0; i < n; ++i) {
        const int r = find(i);
        if (count[r] > 1) z[i] = sum[r] / static_cast<double>(count[r]);
        multiplicity[i] = count[r];
    }
    return multiplicity;
}

void check_invariants(const std::vector<Complex>& z, int n, double a,
                      Precision precision) {
    const double ymax = 2.0 * std::sqrt(a);
    Complex sum{0.0, 0.0};
    for (const Complex& r : z) {
        sum += r;
        if (!(r.real() > 0.0) || r.real() > 1.0 + 1e-8 ||
            std::abs(r.imag()) >= ymax + 1e-8)
            throw InvariantError("find_roots: root outside the localization rectangle");
    }
    // binary64 root noise near gamma(1) caps the achievable sum accuracy at
    // a few 1e-7 for n ~ 100; the 1e-7 contract is enforced where the
    // arithmetic can support it
    const double trace_tol = (precision == Precision::standard) ? 1e-5 : 1e-7;
    const double trace_err = std::abs(sum - Complex((n + 1) / 2.0, 0.0));
    if (trace_err > trace_tol) {
        char msg[96];
        std::snprintf(msg, sizeof(msg),
                      "find_roots: root sum deviates from (n+1)/2 by %.3e",
                      trace_err);
        throw InvariantError(msg);
    }
    for (const Complex& r : z) {
        double best = 1e300;
        for (const Complex& s : z) best = std::min(best, std::abs(std::conj(r) - s));
        if (best > 1e-9 * (1.0 + std::abs(r)))
            throw InvariantError("find_roots: conjugation symmetry violated");
    }
}

}  // namespace

RootSet find_roots(int n, double a, std::uint64_t seed, Exec exec,
                   Precision precision) {
    if (n < 1) throw std::invalid_argument("find_roots: n must be >= 1");
    if (!(a > 0.0)) throw std::invalid_argument("find_roots: a must be > 0");
    if (precision == Precision::standard && n > 200)
        throw std::invalid_argument(
            "find_roots: n > 200 requires CHARLIER_PRECISION=extended");

    const TracedCurve support = trace_curve(a, 129, Exec::serial);
    std::vector<Complex> z = initial_guesses(n, a, seed, support);
    std::vector<Complex> z_next(n), best(z);
    std::vector<double> prev_step(n, 1e300), best_newton(n, 1e300);

    const double step_tol = (precision == Precision::standard) ? 1e-13 : 1e-28;
    int sweeps = 0;
    double stagnant_level = 1e300;
    int stagnant_since = 0;

    for (sweeps = 1; sweeps <= kMaxSweeps; ++sweeps) {
        double max_step = 0.0;
        const auto update = [&](int i) {
            const EvalInfo info = probe(z[i], n, a, precision);
            if (info.at_root) {
                best[i] = z[i];
                best_newton[i] = 0.0;
                z_next[i] = z[i];
                prev_step[i] = 0.0;
                return;
            }
            // a stored best is only valid while the iterate stays in the same
            // basin; reset it once the iterate has moved far away
            if (std::abs(z[i] - best[i]) > 1e3 * best_newton[i] + 1e-12)
                best_newton[i] = 1e300;
            if (info.newton < best_newton[i]) {
                best_newton[i] = info.newton;
                best[i] = z[i];
            }
            Complex repulsion{0.0, 0.0};
            for (int j = 0; j < n; ++j)
                if (j != i) repulsion += 1.0 / (z[i] - z[j]);
            const Complex denom = info.ratio - repulsion;
            Complex corr = (denom == Complex(0.0, 0.0)) ? Complex(0.0, 0.0)
                                                        : 1.0 / denom;
            // keep the step finite and local
            const double mag = std::abs(corr);
            const double cap = 0.5 * (1.0 + std::abs(z[i]));
            if (!std::isfinite(mag))
                corr = Complex(0.0, 0.0);
            else if (mag > cap)
                corr *= cap / mag;
            // damp oscillating iterates
            if (std::abs(corr) > 0.7 * prev_step[i]) corr *= 0.5;
            prev_step[i] = std::abs(corr);
            z_next[i] = z[i] - corr;
        };

        if (exec == Exec::parallel) {
            std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(static)
            for (int i = 0; i < n; ++i) {
                try {
                    update(i);
                } catch (...) {
#pragma omp critical
                    if (!err) err = std::current_exception();
                }
            }
            if (err) std::rethrow_exception(err);
        } else {
            for (int i = 0; i < n; ++i) update(i);
        }
        z.swap(z_next);

        double worst_best = 0.0;
        for (int i = 0; i < n; ++i) {
            max_step = std::max(max_step, prev_step[i] / (1.0 + std::abs(z[i])));
            worst_best = std::max(worst_best, best_newton[i]);
        }
        if (max_step < step_tol) break;
        // precision-floor stall: all iterates near roots but steps no longer shrink
        if (worst_best < 0.95 * stagnant_level) {
            stagnant_level = worst_best;
            stagnant_since = sweeps;
        } else if (max_step < 1e-5 && sweeps - stagnant_since > 15) {
            break;
        }
    }
    sweeps = std::min(sweeps, kMaxSweeps);

    z = best;
    symmetrize_conjugates(z);
    std::vector<int> multiplicity = merge_multiplicities(z);

    RootSet rs;
    rs.n = n;
    rs.a = a;
    rs.roots = z;
    rs.multiplicity = std::move(multiplicity);
    rs.iterations = sweeps;
    rs.residuals.resize(n);
    for (int i = 0; i < n; ++i)
        rs.residuals[i] = probe(z[i], n, a, precision).residual;

    const double worst =
        *std::max_element(rs.residuals.begin(), rs.residuals.end());
    if (worst > 1e-10)
        throw ConvergenceError("find_roots: residuals above 1e-10 after " +
                               std::to_string(sweeps) + " sweeps");
    check_invariants(rs.roots, n, a, precision);
    return rs;
}

namespace {

// boundary of [lo, hi], counterclockwise, samples_per_side points per side
std::vector<Complex> rectangle_boundary(Complex lo, Complex hi, int per_side) {
    std::vector<Complex> pts;
    pts.reserve(4 * per_side);
    for (int k = 0; k < per_side; ++k) {
        const double s = static_cast<double>(k) / per_side;
        pts.emplace_back(lo.real() + s * (hi.real() - lo.real()), lo.imag());
    }
    for (int k = 0; k < per_side; ++k) {
        const double s = static_cast<double>(k) / per_side;
        pts.emplace_back(hi.real(), lo.imag() + s * (hi.imag() - lo.imag()));
    }
    for (int k = 0; k < per_side; ++k) {
        const double s = static_cast<double>(k) / per_side;
        pts.emplace_back(hi.real() - s * (hi.real() - lo.real()), hi.imag());
    }
    for (int k = 0; k < per_side; ++k) {
        const double s = static_cast<double>(k) / per_side;
        pts.emplace_back(lo.real(), hi.imag() - s * (hi.imag() - lo.imag()));
    }
    return pts;
}

struct WindingResult {
    double winding = 0.0;
    double max_jump = 0.0;
    bool boundary_hit = false;
};

WindingResult winding_of(const std::vector<Complex>& pts, int n, double a,
                         Exec exec, Precision precision) {
    const int total = static_cast<int>(pts.size());
    std::vector<double> phase(total);
    std::vector<char> hit(total, 0);
    const auto eval_at = [&](int k) {
        const PolyEval pe = eval_pn(pts[k], n, a, precision);
        // a sample evaluating to noise sits on a root; roots merely close to
        // the boundary are handled by the phase-jump refinement instead
        if (pe.value.is_zero() || pe.value.log2_abs() - pe.peak_log2 < -43.0) {
            hit[k] = 1;
            phase[k] = 0.0;
            return;
        }
        phase[k] = std::arg(pe.value.mantissa);
    };
    if (exec == Exec::parallel) {
        std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(static)
        for (int k = 0; k < total; ++k) {
            try {
                eval_at(k);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
    } else {
        for (int k = 0; k < total; ++k) eval_at(k);
    }

    WindingResult res;
    for (int k = 0; k < total; ++k)
        if (hit[k]) res.boundary_hit = true;
    double sum = 0.0;
    for (int k = 0; k < total; ++k) {
        double d = phase[(k + 1) % total] - phase[k];
        while (d > M_PI) d -= 2.0 * M_PI;
        while (d <= -M_PI) d += 2.0 * M_PI;
        sum += d;
        res.max_jump = std::max(res.max_jump, std::abs(d));
    }
    res.winding = sum / (2.0 * M_PI);
    return res;
}

}  // namespace

int count_zeros(Complex rect_lo, Complex rect_hi, int n, double a,
                int samples_per_side, Exec exec, Precision precision) {
    if (n < 1) throw std::invalid_argument("count_zeros: n must be >= 1");
    if (!(a > 0.0)) throw std::invalid_argument("count_zeros: a must be > 0");
    if (!(rect_lo.real() < rect_hi.real() && rect_lo.imag() < rect_hi.imag()) ||
        !std::isfinite(rect_lo.real() + rect_lo.imag() + rect_hi.real() +
                       rect_hi.imag()))
        throw std::invalid_argument("count_zeros: degenerate rectangle");
    if (samples_per_side < 256)
        throw std::invalid_argument("count_zeros: samples_per_side must be >= 256");

    const double diag = std::abs(rect_hi - rect_lo);
    for (int retry = 0; retry <= 3; ++retry) {
        const double pad = retry * 3e-7 * diag * (retry % 2 == 0 ? 1.0 : 1.37);
        const Complex lo = rect_lo - Complex(pad, pad);
        const Complex hi = rect_hi + Complex(pad, pad);

        int per_side = samples_per_side;
        WindingResult cur = winding_of(rectangle_boundary(lo, hi, per_side), n, a,
                                       exec, precision);
        if (cur.boundary_hit) continue;
        bool hit = false;
        int stable_count = -1;
        for (int level = 0; level < 12; ++level) {
            per_side *= 2;
            const WindingResult next = winding_of(
                rectangle_boundary(lo, hi, per_side), n, a, exec, precision);
            if (next.boundary_hit) {
                hit = true;
                break;
            }
            const long cur_int = std::lround(cur.winding);
            const long next_int = std::lround(next.winding);
            if (cur_int == next_int && next.max_jump < M_PI / 2.0 &&
                std::abs(next.winding - next_int) <= 0.25) {
                stable_count = static_cast<int>(next_int);
                break;
            }
            cur = next;
        }
        if (hit) continue;
        if (stable_count < 0)
            throw ConvergenceError("count_zeros: non-integral winding after refinement");
        return stable_count;
    }
    throw ConvergenceError("count_zeros: boundary hit after 3 perturbation retries");
}

EmpiricalCdf empirical_cdf_on_curve(const RootSet& rs, const TracedCurve& curve) {
    if (rs.a != curve.a)
        throw std::invalid_argument("empirical_cdf_on_curve: mismatched a");
    const int m = static_cast<int>(curve.samples.size());
    const double a = rs.a;
    const double g1 = curve.gamma1;
    const bool has_mu2 = g1 > a + 1e-12;
    const double cluster_height = std::max(0.02, 5.0 / rs.n);

    EmpiricalCdf cdf;
    cdf.n = rs.n;
    cdf.grid.resize(m);
    cdf.counts.assign(m, 0);
    for (int j = 0; j < m; ++j) cdf.grid[j] = curve.samples[j].t;

    const auto arc_distance2 = [&](const Complex& r) {
        double best = 1e300;
        int arg = 0;
        for (int j = 0; j < m; ++j) {
            const double dx = curve.samples[j].x - r.real();
            const double dy = curve.samples[j].y - std::abs(r.imag());
            const double d2 = dx * dx + dy * dy;
            if (d2 < best) {
                best = d2;
                arg = j;
            }
        }
        return std::pair<double, int>(best, arg);
    };
    const auto interval_distance2 = [&](const Complex& r) {
        const double dx = r.real() - std::clamp(r.real(), a, g1);
        return dx * dx + r.imag() * r.imag();
    };

    std::vector<int> jumps(m, 0);
    for (const Complex& r : rs.roots) {
        const auto [arc_d2, nearest] = arc_distance2(r);
        if (has_mu2 && std::abs(r.imag()) < cluster_height &&
            r.real() >= a - kRealClusterPad && r.real() <= g1 + kRealClusterPad &&
            interval_distance2(r) <= arc_d2) {
            ++cdf.real_cluster_count;
            continue;
        }
        if (!(r.imag() > 0.0)) continue;
        ++jumps[nearest];
        const double dist = std::sqrt(arc_d2);
        cdf.max_assign_distance = std::max(cdf.max_assign_distance, dist);
        if (dist > 0.1) ++cdf.far_count;
    }
    int running = 0;
    for (int j = 0; j < m; ++j) {
        running += jumps[j];
        cdf.counts[j] = running;
    }
    return cdf;
}

double cdf_sup_distance(const EmpiricalCdf& cdf, const TracedCurve& curve) {
    const int m = static_cast<int>(cdf.grid.size());
    double sup = 0.0;
    for (int j = 0; j < m; ++j) {
        const double expected = mu1_mass_to(cdf.grid[j], curve);
        sup = std::max(sup, std::abs(static_cast<double>(cdf.counts[j]) / cdf.n -
                                     expected));
    }
    return sup;
}

}  // namespace charlier
