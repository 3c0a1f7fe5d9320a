#include "charlier/curve.hpp"

#include <cmath>
#include <limits>

#include "charlier/measure.hpp"
#include "charlier/saddle.hpp"

namespace charlier {

namespace {

// Bisection of x -> g(x + iy) on [lo, hi]; requires g(lo) > 0 > g(hi).
// 64 halvings from a unit bracket leave adjacent doubles.
double bisect_g(double a, double y, double lo, double hi) {
    double glo = g_value(Complex(lo, y), a);
    double ghi = g_value(Complex(hi, y), a);
    if (!(glo > 0.0) || !(ghi < 0.0))
        throw InvariantError("curve: bracket failure, sign structure of g violated");
    for (int i = 0; i < 64 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (g_value(Complex(mid, y), a) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

CurveSample make_sample(double a, double t, double y, double x) {
    CurveSample s;
    s.t = t;
    s.y = y;
    s.x = x;
    const Complex z(x, y);
    if (t == 1.0 && std::abs(1.0 + saddle_points(z, a).xi_minus) == 0.0) {
        // end point at the kink (a at the threshold): rho's limit is -1/2
        // and the density genuinely diverges
        s.rho_real = -0.5;
        s.density = std::numeric_limits<double>::infinity();
        return s;
    }
    s.rho_real = rho(z, a).real();
    if (t == 0.0) {
        s.density = 0.0;  // coincident saddles; excluded from quadrature
    } else {
        s.density = detail::arc_density_at(z, a);
    }
    return s;
}

}  // namespace

double curve_x_at_y(double a, double y) {
    if (!(a > 0.0)) throw std::invalid_argument("curve_x_at_y: a must be > 0");
    const double ymax = 2.0 * std::sqrt(a);
    if (y >= ymax) return 1.0;
    if (y < 0.0) throw std::invalid_argument("curve_x_at_y: y must be >= 0");
    return bisect_g(a, y, 0.0, 1.0);
}

TracedCurve trace_curve(double a, int m, Exec exec) {
    if (!(a > 0.0)) throw std::invalid_argument("trace_curve: a must be > 0");
    if (m < 2) throw std::invalid_argument("trace_curve: m must be >= 2");

    const double ymax = 2.0 * std::sqrt(a);
    TracedCurve curve;
    curve.a = a;
    curve.gamma1 = gamma1(a);
    curve.samples.resize(m);

    // corner sample pinned analytically (g degenerates there)
    curve.samples[0] = CurveSample{0.0, ymax, 1.0, 0.0, 0.0};
    curve.samples[m - 1] = make_sample(a, 1.0, 0.0, curve.gamma1);

    const auto fill = [&](int j) {
        const double t = static_cast<double>(j) / (m - 1);
        const double y = ymax * (1.0 - t);
        curve.samples[j] = make_sample(a, t, y, bisect_g(a, y, 0.0, 1.0));
    };
    if (exec == Exec::parallel) {
        std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic)
        for (int j = 1; j < m - 1; ++j) {
            try {
                fill(j);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
    } else {
        for (int j = 1; j < m - 1; ++j) fill(j);
    }

    const double gtol = 1e-12 * (1.0 + std::abs(std::log(a)) + a);
    for (int j = 1; j < m; ++j) {
        const CurveSample& s = curve.samples[j];
        if (std::abs(g_value(Complex(s.x, s.y), a)) > gtol)
            throw InvariantError("trace_curve: sample exceeds the g tolerance");
    }
    return curve;
}

double gamma1(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("gamma1: a must be > 0");
    return bisect_g(a, 0.0, 1e-6, 1.0 - 1e-6);
}

double threshold_a() {
    // Newton on h(a) = a e^{1+a} - 1; h' = (1+a) e^{1+a}
    double a = 0.28;
    for (int i = 0; i < 40; ++i) {
        const double ea = std::exp(1.0 + a);
        const double h = a * ea - 1.0;
        const double step = h / ((1.0 + a) * ea);
        a -= step;
        if (std::abs(step) < 1e-17) break;
    }
    if (std::abs(a * std::exp(1.0 + a) - 1.0) > 1e-14)
        throw ConvergenceError("threshold_a: residual above 1e-14");
    return a;
}

double threshold_a_fixed_point() {
    double a = 0.3;
    for (int i = 0; i < 1000; ++i) {
        const double next = std::exp(-1.0 - a);
        if (std::abs(next - a) < 5e-16) return next;
        a = next;
    }
    throw ConvergenceError("threshold_a_fixed_point: no convergence");
}

double solve_y0() {
    // Newton on F(y) = y - coth(y); F' = 1 + 1/sinh^2(y)
    double y = 1.2;
    for (int i = 0; i < 40; ++i) {
        const double sh = std::sinh(y);
        const double F = y - std::cosh(y) / sh;
        const double step = F / (1.0 + 1.0 / (sh * sh));
        y -= step;
        if (std::abs(step) < 1e-17) break;
    }
    if (std::abs(y - 1.0 / std::tanh(y)) > 1e-14)
        throw ConvergenceError("solve_y0: residual above 1e-14");
    return y;
}

Gamma1Min gamma1_min(double search_lo, double search_hi) {
    if (!(0.0 < search_lo && search_lo < search_hi))
        throw std::invalid_argument("gamma1_min: need 0 < search_lo < search_hi");
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = search_lo, hi = search_hi;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = gamma1(x1), f2 = gamma1(x2);
    while (hi - lo > 1e-7) {
        if (f1 <= f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = gamma1(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = gamma1(x2);
        }
    }
    const double a0 = 0.5 * (lo + hi);
    return Gamma1Min{a0, gamma1(a0)};
}

double ode_residual(const TracedCurve& curve) {
    const int m = static_cast<int>(curve.samples.size());
    if (m < 9) throw std::invalid_argument("ode_residual: need >= 9 samples");
    const double a = curve.a;
    const double sqrt_a = std::sqrt(a);
    const double h = 1.0 / (m - 1);
    double worst = 0.0;
    for (int j = 1; j + 1 < m; ++j) {
        const CurveSample& s = curve.samples[j];
        const SaddlePair sp = saddle_points(Complex(s.x, s.y), a);
        const Complex L = std::log(1.0 + sp.xi_plus) - std::log(1.0 + sp.xi_minus);
        const double xprime =
            (curve.samples[j + 1].x - curve.samples[j - 1].x) / (2.0 * h);
        worst = std::max(worst,
                         std::abs(xprime * L.real() + 2.0 * sqrt_a * L.imag()));
    }
    return worst;
}

}  // namespace charlier
