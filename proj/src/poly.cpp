#include "charlier/poly.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <limits>

#include "charlier/saddle.hpp"

namespace charlier {

namespace {

void validate_eval_args(Complex z, int n, double a) {
    if (n < 1) throw std::invalid_argument("eval_pn: n must be >= 1");
    if (!(a > 0.0)) throw std::invalid_argument("eval_pn: a must be > 0");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("eval_pn: z must be finite");
}

// binary64 recurrence; every step renormalizes the working pair by a common
// power of two so that |p_k| stays in [0.5, 1).
PolyEval eval_pn_double(Complex z, int n, double a) {
    const double nd = static_cast<double>(n);
    Complex p_prev{0.0, 0.0}, p{1.0, 0.0};
    Complex d_prev{0.0, 0.0}, d{0.0, 0.0};
    double r_prev = 0.0, r = 0.0;  // running rounding-noise magnitude
    long e = 0;                    // common log2 scale
    double peak = 0.0;
    const double u = std::ldexp(1.0, -52);

    for (int k = 0; k < n; ++k) {
        const double c = (k + 1) / nd;
        const double b = a * k / nd;
        const Complex zc = z - c;
        const double azc = std::abs(zc);

        const Complex p_next = zc * p + b * p_prev;
        const Complex d_next = p + zc * d + b * d_prev;
        const double r_next =
            azc * r + b * r_prev + u * (azc * std::abs(p) + b * std::abs(p_prev) + std::abs(p_next));

        p_prev = p; p = p_next;
        d_prev = d; d = d_next;
        r_prev = r; r = r_next;

        const double m = std::abs(p);
        if (m > 0.0) {
            int ke = 0;
            std::frexp(m, &ke);
            peak = std::max(peak, std::log2(m) + static_cast<double>(e));
            if (ke != 0) {
                const double s = std::ldexp(1.0, -ke);
                p *= s; p_prev *= s;
                d *= s; d_prev *= s;
                r *= s; r_prev *= s;
                e += ke;
            }
        }
    }

    PolyEval out;
    out.value = ScaledComplex::normalize(p, static_cast<int>(e));
    out.derivative = ScaledComplex::normalize(d, static_cast<int>(e));
    out.n = n;
    out.a = a;
    out.z = z;
    out.peak_log2 = peak;
    out.noise_log2 = (r > 0.0) ? std::log2(r) + static_cast<double>(e)
                               : -std::numeric_limits<double>::infinity();
    return out;
}

using MpReal = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<60>, boost::multiprecision::et_off>;

struct MpComplex {
    MpReal re, im;
};

inline MpComplex mp_mul(const MpComplex& x, const MpComplex& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

inline long mp_exp2(const MpComplex& v) {
    // log2 |v| within one bit, from the mpfr exponents
    const long er = (v.re != 0) ? static_cast<long>(mpfr_get_exp(v.re.backend().data()))
                                : std::numeric_limits<long>::min();
    const long ei = (v.im != 0) ? static_cast<long>(mpfr_get_exp(v.im.backend().data()))
                                : std::numeric_limits<long>::min();
    return std::max(er, ei);
}

ScaledComplex mp_to_scaled(const MpComplex& v) {
    if (v.re == 0 && v.im == 0) return ScaledComplex{{0.0, 0.0}, 0};
    const long e = mp_exp2(v);
    MpReal re = v.re, im = v.im;
    mpfr_mul_2si(re.backend().data(), re.backend().data(), -e, MPFR_RNDN);
    mpfr_mul_2si(im.backend().data(), im.backend().data(), -e, MPFR_RNDN);
    return ScaledComplex::normalize(
        Complex(re.convert_to<double>(), im.convert_to<double>()),
        static_cast<int>(e));
}

// ~200-bit recurrence; the mpfr exponent range makes rescaling unnecessary.
PolyEval eval_pn_mpfr(Complex z, int n, double a) {
    const MpComplex zm{MpReal(z.real()), MpReal(z.imag())};
    const MpReal am(a), nm(n);
    MpComplex p_prev{MpReal(0), MpReal(0)}, p{MpReal(1), MpReal(0)};
    MpComplex d_prev{MpReal(0), MpReal(0)}, d{MpReal(0), MpReal(0)};
    long peak = 0;

    for (int k = 0; k < n; ++k) {
        const MpReal c = MpReal(k + 1) / nm;
        const MpReal b = am * MpReal(k) / nm;
        const MpComplex zc{zm.re - c, zm.im};

        MpComplex p_next = mp_mul(zc, p);
        p_next.re += b * p_prev.re;
        p_next.im += b * p_prev.im;
        MpComplex d_next = mp_mul(zc, d);
        d_next.re += p.re + b * d_prev.re;
        d_next.im += p.im + b * d_prev.im;

        p_prev = p; p = p_next;
        d_prev = d; d = d_next;
        if (p.re != 0 || p.im != 0) peak = std::max(peak, mp_exp2(p));
    }

    PolyEval out;
    out.value = mp_to_scaled(p);
    out.derivative = mp_to_scaled(d);
    out.n = n;
    out.a = a;
    out.z = z;
    out.peak_log2 = static_cast<double>(peak);
    out.noise_log2 = static_cast<double>(peak) - 196.0 + std::log2(static_cast<double>(n));
    return out;
}

}  // namespace

PolyEval eval_pn(Complex z, int n, double a, Precision precision) {
    validate_eval_args(z, n, a);
    return precision == Precision::standard ? eval_pn_double(z, n, a)
                                            : eval_pn_mpfr(z, n, a);
}

namespace detail {

PolyEval eval_pn_unscaled(Complex z, int n, double a) {
    validate_eval_args(z, n, a);
    const double nd = static_cast<double>(n);
    Complex p_prev{0.0, 0.0}, p{1.0, 0.0};
    Complex d_prev{0.0, 0.0}, d{0.0, 0.0};
    double peak = 0.0;
    for (int k = 0; k < n; ++k) {
        const double c = (k + 1) / nd;
        const double b = a * k / nd;
        const Complex zc = z - c;
        const Complex p_next = zc * p + b * p_prev;
        const Complex d_next = p + zc * d + b * d_prev;
        p_prev = p; p = p_next;
        d_prev = d; d = d_next;
        if (std::abs(p) > 0.0) peak = std::max(peak, std::log2(std::abs(p)));
    }
    PolyEval out;
    out.value = ScaledComplex::normalize(p, 0);
    out.derivative = ScaledComplex::normalize(d, 0);
    out.n = n;
    out.a = a;
    out.z = z;
    out.peak_log2 = peak;
    out.noise_log2 = peak - 52.0;
    return out;
}

}  // namespace detail

Complex empirical_cauchy(Complex z, int n, double a, double mantissa_floor,
                         Precision precision) {
    const PolyEval pe = eval_pn(z, n, a, precision);
    // the floor applies to |p_n| on the recurrence's peak scale (the same
    // units as root residuals); below it the value is indistinguishable from
    // zero and the ratio is meaningless
    if (pe.value.is_zero() ||
        std::exp2(pe.value.log2_abs() - pe.peak_log2) < mantissa_floor)
        throw std::domain_error("empirical_cauchy: evaluation at root");
    return scaled_ratio(pe.derivative, pe.value) / static_cast<double>(n);
}

TridiagonalMatrix jacobi_matrix(int n, double a) {
    if (n < 1) throw std::invalid_argument("jacobi_matrix: n must be >= 1");
    if (!(a > 0.0)) throw std::invalid_argument("jacobi_matrix: a must be > 0");
    TridiagonalMatrix T;
    T.n = n;
    T.diag.resize(n);
    T.offdiag.resize(n - 1);
    const double nd = static_cast<double>(n);
    for (int k = 0; k < n; ++k) T.diag[k] = Complex((k + 1) / nd, 0.0);
    for (int k = 0; k + 1 < n; ++k)
        T.offdiag[k] = Complex(0.0, std::sqrt(a * (k + 1) / nd));
    return T;
}

TridiagonalMatrix sampled_jacobi(int n,
                                 const std::function<Complex(double)>& alpha,
                                 const std::function<Complex(double)>& beta) {
    if (n < 1) throw std::invalid_argument("sampled_jacobi: n must be >= 1");
    TridiagonalMatrix T;
    T.n = n;
    T.diag.resize(n);
    T.offdiag.resize(n - 1);
    const double nd = static_cast<double>(n);
    for (int k = 0; k < n; ++k) T.diag[k] = beta((k + 1) / nd);
    for (int k = 0; k + 1 < n; ++k) T.offdiag[k] = alpha((k + 1) / nd);
    return T;
}

Complex tridiagonal_char_poly(const TridiagonalMatrix& T, Complex z) {
    Complex det_prev{1.0, 0.0};
    Complex det = (T.n >= 1) ? z - T.diag[0] : Complex(1.0, 0.0);
    for (int k = 1; k < T.n; ++k) {
        const Complex off2 = T.offdiag[k - 1] * T.offdiag[k - 1];
        const Complex next = (z - T.diag[k]) * det - off2 * det_prev;
        det_prev = det;
        det = next;
    }
    return det;
}

Complex contour_pn_oracle(Complex z, int n, double a, double radius,
                          int quad_points) {
    validate_eval_args(z, n, a);
    if (!(radius > 0.0 && radius < 1.0))
        throw std::invalid_argument("contour_pn_oracle: radius must be in (0,1)");
    if (quad_points < 64)
        throw std::invalid_argument("contour_pn_oracle: quad_points must be >= 64");

    // a^n n^n P_n = (n!/2pi i) oint g(xi) e^{-n f} dxi; with xi = r e^{i t}
    // this is n! times the angular mean of e^{-n f(xi;z)} / (1 + xi), and the
    // uniform trapezoid rule is exactly that mean.
    double factorial = 1.0;
    for (int k = 2; k <= n; ++k) factorial *= k;
    const auto integral = [&](int m) {
        Complex acc{0.0, 0.0};
        for (int j = 0; j < m; ++j) {
            const double t = 2.0 * M_PI * j / m;
            const Complex xi = radius * Complex(std::cos(t), std::sin(t));
            const Complex val =
                std::exp(-static_cast<double>(n) * detail::f_principal(xi, z, a)) /
                (1.0 + xi);
            acc += val;
        }
        return factorial * acc / static_cast<double>(m);
    };

    const double rel_tol = 1e-9;
    Complex prev = integral(quad_points);
    for (int attempt = 0; attempt < 2; ++attempt) {
        quad_points *= 2;
        const Complex next = integral(quad_points);
        if (std::abs(next - prev) <= rel_tol * (std::abs(next) + 1e-300) &&
            std::isfinite(next.real()) && std::isfinite(next.imag()))
            return next;
        prev = next;
    }
    throw ConvergenceError("contour_pn_oracle: quadrature did not stabilize");
}

}  // namespace charlier
