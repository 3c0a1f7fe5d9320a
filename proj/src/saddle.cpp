#include "charlier/saddle.hpp"

#include <cmath>

namespace charlier {

namespace {

// Real values are taken as upper-side limits: a zero imaginary part (of
// either sign) becomes +0, so principal logs of negative reals carry +i pi.
inline Complex upper0(Complex w) {
    if (w.imag() == 0.0) return Complex(w.real(), 0.0);
    return w;
}

void validate_a(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("a must be > 0");
}

}  // namespace

namespace detail {

Complex f_principal(Complex xi, Complex z, double a) {
    xi = upper0(xi);
    const Complex w = upper0(1.0 + xi);
    if (xi == Complex(0.0, 0.0))
        throw std::domain_error("f: singular at xi = 0");
    if (w == Complex(0.0, 0.0))
        throw std::domain_error("f: singular at xi = -1");
    return (a - z) * std::log(w) + std::log(xi) - a * xi;
}

double re_f(Complex xi, Complex z, double a) {
    xi = upper0(xi);
    const Complex w = upper0(1.0 + xi);
    return (a - z.real()) * std::log(std::abs(w)) +
           z.imag() * std::arg(w) + std::log(std::abs(xi)) - a * xi.real();
}

}  // namespace detail

Complex f_eval(Complex xi, Complex z, double a) {
    validate_a(a);
    if (xi.imag() == 0.0 && xi.real() <= -1.0)
        throw std::domain_error("f_eval: xi on the branch cut (-inf,-1]");
    if (xi == Complex(0.0, 0.0))
        throw std::domain_error("f_eval: xi = 0 is singular");
    return detail::f_principal(xi, z, a);
}

SaddlePair saddle_points(Complex z, double a) {
    validate_a(a);
    const Complex one_minus_z = 1.0 - z;
    const Complex s = std::sqrt(one_minus_z * one_minus_z + 4.0 * a);
    SaddlePair sp;
    sp.xi_plus = upper0((one_minus_z + s) / (2.0 * a));
    sp.xi_minus = upper0((one_minus_z - s) / (2.0 * a));
    sp.z = z;
    sp.a = a;
    return sp;
}

double g_value(Complex z, double a) {
    validate_a(a);
    z = upper0(z);
    if (z.imag() == 0.0 && z.real() == a) return -std::log(a) - a - 1.0;
    const SaddlePair sp = saddle_points(z, a);
    if (std::abs(1.0 + sp.xi_minus) == 0.0) {
        // z within rounding of the kink: the (a-z) log(1+xi_-) term has
        // limit 0 there, so drop it.
        return detail::re_f(sp.xi_plus, z, a) -
               (std::log(std::abs(sp.xi_minus)) - a * sp.xi_minus.real());
    }
    return detail::re_f(sp.xi_plus, z, a) - detail::re_f(sp.xi_minus, z, a);
}

double classification_tol(Complex z, double a) {
    const SaddlePair sp = saddle_points(z, a);
    double scale = 1.0;
    try {
        scale += std::abs(detail::f_principal(sp.xi_plus, z, a)) +
                 std::abs(detail::f_principal(sp.xi_minus, z, a));
    } catch (const std::domain_error&) {
        scale += std::abs(std::log(a)) + a + 1.0;
    }
    return 1e-12 * scale;
}

Region classify(Complex z, double a, double tol) {
    if (tol < 0.0) tol = classification_tol(z, a);
    const double g = g_value(z, a);
    if (g > tol) return Region::OmegaPlus;
    if (g < -tol) return Region::OmegaMinus;
    return Region::OmegaZero;
}

Complex limiting_cauchy(Complex z, double a) {
    validate_a(a);
    if (z.imag() < 0.0) return std::conj(limiting_cauchy(std::conj(z), a));
    const Region region = classify(z, a);
    if (region == Region::OmegaZero)
        throw std::domain_error("limiting_cauchy: z on the attractor");
    const SaddlePair sp = saddle_points(z, a);
    const Complex xi = (region == Region::OmegaPlus) ? sp.xi_minus : sp.xi_plus;
    return std::log(upper0(1.0 + xi));
}

Complex rho(Complex z, double a) {
    validate_a(a);
    const SaddlePair sp = saddle_points(z, a);
    if (sp.xi_plus == sp.xi_minus) return Complex(0.0, 0.0);
    const Complex diff = detail::f_principal(sp.xi_plus, z, a) -
                         detail::f_principal(sp.xi_minus, z, a);
    return diff / Complex(0.0, 2.0 * M_PI);
}

}  // namespace charlier
