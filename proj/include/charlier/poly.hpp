#pragma once

#include <functional>
#include <vector>

#include "charlier/types.hpp"

namespace charlier {

/// Joint evaluation of p_n^{(n)}(z;a) and its z-derivative. value and
/// derivative come out of the same rescaled recurrence, so
/// derivative/value is exponent-free.
struct PolyEval {
    ScaledComplex value;
    ScaledComplex derivative;
    int n = 0;
    double a = 0.0;
    Complex z{0.0, 0.0};
    double peak_log2 = 0.0;   // log2 of the largest |p_k| seen by the recurrence
    double noise_log2 = 0.0;  // log2 of the estimated rounding error of value
};

/// Complex symmetric tridiagonal matrix; offdiag[k] couples k and k+1.
struct TridiagonalMatrix {
    int n = 0;
    std::vector<Complex> diag;
    std::vector<Complex> offdiag;
};

/// Evaluates p_n(z;a) = a^n C_n^{(-an)}(zn-an-1) by the three-term
/// recurrence p_{k+1} = (z-(k+1)/n) p_k + (ak/n) p_{k-1}, renormalizing
/// every step, together with the termwise-differentiated recurrence.
PolyEval eval_pn(Complex z, int n, double a,
                 Precision precision = precision_from_env());

/// p_n'(z)/(n p_n(z)), the Cauchy transform of the root counting measure.
/// Signals "evaluation at root" when |p_n| drops below the floor, measured
/// on the recurrence's peak scale (the units of RootSet residuals).
Complex empirical_cauchy(Complex z, int n, double a,
                         double mantissa_floor = 1e-14,
                         Precision precision = precision_from_env());

/// J_n(a): diag k/n, offdiag i sqrt(ak/n), k = 1..n. det(z - J_n(a)) equals
/// eval_pn(z,n,a).
TridiagonalMatrix jacobi_matrix(int n, double a);

/// Tridiagonal matrix with diag beta(k/n) and offdiag alpha(k/n), k = 1..n.
TridiagonalMatrix sampled_jacobi(int n,
                                 const std::function<Complex(double)>& alpha,
                                 const std::function<Complex(double)>& beta);

/// Characteristic polynomial det(z - T) by the tridiagonal recursion.
/// Plain binary64, for small n; used as an oracle against eval_pn.
Complex tridiagonal_char_poly(const TridiagonalMatrix& T, Complex z);

/// a^n n^n P_n(z;a) by trapezoidal quadrature of the contour integral over
/// |xi| = radius, doubling quad_points until two successive refinements
/// agree. Comparable to n^n * eval_pn(z,n,a).
Complex contour_pn_oracle(Complex z, int n, double a, double radius = 0.5,
                          int quad_points = 256);

namespace detail {
/// Recurrence without intermediate renormalization (test hook; overflows
/// for large n).
PolyEval eval_pn_unscaled(Complex z, int n, double a);
}  // namespace detail

}  // namespace charlier
