#include "charlier/types.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

namespace charlier {

Precision precision_from_env() {
    const char* v = std::getenv("CHARLIER_PRECISION");
    if (v == nullptr || *v == '\0' || std::strcmp(v, "standard") == 0)
        return Precision::standard;
    if (std::strcmp(v, "extended") == 0) return Precision::extended;
    throw std::invalid_argument(
        "CHARLIER_PRECISION must be 'standard' or 'extended'");
}

ScaledComplex ScaledComplex::normalize(Complex v, int e) {
    if (v == Complex(0.0, 0.0)) return ScaledComplex{{0.0, 0.0}, 0};
    int k = 0;
    std::frexp(std::abs(v), &k);  // |v| = f * 2^k, f in [0.5, 1)
    return ScaledComplex{{std::ldexp(v.real(), -k), std::ldexp(v.imag(), -k)},
                         e + k};
}

double ScaledComplex::log2_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log2(std::abs(mantissa)) + static_cast<double>(exponent);
}

Complex ScaledComplex::to_complex() const {
    return {std::ldexp(mantissa.real(), exponent),
            std::ldexp(mantissa.imag(), exponent)};
}

Complex scaled_ratio(const ScaledComplex& num, const ScaledComplex& den) {
    if (den.is_zero()) throw std::domain_error("scaled_ratio: zero denominator");
    const Complex q = num.mantissa / den.mantissa;
    const int shift = num.exponent - den.exponent;
    return {std::ldexp(q.real(), shift), std::ldexp(q.imag(), shift)};
}

}  // namespace charlier
