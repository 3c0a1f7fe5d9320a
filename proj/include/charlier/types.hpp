#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace charlier {

using Complex = std::complex<double>;

/// Thrown when an iteration fails to reach its target accuracy.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a result violates a structural invariant (a numerical fault,
/// not a usage error).
struct InvariantError : std::runtime_error {
    explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

/// Execution mode for the data-parallel kernels. Serial and parallel paths
/// produce bit-identical results; the serial one is kept as a reference.
enum class Exec { serial, parallel };

/// Arithmetic used by the polynomial recurrence. standard = binary64 with
/// power-of-two rescaling; extended = multiprecision (for root clouds whose
/// conditioning exceeds what binary64 can resolve).
enum class Precision { standard, extended };

/// Reads CHARLIER_PRECISION ({standard,extended}); standard if unset.
Precision precision_from_env();

/// Complex value stored as mantissa * 2^exponent. Keeps degree-n recurrences
/// inside the binary64 exponent range.
struct ScaledComplex {
    Complex mantissa{0.0, 0.0};
    int exponent = 0;

    /// Renormalizes v * 2^e so that 0.5 <= |mantissa| < 2 (zero stays zero).
    static ScaledComplex normalize(Complex v, int e = 0);

    bool is_zero() const { return mantissa == Complex(0.0, 0.0); }
    double log2_abs() const;          // -inf for zero
    Complex to_complex() const;       // may over/underflow for large |exponent|
};

/// num/den with the exponents cancelled exactly.
Complex scaled_ratio(const ScaledComplex& num, const ScaledComplex& den);

}  // namespace charlier
