#pragma once

#include <cmath>
#include <complex>

namespace pmkit {

/// Declared numerical thresholds. Each field is a relative factor; the
/// helpers turn it into an absolute threshold for a concrete operand.
struct Tolerances {
  double singular = 1e-12;   // pivot threshold relative to ||m||_inf
  double conjugate = 1e-8;   // imaginary-part threshold relative to 1 + |lambda|
  double minor = 1e-10;      // minor positivity relative to 1 + ||m||_inf^k
  double zero = 1e-9;        // rank / zero-coordinate threshold relative to ||v||_inf
  double complementarity = 1e-8;  // z'w relative to 1 + ||q||_inf

  double sing(double norm_inf) const { return singular * norm_inf; }
  double conj(std::complex<double> lambda) const {
    return conjugate * (1.0 + std::abs(lambda));
  }
  double minor_threshold(double norm_inf, std::size_t k) const {
    return minor * (1.0 + std::pow(norm_inf, static_cast<double>(k)));
  }
  /// Threshold for products x_i (Mx)_i with ||x||_inf = 1.
  double product(double norm_inf) const { return minor * (1.0 + norm_inf); }
  bool is_real(std::complex<double> lambda) const {
    return std::abs(lambda.imag()) <= conj(lambda);
  }
};

}  // namespace pmkit
