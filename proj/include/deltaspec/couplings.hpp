#pragma once

// Domain types for the complex double-delta potential
//   H = -d^2/dx^2 + z_- delta(x+a) + z_+ delta(x-a)
// in dimensionless form, plus the elementary quantities shared by the
// spectral modules: w_pm = i z_pm / (2k) and the scaled couplings
// zf_pm = a z_pm used in the kappa-plane (kappa = 2iak).

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace deltaspec {

using Complex = std::complex<double>;

inline constexpr Complex kImagUnit{0.0, 1.0};

// Bad static input (non-positive scale, both couplings zero, k <= 0 where a
// positive real wavenumber is required, ...).
class invalid_input_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// k = 0 requested in a quantity with a 1/k factor. Kept distinct from
// invalid_input_error: root searches treat the origin as excluded, not bad.
class origin_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Couplings in physical units; only the CLI boundary sees this.
struct PhysicalConfig {
  double mass = 1.0;          // m > 0
  double hbar = 1.0;          // hbar > 0
  Complex zeta_minus{0, 0};   // energy * length
  Complex zeta_plus{0, 0};
  double alpha = 1.0;         // half separation, length, > 0
  double length_scale = 1.0;  // ell > 0
};

// Dimensionless couplings. Invariants: a > 0, not both z_pm = 0.
struct CouplingConfig {
  Complex z_minus{0, 0};
  Complex z_plus{0, 0};
  double a = 1.0;

  CouplingConfig(Complex zm, Complex zp, double half_separation);
};

// zf_pm = a z_pm; independent of the length scale used to nondimensionalize.
struct ScaledCoupling {
  Complex zf_minus{0, 0};
  Complex zf_plus{0, 0};
};

// A wavenumber on the principal branch arg(k) in [0, pi), ties at pi resolved
// to 0 by negation. E = k^2; kappa = 2iak.
struct Wavenumber {
  Complex k{0, 0};

  Complex energy() const { return k * k; }

  // Normalizes an arbitrary complex k onto the branch.
  static Wavenumber principal(Complex k);
  static Wavenumber from_energy(Complex e);
  static Wavenumber from_kappa(Complex kappa, double a);
};

CouplingConfig nondimensionalize(const PhysicalConfig& cfg);

// (w_minus, w_plus) = (i z_-/(2k), i z_+/(2k)); throws origin_error at k = 0.
std::pair<Complex, Complex> w_coefficients(const CouplingConfig& cc, Complex k);

ScaledCoupling scale(const CouplingConfig& cc);

}  // namespace deltaspec
