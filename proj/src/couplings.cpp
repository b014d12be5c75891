#include "deltaspec/couplings.hpp"

#include <cmath>

namespace deltaspec {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

CouplingConfig::CouplingConfig(Complex zm, Complex zp, double half_separation)
    : z_minus(zm), z_plus(zp), a(half_separation) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw invalid_input_error("CouplingConfig: half separation a must be positive");
  if (!finite(z_minus) || !finite(z_plus))
    throw invalid_input_error("CouplingConfig: couplings must be finite");
  if (z_minus == Complex{0, 0} && z_plus == Complex{0, 0})
    throw invalid_input_error("CouplingConfig: free particle (z_- = z_+ = 0) excluded");
}

Wavenumber Wavenumber::principal(Complex k) {
  if (k.imag() < 0.0 || (k.imag() == 0.0 && k.real() < 0.0)) k = -k;
  return Wavenumber{k};
}

Wavenumber Wavenumber::from_energy(Complex e) { return principal(std::sqrt(e)); }

Wavenumber Wavenumber::from_kappa(Complex kappa, double a) {
  if (!(a > 0.0)) throw invalid_input_error("from_kappa: a must be positive");
  return principal(kappa / (2.0 * kImagUnit * a));
}

CouplingConfig nondimensionalize(const PhysicalConfig& cfg) {
  if (!(cfg.mass > 0.0)) throw invalid_input_error("nondimensionalize: mass must be positive");
  if (!(cfg.hbar > 0.0)) throw invalid_input_error("nondimensionalize: hbar must be positive");
  if (!(cfg.alpha > 0.0)) throw invalid_input_error("nondimensionalize: alpha must be positive");
  if (!(cfg.length_scale > 0.0))
    throw invalid_input_error("nondimensionalize: length scale must be positive");

  const double c = 2.0 * cfg.mass * cfg.length_scale / (cfg.hbar * cfg.hbar);
  return CouplingConfig(c * cfg.zeta_minus, c * cfg.zeta_plus, cfg.alpha / cfg.length_scale);
}

std::pair<Complex, Complex> w_coefficients(const CouplingConfig& cc, Complex k) {
  if (k == Complex{0, 0}) throw origin_error("w_coefficients: k = 0");
  const Complex d = kImagUnit / (2.0 * k);
  return {d * cc.z_minus, d * cc.z_plus};
}

ScaledCoupling scale(const CouplingConfig& cc) {
  return ScaledCoupling{cc.a * cc.z_minus, cc.a * cc.z_plus};
}

}  // namespace deltaspec
