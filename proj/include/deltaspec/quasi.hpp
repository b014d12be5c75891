#pragma once

// Quasi-Hermiticity bound: for r_pm = Re(zf_pm) > 0 the function G_r has
// no zeros on the half-disc D, its boundary minimum m_r gives
// B_r = m_r / (2 (3 r_max + 1)), and any |Im zf_pm| < B_r leaves the
// Hamiltonian free of spectral singularities and bound states. The two
// ingredients of that argument are verifiable numerically: |L| attains its
// maximum 2 at the origin, and F has a first-order zero there.

#include <vector>

#include "deltaspec/couplings.hpp"

namespace deltaspec {

// L(kappa) = (1 - e^{2 kappa})/kappa, L(0) = -2 (removable singularity,
// series below |kappa| = 1e-4).
Complex eval_L(Complex kappa);

// G(kappa) = F(kappa)/kappa for kappa != 0, F'(0) at 0; computed through the
// entire form kappa - (zf_- + zf_+) + zf_- zf_+ L(kappa).
Complex eval_G(const ScaledCoupling& zf, Complex kappa);

// J(kappa) = G_z(kappa) - G_r(kappa); checked against the closed form
// -i(s_- + s_+) + [-s_- s_+ + i(r_- s_+ + r_+ s_-)] L(kappa) to 1e-10.
Complex eval_J(const ScaledCoupling& zf, Complex kappa);

// Half-disc D of radius scale * r_max in the closed left half-plane, with
// boundary gamma(t), t in [-1, 1]: the imaginary-axis segment for t <= 0 and
// the left semicircle for t >= 0.
struct HalfDiscSpec {
  double r_max = 1.0;
  double radius = 2.0;

  // Radius sqrt(8) r_max: covers D_sigma for every |Im zf_pm| < r_max
  // (the default parameterization).
  static HalfDiscSpec covering(double r_minus, double r_plus);
  // Radius 2 r_max; the variant behind the fig10 boundary-profile dataset.
  static HalfDiscSpec fig10(double r_minus, double r_plus);

  Complex boundary(double t) const;
};

struct BoundarySample {
  double t = 0.0;
  Complex kappa{0, 0};
  double abs_g = 0.0;
  double abs_l = 0.0;
};

struct BoundaryMinimum {
  double t = 0.0;
  Complex kappa{0, 0};
  double value = 0.0;
};

struct QuasiBound {
  double r_minus = 0.0, r_plus = 0.0;
  double m_r = 0.0;               // min |G_r| on the boundary of D
  double b_r = 0.0;               // m_r / (2 (3 r_max + 1))
  Complex kappa_min{0, 0};        // argmin
  double t_min = 0.0;
  std::vector<BoundaryMinimum> minima;   // every local minimum, refined
  std::vector<BoundarySample> samples;   // the scan grid (fig10 dataset)
};

// Coarse boundary scan (n_boundary points) plus golden-section refinement of
// each local basin. 1/G_r is analytic on D, so the boundary minimum is the
// global minimum over D.
QuasiBound compute_bound(double r_minus, double r_plus, int n_boundary = 4096,
                         const HalfDiscSpec* disc = nullptr);

struct LPeakReport {
  double rho = 0.0;
  double max_abs_l = 0.0;
  Complex argmax{0, 0};
  bool bound_holds = false;       // max <= 2 + 1e-9
  bool max_at_origin = false;     // attained at the sample nearest kappa = 0
  double boundary_max = 0.0;      // boundary-only scan (maximum-modulus check)
};

// Samples |L| over a fill of the half-disc of the given radius and checks
// the maximum is 2, attained at the origin.
LPeakReport verify_l_peak(double rho, int n_samples);

struct OriginOrderReport {
  Complex f_origin{0, 0};
  Complex f_prime_origin{0, 0};
  bool zero_at_origin = false;
  bool first_order = false;
};

// Checks that kappa = 0 is a first-order zero of F whenever r_pm > 0.
OriginOrderReport verify_origin_simple_zero(double r_minus, double r_plus,
                                            double s_minus, double s_plus);

}  // namespace deltaspec
