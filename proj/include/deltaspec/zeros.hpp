#pragma once

// Bound states and spectral singularities in the complex kappa-plane
// (kappa = 2iak) as zeros of the entire function
//   F(kappa) = (kappa - zf_-)(kappa - zf_+) - zf_- zf_+ e^{2 kappa},
// located and counted through the argument principle on origin-avoiding
// contours, with region bounds, multiplicity analysis, and the closed-form
// real-bound-state conditions.

#include <optional>
#include <string>
#include <vector>

#include "deltaspec/couplings.hpp"

namespace deltaspec {

// A zero of F sits on the contour; perturb epsilon or rho and retry.
class contour_degenerate_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Quadrature would not settle on an integer; refine the resolution.
class resolution_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class unsupported_configuration_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// F and its first three derivatives.
Complex eval_F(const ScaledCoupling& zf, Complex kappa, int order = 0);

// Magnitude scale of F's two terms at kappa; residual thresholds are
// measured against it.
double f_scale(const ScaledCoupling& zf, Complex kappa);

// Order of the always-present zero at kappa = 0 (1 generically, 2 or 3 at
// the special couplings of the multiplicity analysis).
int origin_multiplicity(const ScaledCoupling& zf);

struct ContourSpec {
  enum class Shape { rect_upper, rect_lower, annular_sector };

  Shape shape = Shape::annular_sector;
  double rho = 1.0;          // rectangle height / sector outer radius
  double epsilon = 1e-3;     // rectangle width, origin cut, inner radius
  double theta = 0.0;        // sector opening (sector only)
  double ang_offset = -1.0;  // sector start minus pi/2; < 0 picks the
                             // symmetric default (pi - theta)/2
  int n_base_points = 24;    // coarse scan resolution per segment

  // c_+(rho): width-epsilon rectangle on the imaginary axis, Im in [eps, rho].
  static ContourSpec rect_upper(double rho, double eps = 1e-3);
  // c_-(rho): mirror image below the origin.
  static ContourSpec rect_lower(double rho, double eps = 1e-3);
  // C(rho, theta): annular sector between radii eps and rho opening theta
  // into the left half-plane.
  static ContourSpec sector(double rho, double theta, double eps = 1e-3,
                            double ang_offset = -1.0);

  double sector_start() const;  // start angle (absolute)
  bool contains(Complex kappa) const;
};

// Integer winding count of F on the contour. Throws contour_degenerate_error
// when a zero (or near-zero) of F lies on the contour, resolution_error when
// the quadrature will not settle within 0.05 of an integer.
int winding_count(const ScaledCoupling& zf, const ContourSpec& spec);

enum class ZeroKind { spectral_singularity, bound_state, real_bound_state };

struct ZeroRecord {
  Complex kappa{0, 0};   // zero of F (spectral singularities normalized to Im > 0)
  Complex k{0, 0};       // kappa / (2ia)
  Complex energy{0, 0};  // -kappa^2 / (4a^2)
  int multiplicity = 1;
  ZeroKind kind = ZeroKind::bound_state;
  double residual = 0.0;   // |F| at the refined zero
  bool borderline = false; // |Re kappa| within a factor 2 of class_tol
};

struct RawZero {
  Complex kappa{0, 0};
  int multiplicity = 1;
  double residual = 0.0;
};

struct LocateOptions {
  double sigma_pad = 1.01;   // contour must strictly enclose |kappa| = sigma
  double right_edge = 1e-4;  // box extends this far into Re > 0 so axis zeros
                             // are interior
  double class_tol = 1e-8;   // Re kappa = 0 vs Re kappa < 0 split
  double refine_tol = 1e-12; // |F| target for Newton refinement
  double sep_min = 1e-7;     // cells below this size are treated as one zero
  int max_depth = 60;
};

struct UnrefinedCell {
  Complex lo{0, 0}, hi{0, 0};  // enclosing cell corners
  int count = 0;
};

struct LocateResult {
  std::vector<ZeroRecord> records;   // classified, SS conjugate pairs merged
  std::vector<RawZero> raw;          // every located zero with Re <= right_edge
  std::vector<UnrefinedCell> unrefined;
  std::vector<std::string> warnings;
  double sigma = 0.0;
};

// Recursive contour subdivision over the half-disc D_sigma plus Newton
// refinement. Spectral singularities (Re kappa = 0) are deduplicated when
// both +-kappa are zeros (one physical singularity); zeros with
// Re kappa > class_tol are dropped (resonances, outside the classification).
LocateResult locate_zeros(const ScaledCoupling& zf, double a, const LocateOptions& opts = {});

struct SearchRegion {
  double sigma = 0.0;      // 2 max(|zf_-|, |zf_+|)
  Complex center_minus{0, 0}, center_plus{0, 0};
  double radius_minus = 0.0, radius_plus = 0.0;

  // Membership in R = (Pi_- union ell) intersect (D_+ union D_-).
  bool contains(Complex kappa, double slack = 1e-9) const;
};

SearchRegion region_bound(const ScaledCoupling& zf);

struct MultiplicityReport {
  // one entry per sign of the square root in Eqs. (2nd-1)-(2nd-2)
  Complex kappa2[2];
  double condition_residual[2];    // |2 zf_- zf_+ e^{1+S+-D} - (1+-D)|
  bool admits_second_order[2];     // residual below tolerance
  bool re_nonpositive[2];          // Re kappa2 <= 0
  bool exclusion_inequality = false;  // |P|(|P|-1) < |zf_- - zf_+|^2 / 4
  bool product_le_one = false;        // |zf_- zf_+| <= 1 (implies exclusion)
  bool third_order = false;           // F'(0) = F''(0) = 0
};

MultiplicityReport multiplicity_analysis(const ScaledCoupling& zf);

// Real bound states: real negative zeros of F. PT and real-coupling cases
// solve the restriction of F to the negative axis (where it is real-valued);
// the Im(zf_- zf_+) != 0 case tests the unique linear-condition candidate.
// Throws unsupported_configuration_error when zf_- zf_+ = 0.
std::vector<ZeroRecord> real_bound_states(const ScaledCoupling& zf, double a = 1.0,
                                          double tol = 1e-9);

struct RealBsCurvePoint {
  int curve_id = 0;
  Complex z{0, 0};        // zf_pm = z e^{+-i nu/2}
  double kappa = 0.0;     // the real negative zero of F
  double residual = 0.0;  // |F(kappa)|
};

// Traces the curves in the z-plane along which real bound states exist for
// zf_pm = z e^{+-i nu/2}: predictor-corrector continuation on the implicit
// curve Re[F(kappa_0(z))/(zf_- zf_+)] = 0 with kappa_0 the linear-condition
// candidate, seeded from a sign-change scan over [-range, 0) x [-range, range].
std::vector<RealBsCurvePoint> real_bound_state_curve(double nu, double range = 4.0,
                                                     int seed_grid = 120, double step = 0.02);

}  // namespace deltaspec
