#pragma once

// Locates spectral singularities for arbitrary couplings through the real
// cubic g(k) (the singular-coefficient-matrix condition for Re f = Im f = 0)
// followed by verification against f itself, and generates the closed-form
// special-family curves in the PT, anti-PT, imaginary, opposite, and shifted
// coupling planes.

#include <optional>
#include <vector>

#include "deltaspec/couplings.hpp"

namespace deltaspec {

// g(k) = k^3 - 2 Im(v) k^2 + (-Re(u)/2 + |v|^2) k + [Re(u)Im(v) - Re(v)Im(u)]/2
// with u = z_- z_+ and v = (z_- + z_+)/2. Always monic (c3 = 1).
struct CubicCoefficients {
  double c3 = 1.0, c2 = 0.0, c1 = 0.0, c0 = 0.0;

  double eval(double k) const { return ((c3 * k + c2) * k + c1) * k + c0; }
  double deriv(double k) const { return (3.0 * c3 * k + 2.0 * c2) * k + c1; }
};

CubicCoefficients cubic_g(const CouplingConfig& cc);

// All real roots, closed form (trigonometric/Cardano on the depressed cubic)
// polished by two Newton steps; multiple roots deduplicated.
std::vector<double> real_cubic_roots(const CubicCoefficients& c);

enum class FamilyTag { generic, pt, anti_pt, imaginary, opposite, shifted };

struct SingularityRecord {
  double k_star = 0.0;     // positive representative, arg k in [0, pi)
  double energy = 0.0;     // E* = k*^2
  double residual_f = 0.0; // min(|f(k*)|, |f(-k*)|) at acceptance
  FamilyTag family = FamilyTag::generic;
};

// A root of g that failed verification against f; g = 0 is necessary, not
// sufficient, so these are diagnostics rather than errors.
struct RejectedCandidate {
  double k = 0.0;
  double residual_plus = 0.0;   // |f(+k)|
  double residual_minus = 0.0;  // |f(-k)|
};

struct SingularityScan {
  std::vector<SingularityRecord> found;
  std::vector<RejectedCandidate> rejected;
};

// Nonzero real roots kappa of g, each verified at +kappa and -kappa against
// |f| < tol (the two signs fold into one physical singularity at E* = kappa^2
// via f_+(k) = -f(-k)). Records are deduplicated by |kappa|.
SingularityScan find_singularities(const CouplingConfig& cc, double tol = 1e-8);

struct CurveSample {
  double t = 0.0;  // curve parameter
  double r = 0.0;  // abscissa in the coupling plane
  double s = 0.0;  // ordinate in the coupling plane
};

struct CurveResult {
  std::vector<CurveSample> samples;
  std::vector<double> skipped_t;  // requested parameters at poles / out of domain
};

// fig1 curves: (r, s) = (2a Re z, 2a Im z) on the PT plane z_+ = z_-^*,
// r = -t cot t, s = +-t sqrt(1 + csc^2 t). Both sign branches are emitted.
// Samples are refined where |dr/dt| or |ds/dt| exceeds deriv_threshold and
// skipped once |r| or |s| passes value_cap (the asymptote regions, where the
// defining expressions diverge).
CurveResult pt_curve(double t_min, double t_max, int n_points,
                     double deriv_threshold = 1e3, double value_cap = 250.0);

// Anti-PT plane z_+ = -z_-^* = z: singularity at k = |Im z| iff
// sin(2a Im z) = 0, i.e. |Im z| = n pi / (2a), n != 0.
std::optional<SingularityRecord> family_anti_pt(Complex z, double a, double tol = 1e-8);

// Imaginary plane z_pm = i y_pm / a: branch A gives kappa = (y_+ + y_-)/(2a)
// when y_+ + y_- = n pi (n != 0); branch B gives kappa_n = (2n+1) pi/(4a)
// when 2 a^2 k^2 - a k (y_+ + y_-) + y_+ y_- = 0 there. All candidates are
// verified against f before being returned.
std::vector<SingularityRecord> family_imaginary(double y_minus, double y_plus, double a,
                                                double tol = 1e-8);

// fig3 curves: (r, s) = (a Re z, a Im z) on the plane z_+ = -z_- = z,
// |r| = (t/2) sqrt(|csc t| - 1), |s| = (t/2) sqrt(|csc t| + 1); all four sign
// combinations are genuine and emitted.
CurveResult family_opposite(double t_min, double t_max, int n_points,
                            double deriv_threshold = 1e3, double value_cap = 250.0);

// Shifted plane z_pm = (1 + i s_pm)/a: case (a) k = s/a when
// t = s cot(2s) + 1, case (b) k = kappa_n solving tan(2ak) + ak = 0 when
// t = a s kappa_n - a^2 kappa_n^2, with s = (s_- + s_+)/2, t = (1 + s_- s_+)/2.
std::vector<SingularityRecord> family_shifted(double s_minus, double s_plus, double a,
                                              double tol = 1e-8);

// Real solutions of tan(2ak) + ak = 0 in (0, k_max]; one root per branch of
// the tangent, found by bracketed bisection.
std::vector<double> tan_equation_roots(double a, double k_max);

}  // namespace deltaspec
