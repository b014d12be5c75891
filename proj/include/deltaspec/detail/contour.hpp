#pragma once

// Contour segments and adaptive Gauss-Legendre quadrature for the argument
// principle: n_C = (1/2 pi i) contour-integral of h'/h. Only the integer
// total is needed, so the integrand h'/h is evaluated directly with no
// log-branch tracking; adaptivity resolves the e^{2K} oscillation and the
// 1/K spike near the excluded origin. Radial rays are parameterized
// geometrically so the integrand stays O(1) down to the inner cut.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace deltaspec::detail {

using Complex = std::complex<double>;

struct Segment {
  enum class Kind { line, arc, radial_log };
  Kind kind = Kind::line;
  Complex z0{0, 0}, z1{0, 0};       // line endpoints
  Complex center{0, 0};             // arc center
  double radius = 0.0;              // arc radius
  double ang0 = 0.0, ang1 = 0.0;    // arc angles (orientation from sign)
  double phi = 0.0;                 // ray angle
  double r0 = 0.0, r1 = 0.0;        // ray radii (r0 -> r1, both > 0)

  static Segment line(Complex a, Complex b) {
    Segment s;
    s.kind = Kind::line;
    s.z0 = a;
    s.z1 = b;
    return s;
  }
  static Segment arc(Complex c, double r, double a0, double a1) {
    Segment s;
    s.kind = Kind::arc;
    s.center = c;
    s.radius = r;
    s.ang0 = a0;
    s.ang1 = a1;
    return s;
  }
  static Segment radial_log(double phi, double r0, double r1) {
    Segment s;
    s.kind = Kind::radial_log;
    s.phi = phi;
    s.r0 = r0;
    s.r1 = r1;
    return s;
  }

  Complex point(double t) const {
    switch (kind) {
      case Kind::line:
        return z0 + t * (z1 - z0);
      case Kind::arc: {
        const double a = ang0 + t * (ang1 - ang0);
        return center + radius * Complex{std::cos(a), std::sin(a)};
      }
      case Kind::radial_log:
      default: {
        const double r = r0 * std::pow(r1 / r0, t);
        return r * Complex{std::cos(phi), std::sin(phi)};
      }
    }
  }

  Complex deriv(double t) const {
    switch (kind) {
      case Kind::line:
        return z1 - z0;
      case Kind::arc: {
        const double a = ang0 + t * (ang1 - ang0);
        return radius * (ang1 - ang0) * Complex{-std::sin(a), std::cos(a)};
      }
      case Kind::radial_log:
      default: {
        const double lr = std::log(r1 / r0);
        const double r = r0 * std::pow(r1 / r0, t);
        return lr * r * Complex{std::cos(phi), std::sin(phi)};
      }
    }
  }
};

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; node 0
// listed first).
inline constexpr double kGlNodes[8] = {
    0.0000000000000000, 0.2011940939974345, 0.3941513470775634, 0.5709721726085388,
    0.7244177313601700, 0.8482065834104272, 0.9372733924007059, 0.9879925180204854};
inline constexpr double kGlWeights[8] = {
    0.2025782419255613, 0.1984314853271116, 0.1861610000155622, 0.1662692058169939,
    0.1395706779261543, 0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

template <typename Fn>
Complex gl15(const Segment& s, Fn&& integrand, double t0, double t1, long& evals) {
  const double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
  Complex acc = kGlWeights[0] * integrand(s.point(mid)) * s.deriv(mid);
  for (int i = 1; i < 8; ++i) {
    const double ta = mid - half * kGlNodes[i], tb = mid + half * kGlNodes[i];
    acc += kGlWeights[i] * (integrand(s.point(ta)) * s.deriv(ta) +
                            integrand(s.point(tb)) * s.deriv(tb));
  }
  evals += 15;
  return half * acc;
}

template <typename Fn>
Complex adaptive_segment(const Segment& s, Fn&& integrand, double t0, double t1, double tol,
                         int depth, long& evals) {
  const double tm = 0.5 * (t0 + t1);
  const Complex whole = gl15(s, integrand, t0, t1, evals);
  const Complex left = gl15(s, integrand, t0, tm, evals);
  const Complex right = gl15(s, integrand, tm, t1, evals);
  const Complex sum = left + right;
  if (std::abs(whole - sum) <= tol || depth >= 30) return sum;
  return adaptive_segment(s, integrand, t0, tm, 0.5 * tol, depth + 1, evals) +
         adaptive_segment(s, integrand, tm, t1, 0.5 * tol, depth + 1, evals);
}

struct WindingEstimate {
  double raw = 0.0;          // integral / (2 pi i), before rounding
  double min_over_median = 1.0;  // coarse |h| scan, zero-on-contour indicator
  long evals = 0;
};

// Quadrature of h'/h over the closed contour. Callers round and validate.
template <typename F, typename DF>
WindingEstimate winding_estimate(F&& f, DF&& df, const std::vector<Segment>& segs,
                                 double seg_tol = 1e-4, int coarse = 24) {
  WindingEstimate est;
  // Coarse modulus scan: a zero sitting on the contour shows up as a
  // collapsed min/median ratio; quadrature cannot be trusted there.
  std::vector<double> mags;
  mags.reserve(segs.size() * coarse);
  for (const auto& s : segs)
    for (int i = 0; i < coarse; ++i) mags.push_back(std::abs(f(s.point((i + 0.5) / coarse))));
  std::vector<double> sorted = mags;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double mn = *std::min_element(mags.begin(), mags.end());
  est.min_over_median = (median > 0.0) ? mn / median : 0.0;

  auto integrand = [&](Complex z) { return df(z) / f(z); };
  Complex total{0, 0};
  for (const auto& s : segs)
    total += adaptive_segment(s, integrand, 0.0, 1.0, seg_tol, 0, est.evals);
  constexpr double two_pi = 6.28318530717958647692;
  // 1/(2 pi i) * total: the closed-contour integral is 2 pi i * n.
  est.raw = total.imag() / two_pi;
  return est;
}

}  // namespace deltaspec::detail
