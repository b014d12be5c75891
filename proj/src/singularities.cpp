#include "deltaspec/singularities.hpp"

#include <algorithm>
#include <cmath>

#include "deltaspec/transfer.hpp"

namespace deltaspec {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMinK = 1e-6;  // origin exclusion disc for root searches

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * (1.0 + std::abs(a)); }

FamilyTag classify_plane(const CouplingConfig& cc) {
  const Complex zm = cc.z_minus, zp = cc.z_plus;
  auto eq = [](Complex x, Complex y) {
    return std::abs(x - y) <= 1e-12 * (1.0 + std::abs(x) + std::abs(y));
  };
  if (eq(zp, std::conj(zm))) return FamilyTag::pt;
  if (eq(zp, -std::conj(zm))) return FamilyTag::anti_pt;
  if (std::abs(zm.real()) <= 1e-12 * (1.0 + std::abs(zm)) &&
      std::abs(zp.real()) <= 1e-12 * (1.0 + std::abs(zp)))
    return FamilyTag::imaginary;
  if (eq(zp, -zm)) return FamilyTag::opposite;
  if (close(cc.a * zm.real(), 1.0, 1e-12) && close(cc.a * zp.real(), 1.0, 1e-12))
    return FamilyTag::shifted;
  return FamilyTag::generic;
}

// Tests each nonzero real root of g at both signs against |f| < tol and
// appends one record per verified |kappa| (positive representative).
void verify_candidate(const CouplingConfig& cc, double kappa, double tol, FamilyTag tag,
                      SingularityScan& out) {
  kappa = std::abs(kappa);
  if (!(kappa > kMinK)) return;
  for (const auto& rec : out.found)
    if (close(rec.k_star, kappa, 1e-9)) return;
  for (const auto& rej : out.rejected)
    if (close(rej.k, kappa, 1e-9)) return;
  const double rp = std::abs(f_factor(cc, Complex{kappa, 0.0}));
  const double rm = std::abs(f_factor(cc, Complex{-kappa, 0.0}));
  const double res = std::min(rp, rm);
  if (res < tol)
    out.found.push_back({kappa, kappa * kappa, res, tag});
  else
    out.rejected.push_back({kappa, rp, rm});
}

}  // namespace

CubicCoefficients cubic_g(const CouplingConfig& cc) {
  const Complex u = cc.z_minus * cc.z_plus;
  const Complex v = 0.5 * (cc.z_minus + cc.z_plus);
  CubicCoefficients c;
  c.c3 = 1.0;
  c.c2 = -2.0 * v.imag();
  c.c1 = -0.5 * u.real() + std::norm(v);
  c.c0 = 0.5 * (u.real() * v.imag() - v.real() * u.imag());
  return c;
}

std::vector<double> real_cubic_roots(const CubicCoefficients& c) {
  // Depressed cubic t^3 + p t + q via k = t - c2/3, discriminant
  // classification, then two polishing Newton steps on g itself.
  const double shift = -c.c2 / 3.0;
  const double p = c.c1 - c.c2 * c.c2 / 3.0;
  const double q = 2.0 * c.c2 * c.c2 * c.c2 / 27.0 - c.c2 * c.c1 / 3.0 + c.c0;
  const double disc = -4.0 * p * p * p - 27.0 * q * q;
  const double disc_scale = 4.0 * std::abs(p * p * p) + 27.0 * q * q + 1e-300;

  std::vector<double> roots;
  if (std::abs(disc) <= 1e-10 * disc_scale) {
    if (std::abs(p) <= 1e-14 * (1.0 + std::abs(q))) {
      roots = {shift};  // triple root
    } else {
      roots = {3.0 * q / p + shift, -1.5 * q / p + shift};  // simple + double
    }
  } else if (disc > 0.0) {
    // three distinct real roots
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double phi = std::acos(arg);
    for (int j = 0; j < 3; ++j) roots.push_back(m * std::cos((phi - 2.0 * kPi * j) / 3.0) + shift);
  } else {
    // one real root (Cardano, cancellation-free form)
    const double w = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    const double u1 = std::cbrt(-q / 2.0 + (q >= 0.0 ? -w : w));
    const double t = (u1 == 0.0) ? 0.0 : u1 - p / (3.0 * u1);
    roots = {t + shift};
  }

  // Grazing double roots can fall on the wrong side of the discriminant
  // threshold; the critical points of g recover them.
  const double qa = 3.0 * c.c3, qb = 2.0 * c.c2, qc = c.c1;
  const double dd = qb * qb - 4.0 * qa * qc;
  if (dd >= 0.0) {
    const double sq = std::sqrt(dd);
    for (double kc : {(-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)}) {
      const double gs = std::abs(kc * kc * kc) + std::abs(c.c2 * kc * kc) +
                        std::abs(c.c1 * kc) + std::abs(c.c0) + 1e-300;
      if (std::abs(c.eval(kc)) <= 1e-9 * gs) roots.push_back(kc);
    }
  }

  for (double& r : roots)
    for (int it = 0; it < 2; ++it) {
      const double g = c.eval(r), dg = c.deriv(r);
      if (dg == 0.0) break;
      const double step = g / dg;
      if (!std::isfinite(step) || std::abs(step) > 1.0 + std::abs(r)) break;
      r -= step;
    }

  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots)
    if (out.empty() || std::abs(r - out.back()) > 1e-9 * (1.0 + std::abs(r))) out.push_back(r);
  return out;
}

SingularityScan find_singularities(const CouplingConfig& cc, double tol) {
  if (!(tol > 0.0)) throw invalid_input_error("find_singularities: tol must be positive");
  SingularityScan scan;
  const FamilyTag tag = classify_plane(cc);
  for (double kappa : real_cubic_roots(cubic_g(cc))) verify_candidate(cc, kappa, tol, tag, scan);
  std::sort(scan.found.begin(), scan.found.end(),
            [](const auto& a, const auto& b) { return a.k_star < b.k_star; });
  return scan;
}

namespace {

// Uniform sampling in t with adaptive midpoint insertion where the curve
// moves faster than deriv_threshold per unit t (the fig1/fig3 curves have
// vertical asymptotes at t = m pi).
template <typename PointFn>
CurveResult emit_curve(double t_min, double t_max, int n_points, double deriv_threshold,
                       PointFn&& point) {
  if (!(t_max > t_min) || n_points < 2)
    throw invalid_input_error("curve emitter: need t_max > t_min and n_points >= 2");
  CurveResult out;
  std::vector<double> ts(n_points);
  for (int i = 0; i < n_points; ++i)
    ts[i] = t_min + (t_max - t_min) * i / (n_points - 1);

  const double min_dt = (t_max - t_min) * 1e-7;
  std::vector<double> stack(ts.rbegin(), ts.rend());
  double prev_t = 0.0;
  bool have_prev = false;
  std::vector<std::pair<double, double>> prev_pt;

  while (!stack.empty()) {
    const double t = stack.back();
    std::vector<std::pair<double, double>> pts;
    if (!point(t, pts)) {
      out.skipped_t.push_back(t);
      stack.pop_back();
      have_prev = false;
      continue;
    }
    if (have_prev && t - prev_t > min_dt && pts.size() == prev_pt.size()) {
      double rate = 0.0;
      for (size_t i = 0; i < pts.size(); ++i)
        rate = std::max(rate, std::max(std::abs(pts[i].first - prev_pt[i].first),
                                       std::abs(pts[i].second - prev_pt[i].second)) /
                                  (t - prev_t));
      if (rate > deriv_threshold) {
        stack.push_back(0.5 * (prev_t + t));
        continue;
      }
    }
    stack.pop_back();
    for (auto [r, s] : pts) out.samples.push_back({t, r, s});
    prev_t = t;
    prev_pt = std::move(pts);
    have_prev = true;
  }
  return out;
}

}  // namespace

CurveResult pt_curve(double t_min, double t_max, int n_points, double deriv_threshold,
                     double value_cap) {
  return emit_curve(t_min, t_max, n_points, deriv_threshold,
                    [value_cap](double t, std::vector<std::pair<double, double>>& pts) {
                      const double st = std::sin(t);
                      if (std::abs(st) < 1e-6 || t == 0.0) return false;
                      const double r = -t * std::cos(t) / st;
                      const double s = std::abs(t / st) * std::sqrt(1.0 + st * st);
                      if (std::abs(r) > value_cap || s > value_cap) return false;
                      pts = {{r, s}, {r, -s}};
                      return true;
                    });
}

CurveResult family_opposite(double t_min, double t_max, int n_points, double deriv_threshold,
                            double value_cap) {
  return emit_curve(t_min, t_max, n_points, deriv_threshold,
                    [value_cap](double t, std::vector<std::pair<double, double>>& pts) {
                      const double st = std::abs(std::sin(t));
                      if (st < 1e-6 || !(t > 0.0)) return false;
                      const double csc = 1.0 / st;
                      const double r = 0.5 * t * std::sqrt(csc - 1.0);
                      const double s = 0.5 * t * std::sqrt(csc + 1.0);
                      if (r > value_cap || s > value_cap) return false;
                      pts.clear();
                      for (double sr : {1.0, -1.0})
                        for (double ss : {1.0, -1.0}) {
                          if (r == 0.0 && sr < 0.0) continue;
                          pts.emplace_back(sr * r, ss * s);
                        }
                      return true;
                    });
}

std::optional<SingularityRecord> family_anti_pt(Complex z, double a, double tol) {
  if (z == Complex{0, 0}) return std::nullopt;
  const double kappa = std::abs(z.imag());
  if (!(kappa > kMinK)) return std::nullopt;
  const CouplingConfig cc(-std::conj(z), z, a);
  SingularityScan scan;
  verify_candidate(cc, kappa, tol, FamilyTag::anti_pt, scan);
  if (scan.found.empty()) return std::nullopt;
  return scan.found.front();
}

std::vector<SingularityRecord> family_imaginary(double y_minus, double y_plus, double a,
                                                double tol) {
  if (y_minus == 0.0 || y_plus == 0.0)
    throw invalid_input_error("family_imaginary: y_pm must be nonzero");
  const CouplingConfig cc(Complex{0.0, y_minus / a}, Complex{0.0, y_plus / a}, a);
  SingularityScan scan;

  // branch A: kappa = (y_+ + y_-)/(2a), needs sin(2 a kappa) = 0
  verify_candidate(cc, (y_plus + y_minus) / (2.0 * a), tol, FamilyTag::imaginary, scan);

  // branch B: roots of 2 a^2 k^2 - a k (y_+ + y_-) + y_+ y_- = 0, needs
  // cos(2 a kappa) = 0 there
  const double sum = y_plus + y_minus;
  const double dd = sum * sum - 8.0 * y_plus * y_minus;
  if (dd >= 0.0) {
    const double sq = std::sqrt(dd);
    verify_candidate(cc, (sum + sq) / (4.0 * a), tol, FamilyTag::imaginary, scan);
    verify_candidate(cc, (sum - sq) / (4.0 * a), tol, FamilyTag::imaginary, scan);
  }
  std::sort(scan.found.begin(), scan.found.end(),
            [](const auto& x, const auto& y) { return x.k_star < y.k_star; });
  return scan.found;
}

std::vector<double> tan_equation_roots(double a, double k_max) {
  if (!(a > 0.0) || !(k_max > 0.0))
    throw invalid_input_error("tan_equation_roots: need a > 0 and k_max > 0");
  std::vector<double> roots;
  auto h = [a](double k) { return std::tan(2.0 * a * k) + a * k; };
  // one root in each branch interval ((2m-1)pi/(4a), (2m+1)pi/(4a)), m >= 1
  for (int m = 1;; ++m) {
    double lo = (2.0 * m - 1.0) * kPi / (4.0 * a);
    double hi = (2.0 * m + 1.0) * kPi / (4.0 * a);
    if (lo > k_max) break;
    const double pad = 1e-12 * (hi - lo) + 1e-15;
    lo += pad;
    hi -= pad;
    double flo = h(lo), fhi = h(hi);
    if (!(flo < 0.0 && fhi > 0.0)) continue;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (h(mid) < 0.0 ? lo : hi) = mid;
    }
    const double r = 0.5 * (lo + hi);
    if (r <= k_max) roots.push_back(r);
  }
  return roots;
}

std::vector<SingularityRecord> family_shifted(double s_minus, double s_plus, double a,
                                              double tol) {
  if (!(a > 0.0)) throw invalid_input_error("family_shifted: a must be positive");
  const CouplingConfig cc(Complex{1.0 / a, s_minus / a}, Complex{1.0 / a, s_plus / a}, a);
  SingularityScan scan;

  const double s = 0.5 * (s_minus + s_plus);
  verify_candidate(cc, s / a, tol, FamilyTag::shifted, scan);  // case 4.a

  const double k_max = 1.05 * std::max(std::abs(cc.z_minus), std::abs(cc.z_plus));
  for (double kn : tan_equation_roots(a, k_max))
    verify_candidate(cc, kn, tol, FamilyTag::shifted, scan);  // case 4.b

  std::sort(scan.found.begin(), scan.found.end(),
            [](const auto& x, const auto& y) { return x.k_star < y.k_star; });
  return scan.found;
}

}  // namespace deltaspec
