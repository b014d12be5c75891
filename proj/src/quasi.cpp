#include "deltaspec/quasi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "deltaspec/zeros.hpp"

namespace deltaspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

// e^z - 1 without cancellation: Re = expm1(x) cos y - 2 sin^2(y/2).
Complex expm1c(Complex z) {
  const double ex = std::expm1(z.real());
  const double sy = std::sin(z.imag()), s2 = std::sin(0.5 * z.imag());
  return {ex * std::cos(z.imag()) - 2.0 * s2 * s2, (ex + 1.0) * sy};
}

}  // namespace

Complex eval_L(Complex kappa) {
  if (std::abs(kappa) < 1e-4) {
    // (1 - e^{2K})/K = -2 - 2K - (4/3)K^2 - (2/3)K^3 - (4/15)K^4 - ...
    return -2.0 - kappa * (2.0 + kappa * (4.0 / 3.0 + kappa * (2.0 / 3.0 +
                                                               kappa * (4.0 / 15.0))));
  }
  return -expm1c(2.0 * kappa) / kappa;
}

Complex eval_G(const ScaledCoupling& zf, Complex kappa) {
  return kappa - (zf.zf_minus + zf.zf_plus) + zf.zf_minus * zf.zf_plus * eval_L(kappa);
}

Complex eval_J(const ScaledCoupling& zf, Complex kappa) {
  const double rm = zf.zf_minus.real(), rp = zf.zf_plus.real();
  const double sm = zf.zf_minus.imag(), sp = zf.zf_plus.imag();
  const ScaledCoupling zr{Complex{rm, 0.0}, Complex{rp, 0.0}};
  const Complex diff = eval_G(zf, kappa) - eval_G(zr, kappa);
  const Complex closed =
      -kImagUnit * (sm + sp) + (Complex{-sm * sp, rm * sp + rp * sm}) * eval_L(kappa);
  if (std::abs(diff - closed) > 1e-10 * (1.0 + std::abs(diff) + std::abs(closed)))
    throw std::logic_error("eval_J: difference and closed forms disagree");
  return diff;
}

HalfDiscSpec HalfDiscSpec::covering(double r_minus, double r_plus) {
  if (!(r_minus > 0.0) || !(r_plus > 0.0))
    throw invalid_input_error("HalfDiscSpec: r_pm must be positive");
  const double rmax = std::max(r_minus, r_plus);
  return HalfDiscSpec{rmax, std::sqrt(8.0) * rmax};
}

HalfDiscSpec HalfDiscSpec::fig10(double r_minus, double r_plus) {
  if (!(r_minus > 0.0) || !(r_plus > 0.0))
    throw invalid_input_error("HalfDiscSpec: r_pm must be positive");
  const double rmax = std::max(r_minus, r_plus);
  return HalfDiscSpec{rmax, 2.0 * rmax};
}

Complex HalfDiscSpec::boundary(double t) const {
  // segment -iR -> +iR for t in [-1, 0], left semicircle back for t in [0, 1]
  if (t <= 0.0) return Complex{0.0, radius * (2.0 * t + 1.0)};
  return radius * kImagUnit * std::exp(kImagUnit * kPi * t);
}

QuasiBound compute_bound(double r_minus, double r_plus, int n_boundary,
                         const HalfDiscSpec* disc) {
  if (!(r_minus > 0.0) || !(r_plus > 0.0))
    throw invalid_input_error("compute_bound: r_pm must be positive");
  if (n_boundary < 16) throw invalid_input_error("compute_bound: n_boundary too small");

  const HalfDiscSpec d = disc ? *disc : HalfDiscSpec::covering(r_minus, r_plus);
  const ScaledCoupling zr{Complex{r_minus, 0.0}, Complex{r_plus, 0.0}};
  auto g_at = [&](double t) { return std::abs(eval_G(zr, d.boundary(t))); };

  QuasiBound qb;
  qb.r_minus = r_minus;
  qb.r_plus = r_plus;
  qb.samples.resize(n_boundary + 1);
  for (int i = 0; i <= n_boundary; ++i) {
    const double t = -1.0 + 2.0 * i / n_boundary;
    const Complex kappa = d.boundary(t);
    qb.samples[i] = {t, kappa, std::abs(eval_G(zr, kappa)), std::abs(eval_L(kappa))};
  }

  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 1; i < n_boundary; ++i) {
    const auto& s = qb.samples[i];
    if (!(s.abs_g <= qb.samples[i - 1].abs_g && s.abs_g <= qb.samples[i + 1].abs_g)) continue;
    double lo = qb.samples[i - 1].t, hi = qb.samples[i + 1].t;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = g_at(x1), f2 = g_at(x2);
    for (int it = 0; it < 120 && hi - lo > 1e-13; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = g_at(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = g_at(x2);
      }
    }
    const double tm = 0.5 * (lo + hi);
    qb.minima.push_back({tm, d.boundary(tm), g_at(tm)});
  }
  // endpoints can be the basin floor too
  for (double te : {-1.0, 1.0}) {
    const double ge = g_at(te);
    const double gi = g_at(te + (te < 0 ? 2.0 : -2.0) / n_boundary);
    if (ge <= gi) qb.minima.push_back({te, d.boundary(te), ge});
  }

  if (qb.minima.empty()) throw std::logic_error("compute_bound: no boundary minimum found");
  const auto best = std::min_element(
      qb.minima.begin(), qb.minima.end(),
      [](const BoundaryMinimum& a, const BoundaryMinimum& b) { return a.value < b.value; });
  qb.m_r = best->value;
  qb.kappa_min = best->kappa;
  qb.t_min = best->t;
  qb.b_r = qb.m_r / (2.0 * (3.0 * d.r_max + 1.0));
  return qb;
}

LPeakReport verify_l_peak(double rho, int n_samples) {
  if (!(rho > 0.0)) throw invalid_input_error("verify_l_peak: rho must be positive");
  if (n_samples < 16) throw invalid_input_error("verify_l_peak: too few samples");

  LPeakReport rep;
  rep.rho = rho;
  const int nr = std::max(3, static_cast<int>(std::sqrt(n_samples / 2.0)));
  const int nphi = std::max(3, n_samples / nr);

  double min_mod = 1e300;
  Complex argmin{0, 0};
  for (int i = 0; i <= nr; ++i) {
    const double r = rho * i / nr;
    for (int j = 0; j <= nphi; ++j) {
      const double phi = 0.5 * kPi + kPi * j / nphi;  // left half-plane fill
      const Complex kappa = r * Complex{std::cos(phi), std::sin(phi)};
      const double v = std::abs(eval_L(kappa));
      if (v > rep.max_abs_l) {
        rep.max_abs_l = v;
        rep.argmax = kappa;
      }
      if (std::abs(kappa) < min_mod) {
        min_mod = std::abs(kappa);
        argmin = kappa;
      }
      if (i == nr) rep.boundary_max = std::max(rep.boundary_max, v);
    }
  }
  // the boundary of the half-disc includes the imaginary segment
  for (int j = 0; j <= nphi; ++j) {
    const double y = -rho + 2.0 * rho * j / nphi;
    const double v = std::abs(eval_L(Complex{0.0, y}));
    rep.boundary_max = std::max(rep.boundary_max, v);
  }
  rep.bound_holds = rep.max_abs_l <= 2.0 + 1e-9;
  rep.max_at_origin = std::abs(rep.argmax - argmin) == 0.0;
  return rep;
}

OriginOrderReport verify_origin_simple_zero(double r_minus, double r_plus,
                                            double s_minus, double s_plus) {
  if (!(r_minus > 0.0) || !(r_plus > 0.0))
    throw invalid_input_error("verify_origin_simple_zero: r_pm must be positive");
  const ScaledCoupling zf{Complex{r_minus, s_minus}, Complex{r_plus, s_plus}};
  OriginOrderReport rep;
  rep.f_origin = eval_F(zf, Complex{0, 0}, 0);
  rep.f_prime_origin = eval_F(zf, Complex{0, 0}, 1);
  const double scale =
      1.0 + std::abs(zf.zf_minus) + std::abs(zf.zf_plus) + std::abs(zf.zf_minus * zf.zf_plus);
  rep.zero_at_origin = std::abs(rep.f_origin) <= 1e-13 * scale;
  rep.first_order = std::abs(rep.f_prime_origin) > 1e-12 * scale;
  return rep;
}

}  // namespace deltaspec
