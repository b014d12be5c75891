#include "deltaspec/overlap.hpp"

#include <algorithm>
#include <cmath>

#include "deltaspec/transfer.hpp"

namespace deltaspec {

namespace {

void require_positive_k(double k, const char* where) {
  if (!(k > 0.0)) throw invalid_input_error(std::string(where) + ": k must be positive");
}

Complex f_plus(const CouplingConfig& cc, double k) { return -f_factor(cc, Complex{-k, 0.0}); }

}  // namespace

OverlapMatrix overlap_matrix(const CouplingConfig& cc, double k) {
  require_positive_k(k, "overlap_matrix");
  const auto [wm, wp] = w_coefficients(cc, Complex{k, 0.0});
  const Complex e2 = std::exp(2.0 * kImagUnit * cc.a * k);
  const Complex e2i = 1.0 / e2;

  OverlapMatrix km;
  km.k = k;
  km.k11 = 1.0 - wm * wm - wp * wp;
  km.k22 = km.k11;
  km.k12 = wm * (1.0 - wm) * e2 - wp * (1.0 + wp) * e2i;
  km.k21 = -wm * (1.0 + wm) * e2i + wp * (1.0 - wp) * e2;
  return km;
}

Complex det_k(const CouplingConfig& cc, double k) {
  require_positive_k(k, "det_k");
  return f_factor(cc, Complex{k, 0.0}) * f_plus(cc, k);
}

Complex det_k_long(const CouplingConfig& cc, double k) {
  require_positive_k(k, "det_k_long");
  const Complex zm = cc.z_minus, zp = cc.z_plus;
  const double k2 = k * k;
  const Complex u = zm * zp;
  const double c4 = std::cos(4.0 * cc.a * k), s4 = std::sin(4.0 * cc.a * k);
  return 1.0 + (zm * zm + zp * zp) / (4.0 * k2) + u * u / (8.0 * k2 * k2) +
         u / (2.0 * k2) *
             ((1.0 - u / (4.0 * k2)) * c4 + (zm + zp) / (2.0 * k) * s4);
}

double det_k_pt(Complex z, double a, double k) {
  if (!(k > 0.0)) throw invalid_input_error("det_k_pt: k must be positive");
  if (!(a > 0.0)) throw invalid_input_error("det_k_pt: a must be positive");
  const double zz = std::norm(z);
  const Complex f = zz * std::sin(2.0 * a * k) / (2.0 * k * k) +
                    std::exp(-2.0 * kImagUnit * a * k) * (z.real() / k - kImagUnit);
  return std::norm(f);
}

std::vector<double> real_zeros_det_k(const CouplingConfig& cc, double k_min, double k_max,
                                     int grid_n, double atol) {
  if (!(k_min > 0.0) || !(k_max > k_min))
    throw invalid_input_error("real_zeros_det_k: need 0 < k_min < k_max");
  if (grid_n < 2) throw invalid_input_error("real_zeros_det_k: grid_n < 2");

  // |det K|^2 is smooth and nonnegative with isolated zeros; bracket local
  // minima below atol and contract them by golden section.
  auto val = [&](double k) { return std::abs(det_k(cc, k)); };
  std::vector<double> kk(grid_n), vv(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    kk[i] = k_min + (k_max - k_min) * i / (grid_n - 1);
    vv[i] = val(kk[i]);
  }

  std::vector<double> zeros;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 1; i + 1 < grid_n; ++i) {
    if (!(vv[i] <= vv[i - 1] && vv[i] <= vv[i + 1])) continue;
    double lo = kk[i - 1], hi = kk[i + 1];
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = val(x1), f2 = val(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
      if (f1 < f2) {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - gr * (hi - lo); f1 = val(x1);
      } else {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + gr * (hi - lo); f2 = val(x2);
      }
    }
    const double km = 0.5 * (lo + hi);
    if (val(km) < atol) {
      if (zeros.empty() || std::abs(zeros.back() - km) > 1e-9 * (1.0 + km)) zeros.push_back(km);
    }
  }
  return zeros;
}

}  // namespace deltaspec
