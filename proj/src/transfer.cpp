#include "deltaspec/transfer.hpp"

#include <cmath>

namespace deltaspec {

namespace {

// Minimal double-double arithmetic (Dekker/Knuth error-free transforms).
// Used only to verify det M = 1: the identity is exact in the algebra of
// (w_-, w_+, q = e^{2iak}) but the products reach |w|^4 ~ 1e19 on the test
// domain, beyond what plain double can cancel back to O(1e-10).
struct DD {
  double hi = 0.0, lo = 0.0;
};

DD quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

DD two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

DD dd_mul(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

DD dd_div(DD a, DD b) {
  double q1 = a.hi / b.hi;
  DD r = dd_sub(a, dd_mul({q1, 0.0}, b));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul({q2, 0.0}, b));
  double q3 = r.hi / b.hi;
  DD q = quick_two_sum(q1, q2);
  return dd_add(q, {q3, 0.0});
}

struct DDC {
  DD re, im;
};

DDC ddc(Complex z) { return {{z.real(), 0.0}, {z.imag(), 0.0}}; }

DDC ddc_add(DDC a, DDC b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }
DDC ddc_sub(DDC a, DDC b) { return {dd_sub(a.re, b.re), dd_sub(a.im, b.im)}; }

DDC ddc_mul(DDC a, DDC b) {
  return {dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
          dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}

DDC ddc_div(DDC a, DDC b) {
  DD den = dd_add(dd_mul(b.re, b.re), dd_mul(b.im, b.im));
  DDC num = ddc_mul(a, {b.re, dd_neg(b.im)});
  return {dd_div(num.re, den), dd_div(num.im, den)};
}

void require_nonzero(Complex k, const char* where) {
  if (k == Complex{0, 0}) throw origin_error(std::string(where) + ": k = 0");
}

}  // namespace

TransferMatrix transfer_matrix(const CouplingConfig& cc, Complex k) {
  require_nonzero(k, "transfer_matrix");
  const auto [wm, wp] = w_coefficients(cc, k);
  const Complex q = std::exp(2.0 * kImagUnit * cc.a * k);  // e^{2iak}
  const Complex qi = 1.0 / q;
  const Complex p = wm * wp;
  const Complex sin2 = (q - qi) / (2.0 * kImagUnit);  // sin(2ak)

  TransferMatrix m;
  m.k = k;
  m.m11 = 1.0 - wm - wp + (1.0 - qi * qi) * p;
  m.m12 = 2.0 * kImagUnit * p * sin2 - wm * q - wp * qi;
  m.m21 = -2.0 * kImagUnit * p * sin2 + wm * qi + wp * q;
  m.m22 = 1.0 + wm + wp + (1.0 - q * q) * p;
  return m;
}

Complex m22(const CouplingConfig& cc, Complex k) {
  require_nonzero(k, "m22");
  const auto [wm, wp] = w_coefficients(cc, k);
  const Complex e4 = std::exp(4.0 * kImagUnit * cc.a * k);
  return 1.0 + wm + wp + (1.0 - e4) * wm * wp;
}

Complex f_factor(const CouplingConfig& cc, Complex k) {
  require_nonzero(k, "f_factor");
  const Complex u = cc.z_minus * cc.z_plus;
  const Complex v = 0.5 * (cc.z_minus + cc.z_plus);
  const Complex two_ak = 2.0 * cc.a * k;
  return u / (2.0 * k * k) * std::sin(two_ak) +
         std::exp(-kImagUnit * two_ak) * (v / k - kImagUnit);
}

double det_m_residual(const CouplingConfig& cc, Complex k) {
  require_nonzero(k, "det_m_residual");
  const Complex q0 = std::exp(2.0 * kImagUnit * cc.a * k);

  const DDC i{{0.0, 0.0}, {1.0, 0.0}};
  const DDC one{{1.0, 0.0}, {0.0, 0.0}};
  const DDC two_k = ddc(2.0 * k);
  const DDC wm = ddc_div(ddc_mul(i, ddc(cc.z_minus)), two_k);
  const DDC wp = ddc_div(ddc_mul(i, ddc(cc.z_plus)), two_k);
  const DDC q = ddc(q0);
  const DDC qi = ddc_div(one, q);
  const DDC p = ddc_mul(wm, wp);
  const DDC dq = ddc_sub(q, qi);  // 2i sin(2ak)

  const DDC m11 = ddc_add(ddc_sub(ddc_sub(one, wm), wp),
                          ddc_mul(ddc_sub(one, ddc_mul(qi, qi)), p));
  const DDC m22v = ddc_add(ddc_add(ddc_add(one, wm), wp),
                           ddc_mul(ddc_sub(one, ddc_mul(q, q)), p));
  const DDC m12 = ddc_sub(ddc_sub(ddc_mul(p, dq), ddc_mul(wm, q)), ddc_mul(wp, qi));
  const DDC m21 = ddc_add(ddc_add(ddc_mul(dq, ddc_mul({{-1.0, 0.0}, {0.0, 0.0}}, p)),
                                  ddc_mul(wm, qi)),
                          ddc_mul(wp, q));

  const DDC det = ddc_sub(ddc_mul(m11, m22v), ddc_mul(m12, m21));
  const DDC r = ddc_sub(det, one);
  return std::hypot(r.re.hi + r.re.lo, r.im.hi + r.im.lo);
}

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // (2 pi)^{-1/2}

}  // namespace

Complex eigenfunction_piece(const CouplingConfig& cc, double k, Which which, Branch branch,
                            double x) {
  if (!(k > 0.0)) throw invalid_input_error("eigenfunction: k must be real positive");
  auto [wm, wp] = w_coefficients(cc, Complex{k, 0.0});
  const bool adjoint = (which == Which::psi1_adjoint || which == Which::psi2_adjoint);
  if (adjoint) {
    wm = -std::conj(wm);
    wp = -std::conj(wp);
  }
  const bool forward = (which == Which::psi1 || which == Which::psi1_adjoint);
  const double s = forward ? 1.0 : -1.0;
  const Complex eikx = std::exp(s * kImagUnit * k * x);

  Complex value;
  switch (branch) {
    case Branch::middle:
      value = eikx;
      break;
    case Branch::left:
      // psi1: (1 + w_-) e^{ikx} - w_- e^{-ik(x + 2a)}
      // psi2: (1 - w_-) e^{-ikx} + w_- e^{ik(x + 2a)}
      value = (1.0 + s * wm) * eikx - s * wm * std::exp(-s * kImagUnit * k * (x + 2.0 * cc.a));
      break;
    case Branch::right:
      // psi1: (1 - w_+) e^{ikx} + w_+ e^{-ik(x - 2a)}
      // psi2: (1 + w_+) e^{-ikx} - w_+ e^{ik(x - 2a)}
      value = (1.0 - s * wp) * eikx + s * wp * std::exp(-s * kImagUnit * k * (x - 2.0 * cc.a));
      break;
  }
  return kInvSqrt2Pi * value;
}

EigenfunctionSample eigenfunction(const CouplingConfig& cc, double k, Which which, double x) {
  Branch branch = Branch::middle;
  if (x < -cc.a)
    branch = Branch::left;
  else if (x > cc.a)
    branch = Branch::right;
  return EigenfunctionSample{x, eigenfunction_piece(cc, k, which, branch, x), branch, which};
}

}  // namespace deltaspec
