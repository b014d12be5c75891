#pragma once

// Transfer matrix M(k) of the double-delta potential, the spectral oracle
// M22(k), the factorization function f(k) with f(k) = -i e^{-2iak} M22(k),
// and the piecewise scattering eigenfunctions.
//
// Spectral singularities are the nonzero real zeros of M22(k); bound states
// are the zeros with Im(k) > 0.

#include <utility>

#include "deltaspec/couplings.hpp"

namespace deltaspec {

struct TransferMatrix {
  Complex m11, m12, m21, m22;
  Complex k;

  Complex det() const { return m11 * m22 - m12 * m21; }
};

// Entries from the closed form; throws origin_error at k = 0.
TransferMatrix transfer_matrix(const CouplingConfig& cc, Complex k);

// M22(k) = 1 + w_- + w_+ + (1 - e^{4iak}) w_- w_+, evaluated directly.
Complex m22(const CouplingConfig& cc, Complex k);

// f(k) = (u/2k^2) sin(2ak) + e^{-2iak}(v/k - i),  u = z_- z_+, v = (z_-+z_+)/2.
// The other factor of det K is f_+(k) = -f(-k).
Complex f_factor(const CouplingConfig& cc, Complex k);

// |det M(k) - 1| evaluated in compensated double-double arithmetic. The
// identity is exact in real arithmetic but the entries grow like |z/k|^2,
// so plain double cannot resolve it near the domain corners.
double det_m_residual(const CouplingConfig& cc, Complex k);

enum class Branch { left, middle, right };
enum class Which { psi1, psi2, psi1_adjoint, psi2_adjoint };

struct EigenfunctionSample {
  double x;
  Complex value;
  Branch branch;
  Which which;
};

// Scattering eigenfunction at real k > 0. Adjoint variants substitute
// w_pm -> -conj(w_pm). Normalization is (2 pi)^{-1/2}, fixed.
EigenfunctionSample eigenfunction(const CouplingConfig& cc, double k, Which which, double x);

// Evaluates the analytic continuation of one branch formula at any x; the
// matching tests compare branches at x = +-a through this.
Complex eigenfunction_piece(const CouplingConfig& cc, double k, Which which, Branch branch,
                            double x);

}  // namespace deltaspec
