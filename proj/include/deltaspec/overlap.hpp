#pragma once

// Biorthonormality matrix K(k) of the delta-normalized inner products
// <psi^{z*}_{a k} | psi^z_{b q}> = delta(k - q) K_{ab}, its determinant, and
// the PT specialization det K = |f|^2. det K(k) = 0 at k > 0 is the
// biorthonormal-system criterion for a spectral singularity, equivalent to
// M22(+-k) = 0 through det K = f_- f_+ and f(k) = -i e^{-2iak} M22(k).

#include <vector>

#include "deltaspec/couplings.hpp"

namespace deltaspec {

struct OverlapMatrix {
  Complex k11, k12, k21, k22;  // k11 == k22 always
  double k = 0.0;

  Complex det() const { return k11 * k22 - k12 * k21; }
};

OverlapMatrix overlap_matrix(const CouplingConfig& cc, double k);

// det K via the factorization f_- f_+ (numerically stabler than the long
// trigonometric form, which overlap tests keep as a cross-check).
Complex det_k(const CouplingConfig& cc, double k);

// The long trigonometric form of det K, retained as a cross-check oracle.
Complex det_k_long(const CouplingConfig& cc, double k);

// PT case z_+ = z_-^* = z: det K = |f(z,a,k)|^2 >= 0.
double det_k_pt(Complex z, double a, double k);

// Real zeros of det K on [k_min, k_max]: grid bracketing of |det K| dips
// below atol (or sign changes of the PT real form), refined to machine
// accuracy. Zeros are isolated and finite in number.
std::vector<double> real_zeros_det_k(const CouplingConfig& cc, double k_min, double k_max,
                                     int grid_n = 4000, double atol = 1e-9);

}  // namespace deltaspec
