#include <doctest.h>

#include <cmath>
#include <random>

#include "deltaspec/couplings.hpp"

using namespace deltaspec;

TEST_CASE("nondimensionalize: unit scaling") {
  PhysicalConfig cfg;
  cfg.zeta_minus = cfg.zeta_plus = Complex{0.5, 0.0};
  const auto cc = nondimensionalize(cfg);
  CHECK(cc.z_minus == Complex{1.0, 0.0});
  CHECK(cc.z_plus == Complex{1.0, 0.0});
  CHECK(cc.a == 1.0);
}

TEST_CASE("nondimensionalize: scaling relations") {
  // z_pm = 2 m ell zeta / hbar^2 and a = alpha / ell by direct substitution
  PhysicalConfig cfg;
  cfg.length_scale = 2.0;
  cfg.zeta_minus = cfg.zeta_plus = Complex{1.0, 0.0};
  const auto cc = nondimensionalize(cfg);
  CHECK(cc.z_minus.real() == doctest::Approx(4.0));
  CHECK(cc.z_plus.real() == doctest::Approx(4.0));
  CHECK(cc.a == doctest::Approx(0.5));
}

TEST_CASE("nondimensionalize: rejects non-positive scales") {
  PhysicalConfig cfg;
  cfg.zeta_plus = Complex{1, 0};
  cfg.length_scale = 0.0;
  CHECK_THROWS_AS(nondimensionalize(cfg), invalid_input_error);
  cfg.length_scale = 1.0;
  cfg.mass = -1.0;
  CHECK_THROWS_AS(nondimensionalize(cfg), invalid_input_error);
}

TEST_CASE("coupling invariants") {
  CHECK_THROWS_AS(CouplingConfig({0, 0}, {0, 0}, 1.0), invalid_input_error);
  CHECK_THROWS_AS(CouplingConfig({1, 0}, {1, 0}, 0.0), invalid_input_error);
  CHECK_THROWS_AS(CouplingConfig({1, 0}, {1, 0}, -2.0), invalid_input_error);
}

TEST_CASE("w coefficients") {
  const CouplingConfig cc({0, 0}, {0, 2}, 1.0);  // z_+ = 2i
  const auto [wm, wp] = w_coefficients(cc, Complex{1, 0});
  CHECK(wm == Complex{0, 0});
  CHECK(std::abs(wp - Complex{-1.0, 0.0}) < 1e-15);  // i * 2i / 2 = -1

  const CouplingConfig cc2({0, 0}, {1, 1}, 1.0);  // z_+ = 1 + i, k = 2
  const auto wp2 = w_coefficients(cc2, Complex{2, 0}).second;
  CHECK(std::abs(wp2 - Complex{-0.25, 0.25}) < 1e-15);  // (-1 + i)/4

  CHECK_THROWS_AS(w_coefficients(cc, Complex{0, 0}), origin_error);
}

TEST_CASE("scale") {
  const auto s1 = scale(CouplingConfig({1, 0}, {1, 0}, 1.0));
  CHECK(s1.zf_minus == Complex{1, 0});
  const auto s2 = scale(CouplingConfig({1, 0}, {0, 2}, 0.5));
  CHECK(std::abs(s2.zf_plus - Complex{0, 1}) < 1e-16);
  // Fig. 6 caption value
  const auto s3 = scale(CouplingConfig({-8, 3}, {-8, -3}, 1.0));
  CHECK(s3.zf_minus == Complex{-8, 3});
}

TEST_CASE("scaled couplings are length-scale independent") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    PhysicalConfig cfg;
    cfg.mass = std::abs(u(rng)) + 0.1;
    cfg.hbar = std::abs(u(rng)) + 0.1;
    cfg.alpha = std::abs(u(rng)) + 0.1;
    cfg.zeta_minus = {u(rng), u(rng)};
    cfg.zeta_plus = {u(rng), u(rng) + 4.0};
    cfg.length_scale = std::abs(u(rng)) + 0.2;
    const auto sa = scale(nondimensionalize(cfg));
    cfg.length_scale *= 3.7;
    const auto sb = scale(nondimensionalize(cfg));
    CHECK(std::abs(sa.zf_minus - sb.zf_minus) < 1e-12 * (1.0 + std::abs(sa.zf_minus)));
    CHECK(std::abs(sa.zf_plus - sb.zf_plus) < 1e-12 * (1.0 + std::abs(sa.zf_plus)));
  }
}

TEST_CASE("w is homogeneous of degree zero in (z, k)") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const Complex z{u(rng), u(rng) + 3.5};
    const Complex k{u(rng), std::abs(u(rng)) + 0.1};
    const double lam = std::abs(u(rng)) + 0.3;
    const auto w1 = w_coefficients(CouplingConfig(z, z, 1.0), k).first;
    const auto w2 = w_coefficients(CouplingConfig(lam * z, lam * z, 1.0), lam * k).first;
    CHECK(std::abs(w1 - w2) <= 1e-13 * (1.0 + std::abs(w1)));
  }
}

TEST_CASE("wavenumber branch and kappa map") {
  // arg k in [0, pi); ties at pi fold to 0
  CHECK(Wavenumber::principal({-2.0, 0.0}).k == Complex{2.0, 0.0});
  CHECK(Wavenumber::principal({1.0, -1.0}).k == Complex{-1.0, 1.0});
  CHECK(Wavenumber::principal({1.0, 1.0}).k == Complex{1.0, 1.0});

  // kappa = 2iak maps positive real k to the positive imaginary axis, and
  // E = -kappa^2/(4a^2) recovers k^2
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double a = u(rng), k = u(rng);
    const Complex kappa = 2.0 * kImagUnit * a * k;
    CHECK(kappa.real() == 0.0);
    CHECK(kappa.imag() > 0.0);
    const Complex e = -kappa * kappa / (4.0 * a * a);
    CHECK(std::abs(e - k * k) <= 1e-14 * std::abs(e));
    const auto wn = Wavenumber::from_kappa(kappa, a);
    CHECK(std::abs(wn.k - k) <= 1e-14 * (1.0 + k));
    CHECK(std::abs(wn.energy() - e) <= 1e-13 * (1.0 + std::abs(e)));
  }
}
