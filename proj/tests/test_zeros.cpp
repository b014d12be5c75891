#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "deltaspec/detail/contour.hpp"
#include "deltaspec/singularities.hpp"
#include "deltaspec/zeros.hpp"

using namespace deltaspec;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::mt19937& rng() {
  static std::mt19937 gen(777);
  return gen;
}

double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

ScaledCoupling random_zf(double zmax) {
  return {{uniform(-zmax, zmax), uniform(-zmax, zmax)},
          {uniform(-zmax, zmax), uniform(-zmax, zmax) + 0.05}};
}

int multiplicity_sum_in(const LocateResult& loc, const ContourSpec& spec) {
  int total = 0;
  for (const auto& z : loc.raw)
    if (spec.contains(z.kappa)) total += z.multiplicity;
  return total;
}

}  // namespace

TEST_CASE("F basics") {
  for (int i = 0; i < 100; ++i) {
    const auto zf = random_zf(8.0);
    CHECK(std::abs(eval_F(zf, {0, 0}, 0)) == 0.0);  // F(0) = 0 identically
  }
  // third-order couplings: F(0) = F'(0) = F''(0) = 0, F'''(0) = -4
  const ScaledCoupling th{{-0.5, 0.5}, {-0.5, -0.5}};
  CHECK(std::abs(eval_F(th, {0, 0}, 0)) < 1e-15);
  CHECK(std::abs(eval_F(th, {0, 0}, 1)) < 1e-15);
  CHECK(std::abs(eval_F(th, {0, 0}, 2)) < 1e-15);
  CHECK(std::abs(eval_F(th, {0, 0}, 3)) == doctest::Approx(4.0));
  CHECK(origin_multiplicity(th) == 3);
  CHECK(origin_multiplicity(ScaledCoupling{{1, 0}, {1, 0}}) == 1);
}

TEST_CASE("F derivatives match finite differences") {
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const auto zf = random_zf(5.0);
    const Complex x{uniform(-3, 3), uniform(-3, 3)};
    for (int order = 0; order < 3; ++order) {
      const Complex fd =
          (eval_F(zf, x + h, order) - eval_F(zf, x - h, order)) / (2.0 * h);
      const Complex an = eval_F(zf, x, order + 1);
      CHECK(std::abs(fd - an) < 1e-8 * (1.0 + std::abs(an)));
    }
  }
}

TEST_CASE("winding oracle: single zero of w - w0 inside a circle") {
  using detail::Segment;
  const Complex w0{0.4, -0.2};
  auto f = [&](Complex w) { return w - w0; };
  auto df = [&](Complex) { return Complex{1, 0}; };
  const std::vector<Segment> circle = {Segment::arc({0, 0}, 1.0, 0.0, 2.0 * kPi)};
  const auto est = detail::winding_estimate(f, df, circle);
  CHECK(std::lround(est.raw) == 1);
  CHECK(std::abs(est.raw - 1.0) < 1e-6);

  // and zero outside
  auto f2 = [&](Complex w) { return w - Complex{2.5, 0.1}; };
  CHECK(std::lround(detail::winding_estimate(f2, df, circle).raw) == 0);

  // polynomial with a double zero inside and a simple zero outside
  auto f3 = [&](Complex w) { return (w - w0) * (w - w0) * (w - 3.0); };
  auto df3 = [&](Complex w) {
    return 2.0 * (w - w0) * (w - 3.0) + (w - w0) * (w - w0);
  };
  CHECK(std::lround(detail::winding_estimate(f3, df3, circle).raw) == 2);
}

TEST_CASE("winding_count over the contour shapes") {
  // real positive couplings: no zeros anywhere off the origin
  const ScaledCoupling one{{1, 0}, {1, 0}};
  CHECK(winding_count(one, ContourSpec::sector(2.02, kPi - 1e-3)) == 0);
  CHECK(winding_count(one, ContourSpec::rect_upper(2.02)) == 0);
  CHECK(winding_count(one, ContourSpec::rect_lower(2.02)) == 0);

  // single delta zf_+ = 2i: F = kappa (kappa - 2i); c_+ rectangle sees the
  // imaginary-axis zero, c_- sees nothing, the sector excludes the axis
  const ScaledCoupling sd{{0, 0}, {0, 2}};
  CHECK(winding_count(sd, ContourSpec::rect_upper(4.0)) == 1);
  CHECK(winding_count(sd, ContourSpec::rect_lower(4.0)) == 0);
  CHECK(winding_count(sd, ContourSpec::sector(4.04, kPi - 1e-3)) == 0);
}

TEST_CASE("zero on the contour is detected") {
  const ScaledCoupling sd{{0, 0}, {0, 2}};  // zero at exactly 2i
  CHECK_THROWS_AS(winding_count(sd, ContourSpec::rect_upper(2.0)),
                  contour_degenerate_error);
}

TEST_CASE("N(rho, theta) for the Fig. 6 PT couplings takes values 0, 1, 2") {
  const ScaledCoupling zf{{-8, 3}, {-8, -3}};
  const double sigma = 2.0 * std::abs(zf.zf_minus);
  bool saw[3] = {false, false, false};
  for (int i = 1; i <= 6; ++i)
    for (int j = 1; j <= 6; ++j) {
      const double rho = sigma * i / 6.0;
      const double theta = (kPi - 0.02) * j / 6.0 + 0.01;
      const int n = winding_count(zf, ContourSpec::sector(rho, theta));
      REQUIRE(n >= 0);
      REQUIRE(n <= 2);
      saw[n] = true;
    }
  CHECK(saw[0]);
  CHECK(saw[2]);
}

TEST_CASE("locate_zeros: positive real couplings give nothing") {
  const auto loc = locate_zeros(ScaledCoupling{{1, 0}, {1, 0}}, 1.0);
  CHECK(loc.records.empty());
  CHECK(loc.raw.empty());
}

TEST_CASE("locate_zeros: Fig. 6 PT pair is conjugate-symmetric") {
  const auto loc = locate_zeros(ScaledCoupling{{-8, 3}, {-8, -3}}, 1.0);
  REQUIRE(loc.records.size() == 2);
  CHECK(loc.records[0].kind == ZeroKind::bound_state);
  CHECK(std::abs(loc.records[0].kappa - std::conj(loc.records[1].kappa)) < 1e-9);
  for (const auto& r : loc.records) {
    CHECK(std::abs(eval_F({{-8, 3}, {-8, -3}}, r.kappa, 0)) < 1e-9);
    // E = -kappa^2/(4a^2) and k = kappa/(2ia), Im k > 0
    CHECK(r.k.imag() > 0.0);
    CHECK(std::abs(r.energy + r.kappa * r.kappa / 4.0) < 1e-12);
  }
}

TEST_CASE("locate_zeros: the non-PT fig6 couplings break the symmetry") {
  const ScaledCoupling zf{{-8, 3}, {-4, -2}};
  const auto loc = locate_zeros(zf, 1.0);
  REQUIRE(loc.records.size() == 2);
  // one zero rides near each coupling; they are not conjugates of each other
  CHECK(std::abs(loc.records[0].kappa - std::conj(loc.records[1].kappa)) > 1.0);
  for (const auto& r : loc.records) CHECK(r.kind == ZeroKind::bound_state);
}

TEST_CASE("sector angular offset is an independent parameter") {
  // zeros far from the sector edges: shifting the opening start from the
  // symmetric default to the imaginary axis must not change the count
  const ScaledCoupling zf{{-8, 3}, {-8, -3}};
  const double rho = 2.0 * std::abs(zf.zf_minus) * 1.01;
  const int symmetric = winding_count(zf, ContourSpec::sector(rho, kPi - 1e-3));
  const int at_axis = winding_count(zf, ContourSpec::sector(rho, kPi - 1e-3, 1e-3, 0.0));
  CHECK(symmetric == 2);
  CHECK(at_axis == 2);
}

TEST_CASE("locate_zeros count matches winding_count (argument principle)") {
  for (int i = 0; i < 25; ++i) {
    const auto zf = random_zf(5.0);
    const auto loc = locate_zeros(zf, 1.0);
    CHECK(loc.warnings.empty());
    CHECK(loc.unrefined.empty());
    const auto spec = ContourSpec::sector(loc.sigma * 1.01, kPi - 1e-3);
    CHECK(multiplicity_sum_in(loc, spec) == winding_count(zf, spec));
  }
}

TEST_CASE("PT couplings: zeros pair under conjugation, even sector count") {
  for (int i = 0; i < 10; ++i) {
    const Complex z{uniform(-6, 6), uniform(0.1, 6)};
    const ScaledCoupling zf{z, std::conj(z)};
    const auto loc = locate_zeros(zf, 1.0);
    bool real_axis_zero = false;
    for (const auto& r : loc.raw)
      if (std::abs(r.kappa.imag()) < 1e-9) real_axis_zero = true;
    for (const auto& r : loc.raw) {
      if (std::abs(r.kappa.imag()) < 1e-9 || r.kappa.real() > -1e-8) continue;
      bool paired = false;
      for (const auto& s : loc.raw)
        if (std::abs(s.kappa - std::conj(r.kappa)) < 1e-9 * (1.0 + std::abs(r.kappa)))
          paired = true;
      CHECK(paired);
    }
    if (!real_axis_zero) {
      const int n = winding_count(zf, ContourSpec::sector(loc.sigma * 1.01, kPi - 1e-3));
      CHECK(n % 2 == 0);
    }
  }
}

TEST_CASE("spectral singularities found by locate_zeros match the cubic path") {
  // PT-imaginary singularity: zf = +-(i sigma_0) at a = 1
  const double sigma0 = kPi / (2.0 * std::sqrt(2.0));
  const ScaledCoupling zf{{0, -sigma0}, {0, sigma0}};
  const auto loc = locate_zeros(zf, 1.0);
  REQUIRE(loc.records.size() >= 1);
  const auto& ss = loc.records.front();
  CHECK(ss.kind == ZeroKind::spectral_singularity);
  CHECK(ss.kappa.imag() > 0.0);  // normalized representative
  const auto scan = find_singularities(CouplingConfig({0, -sigma0}, {0, sigma0}, 1.0));
  REQUIRE(scan.found.size() == 1);
  CHECK(std::abs(ss.k.real() - scan.found[0].k_star) < 1e-6);
  // one record even though both +-kappa are zeros of F
  int n_ss = 0;
  for (const auto& r : loc.records)
    if (r.kind == ZeroKind::spectral_singularity) ++n_ss;
  CHECK(n_ss == 1);
}

TEST_CASE("region bound") {
  // real positive couplings: R cannot contain any left-half-plane point
  const auto r1 = region_bound(ScaledCoupling{{1, 0}, {1, 0}});
  CHECK(r1.sigma == 2.0);
  for (double x : {-1.0, -0.1, -1e-6})
    for (double y : {-1.5, 0.0, 1.5}) CHECK(!r1.contains({x, y}));

  // zf_+ = 2i: D_+ is the disc around 2i of radius 2
  const auto r2 = region_bound(ScaledCoupling{{0, 0}, {0, 2}});
  CHECK(r2.contains({0, 2}));
  CHECK(r2.contains({-1.0, 2.0}));
  CHECK(!r2.contains({-1.0, -2.0}));
  CHECK(!r2.contains({0, 0}));  // ell excludes the origin

  // every located zero lies in R
  for (int i = 0; i < 40; ++i) {
    const auto zf = random_zf(5.0);
    const auto region = region_bound(zf);
    for (const auto& z : locate_zeros(zf, 1.0).raw) {
      if (z.kappa.real() > 1e-8) continue;
      CHECK(region.contains(z.kappa));
      // modulus bound |K - zf_-||K - zf_+| <= |zf_- zf_+| at zeros
      CHECK(std::abs(z.kappa - zf.zf_minus) * std::abs(z.kappa - zf.zf_plus) <=
            std::abs(zf.zf_minus * zf.zf_plus) + 1e-9);
    }
  }
}

TEST_CASE("multiplicity analysis") {
  // |zf_- zf_+| <= 1 forbids second-order spectral zeros
  const auto r1 = multiplicity_analysis(ScaledCoupling{{0.5, 0.3}, {0.8, -0.2}});
  CHECK(r1.product_le_one);
  CHECK(r1.exclusion_inequality);
  CHECK(!r1.third_order);

  // the third-order couplings
  const auto r2 = multiplicity_analysis(ScaledCoupling{{-0.5, 0.5}, {-0.5, -0.5}});
  CHECK(r2.third_order);

  // |F'(kappa_2)| equals the reported second-order condition residual
  for (int i = 0; i < 60; ++i) {
    const auto zf = random_zf(3.0);
    const auto rep = multiplicity_analysis(zf);
    for (int s = 0; s < 2; ++s) {
      const double direct = std::abs(eval_F(zf, rep.kappa2[s], 1));
      CHECK(direct == doctest::Approx(rep.condition_residual[s]).epsilon(1e-9));
    }
  }
}

TEST_CASE("real bound states: exclusions") {
  // PT with Re zf_+ >= 0
  CHECK(real_bound_states(ScaledCoupling{{2, -1}, {2, 1}}).empty());
  CHECK(real_bound_states(ScaledCoupling{{0.3, -2}, {0.3, 2}}).empty());
  // anti-PT (zf_- = -zf_+^*)
  CHECK(real_bound_states(ScaledCoupling{{-1.5, 2}, {1.5, 2}}).empty());
  // both imaginary, not PT
  CHECK(real_bound_states(ScaledCoupling{{0, 1.0}, {0, 2.5}}).empty());
  // single delta excluded
  CHECK_THROWS_AS(real_bound_states(ScaledCoupling{{0, 0}, {0, 2}}),
                  unsupported_configuration_error);
}

TEST_CASE("real bound states: attractive real and PT couplings") {
  // real double well zf = -4: the symmetric/antisymmetric pair, both with
  // kappa real negative (F changes sign near -4 and again nearer the origin)
  const ScaledCoupling well{{-4, 0}, {-4, 0}};
  const auto wide = real_bound_states(well);
  REQUIRE(wide.size() == 2);

  // a PT coupling inside the admitting disc (r + 1/2)^2 + s^2 < 1/4, where
  // F'(0) > 0 pushes F negative just left of the origin
  const ScaledCoupling zf{{-0.45, -0.15}, {-0.45, 0.15}};
  const auto rbs = real_bound_states(zf);
  REQUIRE(!rbs.empty());

  for (const auto* set : {&wide, &rbs})
    for (const auto& r : *set) {
      CHECK(r.kappa.real() < 0.0);
      CHECK(r.kappa.imag() == 0.0);
      const ScaledCoupling& src = (set == &wide) ? well : zf;
      CHECK(std::abs(eval_F(src, r.kappa, 0)) < 1e-9 * f_scale(src, r.kappa));
      CHECK(r.energy.real() < 0.0);
      CHECK(std::abs(r.energy.imag()) < 1e-15);
    }

  // PT with Re zf_+ < 0 but outside the admitting region: genuinely empty
  CHECK(real_bound_states(ScaledCoupling{{-3, -1}, {-3, 1}}).empty());

  // cross-check against the subdivision locator's real-axis zeros
  for (const auto* src : {&well, &zf}) {
    const auto loc = locate_zeros(*src, 1.0);
    int real_axis = 0;
    for (const auto& z : loc.records)
      if (z.kind == ZeroKind::real_bound_state) ++real_axis;
    const auto direct = real_bound_states(*src);
    CHECK(real_axis == static_cast<int>(direct.size()));
  }
}

TEST_CASE("real bound states: generic candidate accepted only on the curve") {
  // off-curve couplings with Im(zf_- zf_+) != 0: candidate fails F = 0
  int accepted = 0;
  for (int i = 0; i < 50; ++i) {
    const auto zf = random_zf(4.0);
    if (std::abs((zf.zf_minus * zf.zf_plus).imag()) < 1e-6) continue;
    accepted += static_cast<int>(real_bound_states(zf).size());
  }
  CHECK(accepted == 0);

  // on-curve point from the continuation tracer is accepted
  const double nu = kPi / 20.0;
  const auto pts = real_bound_state_curve(nu);
  REQUIRE(!pts.empty());
  const auto& p = pts[pts.size() / 3];
  const ScaledCoupling zf{p.z * std::polar(1.0, -0.5 * nu), p.z * std::polar(1.0, 0.5 * nu)};
  const auto rbs = real_bound_states(zf, 1.0, 1e-6);
  REQUIRE(rbs.size() == 1);
  CHECK(rbs[0].kappa.real() == doctest::Approx(p.kappa).epsilon(1e-9));
  CHECK(std::abs(eval_F(zf, rbs[0].kappa, 0)) < 1e-9);
}

TEST_CASE("real_bound_state_curve residuals stay at solver precision") {
  for (int n : {1, 4, 10}) {
    const auto pts = real_bound_state_curve(kPi * (2 * n - 1) / 20.0);
    REQUIRE(!pts.empty());
    for (const auto& p : pts) {
      CHECK(p.residual < 1e-10);
      CHECK(p.kappa < 0.0);
    }
  }
}

TEST_CASE("sector membership matches the contour geometry") {
  const auto spec = ContourSpec::sector(2.0, kPi - 0.2, 1e-3);
  CHECK(spec.contains({-1.0, 0.0}));
  CHECK(spec.contains({-1.0, 0.9}));
  CHECK(!spec.contains({1.0, 0.0}));
  CHECK(!spec.contains({0.0, 1.0}));   // imaginary axis is outside the opening
  CHECK(!spec.contains({0.0, 0.0}));   // inner cut
  CHECK(!spec.contains({-2.5, 0.0}));  // beyond rho
}
