#include "deltaspec/scan.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include "deltaspec/overlap.hpp"
#include "deltaspec/quasi.hpp"
#include "deltaspec/singularities.hpp"
#include "deltaspec/transfer.hpp"
#include "deltaspec/zeros.hpp"

namespace deltaspec {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "";
  if (std::holds_alternative<double>(c)) return fmt(std::get<double>(c));
  if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
  return std::get<std::string>(c);
}

const char* family_name(FamilyTag t) {
  switch (t) {
    case FamilyTag::pt: return "pt";
    case FamilyTag::anti_pt: return "anti-pt";
    case FamilyTag::imaginary: return "imaginary";
    case FamilyTag::opposite: return "opposite";
    case FamilyTag::shifted: return "shifted";
    default: return "generic";
  }
}

const char* kind_name(ZeroKind k) {
  switch (k) {
    case ZeroKind::spectral_singularity: return "spectral-singularity";
    case ZeroKind::real_bound_state: return "real-bound-state";
    default: return "bound-state";
  }
}

CouplingConfig plane_config(PlaneKind plane, double x, double y, double a) {
  switch (plane) {
    case PlaneKind::pt: {
      const Complex z{x, y};
      return CouplingConfig(std::conj(z), z, a);
    }
    case PlaneKind::anti_pt: {
      const Complex z{x, y};
      return CouplingConfig(-std::conj(z), z, a);
    }
    case PlaneKind::imaginary:
      return CouplingConfig(Complex{0.0, x / a}, Complex{0.0, y / a}, a);
    case PlaneKind::opposite: {
      const Complex z{x, y};
      return CouplingConfig(-z, z, a);
    }
    case PlaneKind::shifted:
      return CouplingConfig(Complex{1.0 / a, x / a}, Complex{1.0 / a, y / a}, a);
    default:
      throw usage_error("plane 'raw' has no grid mapping");
  }
}

void check_grid(const ScanRequest& req) {
  for (const GridAxis* g : {&req.gx, &req.gy}) {
    if (g->n < 2) throw usage_error("grid resolution must be >= 2");
    if (!std::isfinite(g->lo) || !std::isfinite(g->hi) || !(g->hi > g->lo))
      throw usage_error("grid range must be finite and increasing");
  }
}

double axis_value(const GridAxis& g, int i) { return g.lo + (g.hi - g.lo) * i / (g.n - 1); }

// N_tot with automatic epsilon/rho perturbation when a zero of F falls on
// the contour.
int sector_count_retry(const ScaledCoupling& zf, double rho, double theta, double eps) {
  const double tweaks[][2] = {{1.0, 1.0}, {1.0003, 1.0}, {0.9996, 1.7}, {1.0007, 0.6}, {0.9991, 2.3}};
  for (const auto& t : tweaks) {
    try {
      return winding_count(zf, ContourSpec::sector(rho * t[0], theta, eps * t[1]));
    } catch (const contour_degenerate_error&) {
      continue;
    }
  }
  throw contour_degenerate_error("sector count: all contour perturbations degenerate");
}

int rect_count_retry(const ScaledCoupling& zf, bool upper, double rho, double eps) {
  const double tweaks[][2] = {{1.0, 1.0}, {1.0003, 1.0}, {0.9996, 1.7}, {1.0007, 0.6}, {0.9991, 2.3}};
  for (const auto& t : tweaks) {
    try {
      auto spec = upper ? ContourSpec::rect_upper(rho * t[0], eps * t[1])
                        : ContourSpec::rect_lower(rho * t[0], eps * t[1]);
      return winding_count(zf, spec);
    } catch (const contour_degenerate_error&) {
      continue;
    }
  }
  throw contour_degenerate_error("rectangle count: all contour perturbations degenerate");
}

template <typename Fn>
void for_each_index(int n, int threads, Fn&& fn) {
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int nw = std::min(threads, n);
  pool.reserve(nw);
  for (int w = 0; w < nw; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

nlohmann::json base_metadata(const ScanRequest& req) {
  nlohmann::json m;
  m["tool"] = "delta-spectra";
  m["version"] = kVersion;
  m["request"] = request_to_json(req);
  m["tolerances"] = {{"tol", req.tol}, {"eps", req.eps}};
  return m;
}

// ---------------------------------------------------------------------------
// modes
// ---------------------------------------------------------------------------

void singularity_rows(const CouplingConfig& cc, double tol, std::vector<Cell> prefix,
                      std::vector<std::vector<Cell>>& rows) {
  const auto scan = find_singularities(cc, tol);
  for (const auto& rec : scan.found) {
    auto row = prefix;
    row.emplace_back(rec.k_star);
    row.emplace_back(rec.energy);
    row.emplace_back(rec.residual_f);
    row.emplace_back(std::string(family_name(rec.family)));
    rows.push_back(std::move(row));
  }
}

ScanResult run_singularities(const ScanRequest& req) {
  ScanResult res;
  res.metadata = base_metadata(req);
  if (req.plane == PlaneKind::raw) {
    if (req.has_grid) throw usage_error("mode=singularities with a grid needs --plane");
    res.columns = {"k", "energy", "residual_f", "family"};
    const CouplingConfig cc(req.z_minus, req.z_plus, req.a);
    singularity_rows(cc, req.tol, {}, res.rows);
    return res;
  }
  check_grid(req);
  // one row per grid cell; the cubic admits at most three singularities, so
  // the schema is fixed. best_residual is min over the tested +-kappa
  // candidates of |f| (a distance-from-singular diagnostic for empty cells).
  res.columns = {"x", "y", "n_sing", "best_residual"};
  for (int s = 1; s <= 3; ++s) {
    const std::string i = std::to_string(s);
    res.columns.push_back("k_" + i);
    res.columns.push_back("energy_" + i);
    res.columns.push_back("residual_" + i);
  }
  const int n = req.gx.n * req.gy.n;
  std::vector<std::vector<Cell>> rows(n);
  for_each_index(n, req.threads, [&](int idx) {
    const double x = axis_value(req.gx, idx / req.gy.n);
    const double y = axis_value(req.gy, idx % req.gy.n);
    std::vector<Cell> row{Cell{x}, Cell{y}};
    try {
      const CouplingConfig cc = plane_config(req.plane, x, y, req.a);
      const auto scan = find_singularities(cc, req.tol);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& rec : scan.found) best = std::min(best, rec.residual_f);
      for (const auto& rej : scan.rejected)
        best = std::min(best, std::min(rej.residual_plus, rej.residual_minus));
      row.emplace_back(std::int64_t(scan.found.size()));
      if (std::isfinite(best))
        row.emplace_back(best);
      else
        row.emplace_back(std::monostate{});
      for (size_t s = 0; s < 3; ++s) {
        if (s < scan.found.size()) {
          row.emplace_back(scan.found[s].k_star);
          row.emplace_back(scan.found[s].energy);
          row.emplace_back(scan.found[s].residual_f);
        } else {
          row.emplace_back(std::monostate{});
          row.emplace_back(std::monostate{});
          row.emplace_back(std::monostate{});
        }
      }
    } catch (const invalid_input_error&) {
      // cells mapping to excluded couplings (for example z = 0)
      row.emplace_back(std::int64_t(0));
      for (int s = 0; s < 10; ++s) row.emplace_back(std::monostate{});
    }
    rows[idx] = std::move(row);
  });
  res.rows = std::move(rows);
  return res;
}

ScanResult run_bound_states(const ScanRequest& req) {
  if (req.has_grid) throw usage_error("mode=bound-states supports point queries only");
  ScanResult res;
  res.metadata = base_metadata(req);
  res.columns = {"kappa_re", "kappa_im", "k_re", "k_im", "energy_re", "energy_im",
                 "multiplicity", "kind", "residual_F"};
  const CouplingConfig cc(req.z_minus, req.z_plus, req.a);
  const auto loc = locate_zeros(scale(cc), cc.a);
  res.metadata["sigma"] = loc.sigma;
  if (!loc.warnings.empty()) res.metadata["warnings"] = loc.warnings;
  for (const auto& r : loc.records) {
    res.rows.push_back({Cell{r.kappa.real()}, Cell{r.kappa.imag()}, Cell{r.k.real()},
                        Cell{r.k.imag()}, Cell{r.energy.real()}, Cell{r.energy.imag()},
                        Cell{std::int64_t(r.multiplicity)}, Cell{std::string(kind_name(r.kind))},
                        Cell{r.residual}});
  }
  return res;
}

ScanResult run_count(const ScanRequest& req) {
  ScanResult res;
  res.metadata = base_metadata(req);
  if (req.plane == PlaneKind::raw) {
    if (req.has_grid) throw usage_error("mode=count with a grid needs --plane");
    const CouplingConfig cc(req.z_minus, req.z_plus, req.a);
    const ScaledCoupling zf = scale(cc);
    const double sigma = 2.0 * std::max(std::abs(zf.zf_minus), std::abs(zf.zf_plus));
    const double rho = req.rho > 0.0 ? req.rho : sigma * 1.01;
    const double theta = req.theta > 0.0 ? req.theta : kPi - 2.0 * req.eps;
    const int nm = rect_count_retry(zf, false, rho, req.eps);
    const int np = rect_count_retry(zf, true, rho, req.eps);
    const int nb = sector_count_retry(zf, rho, theta, req.eps);
    res.columns = {"sigma", "rho", "theta", "n_minus", "n_plus", "n_ss", "n_bs"};
    res.rows.push_back({Cell{sigma}, Cell{rho}, Cell{theta}, Cell{std::int64_t(nm)},
                        Cell{std::int64_t(np)}, Cell{std::int64_t(nm + np)},
                        Cell{std::int64_t(nb)}});
    return res;
  }
  check_grid(req);
  res.columns = {"x", "y", "n_tot"};
  const int n = req.gx.n * req.gy.n;
  std::vector<std::vector<Cell>> rows(n);
  for_each_index(n, req.threads, [&](int idx) {
    const double x = axis_value(req.gx, idx / req.gy.n);
    const double y = axis_value(req.gy, idx % req.gy.n);
    const CouplingConfig cc = plane_config(req.plane, x, y, req.a);
    const ScaledCoupling zf = scale(cc);
    const double sigma = 2.0 * std::max(std::abs(zf.zf_minus), std::abs(zf.zf_plus));
    const double rho = req.rho > 0.0 ? req.rho : sigma * 1.01;
    const double theta = req.theta > 0.0 ? req.theta : kPi - 2.0 * req.eps;
    const int nb = sector_count_retry(zf, rho, theta, req.eps);
    rows[idx] = {Cell{x}, Cell{y}, Cell{std::int64_t(nb)}};
  });
  res.rows = std::move(rows);
  return res;
}

ScanResult run_quasi_bound(const ScanRequest& req) {
  if (req.has_grid) throw usage_error("mode=quasi-bound supports point queries only");
  const double rm = (req.a * req.z_minus).real(), rp = (req.a * req.z_plus).real();
  if (!(rm > 0.0) || !(rp > 0.0))
    throw usage_error("mode=quasi-bound needs Re(a z_pm) > 0");
  ScanResult res;
  res.metadata = base_metadata(req);
  const auto qb = compute_bound(rm, rp);
  res.metadata["m_r"] = qb.m_r;
  res.metadata["b_r"] = qb.b_r;
  res.columns = {"r_minus", "r_plus", "m_r", "b_r", "t", "kappa_re", "kappa_im", "abs_G"};
  for (const auto& m : qb.minima)
    res.rows.push_back({Cell{rm}, Cell{rp}, Cell{qb.m_r}, Cell{qb.b_r}, Cell{m.t},
                        Cell{m.kappa.real()}, Cell{m.kappa.imag()}, Cell{m.value}});
  return res;
}

// ---------------------------------------------------------------------------
// figures
// ---------------------------------------------------------------------------

ScanResult figure_curve(const ScanRequest& req, bool opposite_plane) {
  ScanResult res;
  res.metadata = base_metadata(req);
  res.columns = {"t", "r", "s"};
  const int n = req.curve_points > 0 ? req.curve_points : 1600;
  const auto curve = opposite_plane ? family_opposite(0.05, 4.0 * kPi - 0.05, n)
                                    : pt_curve(0.05, 4.0 * kPi - 0.05, n);
  for (const auto& sm : curve.samples) res.rows.push_back({Cell{sm.t}, Cell{sm.r}, Cell{sm.s}});
  res.metadata["skipped_t"] = curve.skipped_t.size();
  return res;
}

ScanResult figure_fig2(const ScanRequest& req) {
  ScanResult res;
  res.metadata = base_metadata(req);
  res.columns = {"branch", "n", "y_minus", "y_plus", "k", "residual_f"};
  const double a = req.a;
  const double y_range = 8.0;
  const int n_samples = req.curve_points > 0 ? req.curve_points : 321;

  // branch A: lines y_+ + y_- = n pi
  for (int n = -4; n <= 4; ++n) {
    if (n == 0) continue;
    for (int i = 0; i < n_samples; ++i) {
      const double ym = -y_range + 2.0 * y_range * i / (n_samples - 1);
      const double yp = n * kPi - ym;
      if (std::abs(yp) > y_range || std::abs(ym) < 1e-6 || std::abs(yp) < 1e-6) continue;
      const CouplingConfig cc(Complex{0, ym / a}, Complex{0, yp / a}, a);
      const double k = (ym + yp) / (2.0 * a);
      const double r = std::min(std::abs(f_factor(cc, Complex{k, 0})),
                                std::abs(f_factor(cc, Complex{-k, 0})));
      res.rows.push_back({Cell{std::string("A")}, Cell{std::int64_t(n)}, Cell{ym}, Cell{yp},
                          Cell{k}, Cell{r}});
    }
  }
  // branch B: y_+ = a k_n (y_- - 2 a k_n)/(y_- - a k_n), k_n = (2n+1) pi/(4a)
  for (int n = 0; n <= 4; ++n) {
    const double kn = (2.0 * n + 1.0) * kPi / (4.0 * a);
    for (int i = 0; i < n_samples; ++i) {
      const double ym = -y_range + 2.0 * y_range * i / (n_samples - 1);
      if (std::abs(ym - a * kn) < 1e-3 || std::abs(ym) < 1e-6) continue;
      const double yp = a * kn * (ym - 2.0 * a * kn) / (ym - a * kn);
      if (std::abs(yp) > 1.5 * y_range || std::abs(yp) < 1e-6) continue;
      const CouplingConfig cc(Complex{0, ym / a}, Complex{0, yp / a}, a);
      const double r = std::min(std::abs(f_factor(cc, Complex{kn, 0})),
                                std::abs(f_factor(cc, Complex{-kn, 0})));
      res.rows.push_back({Cell{std::string("B")}, Cell{std::int64_t(n)}, Cell{ym}, Cell{yp},
                          Cell{kn}, Cell{r}});
    }
  }
  return res;
}

ScanResult figure_fig4(const ScanRequest& req) {
  ScanResult res;
  res.metadata = base_metadata(req);
  res.columns = {"case", "n", "s", "s_minus", "s_plus", "k", "residual_f"};
  const double a = req.a;
  const double s_range = 20.0;
  const int n_samples = req.curve_points > 0 ? req.curve_points : 2001;

  auto push = [&](const char* cs, int n, double s, double sm, double sp, double k) {
    const CouplingConfig cc(Complex{1.0 / a, sm / a}, Complex{1.0 / a, sp / a}, a);
    const double r = std::min(std::abs(f_factor(cc, Complex{k, 0})),
                              std::abs(f_factor(cc, Complex{-k, 0})));
    res.rows.push_back({Cell{std::string(cs)}, Cell{std::int64_t(n)}, Cell{s}, Cell{sm},
                        Cell{sp}, Cell{k}, Cell{r}});
  };

  for (int i = 0; i < n_samples; ++i) {
    const double s = -s_range + 2.0 * s_range * i / (n_samples - 1);
    if (std::abs(s) < 1e-5) continue;
    // case 4.a: k = s/a, t = s cot(2s) + 1, s_pm = s -+ sqrt(s^2 + 1 - 2t)
    if (std::abs(std::sin(2.0 * s)) > 1e-9) {
      const double t = s / std::tan(2.0 * s) + 1.0;
      const double rad = s * s + 1.0 - 2.0 * t;
      if (rad >= 0.0) {
        const double d = std::sqrt(rad);
        push("a", 0, s, s - d, s + d, s / a);
        if (d > 0.0) push("a", 0, s, s + d, s - d, s / a);
      }
    }
  }
  const auto kns = tan_equation_roots(a, (2.0 * 12 + 1.0) * kPi / (4.0 * a));
  for (size_t n = 0; n < kns.size(); ++n) {
    const double kn = kns[n];
    for (int i = 0; i < n_samples; ++i) {
      const double s = -s_range + 2.0 * s_range * i / (n_samples - 1);
      const double t = a * s * kn - a * a * kn * kn;
      const double rad = s * s + 1.0 - 2.0 * t;
      if (rad < 0.0) continue;
      const double d = std::sqrt(rad);
      if (std::max(std::abs(s - d), std::abs(s + d)) > 1.5 * s_range) continue;
      push("b", static_cast<int>(n + 1), s, s - d, s + d, kn);
      if (d > 0.0) push("b", static_cast<int>(n + 1), s, s + d, s - d, kn);
    }
  }
  return res;
}

struct CouplingSet {
  Complex zm, zp;
};

ScanResult figure_fig6(const ScanRequest& req) {
  ScanResult res;
  res.metadata = base_metadata(req);
  res.columns = {"set", "rho", "theta", "N"};
  const CouplingSet sets[2] = {{{-8, 3}, {-8, -3}}, {{-8, 3}, {-4, -2}}};
  const int n = req.curve_points > 0 ? req.curve_points : 61;
  for (int si = 0; si < 2; ++si) {
    const ScaledCoupling zf{sets[si].zm, sets[si].zp};
    const double sigma = 2.0 * std::max(std::abs(zf.zf_minus), std::abs(zf.zf_plus));
    std::vector<std::vector<Cell>> rows(n * n);
    for_each_index(n * n, req.threads, [&](int idx) {
      const int i = idx / n, j = idx % n;
      const double rho = 0.2 + (sigma - 0.2) * i / (n - 1);
      const double theta = 0.02 + (kPi - 0.04) * j / (n - 1);
      const int count = sector_count_retry(zf, rho, theta, req.eps);
      rows[idx] = {Cell{std::int64_t(si + 1)}, Cell{rho}, Cell{theta},
                   Cell{std::int64_t(count)}};
    });
    for (auto& row : rows) res.rows.push_back(std::move(row));
  }
  return res;
}

ScanResult figure_fig6_zeros(const ScanRequest& req) {
  ScanResult res;
  res.metadata = base_metadata(req);
  res.columns = {"set", "kappa_re", "kappa_im", "multiplicity", "kind", "residual_F"};
  const CouplingSet sets[2] = {{{-8, 3}, {-8, -3}}, {{-8, 3}, {-4, -2}}};
  for (int si = 0; si < 2; ++si) {
    const auto loc = locate_zeros(ScaledCoupling{sets[si].zm, sets[si].zp}, req.a);
    for (const auto& r : loc.records)
      res.rows.push_back({Cell{std::int64_t(si + 1)}, Cell{r.kappa.real()},
                          Cell{r.kappa.imag()}, Cell{std::int64_t(r.multiplicity)},
                          Cell{std::string(kind_name(r.kind))}, Cell{r.residual}});
  }
  return res;
}

ScanResult figure_fig7(const ScanRequest& req) {
  ScanResult res;
  res.metadata = base_metadata(req);
  res.columns = {"set", "kind", "x", "N"};
  const CouplingSet sets[2] = {{{-1, 8}, {-1, -8}}, {{-2, 7}, {-4, -5}}};
  const int n = req.curve_points > 0 ? req.curve_points : 400;
  for (int si = 0; si < 2; ++si) {
    const ScaledCoupling zf{sets[si].zm, sets[si].zp};
    const double sigma = 2.0 * std::max(std::abs(zf.zf_minus), std::abs(zf.zf_plus));
    for (int i = 0; i < n; ++i) {
      const double rho = 0.2 + (sigma * 1.01 - 0.2) * i / (n - 1);
      const int c = sector_count_retry(zf, rho, kPi - 0.01, req.eps);
      res.rows.push_back({Cell{std::int64_t(si + 1)}, Cell{std::string("radial")}, Cell{rho},
                          Cell{std::int64_t(c)}});
    }
    for (int i = 0; i < n; ++i) {
      const double theta = 0.01 + (kPi - 0.02) * i / (n - 1);
      const int c = sector_count_retry(zf, sigma * 1.01, theta, req.eps);
      res.rows.push_back({Cell{std::int64_t(si + 1)}, Cell{std::string("angular")},
                          Cell{theta}, Cell{std::int64_t(c)}});
    }
  }
  return res;
}

ScanResult figure_fig8(const ScanRequest& req) {
  ScanRequest grid_req = req;
  grid_req.mode = ScanMode::count;
  grid_req.plane = PlaneKind::shifted;
  if (!grid_req.has_grid) {
    grid_req.gx = {-20.0, 20.0, 41};
    grid_req.gy = {-20.0, 20.0, 41};
    grid_req.has_grid = true;
  }
  if (!(req.eps < 1e-3)) grid_req.eps = 1e-6;
  ScanResult res = run_count(grid_req);
  res.metadata = base_metadata(req);
  res.metadata["plane"] = "shifted";
  res.columns = {"s_minus", "s_plus", "n_tot"};
  return res;
}

ScanResult figure_fig9(const ScanRequest& req) {
  ScanResult res;
  res.metadata = base_metadata(req);
  res.columns = {"n", "nu", "z_re", "z_im", "kappa", "residual_F"};
  for (int n = 1; n <= 10; ++n) {
    const double nu = kPi * (2.0 * n - 1.0) / 20.0;
    for (const auto& p : real_bound_state_curve(nu))
      res.rows.push_back({Cell{std::int64_t(n)}, Cell{nu}, Cell{p.z.real()}, Cell{p.z.imag()},
                          Cell{p.kappa}, Cell{p.residual}});
  }
  return res;
}

ScanResult figure_fig10(const ScanRequest& req) {
  ScanResult res;
  res.metadata = base_metadata(req);
  res.columns = {"t", "kappa_re", "kappa_im", "abs_G", "abs_L"};
  const double rm = (req.z_minus == Complex{0, 0}) ? 1.0 : (req.a * req.z_minus).real();
  const double rp = (req.z_plus == Complex{0, 0}) ? 1.0 : (req.a * req.z_plus).real();
  const auto disc = HalfDiscSpec::fig10(rm, rp);
  const int n = std::max(16, req.curve_points > 0 ? req.curve_points : 2048);
  const auto qb = compute_bound(rm, rp, n, &disc);
  res.metadata["m_r"] = qb.m_r;
  res.metadata["b_r"] = qb.b_r;
  res.metadata["t_min"] = qb.t_min;
  for (const auto& s : qb.samples)
    res.rows.push_back({Cell{s.t}, Cell{s.kappa.real()}, Cell{s.kappa.imag()}, Cell{s.abs_g},
                        Cell{s.abs_l}});
  return res;
}

ScanResult run_figure(const ScanRequest& req) {
  const std::string& f = req.figure;
  if (f == "fig1") return figure_curve(req, false);
  if (f == "fig2") return figure_fig2(req);
  if (f == "fig3") return figure_curve(req, true);
  if (f == "fig4") return figure_fig4(req);
  if (f == "fig6") return figure_fig6(req);
  if (f == "fig6-zeros") return figure_fig6_zeros(req);
  if (f == "fig7") return figure_fig7(req);
  if (f == "fig8") return figure_fig8(req);
  if (f == "fig9") return figure_fig9(req);
  if (f == "fig10") return figure_fig10(req);
  throw usage_error("unknown figure id: " + f);
}

}  // namespace

ScanResult run_scan(const ScanRequest& req) {
  switch (req.mode) {
    case ScanMode::singularities:
      return run_singularities(req);
    case ScanMode::bound_states:
      return run_bound_states(req);
    case ScanMode::count:
      return run_count(req);
    case ScanMode::quasi_bound:
      return run_quasi_bound(req);
    case ScanMode::figure:
      return run_figure(req);
  }
  throw usage_error("unknown mode");
}

void write_csv(const ScanResult& result, std::ostream& os) {
  for (size_t i = 0; i < result.columns.size(); ++i)
    os << result.columns[i] << (i + 1 < result.columns.size() ? "," : "");
  os << "\n";
  for (const auto& row : result.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      os << cell_text(row[i]) << (i + 1 < row.size() ? "," : "");
    os << "\n";
  }
}

void write_json(const ScanResult& result, std::ostream& os) {
  nlohmann::json j;
  j["metadata"] = result.metadata;
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& row : result.rows) {
    nlohmann::json jr;
    for (size_t i = 0; i < row.size(); ++i) {
      const auto& c = row[i];
      if (std::holds_alternative<std::monostate>(c))
        jr[result.columns[i]] = nullptr;
      else if (std::holds_alternative<double>(c))
        jr[result.columns[i]] = std::get<double>(c);
      else if (std::holds_alternative<std::int64_t>(c))
        jr[result.columns[i]] = std::get<std::int64_t>(c);
      else
        jr[result.columns[i]] = std::get<std::string>(c);
    }
    rows.push_back(std::move(jr));
  }
  os << j.dump(2) << "\n";
}

const char* to_string(ScanMode m) {
  switch (m) {
    case ScanMode::singularities: return "singularities";
    case ScanMode::bound_states: return "bound-states";
    case ScanMode::count: return "count";
    case ScanMode::quasi_bound: return "quasi-bound";
    case ScanMode::figure: return "figure";
  }
  return "?";
}

const char* to_string(PlaneKind p) {
  switch (p) {
    case PlaneKind::pt: return "pt";
    case PlaneKind::anti_pt: return "anti-pt";
    case PlaneKind::imaginary: return "imaginary";
    case PlaneKind::opposite: return "opposite";
    case PlaneKind::shifted: return "shifted";
    case PlaneKind::raw: return "raw";
  }
  return "?";
}

namespace {

ScanMode mode_from(const std::string& s) {
  for (ScanMode m : {ScanMode::singularities, ScanMode::bound_states, ScanMode::count,
                     ScanMode::quasi_bound, ScanMode::figure})
    if (s == to_string(m)) return m;
  throw usage_error("unknown mode: " + s);
}

PlaneKind plane_from(const std::string& s) {
  for (PlaneKind p : {PlaneKind::pt, PlaneKind::anti_pt, PlaneKind::imaginary,
                      PlaneKind::opposite, PlaneKind::shifted, PlaneKind::raw})
    if (s == to_string(p)) return p;
  throw usage_error("unknown plane: " + s);
}

}  // namespace

nlohmann::json request_to_json(const ScanRequest& req) {
  nlohmann::json j;
  j["mode"] = to_string(req.mode);
  j["plane"] = to_string(req.plane);
  j["z_minus"] = {req.z_minus.real(), req.z_minus.imag()};
  j["z_plus"] = {req.z_plus.real(), req.z_plus.imag()};
  j["a"] = req.a;
  j["tol"] = req.tol;
  j["eps"] = req.eps;
  j["rho"] = req.rho;
  j["theta"] = req.theta;
  if (req.has_grid) {
    j["grid"] = {{"x", {req.gx.lo, req.gx.hi, req.gx.n}}, {"y", {req.gy.lo, req.gy.hi, req.gy.n}}};
  }
  if (!req.figure.empty()) j["figure"] = req.figure;
  if (req.curve_points > 0) j["curve_points"] = req.curve_points;
  j["format"] = (req.format == ScanRequest::Format::json) ? "json" : "csv";
  return j;
}

ScanRequest request_from_json(const nlohmann::json& j) {
  ScanRequest req;
  req.mode = mode_from(j.value("mode", "singularities"));
  req.plane = plane_from(j.value("plane", "raw"));
  if (j.contains("z_minus")) req.z_minus = {j["z_minus"][0], j["z_minus"][1]};
  if (j.contains("z_plus")) req.z_plus = {j["z_plus"][0], j["z_plus"][1]};
  req.a = j.value("a", 1.0);
  req.tol = j.value("tol", 1e-8);
  req.eps = j.value("eps", 1e-3);
  req.rho = j.value("rho", 0.0);
  req.theta = j.value("theta", 0.0);
  req.figure = j.value("figure", "");
  req.curve_points = j.value("curve_points", 0);
  if (j.contains("grid")) {
    req.has_grid = true;
    const auto& gx = j["grid"]["x"];
    const auto& gy = j["grid"]["y"];
    req.gx = {gx[0], gx[1], gx[2]};
    req.gy = {gy[0], gy[1], gy[2]};
  }
  req.format = (j.value("format", "csv") == "json") ? ScanRequest::Format::json
                                                    : ScanRequest::Format::csv;
  return req;
}

std::vector<std::string> emit_figure(const std::string& figure_id, const ScanRequest& overrides,
                                     const std::string& out_dir) {
  ScanRequest req = overrides;
  req.mode = ScanMode::figure;
  req.figure = figure_id;

  std::vector<std::string> written;
  auto write_one = [&](const std::string& name, const ScanResult& result) {
    const std::string path = out_dir + "/" + name +
                             (req.format == ScanRequest::Format::json ? ".json" : ".csv");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    if (req.format == ScanRequest::Format::json)
      write_json(result, os);
    else
      write_csv(result, os);
    written.push_back(path);
  };

  const ScanResult result = run_scan(req);
  write_one(figure_id, result);
  if (figure_id == "fig6") {
    ScanRequest zreq = req;
    zreq.figure = "fig6-zeros";
    write_one("fig6_zeros", run_scan(zreq));
  }

  const std::string sidecar = out_dir + "/" + figure_id + "_params.json";
  std::ofstream os(sidecar);
  if (!os) throw std::runtime_error("cannot write " + sidecar);
  nlohmann::json j;
  j["figure"] = figure_id;
  j["request"] = request_to_json(req);
  j["tool"] = "delta-spectra";
  j["version"] = kVersion;
  j["columns"] = result.columns;
  os << j.dump(2) << "\n";
  written.push_back(sidecar);
  return written;
}

}  // namespace deltaspec
