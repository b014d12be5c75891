#include "deltaspec/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "deltaspec/detail/contour.hpp"

namespace deltaspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

Complex sum_z(const ScaledCoupling& zf) { return zf.zf_minus + zf.zf_plus; }
Complex prod_z(const ScaledCoupling& zf) { return zf.zf_minus * zf.zf_plus; }

}  // namespace

Complex eval_F(const ScaledCoupling& zf, Complex kappa, int order) {
  const Complex p = prod_z(zf);
  const Complex e = p * std::exp(2.0 * kappa);
  switch (order) {
    case 0:
      return (kappa - zf.zf_minus) * (kappa - zf.zf_plus) - e;
    case 1:
      return 2.0 * kappa - sum_z(zf) - 2.0 * e;
    case 2:
      return 2.0 - 4.0 * e;
    case 3:
      return -8.0 * e;
    default:
      throw invalid_input_error("eval_F: order must be 0..3");
  }
}

double f_scale(const ScaledCoupling& zf, Complex kappa) {
  return std::abs(kappa - zf.zf_minus) * std::abs(kappa - zf.zf_plus) +
         std::abs(prod_z(zf)) * std::exp(2.0 * kappa.real()) + 1e-30;
}

int origin_multiplicity(const ScaledCoupling& zf) {
  const Complex s = sum_z(zf), p = prod_z(zf);
  const double scale1 = std::abs(s) + 2.0 * std::abs(p) + 1.0;
  if (std::abs(s + 2.0 * p) > 1e-13 * scale1) return 1;  // F'(0) = -(S + 2P)
  if (std::abs(2.0 - 4.0 * p) > 1e-13 * (2.0 + 4.0 * std::abs(p))) return 2;
  return 3;
}

ContourSpec ContourSpec::rect_upper(double rho, double eps) {
  ContourSpec s;
  s.shape = Shape::rect_upper;
  s.rho = rho;
  s.epsilon = eps;
  return s;
}

ContourSpec ContourSpec::rect_lower(double rho, double eps) {
  ContourSpec s;
  s.shape = Shape::rect_lower;
  s.rho = rho;
  s.epsilon = eps;
  return s;
}

ContourSpec ContourSpec::sector(double rho, double theta, double eps, double ang_offset) {
  ContourSpec s;
  s.shape = Shape::annular_sector;
  s.rho = rho;
  s.theta = theta;
  s.epsilon = eps;
  s.ang_offset = ang_offset;
  return s;
}

double ContourSpec::sector_start() const {
  const double off = (ang_offset < 0.0) ? 0.5 * (kPi - theta) : ang_offset;
  return 0.5 * kPi + off;
}

bool ContourSpec::contains(Complex kappa) const {
  switch (shape) {
    case Shape::rect_upper:
      return std::abs(kappa.real()) <= 0.5 * epsilon && kappa.imag() >= epsilon &&
             kappa.imag() <= rho;
    case Shape::rect_lower:
      return std::abs(kappa.real()) <= 0.5 * epsilon && kappa.imag() <= -epsilon &&
             kappa.imag() >= -rho;
    case Shape::annular_sector:
    default: {
      const double m = std::abs(kappa);
      if (m < epsilon || m > rho) return false;
      double phi = std::atan2(kappa.imag(), kappa.real());
      const double start = sector_start();
      while (phi < start) phi += 2.0 * kPi;
      return phi <= start + theta;
    }
  }
}

namespace {

std::vector<detail::Segment> build_segments(const ContourSpec& s) {
  using detail::Segment;
  std::vector<Segment> segs;
  const double e = s.epsilon;
  switch (s.shape) {
    case ContourSpec::Shape::rect_upper:
      if (!(s.rho > e)) throw invalid_input_error("rect_upper: rho must exceed epsilon");
      segs = {Segment::line({-0.5 * e, e}, {0.5 * e, e}),
              Segment::line({0.5 * e, e}, {0.5 * e, s.rho}),
              Segment::line({0.5 * e, s.rho}, {-0.5 * e, s.rho}),
              Segment::line({-0.5 * e, s.rho}, {-0.5 * e, e})};
      break;
    case ContourSpec::Shape::rect_lower:
      if (!(s.rho > e)) throw invalid_input_error("rect_lower: rho must exceed epsilon");
      segs = {Segment::line({-0.5 * e, -s.rho}, {0.5 * e, -s.rho}),
              Segment::line({0.5 * e, -s.rho}, {0.5 * e, -e}),
              Segment::line({0.5 * e, -e}, {-0.5 * e, -e}),
              Segment::line({-0.5 * e, -e}, {-0.5 * e, -s.rho})};
      break;
    case ContourSpec::Shape::annular_sector: {
      if (!(s.rho > e)) throw invalid_input_error("sector: rho must exceed epsilon");
      if (!(s.theta > 0.0) || s.theta >= 2.0 * kPi)
        throw invalid_input_error("sector: theta out of range");
      const double a0 = s.sector_start(), a1 = a0 + s.theta;
      segs = {Segment::arc({0, 0}, s.rho, a0, a1), Segment::radial_log(a1, s.rho, e),
              Segment::arc({0, 0}, e, a1, a0), Segment::radial_log(a0, e, s.rho)};
      break;
    }
  }
  return segs;
}

struct WindingCheck {
  std::optional<int> count;
  bool degenerate = false;
};

// A zero sitting on (or numerically on) the contour: coarse samples only
// bound the distance by the sample spacing, so the suspicious minima are
// contracted by golden section along the segment before deciding.
bool zero_on_contour(const ScaledCoupling& zf, const std::vector<detail::Segment>& segs,
                     int coarse = 64) {
  std::vector<double> all;
  std::vector<std::pair<double, double>> seg_min(segs.size(), {1e300, 0.0});
  for (size_t s = 0; s < segs.size(); ++s)
    for (int i = 0; i < coarse; ++i) {
      const double t = (i + 0.5) / coarse;
      const double v = std::abs(eval_F(zf, segs[s].point(t), 0));
      all.push_back(v);
      if (v < seg_min[s].first) seg_min[s] = {v, t};
    }
  std::nth_element(all.begin(), all.begin() + all.size() / 2, all.end());
  const double median = all[all.size() / 2];
  if (!(median > 0.0)) return true;

  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (size_t s = 0; s < segs.size(); ++s) {
    if (seg_min[s].first > 1e-2 * median) continue;
    auto val = [&](double t) { return std::abs(eval_F(zf, segs[s].point(t), 0)); };
    double lo = std::max(0.0, seg_min[s].second - 1.5 / coarse);
    double hi = std::min(1.0, seg_min[s].second + 1.5 / coarse);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = val(x1), f2 = val(x2);
    for (int it = 0; it < 90; ++it) {
      if (f1 < f2) {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - gr * (hi - lo); f1 = val(x1);
      } else {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + gr * (hi - lo); f2 = val(x2);
      }
    }
    if (val(0.5 * (lo + hi)) < 1e-10 * median) return true;
  }
  return false;
}

WindingCheck checked_winding(const ScaledCoupling& zf, const std::vector<detail::Segment>& segs,
                             int coarse) {
  auto f = [&](Complex z) { return eval_F(zf, z, 0); };
  auto df = [&](Complex z) { return eval_F(zf, z, 1); };

  WindingCheck out;
  double prev_raw = 0.0;
  int prev_n = 0;
  bool have_prev = false;
  double tol = 1e-3;
  for (int attempt = 0; attempt < 3; ++attempt, tol *= 1e-2, coarse *= 2) {
    const auto est = detail::winding_estimate(f, df, segs, tol, coarse);
    if (est.min_over_median < 1e-9) {
      out.degenerate = true;
      return out;
    }
    const int n = static_cast<int>(std::lround(est.raw));
    const bool near = std::abs(est.raw - n) <= 0.05;
    if (have_prev && near && n == prev_n && std::abs(est.raw - n) <= 1e-3 &&
        std::abs(prev_raw - n) <= 0.05) {
      out.count = n;
      return out;
    }
    have_prev = true;
    prev_raw = est.raw;
    prev_n = n;
  }
  return out;
}

}  // namespace

int winding_count(const ScaledCoupling& zf, const ContourSpec& spec) {
  const auto segs = build_segments(spec);
  if (zero_on_contour(zf, segs))
    throw contour_degenerate_error(
        "winding_count: a zero of F lies on the contour; perturb epsilon or rho");
  const auto res = checked_winding(zf, segs, std::max(8, spec.n_base_points));
  if (res.degenerate)
    throw contour_degenerate_error(
        "winding_count: a zero of F lies on the contour; perturb epsilon or rho");
  if (!res.count)
    throw resolution_error("winding_count: quadrature did not settle on an integer");
  return *res.count;
}

// ---------------------------------------------------------------------------
// locate_zeros
// ---------------------------------------------------------------------------

namespace {

struct Cell {
  double x0, x1, y0, y1;
  int depth = 0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double diam() const { return std::hypot(width(), height()); }
  Complex center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  bool contains_origin() const { return x0 < 0.0 && x1 > 0.0 && y0 < 0.0 && y1 > 0.0; }
  bool inside(Complex z, double slack) const {
    return z.real() >= x0 - slack && z.real() <= x1 + slack && z.imag() >= y0 - slack &&
           z.imag() <= y1 + slack;
  }
};

// min/median of |F| along a straight line; used to keep subdivision edges
// away from zeros.
double line_quality(const ScaledCoupling& zf, Complex a, Complex b, int n = 33) {
  std::vector<double> mags(n);
  for (int i = 0; i < n; ++i) mags[i] = std::abs(eval_F(zf, a + (b - a) * ((i + 0.5) / n), 0));
  std::vector<double> sorted = mags;
  std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
  const double med = sorted[n / 2];
  return med > 0.0 ? *std::min_element(mags.begin(), mags.end()) / med : 0.0;
}

double pick_split(const ScaledCoupling& zf, const Cell& c, bool vertical) {
  static constexpr double kFracs[] = {0.5, 0.52, 0.48, 0.55, 0.45, 0.58, 0.42, 0.62, 0.38};
  double best_frac = 0.5, best_q = -1.0;
  for (double fr : kFracs) {
    double q;
    if (vertical) {
      const double x = c.x0 + fr * c.width();
      q = line_quality(zf, {x, c.y0}, {x, c.y1});
    } else {
      const double y = c.y0 + fr * c.height();
      q = line_quality(zf, {c.x0, y}, {c.x1, y});
    }
    if (q > 1e-7) return vertical ? c.x0 + fr * c.width() : c.y0 + fr * c.height();
    if (q > best_q) {
      best_q = q;
      best_frac = fr;
    }
  }
  return vertical ? c.x0 + best_frac * c.width() : c.y0 + best_frac * c.height();
}

std::optional<int> cell_winding(const ScaledCoupling& zf, const Cell& c) {
  using detail::Segment;
  const std::vector<Segment> segs = {
      Segment::line({c.x0, c.y0}, {c.x1, c.y0}), Segment::line({c.x1, c.y0}, {c.x1, c.y1}),
      Segment::line({c.x1, c.y1}, {c.x0, c.y1}), Segment::line({c.x0, c.y1}, {c.x0, c.y0})};
  const auto res = checked_winding(zf, segs, 12);
  if (res.degenerate) return std::nullopt;
  return res.count;
}

struct RefineOutcome {
  Complex kappa;
  double residual;
};

double order_scale(const ScaledCoupling& zf, Complex kappa, int order) {
  const double pe = std::abs(prod_z(zf)) * std::exp(2.0 * kappa.real());
  switch (order) {
    case 0:
      return f_scale(zf, kappa);
    case 1:
      return 2.0 * std::abs(kappa) + std::abs(sum_z(zf)) + 2.0 * pe + 1e-30;
    case 2:
      return 2.0 + 4.0 * pe;
    default:
      return 8.0 * pe + 1e-30;
  }
}

std::optional<RefineOutcome> newton_refine(const ScaledCoupling& zf, Complex start, int mult,
                                           double refine_tol) {
  Complex x = start;
  const int top = mult - 1;  // F^{(top)} has a simple zero at a zero of order mult
  for (int it = 0; it < 80; ++it) {
    const Complex g = eval_F(zf, x, top);
    const Complex dg = eval_F(zf, x, top + 1);
    if (!std::isfinite(std::abs(g)) || !std::isfinite(std::abs(dg))) return std::nullopt;
    if (std::abs(dg) < 1e-14 * order_scale(zf, x, top + 1)) return std::nullopt;
    const Complex step = g / dg;
    x -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(x))) break;
    if (std::abs(step) > 1e3 * (1.0 + std::abs(start))) return std::nullopt;
  }
  // all orders below mult must vanish at a zero of order mult
  for (int j = 0; j < mult; ++j) {
    const double r = std::abs(eval_F(zf, x, j));
    if (r > std::max(refine_tol, 64.0 * 1e-16 * order_scale(zf, x, j))) return std::nullopt;
  }
  return RefineOutcome{x, std::abs(eval_F(zf, x, 0))};
}

std::optional<RefineOutcome> muller_refine(const ScaledCoupling& zf, const Cell& c,
                                           double refine_tol) {
  const double h = 0.25 * std::min(c.width(), c.height());
  Complex x0 = c.center() + Complex{-h, -0.3 * h}, x1 = c.center() + Complex{h, 0.2 * h},
          x2 = c.center();
  Complex f0 = eval_F(zf, x0, 0), f1 = eval_F(zf, x1, 0), f2 = eval_F(zf, x2, 0);
  for (int it = 0; it < 60; ++it) {
    const Complex q = (x2 - x1) / (x1 - x0);
    const Complex aa = q * f2 - q * (1.0 + q) * f1 + q * q * f0;
    const Complex bb = (2.0 * q + 1.0) * f2 - (1.0 + q) * (1.0 + q) * f1 + q * q * f0;
    const Complex cc2 = (1.0 + q) * f2;
    const Complex disc = std::sqrt(bb * bb - 4.0 * aa * cc2);
    const Complex den = (std::abs(bb + disc) > std::abs(bb - disc)) ? bb + disc : bb - disc;
    if (den == Complex{0, 0}) break;
    const Complex x3 = x2 - (x2 - x1) * 2.0 * cc2 / den;
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
    x2 = x3;
    f2 = eval_F(zf, x2, 0);
    if (std::abs(x2 - x1) <= 1e-15 * (1.0 + std::abs(x2))) break;
  }
  if (std::abs(f2) > std::max(refine_tol, 64.0 * 1e-16 * order_scale(zf, x2, 0)))
    return std::nullopt;
  // polish with plain Newton
  if (auto polished = newton_refine(zf, x2, 1, refine_tol)) return polished;
  return RefineOutcome{x2, std::abs(f2)};
}

struct Attempt {
  std::vector<RawZero> raw;
  std::vector<UnrefinedCell> unrefined;
  std::vector<std::string> warnings;
  bool clean = true;
};

Attempt locate_attempt(const ScaledCoupling& zf, const LocateOptions& opts, double sigma,
                       int jitter) {
  Attempt out;
  const double pad = sigma * (3e-4 + 2.3e-4 * jitter);
  const double sp = opts.sigma_pad * sigma;
  Cell root{-(sp + 1.07 * pad), opts.right_edge + 0.83 * pad, -(sp + 0.91 * pad),
            sp + 1.13 * pad, 0};

  // keep the outer boundary away from zeros
  for (int tries = 0; tries < 6; ++tries) {
    const double q =
        std::min({line_quality(zf, {root.x0, root.y0}, {root.x1, root.y0}, 65),
                  line_quality(zf, {root.x1, root.y0}, {root.x1, root.y1}, 65),
                  line_quality(zf, {root.x1, root.y1}, {root.x0, root.y1}, 65),
                  line_quality(zf, {root.x0, root.y1}, {root.x0, root.y0}, 65)});
    if (q > 1e-8) break;
    root.x0 -= 0.37 * pad;
    root.x1 += 0.29 * pad;
    root.y0 -= 0.41 * pad;
    root.y1 += 0.31 * pad;
  }

  const int m0 = origin_multiplicity(zf);
  const double sep = opts.sep_min * (1.0 + sigma);
  // Newton landing here found the always-present origin zero, not the one
  // the cell count refers to; reject and keep subdividing.
  const double origin_tol = std::max(1e-10 * (1.0 + sigma), 1e-9);
  std::deque<Cell> work{root};
  long cells = 0;

  while (!work.empty()) {
    const Cell c = work.front();
    work.pop_front();
    if (++cells > 200000) {
      out.warnings.push_back("locate_zeros: cell budget exhausted");
      out.clean = false;
      break;
    }
    const auto w = cell_winding(zf, c);
    if (!w) {
      out.clean = false;  // zero on a cell edge; a jittered restart fixes it
      continue;
    }
    const int eff = *w - (c.contains_origin() ? m0 : 0);
    if (eff < 0) {
      out.warnings.push_back("locate_zeros: negative cell count (quadrature)");
      out.clean = false;
      continue;
    }
    if (eff == 0) continue;

    const bool tiny = c.diam() < sep;
    if (eff == 1 || (tiny && eff <= 3)) {
      const int mult = eff;
      auto got = newton_refine(zf, c.center(), mult, opts.refine_tol);
      if (!got && mult == 1) got = muller_refine(zf, c, opts.refine_tol);
      if (got && std::abs(got->kappa) > origin_tol &&
          c.inside(got->kappa, 1e-9 * (1.0 + std::abs(got->kappa)))) {
        out.raw.push_back({got->kappa, mult, got->residual});
        continue;
      }
      if (tiny) {
        out.unrefined.push_back({{c.x0, c.y0}, {c.x1, c.y1}, eff});
        out.clean = false;
        continue;
      }
    } else if (tiny) {
      out.unrefined.push_back({{c.x0, c.y0}, {c.x1, c.y1}, eff});
      out.clean = false;
      continue;
    }

    if (c.depth >= opts.max_depth) {
      out.unrefined.push_back({{c.x0, c.y0}, {c.x1, c.y1}, eff});
      out.clean = false;
      continue;
    }
    const double sx = pick_split(zf, c, true);
    const double sy = pick_split(zf, c, false);
    work.push_back({c.x0, sx, c.y0, sy, c.depth + 1});
    work.push_back({sx, c.x1, c.y0, sy, c.depth + 1});
    work.push_back({c.x0, sx, sy, c.y1, c.depth + 1});
    work.push_back({sx, c.x1, sy, c.y1, c.depth + 1});
  }
  return out;
}

}  // namespace

LocateResult locate_zeros(const ScaledCoupling& zf, double a, const LocateOptions& opts) {
  if (!(a > 0.0)) throw invalid_input_error("locate_zeros: a must be positive");
  LocateResult res;
  res.sigma = 2.0 * std::max(std::abs(zf.zf_minus), std::abs(zf.zf_plus));
  if (res.sigma == 0.0) return res;

  Attempt attempt;
  for (int j = 0; j < 4; ++j) {
    attempt = locate_attempt(zf, opts, res.sigma, j);
    if (attempt.clean) break;
  }
  res.unrefined = attempt.unrefined;
  res.warnings = attempt.warnings;

  // merge numerically coincident zeros claimed by adjacent cells
  std::sort(attempt.raw.begin(), attempt.raw.end(), [](const RawZero& l, const RawZero& r) {
    return std::make_pair(l.kappa.real(), l.kappa.imag()) <
           std::make_pair(r.kappa.real(), r.kappa.imag());
  });
  for (const auto& z : attempt.raw) {
    bool dup = false;
    for (auto& kept : res.raw)
      if (std::abs(kept.kappa - z.kappa) < 1e-9 * (1.0 + std::abs(z.kappa))) {
        dup = true;
        res.warnings.push_back("locate_zeros: duplicate zero across cells merged");
        kept.multiplicity = std::max(kept.multiplicity, z.multiplicity);
      }
    if (!dup) res.raw.push_back(z);
  }

  // classify
  const double ct = opts.class_tol;
  std::vector<ZeroRecord> ss, bs;
  for (const auto& z : res.raw) {
    const double re = z.kappa.real();
    const bool borderline = std::abs(re) >= 0.5 * ct && std::abs(re) <= 2.0 * ct;
    if (borderline)
      res.warnings.push_back("locate_zeros: zero with |Re kappa| near class_tol");
    if (re > ct) continue;  // right half-plane: outside the classification
    ZeroRecord rec;
    rec.multiplicity = z.multiplicity;
    rec.residual = z.residual;
    rec.borderline = borderline;
    if (std::abs(re) <= ct) {
      rec.kind = ZeroKind::spectral_singularity;
      rec.kappa = Complex{0.0, std::abs(z.kappa.imag())};
    } else {
      rec.kind = (std::abs(z.kappa.imag()) <= ct) ? ZeroKind::real_bound_state
                                                  : ZeroKind::bound_state;
      rec.kappa = (rec.kind == ZeroKind::real_bound_state) ? Complex{re, 0.0} : z.kappa;
    }
    rec.k = rec.kappa / (2.0 * kImagUnit * a);
    rec.energy = -rec.kappa * rec.kappa / (4.0 * a * a);
    if (rec.kind == ZeroKind::spectral_singularity) {
      bool merged = false;
      for (auto& prev : ss)
        if (std::abs(prev.kappa.imag() - rec.kappa.imag()) <
            1e-8 * (1.0 + std::abs(rec.kappa.imag()))) {
          merged = true;  // +-kappa pair: one physical singularity
          prev.multiplicity = std::max(prev.multiplicity, rec.multiplicity);
        }
      if (!merged) ss.push_back(rec);
    } else {
      bs.push_back(rec);
    }
  }
  std::sort(ss.begin(), ss.end(),
            [](const ZeroRecord& l, const ZeroRecord& r) { return l.kappa.imag() < r.kappa.imag(); });
  std::sort(bs.begin(), bs.end(), [](const ZeroRecord& l, const ZeroRecord& r) {
    return std::make_pair(l.kappa.real(), l.kappa.imag()) <
           std::make_pair(r.kappa.real(), r.kappa.imag());
  });
  res.records = std::move(ss);
  res.records.insert(res.records.end(), bs.begin(), bs.end());
  return res;
}

SearchRegion region_bound(const ScaledCoupling& zf) {
  SearchRegion r;
  r.sigma = 2.0 * std::max(std::abs(zf.zf_minus), std::abs(zf.zf_plus));
  r.center_minus = zf.zf_minus;
  r.center_plus = zf.zf_plus;
  r.radius_minus = std::abs(zf.zf_minus);
  r.radius_plus = std::abs(zf.zf_plus);
  return r;
}

bool SearchRegion::contains(Complex kappa, double slack) const {
  if (kappa.real() > slack) return false;
  if (kappa == Complex{0, 0}) return false;  // ell excludes the origin
  return std::abs(kappa - center_minus) <= radius_minus + slack ||
         std::abs(kappa - center_plus) <= radius_plus + slack;
}

MultiplicityReport multiplicity_analysis(const ScaledCoupling& zf) {
  MultiplicityReport rep;
  const Complex s = sum_z(zf), p = prod_z(zf);
  const Complex d = std::sqrt(1.0 + (zf.zf_minus - zf.zf_plus) * (zf.zf_minus - zf.zf_plus));
  bool excl = true;
  for (int i = 0; i < 2; ++i) {
    const Complex dd = (i == 0) ? d : -d;
    rep.kappa2[i] = 0.5 * (1.0 + s + dd);
    const Complex lhs = 2.0 * p * std::exp(1.0 + s + dd);
    const Complex rhs = 1.0 + dd;
    rep.condition_residual[i] = std::abs(lhs - rhs);
    rep.admits_second_order[i] =
        rep.condition_residual[i] <= 1e-9 * (std::abs(lhs) + std::abs(rhs) + 1.0);
    rep.re_nonpositive[i] = rep.kappa2[i].real() <= 0.0;
    if (!(std::abs(rhs) > 2.0 * std::abs(p))) excl = false;  // |1 +- D| > 2|P|
  }
  const double ap = std::abs(p);
  rep.product_le_one = ap <= 1.0;
  rep.exclusion_inequality =
      ap * (ap - 1.0) < 0.25 * std::norm(zf.zf_minus - zf.zf_plus) || excl;
  rep.third_order = std::abs(s + 2.0 * p) <= 1e-12 * (1.0 + std::abs(s) + std::abs(p)) &&
                    std::abs(2.0 - 4.0 * p) <= 1e-12 * (2.0 + 4.0 * ap);
  return rep;
}

namespace {

// Roots of the real-valued restriction of F to the negative real axis
// (valid for PT and real couplings, where Im F vanishes identically).
std::vector<std::pair<double, int>> real_axis_roots(const ScaledCoupling& zf, double lo,
                                                    double hi, double tol) {
  auto fre = [&](double x) { return eval_F(zf, Complex{x, 0.0}, 0).real(); };
  const int n = 4001;
  std::vector<std::pair<double, int>> roots;
  double px = lo, pv = fre(lo);
  for (int i = 1; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    const double v = fre(x);
    if (pv == 0.0) {
      roots.emplace_back(px, 1);
    } else if (pv * v < 0.0) {
      double xa = px, xb = x, va = pv;
      for (int it = 0; it < 200 && xb - xa > 1e-16 * (1.0 + std::abs(xb)); ++it) {
        const double xm = 0.5 * (xa + xb), vm = fre(xm);
        if (va * vm <= 0.0)
          xb = xm;
        else {
          xa = xm;
          va = vm;
        }
      }
      roots.emplace_back(0.5 * (xa + xb), 1);
    }
    px = x;
    pv = v;
  }
  // tangency (double) roots: minima of |F| that touch zero without a sign change
  auto dfre = [&](double x) { return eval_F(zf, Complex{x, 0.0}, 1).real(); };
  double qx = lo, qv = dfre(lo);
  for (int i = 1; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    const double v = dfre(x);
    if (qv * v < 0.0) {
      double xa = qx, xb = x, va = qv;
      for (int it = 0; it < 200 && xb - xa > 1e-16 * (1.0 + std::abs(xb)); ++it) {
        const double xm = 0.5 * (xa + xb), vm = dfre(xm);
        if (va * vm <= 0.0)
          xb = xm;
        else {
          xa = xm;
          va = vm;
        }
      }
      const double xc = 0.5 * (xa + xb);
      if (std::abs(fre(xc)) < tol * f_scale(zf, Complex{xc, 0.0})) {
        bool dup = false;
        for (auto& [r, m] : roots)
          if (std::abs(r - xc) < 1e-7 * (1.0 + std::abs(xc))) dup = true;
        if (!dup) roots.emplace_back(xc, 2);
      }
    }
    qx = x;
    qv = v;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

ZeroRecord make_real_bs(Complex kappa, double a, int mult, double residual) {
  ZeroRecord rec;
  rec.kappa = kappa;
  rec.k = kappa / (2.0 * kImagUnit * a);
  rec.energy = -kappa * kappa / (4.0 * a * a);
  rec.multiplicity = mult;
  rec.kind = ZeroKind::real_bound_state;
  rec.residual = residual;
  return rec;
}

}  // namespace

std::vector<ZeroRecord> real_bound_states(const ScaledCoupling& zf, double a, double tol) {
  const Complex p = prod_z(zf);
  if (p == Complex{0, 0})
    throw unsupported_configuration_error(
        "real_bound_states: single-delta configuration (zf_- zf_+ = 0) excluded");
  if (!(a > 0.0)) throw invalid_input_error("real_bound_states: a must be positive");

  const double sigma = 2.0 * std::max(std::abs(zf.zf_minus), std::abs(zf.zf_plus));
  const double lo = -1.01 * sigma, hi = -1e-8 * (1.0 + sigma);
  const double sm = zf.zf_minus.imag(), sp = zf.zf_plus.imag();

  std::vector<ZeroRecord> out;
  if (std::abs(p.imag()) <= 1e-10 * (1.0 + std::abs(p))) {
    // Im(zf_- zf_+) = 0: real bound states only for the real potential or the
    // PT case zf_- = conj(zf_+); anti-PT and imaginary non-PT cases have none.
    const bool real_pot = std::abs(sm) <= 1e-12 * (1.0 + std::abs(zf.zf_minus)) &&
                          std::abs(sp) <= 1e-12 * (1.0 + std::abs(zf.zf_plus));
    const bool pt = std::abs(zf.zf_minus - std::conj(zf.zf_plus)) <=
                    1e-12 * (1.0 + std::abs(zf.zf_minus) + std::abs(zf.zf_plus));
    if (!real_pot && !pt) return out;
    // |kappa - zf_+| = |zf_+| e^kappa needs Re zf_+ < 0 to admit kappa < 0
    for (const auto& [x, mult] : real_axis_roots(zf, lo, hi, tol)) {
      const double res = std::abs(eval_F(zf, Complex{x, 0.0}, 0));
      if (res < tol * std::max(1.0, f_scale(zf, Complex{x, 0.0})))
        out.push_back(make_real_bs({x, 0.0}, a, mult, res));
    }
    return out;
  }

  // Im(zf_- zf_+) != 0: the linear condition pins the unique candidate.
  const double k0 = (std::norm(zf.zf_minus) * sp + std::norm(zf.zf_plus) * sm) / p.imag();
  if (k0 < hi && k0 > 2.0 * lo) {
    const double res = std::abs(eval_F(zf, Complex{k0, 0.0}, 0));
    if (res < tol * std::max(1.0, f_scale(zf, Complex{k0, 0.0})))
      out.push_back(make_real_bs({k0, 0.0}, a, 1, res));
  }
  return out;
}

// ---------------------------------------------------------------------------
// real-bound-state curves (fig9 dataset)
// ---------------------------------------------------------------------------

namespace {

struct CurveFn {
  double cos_half, sin_half;

  ScaledCoupling couplings(Complex z) const {
    const Complex e{cos_half, sin_half};
    return {z * std::conj(e), z * e};
  }

  // candidate from the linear condition; kappa_0 = |z|^2 cos(nu/2) / Re(z)
  double kappa0(Complex z) const { return std::norm(z) * cos_half / z.real(); }

  // implicit-curve function: Re[F(kappa_0)/P]; its zero set (with kappa_0 < 0)
  // is the real-bound-state locus
  double operator()(Complex z) const {
    const Complex p = z * z;
    if (std::abs(p.imag()) < 1e-14 * (1.0 + std::abs(p))) return std::nan("");
    const Complex val = eval_F(couplings(z), Complex{kappa0(z), 0.0}, 0) / p;
    return val.real();
  }

  bool valid(Complex z, double range) const {
    if (!(z.real() < -1e-3) || std::abs(z.imag()) < 1e-3) return false;
    return std::abs(z) <= 1.4 * range;
  }
};

}  // namespace

std::vector<RealBsCurvePoint> real_bound_state_curve(double nu, double range, int seed_grid,
                                                     double step) {
  if (!(nu > 0.0) || !(nu < 2.0 * kPi))
    throw invalid_input_error("real_bound_state_curve: nu must be in (0, 2 pi)");
  if (!(range > 0.0) || seed_grid < 8 || !(step > 0.0))
    throw invalid_input_error("real_bound_state_curve: bad scan parameters");

  const CurveFn h{std::cos(0.5 * nu), std::sin(0.5 * nu)};
  std::vector<RealBsCurvePoint> out;
  std::vector<Complex> visited;
  auto near_visited = [&](Complex z) {
    for (const auto& v : visited)
      if (std::abs(v - z) < 2.5 * step) return true;
    return false;
  };

  auto gradient = [&](Complex z) {
    const double d = 1e-6 * (1.0 + std::abs(z));
    const double gx = (h(z + Complex{d, 0}) - h(z - Complex{d, 0})) / (2.0 * d);
    const double gy = (h(z + Complex{0, d}) - h(z - Complex{0, d})) / (2.0 * d);
    return Complex{gx, gy};
  };
  auto correct = [&](Complex z) -> std::optional<Complex> {
    for (int it = 0; it < 12; ++it) {
      const double v = h(z);
      if (!std::isfinite(v)) return std::nullopt;
      const Complex g = gradient(z);
      const double g2 = std::norm(g);
      if (!(g2 > 1e-30)) return std::nullopt;
      const Complex dz = v / g2 * g;
      z -= dz;
      if (std::abs(dz) < 1e-12 * (1.0 + std::abs(z))) return z;
    }
    return std::nullopt;
  };

  int curve_id = 0;
  auto emit = [&](Complex z) {
    const double kap = h.kappa0(z);
    const double res = std::abs(eval_F(h.couplings(z), Complex{kap, 0.0}, 0));
    out.push_back({curve_id, z, kap, res});
    visited.push_back(z);
  };

  // seed scan: sign changes of h along grid rows in the left half-plane
  std::vector<Complex> seeds;
  for (int j = 0; j <= seed_grid; ++j) {
    const double y = -range + 2.0 * range * j / seed_grid;
    if (std::abs(y) < 2e-3) continue;
    double px = 0.0, pv = std::nan("");
    for (int i = 0; i <= seed_grid; ++i) {
      const double x = -range + (range - 1e-3) * i / seed_grid;
      if (x > -2e-3) break;
      const double v = h(Complex{x, y});
      if (std::isfinite(pv) && std::isfinite(v) && pv * v < 0.0) {
        double xa = px, xb = x, va = pv;
        for (int it = 0; it < 80; ++it) {
          const double xm = 0.5 * (xa + xb), vm = h(Complex{xm, y});
          if (va * vm <= 0.0)
            xb = xm;
          else {
            xa = xm;
            va = vm;
          }
        }
        seeds.emplace_back(0.5 * (xa + xb), y);
      }
      px = x;
      pv = v;
    }
  }

  for (const Complex seed : seeds) {
    if (near_visited(seed)) continue;
    auto z0 = correct(seed);
    if (!z0 || !h.valid(*z0, range)) continue;
    ++curve_id;
    // trace in both directions from the seed
    for (double dir : {1.0, -1.0}) {
      Complex z = *z0;
      Complex prev_tan{0, 0};
      if (dir > 0) emit(z);
      for (int n = 0; n < 4000; ++n) {
        const Complex g = gradient(z);
        if (!(std::norm(g) > 1e-30)) break;
        Complex tan = Complex{-g.imag(), g.real()} / std::abs(g);
        if (n == 0)
          tan *= dir;
        else if ((tan.real() * prev_tan.real() + tan.imag() * prev_tan.imag()) < 0.0)
          tan = -tan;
        auto next = correct(z + step * tan);
        if (!next || !h.valid(*next, range)) break;
        if (n > 6 && std::abs(*next - *z0) < 0.6 * step) break;  // closed loop
        z = *next;
        prev_tan = tan;
        emit(z);
      }
    }
  }
  return out;
}

}  // namespace deltaspec
