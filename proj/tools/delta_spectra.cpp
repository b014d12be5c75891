// delta-spectra: spectral classification of the complex double-delta
// potential from the command line. Modes: singularities, bound-states,
// count, quasi-bound, figure.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "deltaspec/scan.hpp"
#include "deltaspec/zeros.hpp"

namespace {

bool parse_complex(const std::string& text, deltaspec::Complex& out) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return false;
  try {
    out = {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (...) {
    return false;
  }
  return true;
}

bool parse_grid(const std::string& text, deltaspec::GridAxis& gx, deltaspec::GridAxis& gy) {
  // "x0:x1:nx,y0:y1:ny"
  auto parse_axis = [](const std::string& s, deltaspec::GridAxis& g) {
    const auto c1 = s.find(':'), c2 = s.rfind(':');
    if (c1 == std::string::npos || c2 == c1) return false;
    try {
      g.lo = std::stod(s.substr(0, c1));
      g.hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
      g.n = std::stoi(s.substr(c2 + 1));
    } catch (...) {
      return false;
    }
    return true;
  };
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    if (!parse_axis(text, gx)) return false;
    gy = gx;
    return true;
  }
  return parse_axis(text.substr(0, comma), gx) && parse_axis(text.substr(comma + 1), gy);
}

constexpr const char* kSchemaHelp = R"(CSV column schemas (JSON mirrors them as an array of objects):
  singularities (point) : k,energy,residual_f,family
  singularities (grid)  : x,y,n_sing,best_residual,k_1,energy_1,residual_1,...,residual_3
                          (one row per cell; at most three singularities exist,
                          absent ones leave empty cells)
  bound-states          : kappa_re,kappa_im,k_re,k_im,energy_re,energy_im,multiplicity,kind,residual_F
  count (point)         : sigma,rho,theta,n_minus,n_plus,n_ss,n_bs
  count (grid)          : x,y,n_tot
  quasi-bound           : r_minus,r_plus,m_r,b_r,t,kappa_re,kappa_im,abs_G
  figure                : see the sidecar <figure>_params.json
Complex values are split into <name>_re,<name>_im columns; floats are shortest
round-trip decimals. Exit codes: 0 success, 2 usage error, 3 numerical
resolution error.)";

}  // namespace

int main(int argc, char** argv) {
  using namespace deltaspec;

  CLI::App app{"Spectral singularities, bound states, and quasi-Hermiticity bounds\n"
               "of the complex double-delta potential"};
  app.footer(kSchemaHelp);

  std::string mode_str;
  app.add_option("mode", mode_str,
                 "singularities | bound-states | count | quasi-bound | figure")
      ->required();

  std::string zm_str = "0,0", zp_str = "0,0", grid_str, plane_str = "raw";
  ScanRequest req;
  std::string out_path, format_str = "csv", out_dir = ".";
  app.add_option("--z-minus", zm_str, "z_- as RE,IM");
  app.add_option("--z-plus", zp_str, "z_+ as RE,IM");
  app.add_option("--a", req.a, "half separation a > 0");
  app.add_option("--plane", plane_str, "pt | anti-pt | imaginary | opposite | shifted | raw");
  app.add_option("--grid", grid_str, "x0:x1:nx[,y0:y1:ny]");
  app.add_option("--tol", req.tol, "verification tolerance on |f|");
  app.add_option("--eps", req.eps, "contour epsilon (width / origin cut)");
  app.add_option("--rho", req.rho, "contour outer radius (default sigma*1.01)");
  app.add_option("--theta", req.theta, "sector opening (default pi - 2 eps)");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--format", format_str, "csv | json");
  app.add_option("--figure", req.figure, "fig1..fig4, fig6..fig10 (mode figure)");
  app.add_option("--out-dir", out_dir, "output directory for figure datasets");
  app.add_option("--points", req.curve_points, "sample count override for figures");
  app.add_option("--threads", req.threads, "worker threads for grid scans");
  app.add_option("--params", [&req](const std::vector<std::string>& vals) {
    std::ifstream is(vals.front());
    if (!is) return false;
    nlohmann::json j;
    is >> j;
    req = request_from_json(j.contains("request") ? j["request"] : j);
    return true;
  }, "load a request (or figure sidecar) JSON; flags given after override it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (mode_str == "singularities")
      req.mode = ScanMode::singularities;
    else if (mode_str == "bound-states")
      req.mode = ScanMode::bound_states;
    else if (mode_str == "count")
      req.mode = ScanMode::count;
    else if (mode_str == "quasi-bound")
      req.mode = ScanMode::quasi_bound;
    else if (mode_str == "figure")
      req.mode = ScanMode::figure;
    else
      throw usage_error("unknown mode: " + mode_str);

    if (!parse_complex(zm_str, req.z_minus)) throw usage_error("bad --z-minus (want RE,IM)");
    if (!parse_complex(zp_str, req.z_plus)) throw usage_error("bad --z-plus (want RE,IM)");
    if (plane_str == "pt")
      req.plane = PlaneKind::pt;
    else if (plane_str == "anti-pt")
      req.plane = PlaneKind::anti_pt;
    else if (plane_str == "imaginary")
      req.plane = PlaneKind::imaginary;
    else if (plane_str == "opposite")
      req.plane = PlaneKind::opposite;
    else if (plane_str == "shifted")
      req.plane = PlaneKind::shifted;
    else if (plane_str == "raw")
      req.plane = PlaneKind::raw;
    else
      throw usage_error("unknown plane: " + plane_str);
    if (!grid_str.empty()) {
      if (!parse_grid(grid_str, req.gx, req.gy)) throw usage_error("bad --grid");
      req.has_grid = true;
    }
    if (format_str == "json")
      req.format = ScanRequest::Format::json;
    else if (format_str != "csv")
      throw usage_error("unknown format: " + format_str);
    req.out_path = out_path;

    if (req.mode == ScanMode::figure) {
      if (req.figure.empty()) throw usage_error("mode=figure needs --figure");
      for (const auto& path : emit_figure(req.figure, req, out_dir))
        std::cerr << "wrote " << path << "\n";
      return 0;
    }

    const ScanResult result = run_scan(req);
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) {
        std::cerr << "delta-spectra: cannot write " << out_path << "\n";
        return 1;
      }
      os = &file;
    }
    if (req.format == ScanRequest::Format::json)
      write_json(result, *os);
    else
      write_csv(result, *os);
    return 0;
  } catch (const usage_error& e) {
    std::cerr << "delta-spectra: " << e.what() << "\n";
    return 2;
  } catch (const invalid_input_error& e) {
    std::cerr << "delta-spectra: " << e.what() << "\n";
    return 2;
  } catch (const resolution_error& e) {
    std::cerr << "delta-spectra: " << e.what() << "\n";
    return 3;
  } catch (const contour_degenerate_error& e) {
    std::cerr << "delta-spectra: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "delta-spectra: " << e.what() << "\n";
    return 1;
  }
}
