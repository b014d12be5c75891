#pragma once

// Parameter-space scans, figure-dataset emission, and CSV/JSON serialization.
// Fixed column schema per mode; floats are written as shortest round-trip
// decimals so identical requests produce byte-identical files.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "deltaspec/couplings.hpp"

namespace deltaspec {

enum class ScanMode { singularities, bound_states, count, quasi_bound, figure };
enum class PlaneKind { pt, anti_pt, imaginary, opposite, shifted, raw };

struct GridAxis {
  double lo = 0.0, hi = 0.0;
  int n = 0;
};

struct ScanRequest {
  ScanMode mode = ScanMode::singularities;
  PlaneKind plane = PlaneKind::raw;
  GridAxis gx, gy;
  bool has_grid = false;

  Complex z_minus{0, 0}, z_plus{0, 0};
  double a = 1.0;

  double tol = 1e-8;   // |f| verification tolerance
  double eps = 1e-3;   // contour epsilon
  double rho = 0.0;    // 0 = sigma * 1.01
  double theta = 0.0;  // 0 = pi - 2 eps

  std::string figure;    // mode == figure
  std::string out_path;  // empty = stdout
  enum class Format { csv, json } format = Format::csv;
  int threads = 1;
  int curve_points = 0;  // 0 = per-figure default
};

// monostate = an empty cell ("" in CSV, null in JSON)
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct ScanResult {
  nlohmann::json metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

class usage_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

ScanResult run_scan(const ScanRequest& req);

void write_csv(const ScanResult& result, std::ostream& os);
void write_json(const ScanResult& result, std::ostream& os);

nlohmann::json request_to_json(const ScanRequest& req);
ScanRequest request_from_json(const nlohmann::json& j);

// Writes <figure>.csv (plus companion files for fig6) and a sidecar
// <figure>_params.json into out_dir; returns the written paths. The sidecar
// re-fed through request_from_json reproduces the same dataset.
std::vector<std::string> emit_figure(const std::string& figure_id, const ScanRequest& overrides,
                                     const std::string& out_dir);

const char* to_string(ScanMode m);
const char* to_string(PlaneKind p);

}  // namespace deltaspec
