#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "intertwine/quad.hpp"
#include "intertwine/scalars.hpp"
#include "json.hpp"

// Run configuration and report plumbing for the command-line front end.
// Precedence: command-line flags override config-file values override the
// documented defaults.  The config file is flat `key=value` text with
// dotted section names (quad.nodes, tol.isometry, ...); unknown keys are
// rejected so typos cannot silently fall back to defaults.

namespace intertwine {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pinned tolerances, one per check.  Values are the certified defaults;
// all must stay positive (the truncation slope limit, a bound rather than
// a tolerance, must stay negative).
struct ToleranceSet {
  double isometry = 1e-8;
  double equivariance = 1e-7;
  double dilation = 1e-10;
  double normalization = 1e-4;    // real and complex scalars
  double normalization_h = 1e-2;  // quaternions, slow path
  double line_integral = 1e-8;    // real and complex scalars
  double line_integral_h = 1e-5;  // quaternions
  double bound_headroom = 1e-9;
  double truncation_slope = -0.9;
  double residual_odd = 1e-12;        // odd-sector shell transform
  double residual_point_mass = 1e-10; // 2 ln R pin
  double residual_quad = 1e-9;        // quadrature vs closed form
  double cesaro_band = 0.05;          // relative, principal-value recovery
  double partition = 1e-3;
};

struct RunConfig {
  std::string field = "all";  // "r" | "c" | "h" | "all"
  std::uint64_t seed = 42;
  int trials = 20;
  bool slow = false;
  std::string out;  // report path; empty writes to stdout
  QuadSpec quad;
  bool raw_angular = false;  // Euclidean circle normalization in scans
  ToleranceSet tol;
};

// One row of a report.  status is "pass", "fail", or "skipped-slow";
// skipped checks count as passing for the exit code.
struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string status = "fail";
  int samples = 0;
  double seconds = 0.0;
  std::string note;  // optional context, e.g. why a check was skipped
};

// Applies one key=value pair; throws ConfigError on unknown keys or
// unparsable values.
void apply_config_kv(RunConfig& cfg, const std::string& key,
                     const std::string& value);

// Loads a flat key=value file ('#' comments and blank lines allowed).
void load_config_file(RunConfig& cfg, const std::string& path);

// Enforces the documented invariants (trials >= 1, tolerances > 0, field
// selector valid, quadrature spec positive/ordered).
void validate_config(const RunConfig& cfg);

// Field selector expansion: "all" -> {r, c, h}.
std::vector<Field> selected_fields(const RunConfig& cfg);

// Lowercase one-letter code used in reports and selectors.
const char* field_code(Field f);

// ---------------------------------------------------------------------------
// Report rendering.  Reports are deterministic for a fixed seed and config
// except for the single top-level "timing" object, which strip_timing
// removes for byte comparisons.

extern const int kSchemaVersion;

// Header with schema_version, command, field, and params (seed, trials,
// slow, quadrature spec).  Checks and timing are appended by the caller.
nlohmann::ordered_json report_header(const std::string& command,
                                     const RunConfig& cfg);

// One check row; field_tag marks which scalars the row belongs to.
nlohmann::ordered_json check_json(const CheckResult& r,
                                  const std::string& field_tag);

// Stable serialization: 2-space indent, '\n'-terminated.
std::string dump_report(const nlohmann::ordered_json& report);

// Parses, removes the top-level "timing" member, and re-dumps.
std::string strip_timing(const std::string& json_text);

// Scan table row: one shell-transform evaluation.
struct ScanRow {
  Field field = Field::Real;
  int sigma = 0;  // sign index over R, winding over C
  double t = 0.0;
  double R = 2.0;
  std::complex<double> value;
};

// CSV with a `# schema_version N` comment line and a header row; columns
// field,sigma,n,t,R,re,im (sigma filled over R, n over C).
std::string render_scan_csv(const std::vector<ScanRow>& rows);

}  // namespace intertwine
