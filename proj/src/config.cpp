#include "intertwine/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace intertwine {

const int kSchemaVersion = 1;

namespace {

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: " + key + " wants a boolean, got '" + v + "'");
}

double parse_double(const std::string& v, const std::string& key) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: " + key + " wants a number, got '" + v + "'");
  }
  if (used != v.size()) {
    throw ConfigError("config: " + key + " wants a number, got '" + v + "'");
  }
  return out;
}

long long parse_int(const std::string& v, const std::string& key) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: " + key + " wants an integer, got '" + v + "'");
  }
  if (used != v.size()) {
    throw ConfigError("config: " + key + " wants an integer, got '" + v + "'");
  }
  return out;
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
  std::size_t used = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: " + key +
                      " wants an unsigned integer, got '" + v + "'");
  }
  if (used != v.size()) {
    throw ConfigError("config: " + key +
                      " wants an unsigned integer, got '" + v + "'");
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void apply_config_kv(RunConfig& cfg, const std::string& key,
                     const std::string& value) {
  if (key == "field") {
    cfg.field = value;
  } else if (key == "seed") {
    cfg.seed = parse_u64(value, key);
  } else if (key == "trials") {
    cfg.trials = static_cast<int>(parse_int(value, key));
  } else if (key == "slow") {
    cfg.slow = parse_bool(value, key);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "quad.box") {
    cfg.quad.box_halfwidth = parse_double(value, key);
  } else if (key == "quad.nodes") {
    cfg.quad.nodes_per_axis = static_cast<int>(parse_int(value, key));
  } else if (key == "quad.radial") {
    cfg.quad.radial_nodes = static_cast<int>(parse_int(value, key));
  } else if (key == "quad.angular") {
    cfg.quad.angular_nodes = static_cast<int>(parse_int(value, key));
  } else if (key == "quad.eps") {
    cfg.quad.eps_inner = parse_double(value, key);
  } else if (key == "quad.outer") {
    cfg.quad.lambda_outer = parse_double(value, key);
  } else if (key == "quad.tol") {
    cfg.quad.tol = parse_double(value, key);
  } else if (key == "residual.raw_angular") {
    cfg.raw_angular = parse_bool(value, key);
  } else if (key == "tol.isometry") {
    cfg.tol.isometry = parse_double(value, key);
  } else if (key == "tol.equivariance") {
    cfg.tol.equivariance = parse_double(value, key);
  } else if (key == "tol.dilation") {
    cfg.tol.dilation = parse_double(value, key);
  } else if (key == "tol.normalization") {
    cfg.tol.normalization = parse_double(value, key);
  } else if (key == "tol.normalization_h") {
    cfg.tol.normalization_h = parse_double(value, key);
  } else if (key == "tol.line_integral") {
    cfg.tol.line_integral = parse_double(value, key);
  } else if (key == "tol.line_integral_h") {
    cfg.tol.line_integral_h = parse_double(value, key);
  } else if (key == "tol.bound_headroom") {
    cfg.tol.bound_headroom = parse_double(value, key);
  } else if (key == "tol.truncation_slope") {
    cfg.tol.truncation_slope = parse_double(value, key);
  } else if (key == "tol.residual_odd") {
    cfg.tol.residual_odd = parse_double(value, key);
  } else if (key == "tol.residual_point_mass") {
    cfg.tol.residual_point_mass = parse_double(value, key);
  } else if (key == "tol.residual_quad") {
    cfg.tol.residual_quad = parse_double(value, key);
  } else if (key == "tol.cesaro_band") {
    cfg.tol.cesaro_band = parse_double(value, key);
  } else if (key == "tol.partition") {
    cfg.tol.partition = parse_double(value, key);
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: " + path + ":" + std::to_string(lineno) +
                        ": expected key=value, got '" + s + "'");
    }
    apply_config_kv(cfg, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }
}

void validate_config(const RunConfig& cfg) {
  if (cfg.field != "r" && cfg.field != "c" && cfg.field != "h" &&
      cfg.field != "all") {
    throw ConfigError("config: field must be one of r, c, h, all (got '" +
                      cfg.field + "')");
  }
  if (cfg.trials < 1) throw ConfigError("config: trials must be >= 1");
  const ToleranceSet& t = cfg.tol;
  for (double v : {t.isometry, t.equivariance, t.dilation, t.normalization,
                   t.normalization_h, t.line_integral, t.line_integral_h,
                   t.bound_headroom, t.residual_odd, t.residual_point_mass,
                   t.residual_quad, t.cesaro_band, t.partition}) {
    if (!(v > 0.0)) throw ConfigError("config: tolerances must be > 0");
  }
  if (!(t.truncation_slope < 0.0)) {
    throw ConfigError("config: tol.truncation_slope must be negative");
  }
  try {
    validate(cfg.quad);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::vector<Field> selected_fields(const RunConfig& cfg) {
  if (cfg.field == "r") return {Field::Real};
  if (cfg.field == "c") return {Field::Complex};
  if (cfg.field == "h") return {Field::Quaternion};
  return {Field::Real, Field::Complex, Field::Quaternion};
}

const char* field_code(Field f) {
  switch (f) {
    case Field::Real: return "r";
    case Field::Complex: return "c";
    default: return "h";
  }
}

nlohmann::ordered_json report_header(const std::string& command,
                                     const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["field"] = cfg.field;
  nlohmann::ordered_json params;
  params["seed"] = cfg.seed;
  params["trials"] = cfg.trials;
  params["slow"] = cfg.slow;
  nlohmann::ordered_json quad;
  quad["box"] = cfg.quad.box_halfwidth;
  quad["nodes"] = cfg.quad.nodes_per_axis;
  quad["radial"] = cfg.quad.radial_nodes;
  quad["angular"] = cfg.quad.angular_nodes;
  quad["eps"] = cfg.quad.eps_inner;
  quad["outer"] = cfg.quad.lambda_outer;
  quad["tol"] = cfg.quad.tol;
  params["quad"] = quad;
  params["raw_angular"] = cfg.raw_angular;
  j["params"] = params;
  return j;
}

nlohmann::ordered_json check_json(const CheckResult& r,
                                  const std::string& field_tag) {
  nlohmann::ordered_json j;
  j["field"] = field_tag;
  j["name"] = r.name;
  j["samples"] = r.samples;
  j["max_residual"] = r.max_residual;
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  j["status"] = r.status;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::string dump_report(const nlohmann::ordered_json& report) {
  return report.dump(2) + "\n";
}

std::string strip_timing(const std::string& json_text) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(json_text);
  j.erase("timing");
  return dump_report(j);
}

std::string render_scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream out;
  out << "# schema_version " << kSchemaVersion << "\n";
  out << "field,sigma,n,t,R,re,im\n";
  char buf[128];
  for (const ScanRow& r : rows) {
    out << field_code(r.field) << ',';
    if (r.field == Field::Real) {
      out << r.sigma << ",,";
    } else {
      out << ',' << r.sigma << ',';
    }
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g", r.t, r.R,
                  r.value.real(), r.value.imag());
    out << buf << "\n";
  }
  return out.str();
}

}  // namespace intertwine
