#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "intertwine/config.hpp"
#include "intertwine/verify_suite.hpp"

using namespace intertwine;

namespace {

// writes a throwaway config file in the working directory
struct TempConfig {
  std::string path;
  explicit TempConfig(const std::string& text)
      : path("test_config_tmp.conf") {
    std::ofstream f(path);
    f << text;
  }
  ~TempConfig() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("configuration defaults") {
  RunConfig cfg;
  CHECK(cfg.field == "all");
  CHECK(cfg.seed == 42);
  CHECK(cfg.trials == 20);
  CHECK(!cfg.slow);
  CHECK(cfg.out.empty());
  CHECK(cfg.quad.nodes_per_axis == 80);
  CHECK(cfg.tol.isometry == 1e-8);
  CHECK(cfg.tol.truncation_slope == -0.9);
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("key application") {
  RunConfig cfg;
  apply_config_kv(cfg, "field", "c");
  apply_config_kv(cfg, "seed", "977");
  apply_config_kv(cfg, "trials", "5");
  apply_config_kv(cfg, "slow", "true");
  apply_config_kv(cfg, "out", "report.json");
  apply_config_kv(cfg, "quad.box", "7.5");
  apply_config_kv(cfg, "quad.nodes", "96");
  apply_config_kv(cfg, "quad.radial", "120");
  apply_config_kv(cfg, "quad.angular", "32");
  apply_config_kv(cfg, "quad.eps", "1e-2");
  apply_config_kv(cfg, "quad.outer", "10");
  apply_config_kv(cfg, "quad.tol", "1e-7");
  apply_config_kv(cfg, "residual.raw_angular", "yes");
  apply_config_kv(cfg, "tol.isometry", "1e-9");
  apply_config_kv(cfg, "tol.truncation_slope", "-0.8");
  CHECK(cfg.field == "c");
  CHECK(cfg.seed == 977);
  CHECK(cfg.trials == 5);
  CHECK(cfg.slow);
  CHECK(cfg.out == "report.json");
  CHECK(cfg.quad.box_halfwidth == 7.5);
  CHECK(cfg.quad.nodes_per_axis == 96);
  CHECK(cfg.quad.radial_nodes == 120);
  CHECK(cfg.quad.angular_nodes == 32);
  CHECK(cfg.quad.eps_inner == 1e-2);
  CHECK(cfg.quad.lambda_outer == 10.0);
  CHECK(cfg.quad.tol == 1e-7);
  CHECK(cfg.raw_angular);
  CHECK(cfg.tol.isometry == 1e-9);
  CHECK(cfg.tol.truncation_slope == -0.8);

  CHECK_THROWS_AS(apply_config_kv(cfg, "nope", "1"), ConfigError);
  CHECK_THROWS_AS(apply_config_kv(cfg, "seed", "banana"), ConfigError);
  CHECK_THROWS_AS(apply_config_kv(cfg, "trials", "1.5"), ConfigError);
  CHECK_THROWS_AS(apply_config_kv(cfg, "quad.box", "wide"), ConfigError);
  CHECK_THROWS_AS(apply_config_kv(cfg, "slow", "maybe"), ConfigError);
  CHECK_THROWS_AS(apply_config_kv(cfg, "tol.isometry", "1e-9junk"),
                  ConfigError);
}

TEST_CASE("config files") {
  SUBCASE("comments, blanks, and whitespace") {
    TempConfig tc(
        "# a comment\n"
        "\n"
        "field = r\n"
        "  trials=7  \n"
        "tol.partition = 5e-4\n");
    RunConfig cfg;
    load_config_file(cfg, tc.path);
    CHECK(cfg.field == "r");
    CHECK(cfg.trials == 7);
    CHECK(cfg.tol.partition == 5e-4);
    CHECK(cfg.seed == 42);  // untouched keys keep their defaults
  }
  SUBCASE("missing file") {
    RunConfig cfg;
    CHECK_THROWS_AS(load_config_file(cfg, "no_such_file.conf"), ConfigError);
  }
  SUBCASE("malformed line") {
    TempConfig tc("field r\n");
    RunConfig cfg;
    CHECK_THROWS_AS(load_config_file(cfg, tc.path), ConfigError);
  }
  SUBCASE("unknown key names the file and line") {
    TempConfig tc("\n\nwhat = 1\n");
    RunConfig cfg;
    CHECK_THROWS_AS(load_config_file(cfg, tc.path), ConfigError);
  }
}

TEST_CASE("validation") {
  RunConfig cfg;
  SUBCASE("field selector") {
    cfg.field = "x";
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
    for (const char* good : {"r", "c", "h", "all"}) {
      cfg.field = good;
      CHECK_NOTHROW(validate_config(cfg));
    }
  }
  SUBCASE("trials") {
    cfg.trials = 0;
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  }
  SUBCASE("tolerances must be positive") {
    cfg.tol.normalization = 0.0;
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  }
  SUBCASE("the slope tolerance must be negative") {
    cfg.tol.truncation_slope = 0.5;
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  }
  SUBCASE("quadrature spec is validated too") {
    cfg.quad.eps_inner = 20.0;  // above lambda_outer
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  }
}

TEST_CASE("field selection and codes") {
  RunConfig cfg;
  cfg.field = "r";
  CHECK(selected_fields(cfg) == std::vector<Field>{Field::Real});
  cfg.field = "c";
  CHECK(selected_fields(cfg) == std::vector<Field>{Field::Complex});
  cfg.field = "h";
  CHECK(selected_fields(cfg) == std::vector<Field>{Field::Quaternion});
  cfg.field = "all";
  CHECK(selected_fields(cfg) ==
        std::vector<Field>{Field::Real, Field::Complex, Field::Quaternion});
  CHECK(std::string(field_code(Field::Real)) == "r");
  CHECK(std::string(field_code(Field::Complex)) == "c");
  CHECK(std::string(field_code(Field::Quaternion)) == "h");
}

TEST_CASE("report rendering") {
  RunConfig cfg;
  cfg.field = "c";
  cfg.trials = 5;
  cfg.seed = 7;

  CheckResult r;
  r.name = "isometry";
  r.samples = 125;
  r.max_residual = 3.25e-16;
  r.tol = 1e-8;
  r.pass = true;
  r.status = "pass";
  r.seconds = 0.25;

  SUBCASE("shape and versioning") {
    nlohmann::ordered_json rep = report_header("isometry", cfg);
    CHECK(rep["schema_version"] == kSchemaVersion);
    CHECK(rep["command"] == "isometry");
    CHECK(rep["field"] == "c");
    CHECK(rep["params"]["seed"] == 7);
    CHECK(rep["params"]["trials"] == 5);
    CHECK(rep["params"]["quad"]["nodes"] == 80);
    nlohmann::ordered_json cj = check_json(r, "c");
    CHECK(cj["name"] == "isometry");
    CHECK(cj["pass"] == true);
    CHECK(cj["status"] == "pass");
    CHECK(!cj.contains("note"));      // empty notes stay out of the report
    CHECK(!cj.contains("seconds"));   // timing lives under the timing key only
    r.note = "whatever";
    CHECK(check_json(r, "c").contains("note"));
  }

  SUBCASE("identical inputs render identical bytes") {
    nlohmann::ordered_json a = report_header("isometry", cfg);
    a["checks"] = nlohmann::ordered_json::array({check_json(r, "c")});
    nlohmann::ordered_json b = report_header("isometry", cfg);
    b["checks"] = nlohmann::ordered_json::array({check_json(r, "c")});
    CHECK(dump_report(a) == dump_report(b));
    CHECK(dump_report(a).back() == '\n');
  }

  SUBCASE("strip_timing removes exactly the timing object") {
    nlohmann::ordered_json a = report_header("verify", cfg);
    a["checks"] = nlohmann::ordered_json::array({check_json(r, "c")});
    std::string without = dump_report(a);
    nlohmann::ordered_json timing;
    timing["total_seconds"] = 1.25;
    a["timing"] = timing;
    std::string with = dump_report(a);
    CHECK(with != without);
    CHECK(strip_timing(with) == without);
    CHECK(strip_timing(without) == without);  // idempotent
  }
}

TEST_CASE("scan table rendering") {
  std::vector<ScanRow> rows = {
      {Field::Real, 1, 0.25, 2.0, {0.5, -0.125}},
      {Field::Complex, -2, 0.0, 2.718281828459045, {0.0, 1.0}},
  };
  std::string csv = render_scan_csv(rows);
  CHECK(csv.find("# schema_version 1\n") == 0);
  CHECK(csv.find("field,sigma,n,t,R,re,im\n") != std::string::npos);
  // the line keeps sigma in the second column and leaves n blank
  CHECK(csv.find("r,1,,0.25,2,0.5,-0.125\n") != std::string::npos);
  // the plane fills n and leaves sigma blank
  CHECK(csv.find("c,,-2,0,2.718281828459045") != std::string::npos);
}

TEST_CASE("per-check seeds") {
  // the same slot always derives the same generator seed, different slots
  // different ones, and the run seed moves all of them
  CHECK(check_seed(42, CheckId::Isometry, Field::Real) ==
        check_seed(42, CheckId::Isometry, Field::Real));
  CHECK(check_seed(42, CheckId::Isometry, Field::Real) !=
        check_seed(42, CheckId::Isometry, Field::Complex));
  CHECK(check_seed(42, CheckId::Isometry, Field::Real) !=
        check_seed(42, CheckId::Equivariance, Field::Real));
  CHECK(check_seed(42, CheckId::Isometry, Field::Real) !=
        check_seed(43, CheckId::Isometry, Field::Real));
}
