#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "linecurve/errors.hpp"
#include "linecurve/linecurve.h"
#include "linecurve/report.hpp"
#include "linecurve/selftest.hpp"

using namespace linecurve;

namespace {

ErrorCode parse_code(const std::string& text) {
  try {
    report::parse_surface_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse failure");
  return ErrorCode::SchemaError;
}

}  // namespace

TEST_CASE("config parsing accepts the schema") {
  auto sphere = report::parse_surface_config(
      R"({"type":"sphere","center":[0,0,0.5],"radius":1})");
  CHECK(sphere.surface.is_round_sphere());
  CHECK(sphere.digest.size() == 16);

  auto ellipsoid = report::parse_surface_config(
      R"({"type":"ellipsoid","semiaxes":[1,1.2,1.5],
          "rotation":[[1,0,0],[0,0,-1],[0,1,0]],"center":[0.1,0,0]})");
  CHECK_FALSE(ellipsoid.surface.is_round_sphere());

  auto harmonic = report::parse_surface_config(
      R"({"type":"harmonic","base":1.0,"terms":[{"l":3,"m":1,"c":0.02}]})");
  CHECK_FALSE(harmonic.surface.is_round_sphere());
}

TEST_CASE("config parsing rejects out-of-schema input") {
  CHECK(parse_code("not json at all") == ErrorCode::SchemaError);
  CHECK(parse_code(R"({"radius":1})") == ErrorCode::SchemaError);
  CHECK(parse_code(R"({"type":"cube","size":1})") == ErrorCode::SchemaError);
  // Unknown fields are rejected, not ignored.
  CHECK(parse_code(R"({"type":"sphere","center":[0,0,0],"radius":1,"x":0})") ==
        ErrorCode::SchemaError);
  CHECK(parse_code(R"({"type":"sphere","center":[0,0],"radius":1})") ==
        ErrorCode::SchemaError);
  CHECK(parse_code(R"({"type":"sphere","center":[0,0,0],"radius":-1})") ==
        ErrorCode::SchemaError);
  CHECK(parse_code(R"({"type":"ellipsoid","semiaxes":[1,1,1],
                       "rotation":[[2,0,0],[0,1,0],[0,0,1]]})") ==
        ErrorCode::SchemaError);
  CHECK(parse_code(R"({"type":"harmonic","base":1.0,
                       "terms":[{"l":7,"m":0,"c":0.1}]})") ==
        ErrorCode::SchemaError);
  CHECK(parse_code(R"({"type":"harmonic","base":1.0,
                       "terms":[{"l":2,"m":3,"c":0.1}]})") ==
        ErrorCode::SchemaError);
  // Schema-valid but violently non-convex.
  CHECK(parse_code(R"({"type":"harmonic","base":1.0,
                       "terms":[{"l":4,"m":0,"c":0.5}]})") ==
        ErrorCode::NonConvex);
}

TEST_CASE("digest is canonical over key order") {
  auto a = report::parse_surface_config(
      R"({"type":"sphere","center":[0,0,0.5],"radius":1})");
  auto b = report::parse_surface_config(
      R"({"radius":1,"center":[0,0,0.5],"type":"sphere"})");
  CHECK(a.digest == b.digest);
  auto c = report::parse_surface_config(
      R"({"type":"sphere","center":[0,0,0.5],"radius":2})");
  CHECK(a.digest != c.digest);
}

TEST_CASE("shortest round-trip decimal formatting") {
  CHECK(report::format_double(0.1) == "0.1");
  CHECK(report::format_double(1.0) == "1");
  CHECK(report::format_double(-0.0) == "0");
  CHECK(report::format_double(0.30000000000000004) == "0.30000000000000004");
  for (double v : {1.0 / 3.0, 2.5e-17, -123.456, 6.02e23}) {
    CHECK(std::stod(report::format_double(v)) == v);
  }
}

TEST_CASE("atomic file write") {
  auto dir = std::filesystem::temp_directory_path() / "linecurve_report_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "out.txt").string();
  report::write_file_atomic(path, "hello\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "hello");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
}

TEST_CASE("tolerance environment overrides") {
  CHECK(report::Tolerances{}.defect_final == 1e-6);
  setenv("LINECURVE_TOL_DEFECT_FINAL", "1e-5", 1);
  CHECK(report::Tolerances::from_env().defect_final == 1e-5);
  setenv("LINECURVE_TOL_DEFECT_FINAL", "bogus", 1);
  CHECK_THROWS_AS(report::Tolerances::from_env(), Error);
  unsetenv("LINECURVE_TOL_DEFECT_FINAL");
  CHECK(report::Tolerances::from_env().defect_final == 1e-6);
}

TEST_CASE("surface-info report") {
  auto cfg = report::parse_surface_config(
      R"({"type":"ellipsoid","semiaxes":[1,1.2,1.5]})");
  auto result = report::surface_info(cfg, 120, report::Tolerances{});
  CHECK(result.has_census);
  CHECK(result.report["convexity"]["convex"] == true);
  CHECK(result.report["umbilics"].size() == 4);
  CHECK(result.report["total_index"] == 2.0);
  CHECK(result.census_csv.rfind("xi_re,xi_im,index,residual\n", 0) == 0);

  auto sphere = report::parse_surface_config(
      R"({"type":"sphere","center":[0,0,0],"radius":1})");
  auto degenerate = report::surface_info(sphere, 120, report::Tolerances{});
  CHECK_FALSE(degenerate.has_census);
  CHECK(degenerate.report["census_degenerate"] == true);
}

TEST_CASE("intersect report is deterministic") {
  auto cfg1 = report::parse_surface_config(
      R"({"type":"ellipsoid","semiaxes":[1,1,1.4]})");
  auto cfg2 = report::parse_surface_config(
      R"({"type":"ellipsoid","semiaxes":[1,1,1.1],"center":[0,0,0.4]})");
  auto first =
      report::intersect(cfg1, cfg2, report::IntersectOptions{},
                        report::Tolerances{});
  auto second =
      report::intersect(cfg1, cfg2, report::IntersectOptions{},
                        report::Tolerances{});
  CHECK(first.curve_csv == second.curve_csv);
  CHECK(first.report.dump() == second.report.dump());
  CHECK(first.report["verification"]["parity_verdict"] ==
        "ConsistentBothOrientable");
  CHECK(first.curve_csv.rfind(
            "u,s,x,y,z,xi1_re,xi1_im,xi2_re,xi2_im,alpha,A1,A2,beta,"
            "phi1,phi2,tau_g1,tau_g2,defect_final,defect_sigma_kappa\n",
            0) == 0);
  for (const auto& [key, pass] :
       first.report["verification"]["passes"].items()) {
    INFO(key);
    CHECK(pass == true);
  }
}

TEST_CASE("C API round trip") {
  lc_surface* s1 = nullptr;
  lc_surface* s2 = nullptr;
  REQUIRE(lc_surface_create(
              R"({"type":"ellipsoid","semiaxes":[1,1,1.4]})", &s1) == LC_OK);
  REQUIRE(lc_surface_create(
              R"({"type":"ellipsoid","semiaxes":[1,1,1.1],"center":[0,0,0.4]})",
              &s2) == LC_OK);

  char* report_json = nullptr;
  char* census = nullptr;
  CHECK(lc_surface_info(s1, 120, &report_json, &census) == LC_OK);
  CHECK(report_json != nullptr);
  CHECK(census != nullptr);
  lc_string_free(report_json);
  lc_string_free(census);

  char* curve = nullptr;
  report_json = nullptr;
  CHECK(lc_intersect(s1, s2, nullptr, 0.0, &report_json, &curve) == LC_OK);
  CHECK(std::string(curve).rfind("u,s,x,y,z,", 0) == 0);
  lc_string_free(report_json);
  lc_string_free(curve);

  CHECK(lc_intersect(s1, s2, "0.1,garbage", 0.0, nullptr, nullptr) ==
        LC_SCHEMA_ERROR);
  lc_surface_destroy(s1);
  lc_surface_destroy(s2);

  lc_surface* bad = nullptr;
  CHECK(lc_surface_create("{\"type\":\"cube\"}", &bad) == LC_SCHEMA_ERROR);
  CHECK(bad == nullptr);
  CHECK(std::string(lc_last_error()).find("unknown surface type") !=
        std::string::npos);

  lc_surface* far1 = nullptr;
  lc_surface* far2 = nullptr;
  REQUIRE(lc_surface_create(
              R"({"type":"sphere","center":[0,0,0],"radius":1})", &far1) ==
          LC_OK);
  REQUIRE(lc_surface_create(
              R"({"type":"sphere","center":[5,0,0],"radius":1})", &far2) ==
          LC_OK);
  CHECK(lc_intersect(far1, far2, nullptr, 0.0, nullptr, nullptr) ==
        LC_NO_INTERSECTION);
  lc_surface_destroy(far1);
  lc_surface_destroy(far2);

  CHECK(std::string(lc_version()) == report::kToolVersion);
}

TEST_CASE("selftest embedded suite") {
  unsetenv("LINECURVE_DEBUG_FLIP");
  auto clean = selftest::run();
  CHECK(clean.ok);
  CHECK(clean.table.find("FAIL") == std::string::npos);

  setenv("LINECURVE_DEBUG_FLIP", "pot1", 1);
  auto flipped = selftest::run();
  CHECK_FALSE(flipped.ok);
  CHECK(flipped.table.find("FAIL section-convention audit") !=
        std::string::npos);

  setenv("LINECURVE_DEBUG_FLIP", "cone_sign", 1);
  auto cone = selftest::run();
  CHECK_FALSE(cone.ok);
  CHECK(cone.table.find("FAIL cone-circle laws") != std::string::npos);

  unsetenv("LINECURVE_DEBUG_FLIP");
  CHECK(selftest::run().ok);
}
