#include "linecurve/linecurve.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "linecurve/errors.hpp"
#include "linecurve/report.hpp"
#include "linecurve/selftest.hpp"

struct lc_surface {
  linecurve::report::LoadedConfig config;
};

namespace {

thread_local std::string g_last_error;

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lc_status status_of(const linecurve::Error& e) {
  using linecurve::ErrorCode;
  switch (e.code()) {
    case ErrorCode::SchemaError:
      return LC_SCHEMA_ERROR;
    case ErrorCode::NonConvex:
      return LC_NON_CONVEX;
    case ErrorCode::NoIntersection:
      return LC_NO_INTERSECTION;
    case ErrorCode::TangentialContact:
      return LC_TANGENTIAL_CONTACT;
    default:
      return LC_ERROR;
  }
}

template <typename Fn>
lc_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return LC_OK;
  } catch (const linecurve::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LC_ERROR;
  }
}

bool parse_seed(const char* text, linecurve::report::IntersectOptions& opt) {
  double v[4];
  char* cursor = const_cast<char*>(text);
  for (int k = 0; k < 4; ++k) {
    char* end = nullptr;
    v[k] = std::strtod(cursor, &end);
    if (end == cursor) return false;
    cursor = end;
    if (k < 3) {
      if (*cursor != ',') return false;
      ++cursor;
    }
  }
  if (*cursor != '\0') return false;
  opt.have_seed = true;
  opt.xi1 = {v[0], v[1]};
  opt.xi2 = {v[2], v[3]};
  return true;
}

}  // namespace

extern "C" {

const char* lc_version(void) { return linecurve::report::kToolVersion; }

const char* lc_last_error(void) { return g_last_error.c_str(); }

void lc_string_free(char* s) { std::free(s); }

lc_status lc_surface_create(const char* config_json, lc_surface** out) {
  if (config_json == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return LC_ERROR;
  }
  *out = nullptr;
  return guarded([&] {
    *out = new lc_surface{
        linecurve::report::parse_surface_config(config_json)};
  });
}

void lc_surface_destroy(lc_surface* s) { delete s; }

lc_status lc_surface_info(const lc_surface* s, int grid_n, char** report_json,
                          char** census_csv) {
  if (s == nullptr) {
    g_last_error = "null surface";
    return LC_ERROR;
  }
  if (report_json != nullptr) *report_json = nullptr;
  if (census_csv != nullptr) *census_csv = nullptr;
  return guarded([&] {
    auto tol = linecurve::report::Tolerances::from_env();
    auto result = linecurve::report::surface_info(
        s->config, grid_n > 0 ? grid_n : 120, tol);
    if (report_json != nullptr)
      *report_json = copy_string(result.report.dump(2) + "\n");
    if (census_csv != nullptr && result.has_census)
      *census_csv = copy_string(result.census_csv);
  });
}

lc_status lc_intersect(const lc_surface* s1, const lc_surface* s2,
                       const char* seed, double step, char** report_json,
                       char** curve_csv) {
  if (s1 == nullptr || s2 == nullptr) {
    g_last_error = "null surface";
    return LC_ERROR;
  }
  if (report_json != nullptr) *report_json = nullptr;
  if (curve_csv != nullptr) *curve_csv = nullptr;
  linecurve::report::IntersectOptions opt;
  if (step > 0.0) opt.step = step;
  if (seed != nullptr && !parse_seed(seed, opt)) {
    g_last_error = "seed must be four comma-separated numbers: re,im,re,im";
    return LC_SCHEMA_ERROR;
  }
  return guarded([&] {
    auto tol = linecurve::report::Tolerances::from_env();
    auto result =
        linecurve::report::intersect(s1->config, s2->config, opt, tol);
    if (report_json != nullptr)
      *report_json = copy_string(result.report.dump(2) + "\n");
    if (curve_csv != nullptr) *curve_csv = copy_string(result.curve_csv);
  });
}

lc_status lc_selftest(char** table) {
  if (table != nullptr) *table = nullptr;
  auto result = linecurve::selftest::run();
  if (table != nullptr) *table = copy_string(result.table);
  if (!result.ok) {
    g_last_error = "selftest failed";
    return LC_ERROR;
  }
  return LC_OK;
}

}  // extern "C"
