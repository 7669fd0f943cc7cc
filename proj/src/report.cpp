#include "linecurve/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "linecurve/checks.hpp"
#include "linecurve/errors.hpp"
#include "linecurve/foliation.hpp"
#include "linecurve/trace.hpp"

namespace linecurve::report {

namespace {

using nlohmann::ordered_json;

double env_override(const char* name, double fallback) {
  const char* text = std::getenv(name);
  if (text == nullptr || *text == '\0') return fallback;
  char* end = nullptr;
  double v = std::strtod(text, &end);
  if (end == nullptr || *end != '\0' || !std::isfinite(v) || v <= 0.0)
    fail(ErrorCode::SchemaError,
         std::string("invalid tolerance override ") + name + "=" + text);
  return v;
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int k = 15; k >= 0; --k) {
    buf[k] = digits[v & 0xf];
    v >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

// --- strict config parsing -------------------------------------------------

[[noreturn]] void schema_fail(const std::string& what) {
  fail(ErrorCode::SchemaError, "config: " + what);
}

void check_keys(const ordered_json& obj,
                const std::vector<std::string>& allowed,
                const std::vector<std::string>& required) {
  if (!obj.is_object()) schema_fail("expected a JSON object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const auto& key : allowed) ok = ok || key == item.key();
    if (!ok) schema_fail("unknown field \"" + item.key() + "\"");
  }
  for (const auto& key : required)
    if (!obj.contains(key)) schema_fail("missing field \"" + key + "\"");
}

double number(const ordered_json& j, const std::string& where) {
  if (!j.is_number()) schema_fail(where + " must be a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) schema_fail(where + " must be finite");
  return v;
}

Vec3 vec3(const ordered_json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3)
    schema_fail(where + " must be an array of 3 numbers");
  return {number(j[0], where), number(j[1], where), number(j[2], where)};
}

Mat3 mat3(const ordered_json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3)
    schema_fail(where + " must be a 3x3 array of numbers");
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    Vec3 row = vec3(j[r], where);
    for (int c = 0; c < 3; ++c) m(r, c) = row[c];
  }
  return m;
}

surface::SupportSurface surface_of(const ordered_json& cfg) {
  if (!cfg.is_object() || !cfg.contains("type") || !cfg["type"].is_string())
    schema_fail("expected an object with a string \"type\"");
  std::string type = cfg["type"].get<std::string>();
  if (type == "sphere") {
    check_keys(cfg, {"type", "center", "radius"}, {"center", "radius"});
    double radius = number(cfg["radius"], "radius");
    if (radius <= 0.0) schema_fail("radius must be positive");
    return surface::SupportSurface::sphere(vec3(cfg["center"], "center"),
                                           radius);
  }
  if (type == "ellipsoid") {
    check_keys(cfg, {"type", "semiaxes", "center", "rotation"}, {"semiaxes"});
    Vec3 axes = vec3(cfg["semiaxes"], "semiaxes");
    if (axes.minCoeff() <= 0.0) schema_fail("semiaxes must be positive");
    Mat3 rot = cfg.contains("rotation") ? mat3(cfg["rotation"], "rotation")
                                        : Mat3::Identity();
    Vec3 center =
        cfg.contains("center") ? vec3(cfg["center"], "center") : Vec3::Zero();
    try {
      return surface::SupportSurface::ellipsoid(axes, rot, center);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotOrthonormal)
        schema_fail("rotation must be a proper rotation matrix");
      throw;
    }
  }
  if (type == "harmonic") {
    check_keys(cfg, {"type", "base", "terms"}, {"base", "terms"});
    double base = number(cfg["base"], "base");
    if (base <= 0.0) schema_fail("base must be positive");
    if (!cfg["terms"].is_array()) schema_fail("terms must be an array");
    std::vector<surface::HarmonicTerm> terms;
    for (const auto& t : cfg["terms"]) {
      check_keys(t, {"l", "m", "c"}, {"l", "m", "c"});
      if (!t["l"].is_number_integer() || !t["m"].is_number_integer())
        schema_fail("term degrees l, m must be integers");
      surface::HarmonicTerm term;
      term.l = t["l"].get<int>();
      term.m = t["m"].get<int>();
      term.coeff = number(t["c"], "term coefficient c");
      if (term.l < 0 || term.l > 6 || std::abs(term.m) > term.l)
        schema_fail("term degrees must satisfy 0 <= l <= 6, |m| <= l");
      terms.push_back(term);
    }
    return surface::SupportSurface::harmonic(base, terms);
  }
  schema_fail("unknown surface type \"" + type + "\"");
}

ordered_json header_json(const Tolerances& tol) {
  ordered_json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["tolerances"] = tolerances_json(tol);
  return j;
}

ordered_json config_json(const LoadedConfig& cfg) {
  return ordered_json{{"digest", cfg.digest}, {"spec", cfg.config}};
}

void csv_row(std::string& out, const std::vector<double>& cells) {
  for (size_t k = 0; k < cells.size(); ++k) {
    if (k > 0) out += ',';
    out += format_double(cells[k]);
  }
  out += '\n';
}

}  // namespace

Tolerances Tolerances::from_env() {
  Tolerances t;
  t.constant_angle = env_override("LINECURVE_TOL_CONSTANT_ANGLE", t.constant_angle);
  t.closure_gap = env_override("LINECURVE_TOL_CLOSURE_GAP", t.closure_gap);
  t.defect_final = env_override("LINECURVE_TOL_DEFECT_FINAL", t.defect_final);
  t.sigma_kappa = env_override("LINECURVE_TOL_SIGMA_KAPPA", t.sigma_kappa);
  t.derivative_identity =
      env_override("LINECURVE_TOL_DERIVATIVE_IDENTITY", t.derivative_identity);
  t.derivation_step =
      env_override("LINECURVE_TOL_DERIVATION_STEP", t.derivation_step);
  t.angle_derivative =
      env_override("LINECURVE_TOL_ANGLE_DERIVATIVE", t.angle_derivative);
  t.torsion = env_override("LINECURVE_TOL_TORSION", t.torsion);
  t.line_defect = env_override("LINECURVE_TOL_LINE_DEFECT", t.line_defect);
  t.umbilic_residual =
      env_override("LINECURVE_TOL_UMBILIC_RESIDUAL", t.umbilic_residual);
  return t;
}

nlohmann::ordered_json tolerances_json(const Tolerances& tol) {
  return ordered_json{{"constant_angle", tol.constant_angle},
                      {"closure_gap", tol.closure_gap},
                      {"defect_final", tol.defect_final},
                      {"sigma_kappa", tol.sigma_kappa},
                      {"derivative_identity", tol.derivative_identity},
                      {"derivation_step", tol.derivation_step},
                      {"angle_derivative", tol.angle_derivative},
                      {"torsion", tol.torsion},
                      {"line_defect", tol.line_defect},
                      {"umbilic_residual", tol.umbilic_residual}};
}

LoadedConfig parse_surface_config(const std::string& json_text) {
  ordered_json cfg;
  try {
    cfg = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::SchemaError, std::string("config: ") + e.what());
  }
  surface::SupportSurface s = surface_of(cfg);
  auto convexity = surface::convexity_check(s, 64);
  if (!convexity.convex)
    fail(ErrorCode::NonConvex,
         "config: the surface fails the convexity screen (margin " +
             format_double(convexity.margin) + ")");
  // Digest of the canonical (key-sorted) document, independent of field order.
  std::string canonical = nlohmann::json(cfg).dump();
  return LoadedConfig{cfg, hex64(fnv1a(canonical)), std::move(s)};
}

LoadedConfig load_surface_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::SchemaError, "config: cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_surface_config(text.str());
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(ErrorCode::SchemaError, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

SurfaceInfoResult surface_info(const LoadedConfig& cfg, int grid_n,
                               const Tolerances& tol) {
  SurfaceInfoResult out;
  ordered_json j = header_json(tol);
  j["command"] = "surface-info";
  j["config"] = config_json(cfg);

  auto convexity = surface::convexity_check(cfg.surface, grid_n);
  j["convexity"] = {{"convex", convexity.convex},
                    {"margin", convexity.margin},
                    {"min_support", convexity.min_support}};

  foliation::UmbilicSearchOptions opt;
  opt.grid_n = grid_n;
  try {
    auto census = foliation::find_umbilics(cfg.surface, opt);
    double total = 0.0;
    ordered_json list = ordered_json::array();
    std::string csv = "xi_re,xi_im,index,residual\n";
    for (const auto& u : census) {
      total += u.index;
      list.push_back(ordered_json{{"xi_re", u.xi.real()},
                                  {"xi_im", u.xi.imag()},
                                  {"index", u.index},
                                  {"residual", u.residual},
                                  {"residual_ok", u.residual <= tol.umbilic_residual}});
      csv_row(csv, {u.xi.real(), u.xi.imag(), u.index, u.residual});
    }
    j["census_degenerate"] = false;
    j["umbilics"] = std::move(list);
    j["total_index"] = total;
    out.census_csv = std::move(csv);
    out.has_census = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateSurface) throw;
    j["census_degenerate"] = true;
    j["census_reason"] = e.what();
  }
  out.report = std::move(j);
  return out;
}

IntersectResult intersect(const LoadedConfig& cfg1, const LoadedConfig& cfg2,
                          const IntersectOptions& opt, const Tolerances& tol) {
  trace::Seed seed =
      opt.have_seed
          ? trace::polish_seed(cfg1.surface, cfg2.surface, opt.xi1, opt.xi2)
          : trace::find_seed(cfg1.surface, cfg2.surface);
  trace::TraceOptions topt;
  topt.step = opt.step;
  auto curve = trace::trace_curve(cfg1.surface, cfg2.surface, seed, topt);
  auto verdict =
      checks::main_theorem_verdict(cfg1.surface, cfg2.surface, curve);

  IntersectResult out;
  std::string csv =
      "u,s,x,y,z,xi1_re,xi1_im,xi2_re,xi2_im,alpha,A1,A2,beta,phi1,phi2,"
      "tau_g1,tau_g2,defect_final,defect_sigma_kappa\n";
  for (const auto& smp : curve.samples)
    csv_row(csv,
            {smp.u, smp.s, smp.point[0], smp.point[1], smp.point[2],
             smp.xi1.real(), smp.xi1.imag(), smp.xi2.real(), smp.xi2.imag(),
             smp.alpha, smp.A1, smp.A2, smp.beta, smp.phi1, smp.phi2,
             smp.tau_g1, smp.tau_g2, checks::defect_final_sample(smp),
             checks::sigma_kappa_sample(smp)});
  out.curve_csv = std::move(csv);

  ordered_json j = header_json(tol);
  j["command"] = "intersect";
  j["configs"] = ordered_json::array({config_json(cfg1), config_json(cfg2)});
  j["seed"] = {{"xi1_re", seed.xi1.real()},
               {"xi1_im", seed.xi1.imag()},
               {"xi2_re", seed.xi2.real()},
               {"xi2_im", seed.xi2.imag()}};
  j["curve"] = {{"samples", curve.samples.size()},
                {"closed", curve.closed},
                {"closure_gap", curve.closure_gap},
                {"closure_gap_ok", curve.closure_gap <= tol.closure_gap},
                {"total_length", curve.total_length},
                {"step", opt.step}};

  ordered_json v;
  v["constant_angle"] = verdict.constant_angle;
  v["angle_deviation"] = verdict.angle_deviation;
  v["umbilic_free"] =
      ordered_json::array({verdict.umbilic_free1, verdict.umbilic_free2});
  v["windings"] = {{"n", verdict.n}, {"m", verdict.m}};
  v["parity_verdict"] = checks::parity_verdict_name(verdict.parity_verdict);
  if (!verdict.not_applicable_reason.empty())
    v["not_applicable_reason"] = verdict.not_applicable_reason;
  ordered_json residuals;
  for (const auto& [key, value] : verdict.residuals) residuals[key] = value;
  v["residuals"] = std::move(residuals);
  v["defect_final_max"] = verdict.defect_final_max;
  v["torsion_gap_max"] = verdict.torsion_gap_max;
  ordered_json passes;
  auto mark = [&](const std::string& key, double threshold) {
    if (verdict.residuals.count(key))
      passes[key] = verdict.residuals.at(key) <= threshold;
  };
  mark("defect_final", tol.defect_final);
  mark("sigma_kappa_dressed", tol.sigma_kappa);
  mark("sigma_kappa_a2", tol.sigma_kappa);
  mark("deta_1", tol.derivative_identity);
  mark("dr_1", tol.derivative_identity);
  mark("deta_2", tol.derivative_identity);
  mark("dr_2", tol.derivative_identity);
  mark("las2", tol.derivative_identity);
  mark("xi2dot", tol.derivation_step);
  mark("long_relation", tol.derivation_step);
  mark("angle_derivative", tol.angle_derivative);
  mark("line_defect_1", tol.line_defect);
  mark("line_defect_2", tol.line_defect);
  v["passes"] = std::move(passes);
  j["verification"] = std::move(v);
  out.report = std::move(j);
  return out;
}

}  // namespace linecurve::report
