// Command-line front end. Links only the plain-C library interface; all
// geometry lives behind it.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "linecurve/linecurve.h"

namespace {

namespace fs = std::filesystem;

struct StringOwner {
  char* s = nullptr;
  ~StringOwner() { lc_string_free(s); }
};

struct SurfaceOwner {
  lc_surface* s = nullptr;
  ~SurfaceOwner() { lc_surface_destroy(s); }
};

int fail_with(lc_status status) {
  std::cerr << "error: " << lc_last_error() << "\n";
  return static_cast<int>(status);
}

// Write-temp-rename so a crash never leaves a partial file behind.
void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

int load_surface(const std::string& path, SurfaceOwner& owner) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return LC_SCHEMA_ERROR;
  }
  std::ostringstream text;
  text << in.rdbuf();
  lc_status status = lc_surface_create(text.str().c_str(), &owner.s);
  if (status != LC_OK) return fail_with(status);
  return LC_OK;
}

int run_surface_info(const std::string& cfg_path, int grid,
                     const std::string& out_dir) {
  SurfaceOwner surface;
  if (int rc = load_surface(cfg_path, surface); rc != LC_OK) return rc;
  StringOwner report, census;
  lc_status status = lc_surface_info(surface.s, grid, &report.s, &census.s);
  if (status != LC_OK) return fail_with(status);
  std::cout << report.s;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_atomic(fs::path(out_dir) / "surface_info.json", report.s);
    if (census.s != nullptr)
      write_atomic(fs::path(out_dir) / "umbilics.csv", census.s);
  }
  return 0;
}

int run_intersect(const std::string& cfg1_path, const std::string& cfg2_path,
                  const std::string& seed, double step,
                  const std::string& out_dir) {
  SurfaceOwner s1, s2;
  if (int rc = load_surface(cfg1_path, s1); rc != LC_OK) return rc;
  if (int rc = load_surface(cfg2_path, s2); rc != LC_OK) return rc;
  StringOwner report, curve;
  lc_status status = lc_intersect(s1.s, s2.s,
                                  seed.empty() ? nullptr : seed.c_str(), step,
                                  &report.s, &curve.s);
  if (status != LC_OK) return fail_with(status);
  std::cout << report.s;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_atomic(fs::path(out_dir) / "intersect.json", report.s);
    write_atomic(fs::path(out_dir) / "curve.csv", curve.s);
  }
  return 0;
}

int run_selftest() {
  StringOwner table;
  lc_status status = lc_selftest(&table.s);
  if (table.s != nullptr) std::cout << table.s;
  return status == LC_OK ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oriented-line-space intersection analyzer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", []{ return std::string(lc_version()); });

  std::string cfg, cfg1, cfg2, out_dir, seed;
  int grid = 120;
  double step = 0.0;

  auto* info = app.add_subcommand(
      "surface-info", "Convexity screen and umbilic census of one surface");
  info->add_option("cfg", cfg, "surface config JSON")->required();
  info->add_option("--grid", grid, "census grid resolution");
  info->add_option("--out", out_dir, "directory for report and census files");

  auto* inter = app.add_subcommand(
      "intersect", "Trace the intersection curve and verify the relations");
  inter->add_option("cfg1", cfg1, "first surface config JSON")->required();
  inter->add_option("cfg2", cfg2, "second surface config JSON")->required();
  inter->add_option("--seed", seed, "chart seed guess re,im,re,im");
  inter->add_option("--step", step, "continuation step");
  inter->add_option("--out", out_dir, "directory for report and curve files");

  auto* self =
      app.add_subcommand("selftest", "Run the embedded invariant audits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (info->parsed()) return run_surface_info(cfg, grid, out_dir);
    if (inter->parsed()) return run_intersect(cfg1, cfg2, seed, step, out_dir);
    if (self->parsed()) return run_selftest();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
