// Command-line front end for the ahm shared library. All functionality is
// reached through the public C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ahm/ahm.h"
#include "json.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

int write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  // Write to a scratch file first so readers never see a partial report.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "cannot open output file: " << path << "\n";
      return 2;
    }
    out << text;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::cerr << "cannot move report into place: " << path << "\n";
    return 2;
  }
  return 0;
}

std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.size() != 3) throw CLI::ValidationError("--grid expects R,XI,PHI");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asymptotically Horowitz-Myers metric toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json", grid_text;
  std::vector<std::string> spec_paths;
  double tol = -1.0, amplitude = -1.0;
  long long seed = -1;
  int samples = -1;
  std::string n_range_text, s_range_text;
  double r_breve0_override = 0.0;
  int rows = 256;

  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_path, "output path ('-' for stdout)");
  app.add_option("--format", format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--grid", grid_text, "grid node counts R,XI,PHI");
  app.add_option("--tol", tol, "tolerance override");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--samples", samples, "fuzz sample count");
  app.add_option("--amplitude", amplitude, "fuzz perturbation amplitude");

  auto add_specs = [&](CLI::App* sub) {
    sub->fallthrough();  // global flags may follow the subcommand
    sub->add_option("specs", spec_paths, "metric spec files");
  };

  CLI::App* v = app.add_subcommand("validate", "structural diagnostics");
  add_specs(v);
  CLI::App* c = app.add_subcommand("curvature", "scalar curvature grid vs FD oracle");
  add_specs(c);
  CLI::App* e = app.add_subcommand("energy", "total energy and difference");
  add_specs(e);
  CLI::App* g = app.add_subcommand("gauge", "radial gauge table / diagnostics");
  add_specs(g);
  g->add_option("--rows", rows, "table rows");
  CLI::App* vf = app.add_subcommand("verify", "full positive-energy report");
  add_specs(vf);
  vf->add_option("--r-breve0", r_breve0_override,
                 "override the matched reference radius");
  CLI::App* sw = app.add_subcommand("sweep", "elementary inequality table");
  sw->fallthrough();
  sw->add_option("--n", n_range_text, "dimension range lo..hi");
  sw->add_option("--s", s_range_text, "s range lo:hi:step");
  CLI::App* fz = app.add_subcommand("fuzz", "random admissible perturbations");
  fz->fallthrough();
  fz->add_option("--n", n_range_text, "dimension (single integer)");

  CLI11_PARSE(app, argc, argv);

  ordered_json cfg = ordered_json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot read config: " << config_path << "\n";
      return 2;
    }
    try {
      in >> cfg;
    } catch (const std::exception& ex) {
      std::cerr << "config parse error: " << ex.what() << "\n";
      return 2;
    }
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    cfg["subcommand"] = sub->get_name();
    if (!spec_paths.empty()) cfg["specs"] = spec_paths;
    if (!format.empty()) cfg["format"] = format;
    if (!grid_text.empty()) cfg["grid"] = parse_grid(grid_text);
    if (tol >= 0) cfg["tol"] = tol;
    if (seed >= 0) cfg["seed"] = seed;
    if (samples >= 0) cfg["samples"] = samples;
    if (amplitude >= 0) cfg["amplitude"] = amplitude;
    if (r_breve0_override > 0) cfg["r_breve0_override"] = r_breve0_override;
    if (sub->get_name() == "gauge") cfg["rows"] = rows;
    if (sub->get_name() == "sweep") {
      if (!n_range_text.empty()) {
        const auto dots = n_range_text.find("..");
        if (dots == std::string::npos)
          throw std::runtime_error("--n expects lo..hi");
        cfg["n_range"] = {std::stoi(n_range_text.substr(0, dots)),
                          std::stoi(n_range_text.substr(dots + 2))};
      }
      if (!s_range_text.empty()) {
        std::vector<double> sr;
        std::stringstream ss(s_range_text);
        std::string item;
        while (std::getline(ss, item, ':')) sr.push_back(std::stod(item));
        if (sr.size() != 3) throw std::runtime_error("--s expects lo:hi:step");
        cfg["s_range"] = sr;
      }
    }
    if (sub->get_name() == "fuzz" && !n_range_text.empty()) {
      ordered_json bg = cfg.contains("background") ? cfg["background"]
                                                   : ordered_json::object();
      bg["n"] = std::stoi(n_range_text);
      if (!bg.contains("a")) bg["a"] = 0.15;
      if (!bg.contains("r0")) bg["r0"] = 1.0;
      if (!bg.contains("lambda"))
        bg["lambda"] = std::vector<double>(size_t(bg["n"].get<int>() - 2), 1.0);
      cfg["background"] = bg;
    }
  } catch (const std::exception& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  }

  char* output = nullptr;
  int checks_failed = 0;
  const int rc = ahm_run(cfg.dump().c_str(), &output, &checks_failed);

  if (rc != AHM_OK && rc != AHM_ERR_CHECKS) {
    std::cerr << "error: " << ahm_last_error() << "\n";
    if (output) ahm_string_free(output);
    return 2;
  }
  const int wrc = write_output(output ? output : "", out_path);
  if (output) ahm_string_free(output);
  if (wrc != 0) return wrc;
  if (rc == AHM_ERR_CHECKS) {
    std::cerr << checks_failed << " check(s) failed\n";
    return 1;
  }
  return 0;
}
