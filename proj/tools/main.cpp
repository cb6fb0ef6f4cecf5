#include <complex>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "darksim/darkstates.hpp"
#include "darksim/models.hpp"
#include "darksim/plot.hpp"
#include "darksim/presets.hpp"
#include "darksim/scan.hpp"
#include "darksim/version.hpp"

namespace {

using darksim::ConfigError;

// Split "a,b,c" on top-level commas only, so "(re,im)" stays together.
std::vector<std::string> split_components(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::complex<double> parse_component(const std::string& tok) {
  std::string t = tok;
  t.erase(0, t.find_first_not_of(" \t"));
  t.erase(t.find_last_not_of(" \t") + 1);
  if (!t.empty() && t.front() == '(') {
    std::istringstream in(t);
    std::complex<double> c;
    in >> c;
    if (in.fail()) {
      throw ConfigError("cannot parse complex component '" + tok +
                        "'; expected (re,im)");
    }
    return c;
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size()) throw std::invalid_argument(t);
    return {v, 0.0};
  } catch (const std::exception&) {
    throw ConfigError("cannot parse field component '" + tok + "'");
  }
}

std::map<std::string, double> parse_params(const std::string& s) {
  std::map<std::string, double> out;
  if (s.empty()) return out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("model parameter '" + item + "' is not of form k=v");
    }
    try {
      out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse value in '" + item + "'");
    }
  }
  return out;
}

double need(const std::map<std::string, double>& p, const std::string& k) {
  const auto it = p.find(k);
  if (it == p.end()) {
    throw ConfigError("model parameter '" + k + "' is required");
  }
  return it->second;
}

double opt(const std::map<std::string, double>& p, const std::string& k,
           double fallback) {
  const auto it = p.find(k);
  return (it == p.end()) ? fallback : it->second;
}

int cmd_scan(const std::string& config_path, const std::string& out_path,
             const std::string& plot_path, int workers) {
  darksim::ScanSpec spec = darksim::load_scan_config(config_path);
  if (workers > 0) spec.workers = workers;
  const darksim::ScanResult res = darksim::run_scan(spec);
  darksim::write_csv(res, out_path);
  darksim::write_sidecar(res, out_path);

  if (!plot_path.empty()) {
    if (res.shape.size() == 1) {
      std::vector<double> x, y;
      for (const auto& r : res.records) {
        x.push_back(r.params[0]);
        y.push_back(r.pf);
      }
      darksim::write_line_svg(plot_path, x, y, res.axis_names[0],
                              "population", spec.axes[0].log);
    } else {
      const std::size_t inner = res.shape[1];
      std::vector<double> x, y, v;
      for (int j = 0; j < res.shape[1]; ++j) {
        x.push_back(res.records[j].params[1]);
      }
      for (int i = 0; i < res.shape[0]; ++i) {
        y.push_back(res.records[i * inner].params[0]);
      }
      for (const auto& r : res.records) v.push_back(r.pf);
      darksim::write_heatmap_svg(plot_path, x, y, v, res.axis_names[1],
                                 res.axis_names[0]);
    }
  }

  int errors = 0;
  std::string first_error;
  for (const auto& r : res.records) {
    if (!r.error.empty()) {
      ++errors;
      if (first_error.empty()) first_error = r.error;
    }
  }
  std::cerr << res.records.size() << " points -> " << out_path << "\n";
  if (errors > 0) {
    std::cerr << errors << " point(s) failed; first: " << first_error << "\n";
    return 2;
  }
  return 0;
}

int cmd_darkspace(double ji, double jf, const std::string& field_arg) {
  const auto parts = split_components(field_arg);
  if (parts.size() != 3) {
    throw ConfigError("--field needs exactly three components Ex,Ey,Ez");
  }
  const darksim::SphericalField f = darksim::spherical_components(
      parse_component(parts[0]), parse_component(parts[1]),
      parse_component(parts[2]));
  const darksim::DarkSpace ds = darksim::dark_space(
      darksim::HalfInt::from_double(ji), darksim::HalfInt::from_double(jf), f);

  nlohmann::json j;
  j["j_lower"] = ji;
  j["j_upper"] = jf;
  j["dimension"] = ds.dimension();
  nlohmann::json basis = nlohmann::json::array();
  for (int c = 0; c < ds.dimension(); ++c) {
    nlohmann::json vec = nlohmann::json::array();
    for (int m = 0; m < ds.basis.rows(); ++m) {
      vec.push_back({ds.basis(m, c).real(), ds.basis(m, c).imag()});
    }
    basis.push_back(vec);
  }
  j["basis"] = basis;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_model(const std::string& name, const std::string& params_arg) {
  const auto p = parse_params(params_arg);
  double value = 0;
  if (name == "two_level") {
    value = darksim::two_level_population(need(p, "omega"),
                                          opt(p, "detuning", 0));
  } else if (name == "j10_population") {
    value = darksim::j10_population(
        need(p, "omega"), need(p, "delta_B"),
        opt(p, "theta_deg", 54.735610317245346) * M_PI / 180.0,
        opt(p, "detuning", 0));
  } else if (name == "j10_width") {
    value = darksim::j10_width(
        need(p, "omega"), need(p, "delta_B"),
        opt(p, "theta_deg", 54.735610317245346) * M_PI / 180.0);
  } else if (name == "lambda_population") {
    value = darksim::lambda_incoherent_population(
        need(p, "omega"), opt(p, "detuning", 0), need(p, "alpha"),
        need(p, "r"));
  } else if (name == "lambda_photon_rate") {
    value = darksim::lambda_photon_rate(
        need(p, "omega"), opt(p, "detuning", 0), need(p, "alpha"),
        need(p, "r"),
        opt(p, "small_alpha", 0) != 0
            ? darksim::PhotonRateVariant::kSmallAlpha
            : darksim::PhotonRateVariant::kExact);
  } else if (name == "lambda_rate_population") {
    value = darksim::lambda_rate_population(need(p, "alpha"), need(p, "r_i"),
                                            need(p, "r_d"));
  } else {
    throw ConfigError(
        "unknown model '" + name +
        "'; expected two_level, j10_population, j10_width, "
        "lambda_population, lambda_photon_rate or lambda_rate_population");
  }
  std::printf("%.16g\n", value);
  return 0;
}

int cmd_presets() {
  for (const auto& info : darksim::preset_catalog()) {
    std::printf("%-16s %s\n", info.name.c_str(), info.summary.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"density-matrix simulation of laser-driven atoms: dark states "
               "and their destabilization"};
  app.set_version_flag("--version", darksim::kVersion);
  app.require_subcommand(1);

  auto* scan = app.add_subcommand("scan", "run a parameter sweep from a JSON "
                                          "config and write CSV (+ sidecar)");
  std::string config_path, out_path, plot_path;
  int workers = 0;
  scan->add_option("--config", config_path, "JSON configuration file")
      ->required();
  scan->add_option("--out", out_path, "output CSV path")->required();
  scan->add_option("--plot", plot_path, "optional SVG plot path");
  scan->add_option("--workers", workers,
                   "worker threads (default: hardware concurrency)");

  auto* dark = app.add_subcommand(
      "darkspace", "print the uncoupled lower-level superpositions of a "
                   "fixed polarization as JSON");
  double ji = 0, jf = 0;
  std::string field_arg;
  dark->add_option("--ji", ji, "lower-level angular momentum")->required();
  dark->add_option("--jf", jf, "upper-level angular momentum")->required();
  dark->add_option("--field", field_arg,
                   "Cartesian components Ex,Ey,Ez; each real or (re,im)")
      ->required();

  auto* model = app.add_subcommand(
      "model", "evaluate a closed-form reference model and print the value");
  std::string model_name, params_arg;
  model->add_option("name", model_name, "model name")->required();
  model->add_option("--params", params_arg, "comma-separated k=v pairs");

  auto* presets =
      app.add_subcommand("presets", "operations on the preset catalog");
  presets->add_subcommand("list", "list available presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return (code == 0) ? 0 : 1;
  }

  try {
    if (scan->parsed()) {
      return cmd_scan(config_path, out_path, plot_path, workers);
    }
    if (dark->parsed()) return cmd_darkspace(ji, jf, field_arg);
    if (model->parsed()) return cmd_model(model_name, params_arg);
    if (presets->parsed()) return cmd_presets();
  } catch (const darksim::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const darksim::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
