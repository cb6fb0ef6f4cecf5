#include "darksim/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "darksim/interp.hpp"
#include "darksim/version.hpp"

namespace darksim {
namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

const std::vector<std::string>& parameter_bases() {
  static const std::vector<std::string> bases = {
      "delta_B", "theta_BE", "omega",     "detuning",
      "linewidth", "phi",    "delta_mod",
  };
  return bases;
}

std::pair<std::string, std::string> split_parameter(const std::string& name) {
  for (const auto& base : parameter_bases()) {
    if (name == base) return {base, ""};
    if (name.size() > base.size() + 1 && name.rfind(base + "_", 0) == 0) {
      return {base, name.substr(base.size() + 1)};
    }
  }
  std::ostringstream os;
  os << "unknown parameter '" << name << "'; expected one of";
  for (const auto& base : parameter_bases()) os << " " << base << "[_drive]";
  throw ConfigError(os.str());
}

DriveSpec& find_drive(Experiment& ex, const std::string& label,
                      const std::string& context) {
  if (label.empty()) {
    if (ex.drives.size() == 1) return ex.drives.front();
    throw ConfigError("parameter '" + context +
                      "' is ambiguous with several drives; qualify it with "
                      "the drive label (e.g. " +
                      context + "_SP)");
  }
  for (auto& d : ex.drives) {
    if (d.label == label) return d;
  }
  throw ConfigError("no drive labeled '" + label + "' (parameter '" +
                    context + "')");
}

double median_window(const std::vector<double>& y, int i) {
  const int n = static_cast<int>(y.size());
  const int lo = std::max(0, i - 2);
  const int hi = std::min(n - 1, i + 2);
  std::vector<double> w(y.begin() + lo, y.begin() + hi + 1);
  std::sort(w.begin(), w.end());
  const std::size_t m = w.size();
  return (m % 2 == 1) ? w[m / 2] : 0.5 * (w[m / 2 - 1] + w[m / 2]);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

void apply_parameter(Experiment& ex, const std::string& name, double value) {
  const auto [base, label] = split_parameter(name);
  if (base == "delta_B" || base == "theta_BE") {
    if (!label.empty()) {
      throw ConfigError("parameter '" + name + "' does not take a drive "
                        "suffix");
    }
    if (base == "delta_B") {
      ex.delta_b = value;
    } else {
      ex.theta_deg = value;
    }
    return;
  }

  DriveSpec& d = find_drive(ex, label, name);
  if (base == "omega") {
    d.omega = value;
  } else if (base == "detuning") {
    d.detuning = value;
  } else if (base == "linewidth") {
    if (value < 0) throw ConfigError("linewidth must be >= 0");
    d.linewidth = value;
  } else if (base == "phi") {
    const double rad = value * kDegree;
    if (auto* pem = std::get_if<SinePhaseMod>(&d.field.model)) {
      pem->phase_amplitude = rad;
    } else if (auto* eom = std::get_if<QuarterWavePhaseMod>(&d.field.model)) {
      eom->phase_amplitude = rad;
    } else {
      throw ConfigError("drive '" + d.label +
                        "' has no phase-modulation excursion to set");
    }
  } else if (base == "delta_mod") {
    if (auto* pem = std::get_if<SinePhaseMod>(&d.field.model)) {
      pem->rate = value;
    } else if (auto* eom = std::get_if<QuarterWavePhaseMod>(&d.field.model)) {
      eom->rate = value;
    } else if (auto* bi = std::get_if<BichromaticShift>(&d.field.model)) {
      bi->delta_plus = value;
      bi->delta_minus = -value;
    } else {
      throw ConfigError("drive '" + d.label +
                        "' is static; delta_mod does not apply");
    }
  }
}

ScanRecord solve_point(const Experiment& ex, const FwhmSpec& fwhm) {
  ScanRecord rec;
  const Liouvillian liouv = make_liouvillian(ex);
  Eigen::MatrixXcd rho;
  if (liouv.time_dependent()) {
    const QuasiSteadyResult qs = quasi_steady_average(liouv, ex.solver);
    rho = qs.average;
    rec.settle_time = qs.settle_time;
    rec.residual = qs.period_defect;
  } else {
    const SteadyResult s = steady_state(liouv, ex.solver);
    rho = s.rho;
    rec.residual = s.residual;
    rec.degenerate = s.degenerate;
  }
  rec.pf = level_population(rho, ex.scheme, ex.observable);
  for (const auto& level : ex.scheme.levels) {
    rec.populations.push_back(level_population(rho, ex.scheme, level.label));
  }

  if (fwhm.enabled) {
    Experiment probe = ex;
    DriveSpec& d = find_drive(probe, fwhm.drive, "fwhm.drive");
    const double center = d.detuning;
    const int count = std::max(fwhm.count, 9);
    std::vector<std::pair<double, double>> samples;
    samples.reserve(count);
    for (int k = 0; k < count; ++k) {
      d.detuning =
          center - fwhm.halfspan +
          2.0 * fwhm.halfspan * k / static_cast<double>(count - 1);
      samples.emplace_back(d.detuning, solve_point(probe).pf);
    }
    bool masked = false;
    rec.fwhm = extract_fwhm(std::move(samples), &masked);
    rec.fwhm_masked = masked;
  }
  return rec;
}

double extract_fwhm(std::vector<std::pair<double, double>> samples,
                    bool* masked) {
  std::sort(samples.begin(), samples.end());
  const int n = static_cast<int>(samples.size());
  if (n < 9) {
    throw std::domain_error(
        "extract_fwhm: insufficient span (need at least 9 samples)");
  }
  std::vector<double> x(n), yraw(n);
  for (int i = 0; i < n; ++i) {
    x[i] = samples[i].first;
    yraw[i] = samples[i].second;
  }

  // Replace narrow downward spikes (dark resonances crossing the line) by
  // the running median so they do not drag the half-maximum search into a
  // dip; broad structure is untouched.
  std::vector<double> ymed(n);
  for (int i = 0; i < n; ++i) ymed[i] = median_window(yraw, i);
  const double span =
      *std::max_element(ymed.begin(), ymed.end()) -
      *std::min_element(ymed.begin(), ymed.end());
  const double thresh = 0.02 * std::max(span, 1e-300);
  std::vector<double> y = yraw;
  bool did_mask = false;
  for (int i = 0; i < n; ++i) {
    if (yraw[i] < ymed[i] - thresh) {
      y[i] = ymed[i];
      did_mask = true;
    }
  }
  if (masked != nullptr) *masked = did_mask;

  const Pchip curve(x, y);
  const int ip = static_cast<int>(
      std::max_element(y.begin(), y.end()) - y.begin());

  // Refine the peak on the interpolant (golden-section).
  double a = x[std::max(0, ip - 1)];
  double b = x[std::min(n - 1, ip + 1)];
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = curve(c1), f2 = curve(c2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + gr * (b - a);
      f2 = curve(c2);
    } else {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - gr * (b - a);
      f1 = curve(c1);
    }
  }
  const double peak = std::max({curve(0.5 * (a + b)), y[ip]});
  const double half = 0.5 * peak;

  auto crossing = [&](int dir) -> double {
    int k = ip;
    while (true) {
      const int next = k + dir;
      if (next < 0 || next >= n) {
        throw std::domain_error(
            "extract_fwhm: insufficient span (half maximum not reached on "
            "one side)");
      }
      if (y[next] <= half) {
        double xa = x[k], xb = x[next];  // curve(xa) >= half >= curve(xb)
        for (int it = 0; it < 100; ++it) {
          const double xm = 0.5 * (xa + xb);
          if (curve(xm) >= half) {
            xa = xm;
          } else {
            xb = xm;
          }
        }
        return 0.5 * (xa + xb);
      }
      k = next;
    }
  };
  const double left = crossing(-1);
  const double right = crossing(+1);
  return right - left;
}

ScanResult run_scan(const ScanSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2) {
    throw ConfigError("scan: need one or two axes");
  }

  std::vector<std::vector<double>> values;
  for (const auto& ax : spec.axes) {
    if (ax.count < 1) throw ConfigError("axis '" + ax.name + "': count < 1");
    std::vector<double> v;
    if (ax.count == 1) {
      v.push_back(ax.min);
    } else if (ax.log) {
      if (ax.min <= 0 || ax.max <= 0) {
        throw ConfigError("axis '" + ax.name +
                          "': log spacing needs positive bounds");
      }
      const double r = std::log(ax.max / ax.min);
      for (int k = 0; k < ax.count; ++k) {
        v.push_back(ax.min * std::exp(r * k / (ax.count - 1)));
      }
    } else {
      for (int k = 0; k < ax.count; ++k) {
        v.push_back(ax.min +
                    (ax.max - ax.min) * k / static_cast<double>(ax.count - 1));
      }
    }
    // Field-angle sweeps snap the nearest grid point to the angle where all
    // three spherical components are equally strong, a natural operating
    // point that a uniform grid would otherwise straddle.
    if (ax.name == "theta_BE" && ax.count > 1) {
      const double magic = std::acos(1.0 / std::sqrt(3.0)) / kDegree;
      if (magic >= std::min(ax.min, ax.max) &&
          magic <= std::max(ax.min, ax.max)) {
        int nearest = 0;
        for (int k = 1; k < ax.count; ++k) {
          if (std::abs(v[k] - magic) < std::abs(v[nearest] - magic)) {
            nearest = k;
          }
        }
        v[nearest] = magic;
      }
    }
    values.push_back(std::move(v));
  }

  {
    // Validate axis names before spawning workers.
    Experiment probe = spec.base;
    for (std::size_t i = 0; i < spec.axes.size(); ++i) {
      apply_parameter(probe, spec.axes[i].name, values[i].front());
    }
    if (spec.fwhm.enabled && !spec.fwhm.drive.empty()) {
      find_drive(probe, spec.fwhm.drive, "fwhm.drive");
    }
  }

  ScanResult result;
  result.config_echo = spec.config_echo;
  for (const auto& ax : spec.axes) result.axis_names.push_back(ax.name);
  for (const auto& level : spec.base.scheme.levels) {
    result.pop_labels.push_back(level.label);
  }
  std::size_t total = 1;
  for (const auto& v : values) {
    result.shape.push_back(static_cast<int>(v.size()));
    total *= v.size();
  }
  result.records.resize(total);

  const std::size_t inner =
      (values.size() == 2) ? values[1].size() : std::size_t{1};
  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= total) break;
      std::vector<double> point;
      point.push_back(values[0][i / inner]);
      if (values.size() == 2) point.push_back(values[1][i % inner]);
      ScanRecord rec;
      rec.params = point;
      try {
        Experiment ex = spec.base;
        for (std::size_t ax = 0; ax < spec.axes.size(); ++ax) {
          apply_parameter(ex, spec.axes[ax].name, point[ax]);
        }
        rec = solve_point(ex, spec.fwhm);
        rec.params = point;
      } catch (const std::exception& e) {
        rec.error = e.what();
        rec.populations.assign(spec.base.scheme.levels.size(),
                               std::numeric_limits<double>::quiet_NaN());
      }
      result.records[i] = std::move(rec);
    }
  };

  int workers = spec.workers;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
  }
  workers = std::max(1, std::min<int>(workers, static_cast<int>(total)));
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return result;
}

std::size_t find_optimum_index(const ScanResult& result) {
  std::size_t best = result.records.size();
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const auto& r = result.records[i];
    if (!r.error.empty() || !std::isfinite(r.pf)) continue;
    if (best == result.records.size() || r.pf > result.records[best].pf) {
      best = i;
    }
  }
  if (best == result.records.size()) {
    throw std::domain_error("find_optimum_index: no valid records");
  }
  return best;
}

double loglog_slope(const std::vector<double>& x,
                    const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::domain_error("loglog_slope: need >= 2 matching samples");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) {
      throw std::domain_error("loglog_slope: samples must be positive");
    }
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(x.size());
  const double denom = m * sxx - sx * sx;
  if (denom == 0) throw std::domain_error("loglog_slope: degenerate x values");
  return (m * sxy - sx * sy) / denom;
}

namespace {

complexd parse_complex(const nlohmann::json& j) {
  if (j.is_number()) return complexd(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2) {
    return complexd(j[0].get<double>(), j[1].get<double>());
  }
  throw ConfigError("complex values must be a number or [re, im]");
}

FieldModel parse_field(const nlohmann::json& j, bool* follow_theta) {
  const std::string type = j.at("type").get<std::string>();
  *follow_theta = false;
  if (type == "static") {
    const auto& c = j.at("components");
    if (!c.is_array() || c.size() != 3) {
      throw ConfigError(
          "static field: components must be [E_minus, E_pi, E_plus]");
    }
    SphericalField f;
    f.e_minus = parse_complex(c[0]);
    f.e_zero = parse_complex(c[1]);
    f.e_plus = parse_complex(c[2]);
    return StaticField{f};
  }
  if (type == "linear" || type == "linear_theta") {
    const double amp = j.value("amplitude", 1.0);
    if (type == "linear_theta") {
      *follow_theta = true;
      return StaticField{linear_polarization_at_angle(0.0, amp)};
    }
    return StaticField{
        linear_polarization_at_angle(j.at("theta_deg").get<double>() * kDegree,
                                     amp)};
  }
  if (type == "bichromatic") {
    BichromaticShift b;
    b.e_sigma_plus = j.value("e_sigma_plus", 0.0);
    b.e_sigma_minus = j.value("e_sigma_minus", 0.0);
    b.e_pi = j.value("e_pi", 0.0);
    if (j.contains("delta_sym")) {
      b.delta_plus = j["delta_sym"].get<double>();
      b.delta_minus = -b.delta_plus;
    } else {
      b.delta_plus = j.value("delta_plus", 0.0);
      b.delta_minus = j.value("delta_minus", 0.0);
    }
    return b;
  }
  if (type == "pem") {
    SinePhaseMod p;
    p.e_mod = j.value("e_mod", 0.0);
    p.e_pi = j.value("e_pi", 0.0);
    p.phase_amplitude = j.at("phase_amplitude_deg").get<double>() * kDegree;
    p.rate = j.at("rate").get<double>();
    return p;
  }
  if (type == "eom") {
    QuarterWavePhaseMod q;
    q.e_mod = j.value("e_mod", 0.0);
    q.phase_amplitude = j.at("phase_amplitude_deg").get<double>() * kDegree;
    q.rate = j.at("rate").get<double>();
    return q;
  }
  throw ConfigError("unknown field type '" + type +
                    "' (expected static, linear, linear_theta, bichromatic, "
                    "pem, eom)");
}

}  // namespace

ScanSpec parse_scan_config(const nlohmann::json& config) {
  try {
    ScanSpec spec;
    spec.config_echo = config;

    std::optional<HalfInt> ji, jf;
    if (config.contains("ji")) {
      ji = HalfInt::from_double(config["ji"].get<double>());
    }
    if (config.contains("jf")) {
      jf = HalfInt::from_double(config["jf"].get<double>());
    }
    spec.base = make_preset(config.at("preset").get<std::string>(), ji, jf);

    if (config.contains("observable")) {
      spec.base.observable = config["observable"].get<std::string>();
      spec.base.scheme.level_index(spec.base.observable);  // validate
    }
    if (config.contains("solver")) {
      const auto& s = config["solver"];
      spec.base.solver.ode_tol = s.value("ode_tol", spec.base.solver.ode_tol);
      spec.base.solver.qs_tol = s.value("qs_tol", spec.base.solver.qs_tol);
      spec.base.solver.max_periods =
          s.value("max_periods", spec.base.solver.max_periods);
      spec.base.solver.residual_rel =
          s.value("residual_rel", spec.base.solver.residual_rel);
    }
    if (config.contains("fields")) {
      for (const auto& [label, fj] : config["fields"].items()) {
        DriveSpec& d = find_drive(spec.base, label, "fields." + label);
        bool follow = false;
        d.field = parse_field(fj, &follow);
        d.follow_theta = follow;
      }
    }
    if (config.contains("parameters")) {
      for (const auto& [k, v] : config["parameters"].items()) {
        apply_parameter(spec.base, k, v.get<double>());
      }
    }
    for (const auto& aj : config.at("axes")) {
      AxisSpec ax;
      ax.name = aj.at("name").get<std::string>();
      ax.min = aj.at("min").get<double>();
      ax.max = aj.at("max").get<double>();
      ax.count = aj.at("count").get<int>();
      const std::string scale = aj.value("scale", "linear");
      if (scale != "linear" && scale != "log") {
        throw ConfigError("axis scale must be 'linear' or 'log'");
      }
      ax.log = (scale == "log");
      spec.axes.push_back(ax);
    }
    if (config.contains("fwhm")) {
      const auto& fj = config["fwhm"];
      spec.fwhm.enabled = true;
      spec.fwhm.drive = fj.value("drive", "");
      if (spec.fwhm.drive.empty() && spec.base.drives.size() == 1) {
        spec.fwhm.drive = spec.base.drives.front().label;
      }
      spec.fwhm.halfspan = fj.at("halfspan").get<double>();
      spec.fwhm.count = fj.value("count", 41);
    }
    spec.workers = config.value("workers", 0);
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ScanSpec load_scan_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_scan_config(j);
}

void write_csv(const ScanResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (const auto& name : result.axis_names) out << name << ",";
  out << "pf";
  for (const auto& label : result.pop_labels) out << ",pop_" << label;
  out << ",fwhm,fwhm_masked,settle_time,residual,degenerate,error\n";
  for (const auto& r : result.records) {
    for (double p : r.params) out << format_double(p) << ",";
    out << format_double(r.pf);
    for (std::size_t k = 0; k < result.pop_labels.size(); ++k) {
      out << ","
          << format_double(k < r.populations.size()
                               ? r.populations[k]
                               : std::numeric_limits<double>::quiet_NaN());
    }
    out << ",";
    if (r.fwhm) out << format_double(*r.fwhm);
    out << "," << (r.fwhm_masked ? 1 : 0) << ","
        << format_double(r.settle_time) << "," << format_double(r.residual)
        << "," << (r.degenerate ? 1 : 0) << "," << csv_quote(r.error) << "\n";
  }
  if (!out) throw IoError("failed while writing '" + path + "'");
}

void write_sidecar(const ScanResult& result, const std::string& csv_path) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["config"] = result.config_echo;
  j["shape"] = result.shape;
  j["axes"] = result.axis_names;
  j["populations"] = result.pop_labels;
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& name : result.axis_names) cols.push_back(name);
  for (const auto& c : {std::string("pf")}) cols.push_back(c);
  for (const auto& label : result.pop_labels) cols.push_back("pop_" + label);
  for (const auto& c :
       {"fwhm", "fwhm_masked", "settle_time", "residual", "degenerate",
        "error"}) {
    cols.push_back(c);
  }
  j["columns"] = cols;
  int errors = 0, masked = 0;
  for (const auto& r : result.records) {
    if (!r.error.empty()) ++errors;
    if (r.fwhm_masked) ++masked;
  }
  j["error_rows"] = errors;
  j["fwhm_masked_rows"] = masked;
  const std::string path = csv_path + ".json";
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace darksim
