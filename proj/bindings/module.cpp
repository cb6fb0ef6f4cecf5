#include <optional>
#include <string>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "darksim/coupling.hpp"
#include "darksim/darkstates.hpp"
#include "darksim/models.hpp"
#include "darksim/presets.hpp"
#include "darksim/scan.hpp"
#include "darksim/version.hpp"
#include "darksim/wigner.hpp"

namespace py = pybind11;

namespace {

darksim::HalfInt hi(double v) { return darksim::HalfInt::from_double(v); }

py::dict record_to_dict(const darksim::ScanRecord& r,
                        const std::vector<std::string>& pop_labels) {
  py::dict d;
  d["params"] = r.params;
  d["pf"] = r.pf;
  py::dict pops;
  for (std::size_t k = 0; k < pop_labels.size() && k < r.populations.size();
       ++k) {
    pops[py::str(pop_labels[k])] = r.populations[k];
  }
  d["populations"] = pops;
  if (r.fwhm) {
    d["fwhm"] = *r.fwhm;
  } else {
    d["fwhm"] = py::none();
  }
  d["fwhm_masked"] = r.fwhm_masked;
  d["settle_time"] = r.settle_time;
  d["residual"] = r.residual;
  d["degenerate"] = r.degenerate;
  d["error"] = r.error;
  return d;
}

std::vector<std::string> scheme_labels(const darksim::Experiment& ex) {
  std::vector<std::string> labels;
  for (const auto& level : ex.scheme.levels) labels.push_back(level.label);
  return labels;
}

}  // namespace

PYBIND11_MODULE(_darksim, m) {
  m.doc() =
      "Density-matrix simulation of laser-driven atoms with Zeeman "
      "structure: dark states and their destabilization by magnetic fields "
      "or polarization modulation.";
  m.attr("__version__") = darksim::kVersion;

  py::class_<darksim::SphericalField>(m, "SphericalField")
      .def(py::init([](darksim::complexd em, darksim::complexd e0,
                       darksim::complexd ep) {
             darksim::SphericalField f;
             f.e_minus = em;
             f.e_zero = e0;
             f.e_plus = ep;
             return f;
           }),
           py::arg("e_minus"), py::arg("e_zero"), py::arg("e_plus"))
      .def_readwrite("e_minus", &darksim::SphericalField::e_minus)
      .def_readwrite("e_zero", &darksim::SphericalField::e_zero)
      .def_readwrite("e_plus", &darksim::SphericalField::e_plus)
      .def("norm", &darksim::SphericalField::norm)
      .def("__repr__", [](const darksim::SphericalField& f) {
        std::ostringstream os;
        os << "SphericalField(e_minus=" << f.e_minus << ", e_zero=" << f.e_zero
           << ", e_plus=" << f.e_plus << ")";
        return os.str();
      });

  m.def(
      "wigner3j",
      [](double j1, double j2, double j3, double m1, double m2, double m3) {
        return darksim::wigner3j(hi(j1), hi(j2), hi(j3), hi(m1), hi(m2),
                                 hi(m3));
      },
      py::arg("j1"), py::arg("j2"), py::arg("j3"), py::arg("m1"),
      py::arg("m2"), py::arg("m3"),
      "Wigner 3-j symbol; half-integer arguments allowed.");

  m.def("spherical_components", &darksim::spherical_components, py::arg("ex"),
        py::arg("ey"), py::arg("ez"),
        "Spherical field components of a Cartesian polarization vector.");

  m.def("linear_polarization_at_angle", &darksim::linear_polarization_at_angle,
        py::arg("theta"), py::arg("amplitude") = 1.0,
        "Linear polarization at angle theta (radians) to the z axis.");

  m.def(
      "rabi_matrix",
      [](double j_lower, double j_upper, const darksim::SphericalField& f,
         double omega0) {
        return darksim::rabi_matrix(hi(j_lower), hi(j_upper), f, omega0).omega;
      },
      py::arg("j_lower"), py::arg("j_upper"), py::arg("field"),
      py::arg("omega0") = 1.0,
      "Sublevel Rabi couplings, rows m_lower, columns m_upper.");

  m.def(
      "dark_space",
      [](double j_lower, double j_upper, const darksim::SphericalField& f) {
        return darksim::dark_space(hi(j_lower), hi(j_upper), f).basis;
      },
      py::arg("j_lower"), py::arg("j_upper"), py::arg("field"),
      "Orthonormal basis (columns) of lower-level superpositions the field "
      "does not couple to the upper level.");

  m.def(
      "dark_state_count",
      [](double j_lower, double j_upper, const darksim::SphericalField& f) {
        return darksim::dark_state_count(hi(j_lower), hi(j_upper),
                                         darksim::classify_polarization(f));
      },
      py::arg("j_lower"), py::arg("j_upper"), py::arg("field"),
      "Dark-state count for a fixed polarization.");

  m.def("two_level_population", &darksim::two_level_population,
        py::arg("omega"), py::arg("detuning") = 0.0);
  m.def("j10_population", &darksim::j10_population, py::arg("omega"),
        py::arg("delta_b"), py::arg("theta"), py::arg("detuning") = 0.0,
        "Closed-form excited population of the J=1 -> J=0 system.");
  m.def("j10_width", &darksim::j10_width, py::arg("omega"), py::arg("delta_b"),
        py::arg("theta"), "Closed-form linewidth of the J=1 -> J=0 system.");
  m.def("lambda_incoherent_population",
        &darksim::lambda_incoherent_population, py::arg("omega"),
        py::arg("detuning"), py::arg("alpha"), py::arg("r"));
  m.def(
      "lambda_photon_rate",
      [](double omega, double detuning, double alpha, double r,
         bool small_alpha) {
        return darksim::lambda_photon_rate(
            omega, detuning, alpha, r,
            small_alpha ? darksim::PhotonRateVariant::kSmallAlpha
                        : darksim::PhotonRateVariant::kExact);
      },
      py::arg("omega"), py::arg("detuning"), py::arg("alpha"), py::arg("r"),
      py::arg("small_alpha") = false);
  m.def("lambda_rate_population", &darksim::lambda_rate_population,
        py::arg("alpha"), py::arg("r_i"), py::arg("r_d"));

  py::class_<darksim::Experiment>(m, "Experiment")
      .def_readwrite("delta_b", &darksim::Experiment::delta_b)
      .def_readwrite("theta_deg", &darksim::Experiment::theta_deg)
      .def_readwrite("observable", &darksim::Experiment::observable)
      .def_property_readonly("levels", &scheme_labels)
      .def("__repr__", [](const darksim::Experiment& ex) {
        std::ostringstream os;
        os << "Experiment(levels=[";
        for (std::size_t i = 0; i < ex.scheme.levels.size(); ++i) {
          os << (i ? ", " : "") << ex.scheme.levels[i].label;
        }
        os << "], observable=" << ex.observable << ")";
        return os.str();
      });

  m.def(
      "make_preset",
      [](const std::string& name, std::optional<double> ji,
         std::optional<double> jf) {
        return darksim::make_preset(
            name, ji ? std::optional<darksim::HalfInt>(hi(*ji)) : std::nullopt,
            jf ? std::optional<darksim::HalfInt>(hi(*jf)) : std::nullopt);
      },
      py::arg("name"), py::arg("ji") = py::none(), py::arg("jf") = py::none());

  m.def(
      "preset_names",
      [] {
        std::vector<std::string> names;
        for (const auto& info : darksim::preset_catalog()) {
          names.push_back(info.name);
        }
        return names;
      },
      "Names in the preset catalog.");

  m.def("apply_parameter", &darksim::apply_parameter, py::arg("experiment"),
        py::arg("name"), py::arg("value"),
        "Set a named scan parameter (delta_B, theta_BE, omega[_drive], "
        "detuning[_drive], linewidth[_drive], phi[_drive], "
        "delta_mod[_drive]).");

  m.def(
      "solve_point",
      [](const darksim::Experiment& ex) {
        return record_to_dict(darksim::solve_point(ex), scheme_labels(ex));
      },
      py::arg("experiment"),
      "Solve one configuration (stationary, or settled period average for "
      "modulated drives) and return a result dict.");

  m.def(
      "run_scan",
      [](const std::string& config_json) {
        const darksim::ScanSpec spec =
            darksim::parse_scan_config(nlohmann::json::parse(config_json));
        const darksim::ScanResult res = darksim::run_scan(spec);
        py::dict out;
        out["axes"] = res.axis_names;
        out["shape"] = res.shape;
        py::list records;
        for (const auto& r : res.records) {
          records.append(record_to_dict(r, res.pop_labels));
        }
        out["records"] = records;
        return out;
      },
      py::arg("config_json"),
      "Run a sweep from a JSON configuration string (same schema as the CLI "
      "scan command).");
}
