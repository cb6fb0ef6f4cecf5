#include "darksim/presets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "darksim/field.hpp"

namespace darksim {
namespace {

constexpr double kDegree = std::numbers::pi / 180.0;
// arccos(1/sqrt(3)) in degrees: the angle at which all three spherical
// components of a linear polarization have equal strength.
const double kMagicThetaDeg = std::acos(1.0 / std::sqrt(3.0)) / kDegree;

Experiment make_j10() {
  Experiment ex;
  ex.scheme.levels = {{"g", HalfInt::from_doubled(2), 2.0},
                      {"e", HalfInt::from_doubled(0), 0.0}};
  ex.scheme.decays = {{"e", "g", 1.0}};
  DriveSpec d;
  d.lower = "g";
  d.upper = "e";
  d.label = "ge";
  d.omega = std::sqrt(3.0) / 5.0;
  d.detuning = 0.0;
  d.field = StaticField{linear_polarization_at_angle(kMagicThetaDeg * kDegree, 1.0)};
  d.follow_theta = true;
  ex.drives = {d};
  ex.delta_b = std::sqrt(3.0) / 20.0;  // omega / 4
  ex.theta_deg = kMagicThetaDeg;
  ex.observable = "e";
  return ex;
}

Experiment make_two_level() {
  Experiment ex;
  ex.scheme.levels = {{"g", HalfInt::from_doubled(0), 0.0},
                      {"e", HalfInt::from_doubled(0), 0.0}};
  ex.scheme.decays = {{"e", "g", 1.0}};
  DriveSpec d;
  d.lower = "g";
  d.upper = "e";
  d.label = "ge";
  d.omega = 1.0;
  SphericalField f;
  f.e_zero = 1.0;
  d.field = StaticField{f};
  ex.drives = {d};
  ex.observable = "e";
  return ex;
}

Experiment make_spd(double alpha) {
  Experiment ex;
  ex.scheme.levels = {{"S", HalfInt::from_doubled(1), 2.0},
                      {"P", HalfInt::from_doubled(1), 2.0 / 3.0},
                      {"D", HalfInt::from_doubled(3), 4.0 / 5.0}};
  ex.scheme.decays = {{"P", "S", 1.0 - alpha}, {"P", "D", alpha}};
  DriveSpec sp;
  sp.lower = "S";
  sp.upper = "P";
  sp.label = "SP";
  sp.omega = std::sqrt(2.0) / 5.0;
  sp.detuning = 0.0;
  sp.field = StaticField{linear_polarization_at_angle(0.5 * std::numbers::pi, 1.0)};
  sp.follow_theta = true;
  DriveSpec dp = sp;
  dp.lower = "D";
  dp.upper = "P";
  dp.label = "DP";
  dp.detuning = 0.5;
  ex.drives = {sp, dp};
  ex.delta_b = 0.05;
  ex.theta_deg = 90.0;
  ex.observable = "P";
  return ex;
}

Experiment make_ladder(HalfInt ji, HalfInt jf) {
  Experiment ex;
  ex.scheme.levels = {{"g", ji, lande_g(0, ji, ji)},
                      {"e", jf, lande_g(1, ji, jf)}};
  ex.scheme.decays = {{"e", "g", 1.0}};
  DriveSpec d;
  d.lower = "g";
  d.upper = "e";
  d.label = "ge";
  d.omega = std::sqrt(3.0) / 5.0;
  d.field = StaticField{linear_polarization_at_angle(kMagicThetaDeg * kDegree, 1.0)};
  d.follow_theta = true;
  ex.drives = {d};
  ex.delta_b = 0.1;
  ex.theta_deg = kMagicThetaDeg;
  ex.observable = "e";
  return ex;
}

}  // namespace

Liouvillian make_liouvillian(const Experiment& ex) {
  std::vector<DriveSpec> drives = ex.drives;
  for (auto& d : drives) {
    if (!d.follow_theta) continue;
    const auto* st = std::get_if<StaticField>(&d.field.model);
    if (st == nullptr) {
      throw std::domain_error(
          "make_liouvillian: drive '" + d.label +
          "' tracks the field angle but has a modulated polarization");
    }
    const double amp = st->field.norm();
    d.field = StaticField{
        linear_polarization_at_angle(ex.theta_deg * kDegree, amp)};
  }
  return build_liouvillian(ex.scheme, drives, ex.delta_b);
}

Experiment make_preset(const std::string& name, std::optional<HalfInt> ji,
                       std::optional<HalfInt> jf) {
  if (name == "J10") return make_j10();
  if (name == "TwoLevelGeneric") return make_two_level();
  if (name == "SPD_Sr") return make_spd(1.0 / 14.0);
  if (name == "SPD_Ca") return make_spd(1.0 / 13.0);
  if (name == "SPD_Ba") return make_spd(1.0 / 3.7);
  if (name == "Ladder" || name.rfind("Ladder(", 0) == 0) {
    if (name.rfind("Ladder(", 0) == 0) {
      const auto close = name.find(')');
      const auto comma = name.find(',');
      if (close == std::string::npos || comma == std::string::npos ||
          comma > close) {
        throw std::domain_error("make_preset: cannot parse '" + name +
                                "'; expected Ladder(ji,jf)");
      }
      ji = HalfInt::from_double(std::stod(name.substr(7, comma - 7)));
      jf = HalfInt::from_double(
          std::stod(name.substr(comma + 1, close - comma - 1)));
    }
    if (!ji || !jf) {
      throw std::domain_error(
          "make_preset: Ladder requires ji and jf (e.g. Ladder(2,1))");
    }
    return make_ladder(*ji, *jf);
  }
  throw std::domain_error("make_preset: unknown preset '" + name + "'");
}

std::vector<PresetInfo> preset_catalog() {
  return {
      {"J10", "J=1 ground / J=0 excited, linear drive at angle theta to B"},
      {"TwoLevelGeneric", "two bare states, pi-polarized drive"},
      {"SPD_Sr", "S(1/2)-P(1/2)-D(3/2), branching to D 1/14, both driven"},
      {"SPD_Ca", "S(1/2)-P(1/2)-D(3/2), branching to D 1/13, both driven"},
      {"SPD_Ba", "S(1/2)-P(1/2)-D(3/2), branching to D 1/3.7, both driven"},
      {"Ladder(ji,jf)", "J=ji ground (g=2) to J=jf upper (LS g-factor)"},
  };
}

}  // namespace darksim
