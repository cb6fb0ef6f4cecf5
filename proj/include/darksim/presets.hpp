#pragma once

#include <optional>
#include <string>
#include <vector>

#include "darksim/liouvillian.hpp"
#include "darksim/solver.hpp"

namespace darksim {

// A complete simulation setup: level scheme, drives, field orientation and
// magnetic splitting, plus which level's population is reported.
struct Experiment {
  LevelScheme scheme;
  std::vector<DriveSpec> drives;
  double delta_b = 0;
  // Angle (degrees) between the static linear drive polarizations and the
  // magnetic field axis; applied to drives flagged follow_theta.
  double theta_deg = 90.0;
  std::string observable;  // level label whose population is the signal
  SolveOptions solver;
};

// Realize the experiment as a master-equation generator (resolves
// follow_theta drives into concrete linear polarizations first).
Liouvillian make_liouvillian(const Experiment& ex);

// Named systems:
//   "J10"             J=1 ground, J=0 excited, linear drive at theta,
//                     ground g = 2 (splitting 2*delta_b per unit m)
//   "TwoLevelGeneric" two bare states, pi-driven
//   "SPD_Sr" / "SPD_Ca" / "SPD_Ba"
//                     S(1/2) - P(1/2) - D(3/2) with branching P->D of
//                     1/14, 1/13, 1/3.7 and both transitions driven
//   "Ladder"          ground J = ji (g = 2) to upper J = jf with the upper
//                     g-factor from LS coupling (L = 1, S = ji); also
//                     accepted inline as e.g. "Ladder(2,1)" or
//                     "Ladder(1.5,1.5)"
Experiment make_preset(const std::string& name,
                       std::optional<HalfInt> ji = std::nullopt,
                       std::optional<HalfInt> jf = std::nullopt);

struct PresetInfo {
  std::string name;
  std::string summary;
};
std::vector<PresetInfo> preset_catalog();

}  // namespace darksim
