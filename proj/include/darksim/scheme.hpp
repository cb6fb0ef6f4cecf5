#pragma once

#include <string>
#include <vector>

#include "darksim/fieldmodel.hpp"
#include "darksim/halfint.hpp"

namespace darksim {

// One fine-structure level: 2j+1 Zeeman sublevels splitting as g * m * delta_B.
struct Level {
  std::string label;
  HalfInt j;
  double g = 0.0;  // Zeeman shift per unit field splitting, per unit m
};

// Spontaneous decay channel upper -> lower with the given rate (units of the
// reference linewidth; the total decay rate of a level is the sum over its
// channels).
struct DecayChannel {
  std::string upper;
  std::string lower;
  double rate = 1.0;
};

// One laser drive on a lower <-> upper transition.
struct DriveSpec {
  std::string lower;
  std::string upper;
  std::string label;       // short name used in swept-parameter addressing
  double omega = 0.0;      // rms Rabi coupling for a unit-norm field
  double detuning = 0.0;   // laser frequency minus transition frequency
  FieldModel field;        // polarization model (need not be unit norm)
  double linewidth = 0.0;  // laser phase-diffusion linewidth
  // Presets flag drives whose static polarization should track the global
  // field-angle parameter (linear polarization at theta to the z axis).
  bool follow_theta = false;
};

// Level structure plus decay paths.  The first level is the root of the
// rotating-frame construction and supplies the default initial state
// (uniform mixture over its sublevels).
struct LevelScheme {
  std::vector<Level> levels;
  std::vector<DecayChannel> decays;

  int level_index(const std::string& label) const;
  int dim() const;                       // total sublevel count
  int offset(int level) const;           // first global index of a level
  int sublevel_index(int level, HalfInt m) const;
  // "label(m)" e.g. "S(-1/2)" for diagnostics.
  std::string sublevel_name(int global_index) const;
  int level_of(int global_index) const;
};

// Lande g-factor for an LS-coupled level with orbital L, spin S, total J
// (electron g_s = 2):  g = 1 + [J(J+1) + S(S+1) - L(L+1)] / (2 J (J+1)).
double lande_g(int l, HalfInt s, HalfInt j);

}  // namespace darksim
