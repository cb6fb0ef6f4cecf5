#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "darksim/field.hpp"

namespace darksim {

// Time-dependent polarization models.  All produce spherical components
// (E_{-1}(t), E_0(t), E_{+1}(t)); the total power |E(t)|^2 is constant in
// time for every variant.

// Constant polarization.
struct StaticField {
  SphericalField field;
};

// Bichromatic drive from frequency-shifted circular components:
//   E_{-1}(t) = e_sigma_plus  * exp(-i delta_minus t)
//   E_0(t)    = e_pi
//   E_{+1}(t) = e_sigma_minus * exp(-i delta_plus  t)
// The sigma^+ beam (which appears in the E_{-1} slot for the lower->upper
// coupling convention used here) is shifted by delta_minus, the sigma^- beam
// by delta_plus.  A "symmetric" drive has delta_plus = -delta_minus.
struct BichromaticShift {
  double e_sigma_plus = 0;
  double e_sigma_minus = 0;
  double e_pi = 0;
  double delta_plus = 0;   // frequency shift of the sigma^- component
  double delta_minus = 0;  // frequency shift of the sigma^+ component
};

// Photoelastic phase modulator between crossed polarizers plus an optional
// unmodulated pi component:
//   phi(t)    = (phase_amplitude / 2) * (1 - cos(rate * t))
//   E_{-1}(t) = (e_mod/sqrt2) * (exp(+i phi) + i exp(-i phi))
//   E_0(t)    = e_pi
//   E_{+1}(t) = (e_mod/sqrt2) * (exp(+i phi) - i exp(-i phi))
struct SinePhaseMod {
  double e_mod = 0;
  double e_pi = 0;
  double phase_amplitude = 0;  // peak phase excursion, radians
  double rate = 0;             // modulation angular frequency
};

// Electro-optic phase modulator with a static quarter-wave offset:
//   phi(t)    = (phase_amplitude / 2) * (1 - cos(rate * t))
//   E_{-1}(t) = (e_mod/sqrt2) * (1 + i exp(-i phi))
//   E_{+1}(t) = (e_mod/sqrt2) * (1 - i exp(-i phi))
// |E_{-1}|^2 + |E_{+1}|^2 = 2 e_mod^2 at all times.
struct QuarterWavePhaseMod {
  double e_mod = 0;
  double phase_amplitude = 0;
  double rate = 0;
};

struct FieldModel {
  std::variant<StaticField, BichromaticShift, SinePhaseMod, QuarterWavePhaseMod>
      model;

  FieldModel() : model(StaticField{}) {}
  FieldModel(StaticField m) : model(m) {}
  FieldModel(BichromaticShift m) : model(m) {}
  FieldModel(SinePhaseMod m) : model(m) {}
  FieldModel(QuarterWavePhaseMod m) : model(m) {}

  // True if the field actually varies in time (a BichromaticShift with both
  // shifts zero counts as static).
  bool is_modulated() const;

  // Fundamental period of the modulation, or nullopt for a static field.
  // For a BichromaticShift with two incommensurate-looking shifts the common
  // period is found by rational approximation of their ratio (tolerance 1e-9,
  // maximum denominator 1e6); failure throws std::domain_error.
  std::optional<double> period() const;
};

// Instantaneous spherical components at time t.
SphericalField evaluate_field(const FieldModel& m, double t);

// Characteristic rate at which the modulation redistributes population:
// the largest shift magnitude for BichromaticShift; for phase modulators,
// rate * phase_amplitude when the excursion exceeds pi, else the rate
// (shallow modulation only moves population once per cycle).
// Throws std::domain_error for a static field.
double effective_evolution_rate(const FieldModel& m);

// Discrete frequency content of each spherical component over one period:
// amplitudes[c][k] is the Fourier coefficient of component c at harmonic
// harmonics[k] of the fundamental 2*pi/period.  A static field is treated as
// periodic with an arbitrary period and carries all power at harmonic 0.
struct SidebandSpectrum {
  double period = 0;
  std::vector<int> harmonics;                        // -n_max .. +n_max
  std::array<std::vector<complexd>, 3> amplitudes;   // E_{-1}, E_0, E_{+1}
};

SidebandSpectrum sideband_spectrum(const FieldModel& m, int n_max);

// Smallest duration that is an integer multiple of both input periods
// (rational-ratio search, tolerance 1e-9, maximum denominator 1e6); throws
// std::domain_error if the periods are incommensurate.
double commensurate_period(double ta, double tb);

}  // namespace darksim
