#pragma once

namespace darksim {

// Closed-form reference models, all in units where the excited-state decay
// rate is 1 (gamma = 1, hbar = 1).

// Excited-state population of a two-state system driven on resonance offset
// by `detuning`:  (omega^2/4) / (detuning^2 + 1/4 + omega^2/2).
double two_level_population(double omega, double detuning);

// Steady excited population for a J=1 ground / J=0 excited transition driven
// by linear polarization at angle theta to the magnetic field, with ground
// Zeeman splitting 2*delta_b per unit m and laser detuning `detuning`.
// The line is Lorentzian with half-width j10_width(...)/2 set by decay,
// power broadening and the dark-state pumping/rephasing competition.
// Requires omega > 0 and delta_b != 0 (at zero splitting the dark state
// never evolves and the fluorescence collapses).
double j10_population(double omega, double delta_b, double theta,
                      double detuning);

// Full width at half maximum of the above lineshape.
double j10_width(double omega, double delta_b, double theta);

// Three-state Lambda system: bright ground |i> driven with coupling omega at
// detuning `detuning`, branching fraction alpha of excited decay into a dark
// ground |d>, and an incoherent exchange rate r between |i> and |d| (both
// directions).  Steady excited population:
//   (omega^2/8) / (1/4 + 3 omega^2/8 + alpha omega^2 / (8 r) + detuning^2).
double lambda_incoherent_population(double omega, double detuning,
                                    double alpha, double r);

enum class PhotonRateVariant {
  kExact,       // keep all (1 - alpha) factors
  kSmallAlpha,  // leading order in small alpha
};

// Mean photon scattering rate of the same Lambda system expressed through
// the dark-period statistics: a bright interval scatters (1-alpha)/alpha
// photons on average and lasts t_bright = ((1-alpha)/alpha) * (1/4 +
// detuning^2) / (omega^2/2); the dark interval lasts 1/r.
//   exact:        rate = ((1-alpha)/alpha) / (1/r + t_bright)
//   small-alpha:  rate = (1/alpha) / (1/r + (1/alpha)(1/4 + detuning^2) /
//                        (omega^2/2))
double lambda_photon_rate(double omega, double detuning, double alpha,
                          double r,
                          PhotonRateVariant variant = PhotonRateVariant::kExact);

// Saturated limit where optical pumping is rate-limited by incoherent
// repopulation: r_i (r_d) is the rate at which population is returned to the
// bright (dark) ground state.  1/P = 3 + (1-alpha)/r_i + alpha/r_d.
double lambda_rate_population(double alpha, double r_i, double r_d);

}  // namespace darksim
