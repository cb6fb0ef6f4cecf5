#include "darksim/models.hpp"

#include <cmath>
#include <stdexcept>

namespace darksim {
namespace {

void check_j10_args(double omega, double delta_b) {
  if (omega <= 0) {
    throw std::domain_error("j10 model: omega must be positive");
  }
  if (delta_b == 0) {
    throw std::domain_error(
        "j10 model: delta_b must be nonzero (an unsplit ground level keeps a "
        "stationary dark state and the line collapses)");
  }
}

// Squared half-width (gamma'/2)^2 of the J=1 <-> J=0 line.
double j10_hw2(double omega, double delta_b, double theta) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double denom = 1.0 + 3.0 * c2;
  return 0.25 + omega * omega * c2 * (1.0 - 3.0 * c2) / denom +
         c2 / denom *
             (std::pow(omega, 4) / (16.0 * delta_b * delta_b) +
              16.0 * delta_b * delta_b);
}

void check_lambda_args(double omega, double alpha, double r) {
  if (omega <= 0) {
    throw std::domain_error("lambda model: omega must be positive");
  }
  if (alpha <= 0 || alpha >= 1) {
    throw std::domain_error(
        "lambda model: branching fraction alpha must lie in (0, 1)");
  }
  if (r <= 0) {
    throw std::domain_error(
        "lambda model: exchange rate r must be positive (without it the dark "
        "state is never repopulated)");
  }
}

}  // namespace

double two_level_population(double omega, double detuning) {
  if (omega < 0) {
    throw std::domain_error("two_level_population: omega must be >= 0");
  }
  const double o2 = omega * omega;
  return 0.25 * o2 / (detuning * detuning + 0.25 + 0.5 * o2);
}

double j10_population(double omega, double delta_b, double theta,
                      double detuning) {
  check_j10_args(omega, delta_b);
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double hw2 = j10_hw2(omega, delta_b, theta);
  return 0.75 * omega * omega * c2 * s2 / (1.0 + 3.0 * c2) /
         (hw2 + detuning * detuning);
}

double j10_width(double omega, double delta_b, double theta) {
  check_j10_args(omega, delta_b);
  return 2.0 * std::sqrt(j10_hw2(omega, delta_b, theta));
}

double lambda_incoherent_population(double omega, double detuning,
                                    double alpha, double r) {
  check_lambda_args(omega, alpha, r);
  const double o2 = omega * omega;
  return 0.125 * o2 /
         (0.25 + 0.375 * o2 + alpha * o2 / (8.0 * r) + detuning * detuning);
}

double lambda_photon_rate(double omega, double detuning, double alpha,
                          double r, PhotonRateVariant variant) {
  check_lambda_args(omega, alpha, r);
  const double lorentz = 0.25 + detuning * detuning;
  const double pump = 0.5 * omega * omega;
  if (variant == PhotonRateVariant::kExact) {
    const double photons_per_burst = (1.0 - alpha) / alpha;
    const double t_bright = photons_per_burst * lorentz / pump;
    return photons_per_burst / (1.0 / r + t_bright);
  }
  const double t_bright = (1.0 / alpha) * lorentz / pump;
  return (1.0 / alpha) / (1.0 / r + t_bright);
}

double lambda_rate_population(double alpha, double r_i, double r_d) {
  if (alpha <= 0 || alpha >= 1) {
    throw std::domain_error(
        "lambda_rate_population: alpha must lie in (0, 1)");
  }
  if (r_i <= 0 || r_d <= 0) {
    throw std::domain_error(
        "lambda_rate_population: repopulation rates must be positive");
  }
  return 1.0 / (3.0 + (1.0 - alpha) / r_i + alpha / r_d);
}

}  // namespace darksim
