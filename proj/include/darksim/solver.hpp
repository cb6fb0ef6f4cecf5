#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>

#include "darksim/liouvillian.hpp"

namespace darksim {

// Numerical failure (non-convergence, step underflow, ill-posed stationary
// problem).  Configuration mistakes throw std::domain_error instead.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveOptions {
  double ode_tol = 1e-10;        // adaptive integrator abs+rel tolerance
  double residual_rel = 1e-12;   // steady-state residual vs generator norm
  double positivity_tol = 1e-9;  // allowed negative population eigenvalue
  double trace_tol = 1e-9;       // stationary-projection trace floor
  double qs_tol = 1e-8;          // period-to-period convergence (max norm)
  int max_periods = 10000;
};

struct SteadyResult {
  Eigen::MatrixXcd rho;
  bool degenerate = false;  // stationary space had dimension > 1
  int null_dim = 1;
  double residual = 0;      // ||L[rho]||_F / ||L||_F
};

// Stationary density matrix of a time-independent generator.  Direct linear
// solve (trace normalization row + iterative refinement); falls back to an
// SVD null-space computation when the solve does not produce a valid state.
// A stationary space of dimension > 1 is resolved by orthogonally projecting
// the uniform ground mixture onto it and flagged as degenerate; if that
// projection carries no population the error names the sublevels supporting
// the stationary space.
SteadyResult steady_state(const Liouvillian& liouv,
                          const SolveOptions& opts = {});

// Propagate rho from t0 to t1 (adaptive embedded Runge-Kutta with dense
// precomputed right-hand side).  Throws SolverError on step underflow.
Eigen::MatrixXcd evolve(const Liouvillian& liouv, Eigen::MatrixXcd rho,
                        double t0, double t1, const SolveOptions& opts = {});

struct QuasiSteadyResult {
  Eigen::MatrixXcd average;  // one-period time average in the settled cycle
  double settle_time = 0;    // time at which the period map converged
  int periods = 0;
  double period_defect = 0;  // max-norm change over the last period
};

// Settled one-period average of a periodically driven system: propagate the
// uniform ground state period by period until the period map is stationary
// (max-norm tolerance), then average over one more period by integrating an
// accumulator alongside the state.  For a static generator a period must be
// supplied explicitly (the result then reproduces the steady state).
QuasiSteadyResult quasi_steady_average(
    const Liouvillian& liouv, const SolveOptions& opts = {},
    std::optional<double> period_override = std::nullopt);

// Total population of the named level (sum of real diagonal entries).
double level_population(const Eigen::MatrixXcd& rho, const LevelScheme& scheme,
                        const std::string& level_label);

// Uniform mixture over the sublevels of the first (root/ground) level.
Eigen::MatrixXcd uniform_ground_state(const LevelScheme& scheme);

struct DensityCheck {
  double hermiticity_defect = 0;  // ||rho - rho^dagger||_max
  double trace_defect = 0;        // |tr(rho) - 1|
  double min_eigenvalue = 0;
};

DensityCheck check_density(const Eigen::MatrixXcd& rho);

}  // namespace darksim
