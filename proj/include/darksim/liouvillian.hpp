#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "darksim/scheme.hpp"

namespace darksim {

// Right-hand side of the master equation  d rho / dt = L(t)[rho]  in the
// rotating frame, hbar = 1, with the reference decay rate setting the time
// unit.  Holds precomputed sparse coupling patterns, decay feeding terms and
// a combined damping/dephasing matrix; only the drive fields are evaluated
// per time step.
class Liouvillian {
 public:
  int dim() const { return n_; }
  bool time_dependent() const { return time_dependent_; }
  std::optional<double> period() const { return period_; }
  const LevelScheme& scheme() const { return scheme_; }
  const std::vector<DriveSpec>& drives() const { return drives_; }
  double delta_b() const { return delta_b_; }

  // Rotating-frame Hamiltonian at time t (h must be dim x dim).
  void hamiltonian(double t, Eigen::MatrixXcd& h) const;

  // drho = -i [H(t), rho] + decay feeding - damping/dephasing.
  // drho must be pre-sized to dim x dim.
  void apply(double t, const Eigen::Ref<const Eigen::MatrixXcd>& rho,
             Eigen::Ref<Eigen::MatrixXcd> drho) const;

  // Flattened generator (dim^2 x dim^2, column-major vectorization).
  Eigen::MatrixXcd matrix(double t) const;

  // Additional phase-diffusion linewidth for the named drive: coherences
  // between levels whose rotating-frame phases involve that laser decay at
  // the given extra rate (coherences spanning several driven transitions
  // accumulate each involved laser's linewidth).
  void apply_laser_dephasing(const std::string& drive_label, double rate);

  friend Liouvillian build_liouvillian(const LevelScheme& scheme,
                                       const std::vector<DriveSpec>& drives,
                                       double delta_b);

 private:
  struct CouplingEntry {
    int lower_idx;
    int upper_idx;
    double base;  // -(1/2) * sqrt(3) * omega * sign * threeJ
  };
  struct DrivePattern {
    std::array<std::vector<CouplingEntry>, 3> by_q;  // q = -1, 0, +1
    FieldModel field;
  };
  struct FeedTerm {
    int la, lb;  // fed lower-level pair
    int ua, ub;  // source upper-level pair
    double w;
  };

  LevelScheme scheme_;
  std::vector<DriveSpec> drives_;
  double delta_b_ = 0;
  int n_ = 0;
  Eigen::VectorXd h0_;                      // frame + Zeeman diagonal
  std::vector<DrivePattern> patterns_;
  std::vector<FeedTerm> feeds_;
  Eigen::MatrixXcd damp_;                   // (d_i + d_j)/2 + dephasing (real-valued)
  std::vector<std::vector<int>> frame_coeffs_;  // per level, per drive
  bool time_dependent_ = false;
  std::optional<double> period_;
};

// Validates the scheme (drive/decay labels exist, dipole selection rules,
// at most one drive per transition, consistent rotating frames) and
// precomputes the generator.  A 0 <-> 0 "transition" is admitted as a bare
// two-state coupling driven by the pi field component.
Liouvillian build_liouvillian(const LevelScheme& scheme,
                              const std::vector<DriveSpec>& drives,
                              double delta_b);

}  // namespace darksim
