#include "darksim/darkstates.hpp"

#include <cmath>
#include <stdexcept>

#include "darksim/coupling.hpp"

namespace darksim {

DarkSpace dark_space(HalfInt j_lower, HalfInt j_upper,
                     const SphericalField& field) {
  if (field.norm2() == 0.0) {
    throw std::domain_error("dark_space: zero field has no defined dark space");
  }
  const RabiMatrix rm = rabi_matrix(j_lower, j_upper, field, 1.0);
  // Dark vectors satisfy Omega^T c = 0 (plain transpose: the coupling
  // amplitude out of superposition sum c_m |m> is sum_m Omega(m, m_u) c_m).
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      rm.omega.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = (sv.size() > 0 ? sv(0) : 0.0) * 1e-10;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  const int n = static_cast<int>(rm.omega.rows());
  DarkSpace out{j_lower, svd.matrixV().rightCols(n - rank)};
  return out;
}

PolarizationClass classify_polarization(const SphericalField& field) {
  const bool has_m = std::norm(field.e_minus) > 0;
  const bool has_0 = std::norm(field.e_zero) > 0;
  const bool has_p = std::norm(field.e_plus) > 0;
  if (has_0 && !has_m && !has_p) return PolarizationClass::kLinearPi;
  if (!has_0 && (has_m != has_p)) return PolarizationClass::kPureCircular;
  return PolarizationClass::kGeneric;
}

int dark_state_count(HalfInt j_lower, HalfInt j_upper, PolarizationClass c) {
  const int tjl = j_lower.doubled(), tju = j_upper.doubled();
  if (std::abs(tjl - tju) > 2 || tjl + tju < 2 || (tjl - tju) % 2 != 0) {
    throw std::domain_error("dark_state_count: transition " + j_lower.str() +
                            " <-> " + j_upper.str() +
                            " is not electric-dipole allowed");
  }
  if (tju == tjl + 2) return 0;
  if (tju == tjl - 2) return 2;
  // J_u == J_l
  if (j_lower.is_integer()) return 1;
  return (c == PolarizationClass::kPureCircular) ? 1 : 0;
}

std::vector<DarkSpace> dark_trajectory(HalfInt j_lower, HalfInt j_upper,
                                       const FieldModel& model,
                                       const std::vector<double>& shifts,
                                       const std::vector<double>& times) {
  const int n = multiplicity(j_lower);
  if (static_cast<int>(shifts.size()) != n) {
    throw std::domain_error(
        "dark_trajectory: shifts must have one entry per lower sublevel");
  }
  std::vector<DarkSpace> out;
  out.reserve(times.size());
  Eigen::MatrixXcd prev;  // previous aligned instantaneous basis
  for (double t : times) {
    DarkSpace ds = dark_space(j_lower, j_upper, evaluate_field(model, t));
    if (prev.size() > 0 && prev.cols() == ds.basis.cols()) {
      // Greedy column matching against the previous sample, then a phase
      // rotation so that the matched overlap is real and positive.
      const Eigen::MatrixXcd overlap = prev.adjoint() * ds.basis;
      const int k = static_cast<int>(ds.basis.cols());
      Eigen::MatrixXcd aligned(ds.basis.rows(), k);
      std::vector<bool> used(k, false);
      for (int i = 0; i < k; ++i) {
        int best = -1;
        double best_mag = -1.0;
        for (int j = 0; j < k; ++j) {
          if (used[j]) continue;
          const double mag = std::abs(overlap(i, j));
          if (mag > best_mag) {
            best_mag = mag;
            best = j;
          }
        }
        used[best] = true;
        complexd ph = overlap(i, best);
        ph = (std::abs(ph) > 0) ? ph / std::abs(ph) : complexd(1, 0);
        aligned.col(i) = ds.basis.col(best) * std::conj(ph);
      }
      ds.basis = aligned;
    }
    prev = ds.basis;
    // Zeeman winding on top of the aligned instantaneous basis.
    for (int m = 0; m < n; ++m) {
      ds.basis.row(m) *= std::exp(complexd(0, -shifts[m] * t));
    }
    out.push_back(std::move(ds));
  }
  return out;
}

}  // namespace darksim
