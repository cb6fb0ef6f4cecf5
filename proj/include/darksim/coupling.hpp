#pragma once

#include <Eigen/Dense>

#include "darksim/field.hpp"
#include "darksim/halfint.hpp"

namespace darksim {

// Sublevel-resolved Rabi couplings for one electric-dipole transition
// J_lower <-> J_upper.  Row index runs over m_lower = -J_lower..+J_lower,
// column index over m_upper = -J_upper..+J_upper.
struct RabiMatrix {
  HalfInt j_lower;
  HalfInt j_upper;
  Eigen::MatrixXcd omega;  // (2*j_lower+1) x (2*j_upper+1)
};

// Coupling convention:
//
//   Omega(m_l, m_u) = sqrt(3) * omega0 * (-1)^(J_l - m_l) * E_{m_u - m_l}
//                     * threeJ(J_l, 1, J_u; -m_l, m_l - m_u, m_u)
//
// The sqrt(3) makes the root-mean-square coupling equal omega0 * |field| for
// every (J_l, J_u) pair, so omega0 is a geometry-independent intensity scale.
// With this phase choice a lower-level superposition sum_m c_m |m> is dark
// (uncoupled) exactly when  sum_m Omega(m, m_u) c_m = 0  for every m_u, i.e.
// dark amplitudes are polynomials in the unconjugated field components.
//
// Throws std::domain_error unless |J_l - J_u| <= 1 and J_l + J_u >= 1
// (a 0 <-> 0 transition carries no dipole coupling).
RabiMatrix rabi_matrix(HalfInt j_lower, HalfInt j_upper,
                       const SphericalField& field, double omega0);

// sqrt(sum of |Omega|^2) == omega0 * |field| for any valid (J_l, J_u).
double rms_rabi(const RabiMatrix& m);

}  // namespace darksim
