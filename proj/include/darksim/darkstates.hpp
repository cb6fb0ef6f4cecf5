#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "darksim/field.hpp"
#include "darksim/fieldmodel.hpp"
#include "darksim/halfint.hpp"

namespace darksim {

// Orthonormal basis of lower-level superpositions that the given field does
// not couple to the upper level: the left null space of the Rabi matrix,
// i.e. vectors c with  sum_{m_l} Omega(m_l, m_u) c_{m_l} = 0  for all m_u.
struct DarkSpace {
  HalfInt j_lower;
  // Each column is one dark superposition over m_l = -J..+J.
  Eigen::MatrixXcd basis;  // (2*j_lower+1) x dimension
  int dimension() const { return static_cast<int>(basis.cols()); }
};

// Numerical dark space of an instantaneous field (SVD, null-space threshold
// 1e-10 relative to the largest singular value).  Throws std::domain_error
// for a zero field or a dipole-forbidden (J_l, J_u) pair.
DarkSpace dark_space(HalfInt j_lower, HalfInt j_upper,
                     const SphericalField& field);

// Polarization classes with distinct dark-state counting.
enum class PolarizationClass {
  kLinearPi,      // only E_0 nonzero
  kPureCircular,  // only one of E_{-1}, E_{+1} nonzero
  kGeneric,       // anything else (fixed polarization)
};

// Number of dark lower-level superpositions for a single transition with a
// fixed (non-modulated) polarization:
//   J_u = J_l + 1 : 0 for any polarization
//   J_u = J_l     : 1 if J integer; for half-integer J only pure circular
//                   polarization leaves 1, otherwise 0
//   J_u = J_l - 1 : 2 for any polarization
int dark_state_count(HalfInt j_lower, HalfInt j_upper, PolarizationClass c);

PolarizationClass classify_polarization(const SphericalField& field);

// Dark space of a modulated field along a time grid, Zeeman-evolved: sample
// k holds the instantaneous dark basis at times[k], aligned (column order and
// phase) with the previous sample for continuity, with each coefficient c_m
// then multiplied by exp(-i * shift_m * times[k]) where shift_m is the energy
// of lower sublevel m.  A superposition that stays dark while its phases wind
// shows up as a basis whose entries rotate at the sublevel splitting.
std::vector<DarkSpace> dark_trajectory(HalfInt j_lower, HalfInt j_upper,
                                       const FieldModel& model,
                                       const std::vector<double>& shifts,
                                       const std::vector<double>& times);

}  // namespace darksim
