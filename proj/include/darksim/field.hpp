#pragma once

#include <complex>
#include <stdexcept>

namespace darksim {

using complexd = std::complex<double>;

// Spherical (irreducible tensor) components of a laser polarization vector.
// Component E_mu drives transitions with m_upper - m_lower = mu:
// E_{-1} drives sigma^-, E_0 drives pi, E_{+1} drives sigma^+ transitions
// when the quantization axis is along z.
struct SphericalField {
  complexd e_minus{};  // E_{-1}
  complexd e_zero{};   // E_0
  complexd e_plus{};   // E_{+1}

  complexd component(int mu) const {
    switch (mu) {
      case -1: return e_minus;
      case 0: return e_zero;
      case 1: return e_plus;
      default: throw std::domain_error("SphericalField: mu must be -1, 0, +1");
    }
  }

  double norm2() const {
    return std::norm(e_minus) + std::norm(e_zero) + std::norm(e_plus);
  }
  double norm() const { return std::sqrt(norm2()); }

  SphericalField operator*(complexd s) const {
    return {e_minus * s, e_zero * s, e_plus * s};
  }
  SphericalField operator+(const SphericalField& o) const {
    return {e_minus + o.e_minus, e_zero + o.e_zero, e_plus + o.e_plus};
  }
};

// Cartesian -> spherical basis change:
//   E_{+1} = -(E_x + i E_y)/sqrt(2),  E_0 = E_z,  E_{-1} = (E_x - i E_y)/sqrt(2).
// Unitary: |E_x|^2 + |E_y|^2 + |E_z|^2 is preserved.
SphericalField spherical_components(complexd ex, complexd ey, complexd ez);

// Linear polarization in the x-z plane at angle theta (radians) to the
// quantization (z) axis, with real amplitude >= 0:
//   (E_{-1}, E_0, E_{+1}) = amplitude * (sin th / sqrt2, cos th, -sin th / sqrt2).
SphericalField linear_polarization_at_angle(double theta, double amplitude);

}  // namespace darksim
