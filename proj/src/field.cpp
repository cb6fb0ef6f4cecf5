#include "darksim/field.hpp"

#include <cmath>

namespace darksim {

SphericalField spherical_components(complexd ex, complexd ey, complexd ez) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  SphericalField f;
  f.e_plus = -(ex + complexd(0, 1) * ey) * inv_sqrt2;
  f.e_zero = ez;
  f.e_minus = (ex - complexd(0, 1) * ey) * inv_sqrt2;
  return f;
}

SphericalField linear_polarization_at_angle(double theta, double amplitude) {
  if (amplitude < 0) {
    throw std::domain_error("linear_polarization_at_angle: amplitude must be >= 0");
  }
  return spherical_components(amplitude * std::sin(theta), 0.0,
                              amplitude * std::cos(theta));
}

}  // namespace darksim
