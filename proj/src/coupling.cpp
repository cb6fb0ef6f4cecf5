#include "darksim/coupling.hpp"

#include <cmath>

#include "darksim/wigner.hpp"

namespace darksim {

RabiMatrix rabi_matrix(HalfInt j_lower, HalfInt j_upper,
                       const SphericalField& field, double omega0) {
  const int tjl = j_lower.doubled(), tju = j_upper.doubled();
  if (tjl < 0 || tju < 0) {
    throw std::domain_error("rabi_matrix: negative angular momentum");
  }
  if (std::abs(tjl - tju) > 2 || tjl + tju < 2) {
    throw std::domain_error("rabi_matrix: transition " + j_lower.str() +
                            " <-> " + j_upper.str() +
                            " is not electric-dipole allowed");
  }
  if ((tjl - tju) % 2 != 0) {
    throw std::domain_error(
        "rabi_matrix: levels must both be integer or both half-integer");
  }

  RabiMatrix out{j_lower, j_upper,
                 Eigen::MatrixXcd::Zero(tjl + 1, tju + 1)};
  const double sqrt3 = std::sqrt(3.0);
  const HalfInt one = HalfInt::from_doubled(2);
  int row = 0;
  for (HalfInt ml : m_range(j_lower)) {
    int col = 0;
    for (HalfInt mu : m_range(j_upper)) {
      const int tq = mu.doubled() - ml.doubled();
      if (tq == -2 || tq == 0 || tq == 2) {
        const double w =
            wigner3j(j_lower, one, j_upper, -ml, ml - mu, mu);
        if (w != 0.0) {
          const int phase = (tjl - ml.doubled()) / 2;
          const double sgn = (((phase % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
          out.omega(row, col) =
              sqrt3 * omega0 * sgn * field.component(tq / 2) * w;
        }
      }
      ++col;
    }
    ++row;
  }
  return out;
}

double rms_rabi(const RabiMatrix& m) { return m.omega.norm(); }

}  // namespace darksim
