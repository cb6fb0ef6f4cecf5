#include "darksim/scheme.hpp"

#include <stdexcept>

namespace darksim {

int LevelScheme::level_index(const std::string& label) const {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].label == label) return static_cast<int>(i);
  }
  throw std::domain_error("LevelScheme: unknown level label '" + label + "'");
}

int LevelScheme::dim() const {
  int n = 0;
  for (const auto& l : levels) n += multiplicity(l.j);
  return n;
}

int LevelScheme::offset(int level) const {
  int n = 0;
  for (int i = 0; i < level; ++i) n += multiplicity(levels[i].j);
  return n;
}

int LevelScheme::sublevel_index(int level, HalfInt m) const {
  const HalfInt j = levels[level].j;
  if (m.doubled() < -j.doubled() || m.doubled() > j.doubled() ||
      (j - m).doubled() % 2 != 0) {
    throw std::domain_error("LevelScheme: invalid m = " + m.str() +
                            " for level " + levels[level].label);
  }
  return offset(level) + (m.doubled() + j.doubled()) / 2;
}

int LevelScheme::level_of(int global_index) const {
  int n = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    n += multiplicity(levels[i].j);
    if (global_index < n) return static_cast<int>(i);
  }
  throw std::domain_error("LevelScheme: sublevel index out of range");
}

std::string LevelScheme::sublevel_name(int global_index) const {
  const int li = level_of(global_index);
  const int tm = -levels[li].j.doubled() + 2 * (global_index - offset(li));
  return levels[li].label + "(" + HalfInt::from_doubled(tm).str() + ")";
}

double lande_g(int l, HalfInt s, HalfInt j) {
  if (j.doubled() == 0) return 0.0;
  const double jj = j.value() * (j.value() + 1.0);
  const double ss = s.value() * (s.value() + 1.0);
  const double ll = static_cast<double>(l) * (l + 1.0);
  return 1.0 + (jj + ss - ll) / (2.0 * jj);
}

}  // namespace darksim
