#pragma once

#include <cmath>
#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace darksim {

// Angular momentum quantum number stored as a doubled integer (2j), so
// half-integer values stay exact under arithmetic and comparison.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_doubled(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  // Accepts values that are integer multiples of 1/2 (within 1e-9).
  static HalfInt from_double(double v) {
    double twice = 2.0 * v;
    double rounded = std::round(twice);
    if (std::abs(twice - rounded) > 1e-9) {
      throw std::domain_error("HalfInt: " + std::to_string(v) +
                              " is not an integer multiple of 1/2");
    }
    return from_doubled(static_cast<int>(rounded));
  }

  constexpr int doubled() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
    return from_doubled(a.twice_ + b.twice_);
  }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
    return from_doubled(a.twice_ - b.twice_);
  }
  constexpr HalfInt operator-() const { return from_doubled(-twice_); }
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

 private:
  int twice_ = 0;
};

inline constexpr HalfInt half_int(int twice) { return HalfInt::from_doubled(twice); }

// m = -j, -j+1, ..., +j (2j+1 values).
inline std::vector<HalfInt> m_range(HalfInt j) {
  if (j.doubled() < 0) throw std::domain_error("m_range: negative j");
  std::vector<HalfInt> out;
  out.reserve(j.doubled() + 1);
  for (int tm = -j.doubled(); tm <= j.doubled(); tm += 2) {
    out.push_back(HalfInt::from_doubled(tm));
  }
  return out;
}

inline int multiplicity(HalfInt j) { return j.doubled() + 1; }

}  // namespace darksim
