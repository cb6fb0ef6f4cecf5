#pragma once

#include <vector>

namespace darksim {

// Monotone (shape-preserving) piecewise-cubic Hermite interpolant.  Between
// nodes where the data is monotone the interpolant is monotone too, so level
// crossings found by bisection are unique within a bracket.
class Pchip {
 public:
  // x strictly increasing, sizes equal, at least 2 points.
  Pchip(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, d_;
};

}  // namespace darksim
