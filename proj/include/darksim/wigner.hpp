#pragma once

#include "darksim/halfint.hpp"

namespace darksim {

// Wigner 3-j symbol  (j1 j2 j3; m1 m2 m3).
//
// Evaluated exactly: the square-rooted prefactor is carried as a prime
// factorization (separating a perfect square from a square-free remainder)
// and the alternating sum runs in exact rational arithmetic, so the only
// rounding is the final conversion to double.  Supports j up to 20.
//
// Throws std::domain_error for negative j, j > 20, or (j, m) pairs whose
// difference is not an integer.  Returns 0 for arguments that are merely
// outside the selection rules (triangle violation, m1+m2+m3 != 0, |m| > j).
double wigner3j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2,
                HalfInt m3);

}  // namespace darksim
