#include "darksim/wigner.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdlib>
#include <vector>

namespace darksim {
namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using float50 = boost::multiprecision::cpp_bin_float_50;

constexpr int kMaxDoubledJ = 40;  // j <= 20
// Largest factorial argument that can appear: j1 + j2 + j3 + 1 <= 61.
constexpr int kMaxFactArg = 61;

constexpr std::array<int, 18> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                         29, 31, 37, 41, 43, 47, 53, 59, 61};

using ExpVec = std::array<int, kPrimes.size()>;

struct Tables {
  std::vector<ExpVec> fact_exp;  // fact_exp[n][k]: exponent of kPrimes[k] in n!
  std::vector<cpp_int> fact;     // exact n!
};

Tables build_tables() {
  Tables t;
  t.fact_exp.resize(kMaxFactArg + 1);
  t.fact.resize(kMaxFactArg + 1);
  t.fact_exp[0].fill(0);
  t.fact[0] = 1;
  for (int n = 1; n <= kMaxFactArg; ++n) {
    t.fact_exp[n] = t.fact_exp[n - 1];
    int rem = n;
    for (std::size_t k = 0; k < kPrimes.size() && rem > 1; ++k) {
      while (rem % kPrimes[k] == 0) {
        rem /= kPrimes[k];
        ++t.fact_exp[n][k];
      }
    }
    t.fact[n] = t.fact[n - 1] * n;
  }
  return t;
}

const Tables& tables() {
  static const Tables t = build_tables();
  return t;
}

int floor_div2(int e) { return (e >= 0) ? e / 2 : (e - 1) / 2; }

}  // namespace

double wigner3j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2,
                HalfInt m3) {
  const int tj1 = j1.doubled(), tj2 = j2.doubled(), tj3 = j3.doubled();
  const int tm1 = m1.doubled(), tm2 = m2.doubled(), tm3 = m3.doubled();

  if (tj1 < 0 || tj2 < 0 || tj3 < 0) {
    throw std::domain_error("wigner3j: negative angular momentum");
  }
  if (tj1 > kMaxDoubledJ || tj2 > kMaxDoubledJ || tj3 > kMaxDoubledJ) {
    throw std::domain_error("wigner3j: j > 20 not supported");
  }
  if ((tj1 - tm1) % 2 != 0 || (tj2 - tm2) % 2 != 0 || (tj3 - tm3) % 2 != 0) {
    throw std::domain_error(
        "wigner3j: j and m must differ by an integer (both integer or both "
        "half-integer)");
  }

  // Selection rules: zero, not an error.
  if (tm1 + tm2 + tm3 != 0) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) {
    return 0.0;
  }
  if (tj3 > tj1 + tj2 || tj3 < std::abs(tj1 - tj2)) return 0.0;
  if ((tj1 + tj2 + tj3) % 2 != 0) return 0.0;

  const Tables& t = tables();

  const int a = (tj1 + tj2 - tj3) / 2;
  const int b = (tj1 - tj2 + tj3) / 2;
  const int c = (-tj1 + tj2 + tj3) / 2;
  const int perim1 = (tj1 + tj2 + tj3) / 2 + 1;
  const int j1p = (tj1 + tm1) / 2, j1m = (tj1 - tm1) / 2;
  const int j2p = (tj2 + tm2) / 2, j2m = (tj2 - tm2) / 2;
  const int j3p = (tj3 + tm3) / 2, j3m = (tj3 - tm3) / 2;

  // Exponent vector of the squared prefactor
  //   delta(j1 j2 j3) * (j1+m1)! (j1-m1)! (j2+m2)! (j2-m2)! (j3+m3)! (j3-m3)!
  ExpVec exps{};
  for (std::size_t k = 0; k < kPrimes.size(); ++k) {
    exps[k] = t.fact_exp[a][k] + t.fact_exp[b][k] + t.fact_exp[c][k] -
              t.fact_exp[perim1][k] + t.fact_exp[j1p][k] + t.fact_exp[j1m][k] +
              t.fact_exp[j2p][k] + t.fact_exp[j2m][k] + t.fact_exp[j3p][k] +
              t.fact_exp[j3m][k];
  }

  // Square root as (exact rational) * sqrt(square-free integer).
  cpp_int sq_num = 1, sq_den = 1, sqfree = 1;
  for (std::size_t k = 0; k < kPrimes.size(); ++k) {
    const int q = floor_div2(exps[k]);
    const int r = exps[k] - 2 * q;
    if (q > 0) {
      sq_num *= boost::multiprecision::pow(cpp_int(kPrimes[k]), q);
    } else if (q < 0) {
      sq_den *= boost::multiprecision::pow(cpp_int(kPrimes[k]), -q);
    }
    if (r != 0) sqfree *= kPrimes[k];
  }

  // Alternating sum, exact.
  const int kmin =
      std::max({0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2});
  const int kmax = std::min({a, j1m, j2p});
  cpp_rational sum = 0;
  for (int k = kmin; k <= kmax; ++k) {
    cpp_int den = t.fact[k] * t.fact[a - k] * t.fact[j1m - k] *
                  t.fact[j2p - k] * t.fact[(tj3 - tj2 + tm1) / 2 + k] *
                  t.fact[(tj3 - tj1 - tm2) / 2 + k];
    if (k % 2 == 0) {
      sum += cpp_rational(1, den);
    } else {
      sum -= cpp_rational(1, den);
    }
  }
  if (sum == 0) return 0.0;

  const int phase_exp = (tj1 - tj2 - tm3) / 2;
  const double sign = (((phase_exp % 2) + 2) % 2 == 0) ? 1.0 : -1.0;

  const cpp_int num = boost::multiprecision::numerator(sum) * sq_num;
  const cpp_int den = boost::multiprecision::denominator(sum) * sq_den;
  const float50 v =
      float50(num) / float50(den) * sqrt(float50(sqfree));
  return sign * v.convert_to<double>();
}

}  // namespace darksim
