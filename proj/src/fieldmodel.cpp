#include "darksim/fieldmodel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace darksim {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Best rational approximation p/q of x (continued fractions), |q| <= max_den.
std::pair<long long, long long> to_rational(double x, double tol,
                                            long long max_den) {
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(v);
    const long long a = static_cast<long long>(fl);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) <=
        tol * std::max(1.0, std::abs(x))) {
      return {p1, q1};
    }
    const double frac = v - fl;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  if (q1 >= 1 &&
      std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) <=
          tol * std::max(1.0, std::abs(x))) {
    return {p1, q1};
  }
  throw std::domain_error(
      "period: frequency shifts have no commensurate period (ratio not "
      "rational within 1e-9, denominator <= 1e6)");
}

double pem_phase(double amplitude, double rate, double t) {
  return 0.5 * amplitude * (1.0 - std::cos(rate * t));
}

}  // namespace

bool FieldModel::is_modulated() const {
  return std::visit(
      [](const auto& m) -> bool {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, StaticField>) {
          return false;
        } else if constexpr (std::is_same_v<T, BichromaticShift>) {
          return (m.e_sigma_plus != 0 && m.delta_minus != 0) ||
                 (m.e_sigma_minus != 0 && m.delta_plus != 0);
        } else {
          return m.rate != 0 && m.phase_amplitude != 0 && m.e_mod != 0;
        }
      },
      model);
}

std::optional<double> FieldModel::period() const {
  if (!is_modulated()) return std::nullopt;
  return std::visit(
      [](const auto& m) -> std::optional<double> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, StaticField>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, BichromaticShift>) {
          const double da =
              (m.e_sigma_plus != 0) ? std::abs(m.delta_minus) : 0.0;
          const double db =
              (m.e_sigma_minus != 0) ? std::abs(m.delta_plus) : 0.0;
          if (da == 0.0) return kTwoPi / db;
          if (db == 0.0) return kTwoPi / da;
          // Common fundamental: da = g*q, db = g*p with p/q = db/da reduced.
          auto [p, q] = to_rational(db / da, 1e-9, 1000000);
          if (p == 0) return kTwoPi / da;
          return kTwoPi * q / da;
        } else {
          return kTwoPi / m.rate;
        }
      },
      model);
}

SphericalField evaluate_field(const FieldModel& fm, double t) {
  const complexd i1(0.0, 1.0);
  return std::visit(
      [&](const auto& m) -> SphericalField {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, StaticField>) {
          return m.field;
        } else if constexpr (std::is_same_v<T, BichromaticShift>) {
          SphericalField f;
          f.e_minus = m.e_sigma_plus * std::exp(-i1 * (m.delta_minus * t));
          f.e_zero = m.e_pi;
          f.e_plus = m.e_sigma_minus * std::exp(-i1 * (m.delta_plus * t));
          return f;
        } else if constexpr (std::is_same_v<T, SinePhaseMod>) {
          const double phi = pem_phase(m.phase_amplitude, m.rate, t);
          const complexd ep = std::exp(i1 * phi);
          const complexd em = std::exp(-i1 * phi);
          const double s = m.e_mod / std::sqrt(2.0);
          SphericalField f;
          f.e_minus = s * (ep + i1 * em);
          f.e_zero = m.e_pi;
          f.e_plus = s * (ep - i1 * em);
          return f;
        } else {
          const double phi = pem_phase(m.phase_amplitude, m.rate, t);
          const complexd em = std::exp(-i1 * phi);
          const double s = m.e_mod / std::sqrt(2.0);
          SphericalField f;
          f.e_minus = s * (1.0 + i1 * em);
          f.e_zero = 0.0;
          f.e_plus = s * (1.0 - i1 * em);
          return f;
        }
      },
      fm.model);
}

double effective_evolution_rate(const FieldModel& fm) {
  if (!fm.is_modulated()) {
    throw std::domain_error("effective_evolution_rate: field is static");
  }
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, StaticField>) {
          return 0.0;  // unreachable
        } else if constexpr (std::is_same_v<T, BichromaticShift>) {
          return std::max(std::abs(m.delta_plus), std::abs(m.delta_minus));
        } else {
          return (m.phase_amplitude > std::numbers::pi)
                     ? m.phase_amplitude * m.rate
                     : m.rate;
        }
      },
      fm.model);
}

double commensurate_period(double ta, double tb) {
  if (ta <= 0 || tb <= 0) {
    throw std::domain_error("commensurate_period: periods must be positive");
  }
  // T = q * ta = p * tb where ta / tb = p / q in lowest terms.
  auto [p, q] = to_rational(ta / tb, 1e-9, 1000000);
  if (p <= 0) {
    throw std::domain_error("commensurate_period: degenerate period ratio");
  }
  return q * ta;
}

SidebandSpectrum sideband_spectrum(const FieldModel& fm, int n_max) {
  if (n_max < 0) throw std::domain_error("sideband_spectrum: n_max < 0");
  SidebandSpectrum out;
  out.period = fm.period().value_or(1.0);
  for (int n = -n_max; n <= n_max; ++n) out.harmonics.push_back(n);
  for (auto& a : out.amplitudes) {
    a.assign(out.harmonics.size(), complexd(0, 0));
  }

  // Uniform trapezoid rule over one period; for a periodic integrand this is
  // spectrally accurate.
  const int samples = 4096;
  const double dt = out.period / samples;
  const complexd i1(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    const double t = s * dt;
    const SphericalField f = evaluate_field(fm, t);
    const complexd vals[3] = {f.e_minus, f.e_zero, f.e_plus};
    for (std::size_t k = 0; k < out.harmonics.size(); ++k) {
      const complexd ph =
          std::exp(-i1 * (kTwoPi * out.harmonics[k] * t / out.period));
      for (int c = 0; c < 3; ++c) {
        out.amplitudes[c][k] += vals[c] * ph / static_cast<double>(samples);
      }
    }
  }
  return out;
}

}  // namespace darksim
