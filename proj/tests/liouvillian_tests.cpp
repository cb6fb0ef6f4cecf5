#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "doctest.h"

#include "darksim/coupling.hpp"
#include "darksim/liouvillian.hpp"
#include "darksim/wigner.hpp"

using darksim::DriveSpec;
using darksim::HalfInt;
using darksim::LevelScheme;
using darksim::Liouvillian;
using darksim::SphericalField;
using darksim::complexd;

namespace {

HalfInt h(int doubled) { return HalfInt::from_doubled(doubled); }

LevelScheme j10_scheme() {
  LevelScheme s;
  s.levels = {{"g", h(2), 2.0}, {"e", h(0), 0.0}};
  s.decays = {{"e", "g", 1.0}};
  return s;
}

// S(1/2) - P(1/2) - D(3/2) Lambda-type scheme; P decays to both lower levels.
LevelScheme spd_scheme(double alpha) {
  LevelScheme s;
  s.levels = {{"S", h(1), 2.0}, {"P", h(1), 2.0 / 3.0}, {"D", h(3), 4.0 / 5.0}};
  s.decays = {{"P", "S", 1.0 - alpha}, {"P", "D", alpha}};
  return s;
}

DriveSpec static_drive(const std::string& lower, const std::string& upper,
                       const std::string& label, double omega,
                       double detuning, const SphericalField& f) {
  DriveSpec d;
  d.lower = lower;
  d.upper = upper;
  d.label = label;
  d.omega = omega;
  d.detuning = detuning;
  d.field = darksim::FieldModel(darksim::StaticField{f});
  return d;
}

SphericalField random_field(std::mt19937& rng) {
  std::normal_distribution<double> g;
  SphericalField f;
  f.e_minus = complexd(g(rng), g(rng));
  f.e_zero = complexd(g(rng), g(rng));
  f.e_plus = complexd(g(rng), g(rng));
  return f;
}

Eigen::MatrixXcd random_hermitian(int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = complexd(g(rng), g(rng));
  }
  return 0.5 * (a + a.adjoint());
}

double sign_pow_doubled(int exponent_doubled) {
  return (exponent_doubled / 2) % 2 ? -1.0 : 1.0;
}

// Independent spontaneous-decay superoperator built from Clebsch-Gordan
// decomposed jump operators, one per emitted polarization:
//   A_q(m_l, m_u) = sqrt(rate (2J_u+1)) (-1)^(1 - J_l - m_u)
//                   threeJ(J_l 1 J_u; m_l q -m_u).
Eigen::MatrixXcd oracle_dissipator(const LevelScheme& s,
                                   const Eigen::MatrixXcd& rho) {
  const int n = s.dim();
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  const HalfInt one = h(2);
  for (const auto& ch : s.decays) {
    const int ui = s.level_index(ch.upper), li = s.level_index(ch.lower);
    const HalfInt ju = s.levels[ui].j, jl = s.levels[li].j;
    Eigen::MatrixXcd norm_sum = Eigen::MatrixXcd::Zero(n, n);
    for (int q = -1; q <= 1; ++q) {
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
      for (HalfInt mu : darksim::m_range(ju)) {
        const HalfInt ml = mu - h(2 * q);
        if (std::abs(ml.doubled()) > jl.doubled()) continue;
        const double phase =
            sign_pow_doubled(2 - jl.doubled() - mu.doubled());
        a(s.sublevel_index(li, ml), s.sublevel_index(ui, mu)) =
            std::sqrt(ch.rate * (ju.doubled() + 1)) * phase *
            darksim::wigner3j(jl, one, ju, ml, h(2 * q), -mu);
      }
      d += a * rho * a.adjoint() -
           0.5 * (a.adjoint() * a * rho + rho * a.adjoint() * a);
      norm_sum += a.adjoint() * a;
    }
    // Sum rule: the per-channel jump operators add up to the channel rate
    // uniformly over the upper sublevels.
    for (HalfInt mu : darksim::m_range(ju)) {
      const int gi = s.sublevel_index(ui, mu);
      REQUIRE(std::abs(norm_sum(gi, gi) - ch.rate) < 1e-12);
    }
  }
  return d;
}

}  // namespace

TEST_CASE("drive block of the Hamiltonian matches the Rabi matrix") {
  std::mt19937 rng(31);
  for (int it = 0; it < 20; ++it) {
    const SphericalField f = random_field(rng);
    const double omega = 0.7;
    const auto liou = darksim::build_liouvillian(
        j10_scheme(), {static_drive("g", "e", "ge", omega, 0.3, f)}, 0.11);
    Eigen::MatrixXcd ha;
    liou.hamiltonian(0.0, ha);
    CHECK((ha - ha.adjoint()).cwiseAbs().maxCoeff() < 1e-14);

    const auto rm = darksim::rabi_matrix(h(2), h(0), f, omega);
    const auto& s = liou.scheme();
    for (int mi = 0; mi < 3; ++mi) {
      const int gl = s.sublevel_index(0, h(2 * mi - 2));
      const int gu = s.sublevel_index(1, h(0));
      CHECK(std::abs(ha(gu, gl) - (-0.5) * rm.omega(mi, 0)) < 1e-14);
    }
  }
}

TEST_CASE("frame energies follow the drive graph; Zeeman shifts follow g m") {
  const double dsp = 0.3, ddp = 0.5, db = 0.07;
  SphericalField f;
  f.e_zero = 1.0;
  const auto liou = darksim::build_liouvillian(
      spd_scheme(1.0 / 14.0),
      {static_drive("S", "P", "SP", 0.4, dsp, f),
       static_drive("D", "P", "DP", 0.4, ddp, f)},
      db);
  Eigen::MatrixXcd ha;
  liou.hamiltonian(0.0, ha);
  const auto& s = liou.scheme();
  for (HalfInt m : darksim::m_range(h(1))) {
    CHECK(std::abs(ha(s.sublevel_index(0, m), s.sublevel_index(0, m)) -
                   2.0 * m.value() * db) < 1e-14);
    CHECK(std::abs(ha(s.sublevel_index(1, m), s.sublevel_index(1, m)) -
                   (-dsp + (2.0 / 3.0) * m.value() * db)) < 1e-14);
  }
  for (HalfInt m : darksim::m_range(h(3))) {
    CHECK(std::abs(ha(s.sublevel_index(2, m), s.sublevel_index(2, m)) -
                   (-dsp + ddp + (4.0 / 5.0) * m.value() * db)) < 1e-14);
  }
}

TEST_CASE("dissipator equals an independently built Lindblad form") {
  std::mt19937 rng(32);

  auto check_scheme = [&rng](const LevelScheme& s,
                             const std::vector<DriveSpec>& drives) {
    const auto liou = darksim::build_liouvillian(s, drives, 0.09);
    const int n = liou.dim();
    Eigen::MatrixXcd ha;
    liou.hamiltonian(0.4, ha);
    for (int it = 0; it < 25; ++it) {
      const Eigen::MatrixXcd rho = random_hermitian(n, rng);
      Eigen::MatrixXcd drho(n, n);
      liou.apply(0.4, rho, drho);
      const Eigen::MatrixXcd coherent =
          complexd(0, -1) * (ha * rho - rho * ha);
      const Eigen::MatrixXcd want = oracle_dissipator(s, rho);
      CHECK((drho - coherent - want).cwiseAbs().maxCoeff() < 1e-12);
    }
  };

  SphericalField f;
  f.e_minus = complexd(0.3, -0.1);
  f.e_zero = 0.8;
  f.e_plus = complexd(-0.2, 0.4);
  check_scheme(j10_scheme(), {static_drive("g", "e", "ge", 0.6, 0.2, f)});
  check_scheme(spd_scheme(1.0 / 14.0),
               {static_drive("S", "P", "SP", 0.4, 0.0, f),
                static_drive("D", "P", "DP", 0.3, 0.5, f)});
}

TEST_CASE("decay branching: population leaves the upper level at the full "
          "rate and splits by channel rate") {
  const double alpha = 1.0 / 14.0;
  SphericalField f;
  f.e_zero = 1.0;
  const auto liou = darksim::build_liouvillian(
      spd_scheme(alpha),
      {static_drive("S", "P", "SP", 0.0, 0.0, f),
       static_drive("D", "P", "DP", 0.0, 0.5, f)},
      0.0);
  const auto& s = liou.scheme();
  const int n = liou.dim();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  const int p_up = s.sublevel_index(1, h(1));
  rho(p_up, p_up) = 1.0;
  Eigen::MatrixXcd drho(n, n);
  liou.apply(0.0, rho, drho);

  CHECK(drho(p_up, p_up).real() == doctest::Approx(-1.0).epsilon(1e-12));
  double to_s = 0, to_d = 0;
  for (HalfInt m : darksim::m_range(h(1))) {
    to_s += drho(s.sublevel_index(0, m), s.sublevel_index(0, m)).real();
  }
  for (HalfInt m : darksim::m_range(h(3))) {
    to_d += drho(s.sublevel_index(2, m), s.sublevel_index(2, m)).real();
  }
  CHECK(to_s == doctest::Approx(1.0 - alpha).epsilon(1e-12));
  CHECK(to_d == doctest::Approx(alpha).epsilon(1e-12));
  CHECK(std::abs(drho.trace()) < 1e-14);
}

TEST_CASE("generator preserves trace and Hermiticity; matrix() agrees with "
          "apply()") {
  std::mt19937 rng(33);
  darksim::BichromaticShift aom;
  aom.e_sigma_plus = aom.e_sigma_minus = 1.0 / std::sqrt(2.0);
  aom.delta_plus = 0.4;
  aom.delta_minus = -0.4;
  DriveSpec d;
  d.lower = "g";
  d.upper = "e";
  d.label = "ge";
  d.omega = 0.6;
  d.field = darksim::FieldModel(aom);
  const auto liou = darksim::build_liouvillian(j10_scheme(), {d}, 0.05);
  CHECK(liou.time_dependent());
  REQUIRE(liou.period().has_value());
  CHECK(*liou.period() == doctest::Approx(2.0 * M_PI / 0.4).epsilon(1e-12));

  const int n = liou.dim();
  for (double t : {0.0, 0.7, 3.9}) {
    const Eigen::MatrixXcd lmat = liou.matrix(t);
    for (int it = 0; it < 10; ++it) {
      Eigen::MatrixXcd rho = random_hermitian(n, rng);
      rho /= rho.trace().real();
      Eigen::MatrixXcd drho(n, n);
      liou.apply(t, rho, drho);
      CHECK(std::abs(drho.trace()) < 1e-13);
      CHECK((drho - drho.adjoint()).cwiseAbs().maxCoeff() < 1e-13);

      const Eigen::VectorXcd flat =
          lmat * Eigen::Map<const Eigen::VectorXcd>(rho.data(), n * n);
      CHECK((Eigen::Map<const Eigen::MatrixXcd>(flat.data(), n, n) - drho)
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    }
  }

  const auto static_liou = darksim::build_liouvillian(
      j10_scheme(),
      {static_drive("g", "e", "ge", 0.6, 0.0, darksim::SphericalField{
                        0.0, 1.0, 0.0})},
      0.05);
  CHECK(!static_liou.time_dependent());
  CHECK(!static_liou.period().has_value());
}

TEST_CASE("two modulated drives combine into a common period") {
  darksim::SinePhaseMod pem;
  pem.e_mod = 0.7;
  pem.phase_amplitude = M_PI;
  pem.rate = 0.3;
  darksim::BichromaticShift aom;
  aom.e_sigma_plus = 1.0;
  aom.delta_minus = -0.2;
  DriveSpec d1 = static_drive("S", "P", "SP", 0.4, 0.0, SphericalField{});
  d1.field = darksim::FieldModel(pem);
  DriveSpec d2 = static_drive("D", "P", "DP", 0.3, 0.5, SphericalField{});
  d2.field = darksim::FieldModel(aom);
  const auto liou =
      darksim::build_liouvillian(spd_scheme(1.0 / 14.0), {d1, d2}, 0.0);
  REQUIRE(liou.period().has_value());
  CHECK(*liou.period() == doctest::Approx(20.0 * M_PI).epsilon(1e-9));
}

TEST_CASE("a 0-0 pair couples as a bare two-state system through the pi "
          "component") {
  LevelScheme s;
  s.levels = {{"g", h(0), 0.0}, {"e", h(0), 0.0}};
  s.decays = {{"e", "g", 1.0}};
  SphericalField f;
  f.e_zero = 1.0;
  const auto liou = darksim::build_liouvillian(
      s, {static_drive("g", "e", "ge", 0.5, 0.0, f)}, 0.0);
  Eigen::MatrixXcd ha;
  liou.hamiltonian(0.0, ha);
  CHECK(std::abs(ha(1, 0) - complexd(-0.25, 0.0)) < 1e-14);
}

TEST_CASE("scheme validation rejects ill-formed inputs") {
  SphericalField f;
  f.e_zero = 1.0;

  SUBCASE("two drives on one transition") {
    try {
      darksim::build_liouvillian(j10_scheme(),
                                 {static_drive("g", "e", "a", 0.3, 0.0, f),
                                  static_drive("e", "g", "b", 0.2, 0.1, f)},
                                 0.0);
      FAIL("expected a throw");
    } catch (const std::domain_error& e) {
      CHECK(std::string(e.what()).find("combine them into one field model") !=
            std::string::npos);
    }
  }

  SUBCASE("a drive loop cannot sit in one rotating frame") {
    try {
      darksim::build_liouvillian(
          spd_scheme(0.1),
          {static_drive("S", "P", "SP", 0.3, 0.0, f),
           static_drive("D", "P", "DP", 0.3, 0.5, f),
           static_drive("S", "D", "SD", 0.3, -0.5, f)},
          0.0);
      FAIL("expected a throw");
    } catch (const std::domain_error& e) {
      CHECK(std::string(e.what()).find("inconsistent rotating frames") !=
            std::string::npos);
    }
  }

  SUBCASE("dipole-forbidden drive") {
    LevelScheme s;
    s.levels = {{"g", h(0), 0.0}, {"e", h(4), 0.5}};
    s.decays = {{"e", "g", 1.0}};
    CHECK_THROWS_AS(darksim::build_liouvillian(
                        s, {static_drive("g", "e", "ge", 0.3, 0.0, f)}, 0.0),
                    std::domain_error);
  }

  SUBCASE("unknown level label in a drive") {
    CHECK_THROWS_AS(darksim::build_liouvillian(
                        j10_scheme(),
                        {static_drive("g", "nope", "ge", 0.3, 0.0, f)}, 0.0),
                    std::domain_error);
  }

  SUBCASE("negative decay rate") {
    LevelScheme s = j10_scheme();
    s.decays[0].rate = -1.0;
    CHECK_THROWS_AS(darksim::build_liouvillian(
                        s, {static_drive("g", "e", "ge", 0.3, 0.0, f)}, 0.0),
                    std::domain_error);
  }
}

TEST_CASE("laser dephasing widens exactly the coherences that carry the "
          "laser phase") {
  SphericalField f;
  f.e_zero = 1.0;
  // omega = 0 keeps the Hamiltonian diagonal, so the real part of the decay
  // of a unit coherence reads off the damping matrix entry directly.
  auto build = [&] {
    return darksim::build_liouvillian(
        spd_scheme(1.0 / 14.0),
        {static_drive("S", "P", "SP", 0.0, 0.3, f),
         static_drive("D", "P", "DP", 0.0, 0.5, f)},
        0.0);
  };
  auto damping = [](const Liouvillian& liou, int i, int j) {
    const int n = liou.dim();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
    rho(i, j) = 1.0;
    rho(j, i) = 1.0;
    Eigen::MatrixXcd drho(n, n);
    liou.apply(0.0, rho, drho);
    return -drho(i, j).real();
  };

  auto liou = build();
  const auto& s = liou.scheme();
  const int si = s.sublevel_index(0, h(-1));
  const int sj = s.sublevel_index(0, h(1));
  const int pi = s.sublevel_index(1, h(-1));
  const int di = s.sublevel_index(2, h(-1));

  CHECK(damping(liou, si, pi) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(damping(liou, si, di) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(damping(liou, pi, di) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(damping(liou, si, sj) == doctest::Approx(0.0).epsilon(1e-12));

  liou.apply_laser_dephasing("SP", 0.2);
  CHECK(damping(liou, si, pi) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(damping(liou, si, di) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(damping(liou, pi, di) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(damping(liou, si, sj) == doctest::Approx(0.0).epsilon(1e-12));

  liou.apply_laser_dephasing("DP", 0.31);
  CHECK(damping(liou, si, pi) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(damping(liou, si, di) == doctest::Approx(0.51).epsilon(1e-12));
  CHECK(damping(liou, pi, di) == doctest::Approx(0.81).epsilon(1e-12));

  CHECK_THROWS_AS(liou.apply_laser_dephasing("XX", 0.1), std::domain_error);
  CHECK_THROWS_AS(liou.apply_laser_dephasing("SP", -0.1), std::domain_error);

  // Setting the linewidth on the drive spec at build time is equivalent.
  auto spec_drive = static_drive("S", "P", "SP", 0.0, 0.3, f);
  spec_drive.linewidth = 0.2;
  const auto built_in = darksim::build_liouvillian(
      spd_scheme(1.0 / 14.0),
      {spec_drive, static_drive("D", "P", "DP", 0.0, 0.5, f)}, 0.0);
  CHECK(damping(built_in, si, pi) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(damping(built_in, si, di) == doctest::Approx(0.2).epsilon(1e-12));
}
