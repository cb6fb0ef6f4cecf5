#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "doctest.h"

#include "darksim/darkstates.hpp"
#include "darksim/models.hpp"
#include "darksim/presets.hpp"
#include "darksim/solver.hpp"

using darksim::Experiment;
using darksim::HalfInt;
using darksim::SolveOptions;
using darksim::SphericalField;
using darksim::complexd;

namespace {

HalfInt h(int doubled) { return HalfInt::from_doubled(doubled); }
constexpr double kMagicDeg = 54.735610317245346;

Experiment j10_at(double omega, double delta_b, double theta_deg,
                  double detuning) {
  Experiment ex = darksim::make_preset("J10");
  ex.drives[0].omega = omega;
  ex.drives[0].detuning = detuning;
  ex.delta_b = delta_b;
  ex.theta_deg = theta_deg;
  return ex;
}

double steady_pf(const Experiment& ex) {
  const auto liou = darksim::make_liouvillian(ex);
  const auto res = darksim::steady_state(liou, ex.solver);
  return darksim::level_population(res.rho, liou.scheme(), ex.observable);
}

}  // namespace

TEST_CASE("two-state steady population matches the closed form") {
  for (double omega : {0.05, 0.3, 1.0, 4.0}) {
    for (double det : {0.0, 0.4, -2.0}) {
      Experiment ex = darksim::make_preset("TwoLevelGeneric");
      ex.drives[0].omega = omega;
      ex.drives[0].detuning = det;
      const double got = steady_pf(ex);
      const double want = darksim::two_level_population(omega, det);
      CHECK(got == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("lin-angle-driven J=1 to J=0 population matches the closed form") {
  for (double omega : {0.35, 1.0}) {
    for (double db : {0.0866, 0.25}) {
      for (double theta : {30.0, kMagicDeg}) {
        for (double det : {0.0, -0.5, 2.0}) {
          const double got = steady_pf(j10_at(omega, db, theta, det));
          const double want = darksim::j10_population(
              omega, db, theta * M_PI / 180.0, det);
          CHECK(got == doctest::Approx(want).epsilon(1e-8));
        }
      }
    }
  }
}

TEST_CASE("strongest fluorescence point of the J=1 system") {
  const double omega = std::sqrt(3.0) / 5.0;
  const double got = steady_pf(j10_at(omega, omega / 4.0, kMagicDeg, 0.0));
  CHECK(got == doctest::Approx(1.0 / 29.0).epsilon(1e-12));
}

TEST_CASE("population is even in detuning and in the splitting") {
  const double p1 = steady_pf(j10_at(0.5, 0.13, 40.0, 0.7));
  const double p2 = steady_pf(j10_at(0.5, 0.13, 40.0, -0.7));
  CHECK(p1 == doctest::Approx(p2).epsilon(1e-10));
  const double p3 = steady_pf(j10_at(0.5, -0.13, 40.0, 0.7));
  CHECK(p1 == doctest::Approx(p3).epsilon(1e-10));
}

TEST_CASE("two-colour lower-level resonances go dark, detuned field does not") {
  Experiment ex = darksim::make_preset("SPD_Sr");
  ex.theta_deg = 90.0;
  for (auto& d : ex.drives) d.omega = std::sqrt(2.0) / 5.0;
  ex.drives[0].detuning = 0.0;   // S-P
  ex.drives[1].detuning = 0.5;   // D-P

  for (double db : {5.0 / 22.0, 5.0 / 6.0}) {
    ex.delta_b = db;
    CHECK(steady_pf(ex) < 1e-8);
  }
  ex.delta_b = 0.05;
  CHECK(steady_pf(ex) > 1e-2);
}

TEST_CASE("pure decay empties the upper level exponentially") {
  Experiment ex = darksim::make_preset("J10");
  ex.drives[0].omega = 0.0;
  const auto liou = darksim::make_liouvillian(ex);
  const int n = liou.dim();
  const auto& s = liou.scheme();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  const int e_idx = s.sublevel_index(1, h(0));
  rho(e_idx, e_idx) = 1.0;
  for (double t : {1.0, 2.5}) {
    const Eigen::MatrixXcd out = darksim::evolve(liou, rho, 0.0, t);
    CHECK(out(e_idx, e_idx).real() ==
          doctest::Approx(std::exp(-t)).epsilon(1e-8));
    CHECK(std::abs(out.trace() - 1.0) < 1e-9);
  }
}

TEST_CASE("the steady state is a fixed point of the propagator") {
  Experiment ex = j10_at(0.6, 0.2, 40.0, 0.3);
  const auto liou = darksim::make_liouvillian(ex);
  const auto res = darksim::steady_state(liou);
  CHECK(!res.degenerate);
  CHECK(res.residual < 1e-11);

  const auto chk = darksim::check_density(res.rho);
  CHECK(chk.hermiticity_defect < 1e-12);
  CHECK(chk.trace_defect < 1e-12);
  CHECK(chk.min_eigenvalue > -1e-12);

  const Eigen::MatrixXcd later = darksim::evolve(liou, res.rho, 0.0, 50.0);
  CHECK((later - res.rho).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("relaxation from the uniform ground mixture reaches the steady "
          "state") {
  Experiment ex = j10_at(std::sqrt(3.0) / 5.0, 0.0866, kMagicDeg, 0.0);
  const auto liou = darksim::make_liouvillian(ex);
  const auto res = darksim::steady_state(liou);
  Eigen::MatrixXcd rho = darksim::uniform_ground_state(liou.scheme());
  rho = darksim::evolve(liou, rho, 0.0, 2000.0);
  CHECK((rho - res.rho).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("at zero splitting the population collects in the dark space") {
  Experiment ex = j10_at(0.5, 0.0, 40.0, 0.0);
  const auto liou = darksim::make_liouvillian(ex);
  Eigen::MatrixXcd rho = darksim::uniform_ground_state(liou.scheme());
  rho = darksim::evolve(liou, rho, 0.0, 1000.0);

  // Same resolved polarization as make_liouvillian applies to the drive.
  const SphericalField f = darksim::linear_polarization_at_angle(
      ex.theta_deg * M_PI / 180.0, 1.0);
  const auto ds = darksim::dark_space(h(2), h(0), f);
  complexd dark_pop = 0;
  for (int c = 0; c < ds.dimension(); ++c) {
    dark_pop += (ds.basis.col(c).adjoint() * rho.topLeftCorner(3, 3) *
                 ds.basis.col(c))
                    .value();
  }
  CHECK(dark_pop.real() > 1.0 - 1e-6);
  CHECK(darksim::level_population(rho, liou.scheme(), "e") < 1e-7);
}

TEST_CASE("undriven system: the uniform ground mixture is already steady") {
  Experiment ex = darksim::make_preset("J10");
  ex.drives[0].omega = 0.0;
  ex.delta_b = 0.1;
  const auto liou = darksim::make_liouvillian(ex);
  const auto res = darksim::steady_state(liou);
  CHECK(res.degenerate);
  const Eigen::MatrixXcd want = darksim::uniform_ground_state(liou.scheme());
  CHECK((res.rho - want).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("stationary space orthogonal to the initial level is an error "
          "naming the trapped sublevels") {
  // Root level is the J=0 excited state; the purely circular field couples
  // only the m = +1 ground sublevel, so all population ends up trapped in
  // m = -1 and m = 0, which the uniform |e> mixture has no overlap with.
  darksim::LevelScheme s;
  s.levels = {{"e", h(0), 0.0}, {"g", h(2), 2.0}};
  s.decays = {{"e", "g", 1.0}};
  darksim::DriveSpec d;
  d.lower = "g";
  d.upper = "e";
  d.label = "ge";
  d.omega = 0.5;
  SphericalField f;
  f.e_minus = 1.0;
  d.field = darksim::FieldModel(darksim::StaticField{f});
  const auto liou = darksim::build_liouvillian(s, {d}, 0.0);
  try {
    darksim::steady_state(liou);
    FAIL("expected a throw");
  } catch (const darksim::SolverError& e) {
    const std::string what = e.what();
    CHECK(what.find("g(-1)") != std::string::npos);
    CHECK(what.find("g(0)") != std::string::npos);
  }
}

TEST_CASE("sideband-shifted drive reproduces the static system it emulates") {
  // A symmetrically shifted pair of circular components with a pi carrier is
  // the rotating-frame image of a static splitting: populations must agree.
  const double omega = 0.6, db = 0.15, theta = 50.0 * M_PI / 180.0;
  Experiment st = j10_at(omega, db, 50.0, 0.0);
  st.solver.residual_rel = 1e-13;
  const double want = steady_pf(st);

  Experiment ex = darksim::make_preset("J10");
  ex.drives[0].omega = omega;
  ex.drives[0].detuning = 0.0;
  ex.drives[0].follow_theta = false;
  darksim::BichromaticShift aom;
  aom.e_sigma_plus = aom.e_sigma_minus = std::sin(theta) / std::sqrt(2.0);
  aom.e_pi = std::cos(theta);
  aom.delta_plus = 2.0 * db;   // ground g-factor is 2
  aom.delta_minus = -2.0 * db;
  ex.drives[0].field = darksim::FieldModel(aom);
  ex.delta_b = 0.0;
  ex.solver.qs_tol = 1e-10;

  const auto liou = darksim::make_liouvillian(ex);
  const auto qs = darksim::quasi_steady_average(liou, ex.solver);
  const double got =
      darksim::level_population(qs.average, liou.scheme(), ex.observable);
  CHECK(got == doctest::Approx(want).epsilon(1e-6));
  CHECK(qs.period_defect < 1e-10);
  CHECK(qs.settle_time > 0.0);
}

TEST_CASE("quasi-steady averaging of a static system needs an explicit "
          "period and returns the steady state") {
  Experiment ex = j10_at(0.5, 0.12, 40.0, 0.2);
  const auto liou = darksim::make_liouvillian(ex);
  CHECK_THROWS_AS(darksim::quasi_steady_average(liou), std::domain_error);
  const auto qs = darksim::quasi_steady_average(liou, ex.solver, 25.0);
  const auto st = darksim::steady_state(liou, ex.solver);
  CHECK((qs.average - st.rho).cwiseAbs().maxCoeff() < 1e-7);
}
