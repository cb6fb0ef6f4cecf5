#include "darksim/solver.hpp"

#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <vector>

namespace darksim {
namespace {

namespace ode = boost::numeric::odeint;
using state_type = std::vector<complexd>;

struct RhsAdapter {
  const Liouvillian* liouv;
  int n;
  void operator()(const state_type& x, state_type& dxdt, double t) const {
    dxdt.resize(x.size());
    Eigen::Map<const Eigen::MatrixXcd> r(x.data(), n, n);
    Eigen::Map<Eigen::MatrixXcd> d(dxdt.data(), n, n);
    liouv->apply(t, r, d);
  }
};

// State doubled with a running time integral: d(acc)/dt = rho / period, so
// acc after one period is the period average.
struct AveragingRhs {
  const Liouvillian* liouv;
  int n;
  double period;
  void operator()(const state_type& x, state_type& dxdt, double t) const {
    const int nn = n * n;
    dxdt.resize(x.size());
    Eigen::Map<const Eigen::MatrixXcd> r(x.data(), n, n);
    Eigen::Map<Eigen::MatrixXcd> d(dxdt.data(), n, n);
    liouv->apply(t, r, d);
    for (int k = 0; k < nn; ++k) dxdt[nn + k] = x[k] / period;
  }
};

template <class Rhs>
void integrate_adaptive_manual(const Rhs& rhs, state_type& x, double t0,
                               double t1, double tol) {
  if (t1 < t0) throw std::domain_error("evolve: end time precedes start time");
  const double span = t1 - t0;
  if (span == 0) return;
  auto ctrl = ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<state_type>());
  double t = t0;
  double dt = std::min(0.1, span);
  int fails = 0;
  const double t_end_eps = 1e-14 * std::max(1.0, std::abs(t1));
  while (t1 - t > t_end_eps) {
    if (t + dt > t1) dt = t1 - t;
    const ode::controlled_step_result res = ctrl.try_step(rhs, x, t, dt);
    if (res == ode::fail) {
      ++fails;
      if (fails > 64 || dt < 1e-14 * (std::abs(t) + 1.0)) {
        std::ostringstream os;
        os << "evolve: adaptive step size underflow at t = " << t
           << " (dt = " << dt << ")";
        throw SolverError(os.str());
      }
    } else {
      fails = 0;
    }
  }
}

Eigen::MatrixXcd hermitized(const Eigen::MatrixXcd& m) {
  return 0.5 * (m + m.adjoint());
}

double min_eigenvalue(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

SteadyResult steady_state(const Liouvillian& liouv, const SolveOptions& opts) {
  if (liouv.time_dependent()) {
    throw std::domain_error(
        "steady_state: generator is time dependent; use quasi_steady_average");
  }
  const int n = liouv.dim();
  const int nn = n * n;
  const Eigen::MatrixXcd m = liouv.matrix(0.0);
  const double lnorm = std::max(m.norm(), 1.0);

  // Trace-normalization row in place of one redundant equation.
  Eigen::MatrixXcd a = m;
  a.row(0).setZero();
  for (int k = 0; k < n; ++k) a(0, k * n + k) = 1.0;
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(nn);
  b(0) = 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  Eigen::VectorXcd x = lu.solve(b);
  for (int it = 0; it < 2; ++it) {
    x += lu.solve((b - a * x).eval());
  }

  // A degenerate stationary space makes the trace-replaced system exactly
  // singular (any traceless stationary direction stays in its null space),
  // in which case the LU "solution" is an arbitrary particular state; only
  // trust the direct route when every pivot is comfortably nonzero.
  const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (pivots.minCoeff() > 1e-12 * pivots.maxCoeff()) {
    Eigen::MatrixXcd rho =
        hermitized(Eigen::Map<const Eigen::MatrixXcd>(x.data(), n, n));
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) < 1e-6) {
      rho /= tr;
      const double resid =
          (m * Eigen::Map<const Eigen::VectorXcd>(rho.data(), nn)).norm();
      if (resid < opts.residual_rel * lnorm &&
          min_eigenvalue(rho) > -opts.positivity_tol) {
        return {rho, false, 1, resid / lnorm};
      }
    }
  }

  // Null-space route: needed when the stationary space is degenerate or the
  // direct solve was ill-conditioned.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv(0) * 1e-10;
  int null_dim = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) <= cutoff) ++null_dim;
  }
  if (null_dim == 0) {
    std::ostringstream os;
    os << "steady_state: no stationary direction found (smallest singular "
          "value "
       << sv(sv.size() - 1) << " vs scale " << sv(0) << ")";
    throw SolverError(os.str());
  }
  const Eigen::MatrixXcd basis = svd.matrixV().rightCols(null_dim);

  Eigen::MatrixXcd rho;
  bool degenerate = false;
  if (null_dim == 1) {
    rho = hermitized(
        Eigen::Map<const Eigen::MatrixXcd>(basis.col(0).data(), n, n));
    const double tr = rho.trace().real();
    if (std::abs(tr) < opts.trace_tol) {
      throw SolverError(
          "steady_state: stationary direction carries no population (trace "
          "~ 0)");
    }
    rho /= tr;
  } else {
    degenerate = true;
    const Eigen::MatrixXcd rho_u = uniform_ground_state(liouv.scheme());
    const Eigen::Map<const Eigen::VectorXcd> u(rho_u.data(), nn);
    const Eigen::VectorXcd w = basis * (basis.adjoint() * u);
    rho = hermitized(Eigen::Map<const Eigen::MatrixXcd>(w.data(), n, n));
    const double tr = rho.trace().real();
    if (tr < opts.trace_tol) {
      // Name where the stationary population actually lives.
      std::set<std::string> where;
      for (int c = 0; c < null_dim; ++c) {
        Eigen::Map<const Eigen::MatrixXcd> v(basis.col(c).data(), n, n);
        for (int i = 0; i < n; ++i) {
          if (std::abs(v(i, i)) > 1e-6) {
            where.insert(liouv.scheme().sublevel_name(i));
          }
        }
      }
      std::ostringstream os;
      os << "steady_state: the uniform ground mixture has no overlap with "
            "the "
         << null_dim
         << "-dimensional stationary space; stationary population sits on:";
      for (const auto& s : where) os << " " << s;
      throw SolverError(os.str());
    }
    rho /= tr;
  }

  const double mineig = min_eigenvalue(rho);
  if (mineig < -opts.positivity_tol) {
    std::ostringstream os;
    os << "steady_state: stationary solution is not positive (eigenvalue "
       << mineig << ")";
    throw SolverError(os.str());
  }
  const double resid =
      (m * Eigen::Map<const Eigen::VectorXcd>(rho.data(), nn)).norm() / lnorm;
  return {rho, degenerate, null_dim, resid};
}

Eigen::MatrixXcd evolve(const Liouvillian& liouv, Eigen::MatrixXcd rho,
                        double t0, double t1, const SolveOptions& opts) {
  const int n = liouv.dim();
  if (rho.rows() != n || rho.cols() != n) {
    throw std::domain_error("evolve: density matrix has wrong dimensions");
  }
  state_type x(rho.data(), rho.data() + n * n);
  integrate_adaptive_manual(RhsAdapter{&liouv, n}, x, t0, t1, opts.ode_tol);
  return Eigen::Map<const Eigen::MatrixXcd>(x.data(), n, n);
}

QuasiSteadyResult quasi_steady_average(const Liouvillian& liouv,
                                       const SolveOptions& opts,
                                       std::optional<double> period_override) {
  double period;
  if (period_override) {
    period = *period_override;
  } else if (auto p = liouv.period()) {
    period = *p;
  } else {
    throw std::domain_error(
        "quasi_steady_average: generator is not periodically modulated; "
        "supply an explicit period");
  }
  if (period <= 0) {
    throw std::domain_error("quasi_steady_average: period must be positive");
  }

  const int n = liouv.dim();
  const int nn = n * n;
  const Eigen::MatrixXcd rho0 = uniform_ground_state(liouv.scheme());
  state_type x(rho0.data(), rho0.data() + nn);
  state_type prev = x;
  const RhsAdapter rhs{&liouv, n};
  double t = 0;
  double defect = std::numeric_limits<double>::infinity();
  int p = 0;
  bool settled = false;
  while (p < opts.max_periods) {
    ++p;
    integrate_adaptive_manual(rhs, x, t, t + period, opts.ode_tol);
    t += period;
    defect = 0;
    for (int k = 0; k < nn; ++k) {
      defect = std::max(defect, std::abs(x[k] - prev[k]));
    }
    if (defect < opts.qs_tol) {
      settled = true;
      break;
    }
    prev = x;
  }
  if (!settled) {
    std::ostringstream os;
    os << "quasi_steady_average: period map not settled after " << p
       << " periods (last change " << defect << ", tolerance " << opts.qs_tol
       << ")";
    throw SolverError(os.str());
  }

  state_type y(2 * nn, complexd(0, 0));
  std::copy(x.begin(), x.end(), y.begin());
  integrate_adaptive_manual(AveragingRhs{&liouv, n, period}, y, t, t + period,
                            opts.ode_tol);
  Eigen::MatrixXcd avg = hermitized(
      Eigen::Map<const Eigen::MatrixXcd>(y.data() + nn, n, n));
  return {avg, t, p, defect};
}

double level_population(const Eigen::MatrixXcd& rho, const LevelScheme& scheme,
                        const std::string& level_label) {
  const int li = scheme.level_index(level_label);
  const int off = scheme.offset(li);
  const int mult = multiplicity(scheme.levels[li].j);
  double pop = 0;
  for (int k = 0; k < mult; ++k) pop += rho(off + k, off + k).real();
  return pop;
}

Eigen::MatrixXcd uniform_ground_state(const LevelScheme& scheme) {
  const int n = scheme.dim();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  const int mult = multiplicity(scheme.levels[0].j);
  for (int k = 0; k < mult; ++k) rho(k, k) = 1.0 / mult;
  return rho;
}

DensityCheck check_density(const Eigen::MatrixXcd& rho) {
  DensityCheck c;
  c.hermiticity_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  c.trace_defect = std::abs(rho.trace().real() - 1.0) +
                   std::abs(rho.trace().imag());
  c.min_eigenvalue = min_eigenvalue(hermitized(rho));
  return c;
}

}  // namespace darksim
