#include "darksim/liouvillian.hpp"

#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

#include "darksim/wigner.hpp"

namespace darksim {
namespace {

double sign_pow(int e) { return (((e % 2) + 2) % 2 == 0) ? 1.0 : -1.0; }

void check_dipole_pair(HalfInt ja, HalfInt jb, const std::string& what) {
  const int ta = ja.doubled(), tb = jb.doubled();
  if (ta == 0 && tb == 0) return;  // bare two-state special case
  if (std::abs(ta - tb) > 2 || ta + tb < 2 || (ta - tb) % 2 != 0) {
    throw std::domain_error(what + ": transition " + ja.str() + " <-> " +
                            jb.str() + " is not electric-dipole allowed");
  }
}

}  // namespace

Liouvillian build_liouvillian(const LevelScheme& scheme,
                              const std::vector<DriveSpec>& drives,
                              double delta_b) {
  if (scheme.levels.empty()) {
    throw std::domain_error("build_liouvillian: scheme has no levels");
  }
  {
    std::set<std::string> labels;
    for (const auto& l : scheme.levels) {
      if (!labels.insert(l.label).second) {
        throw std::domain_error("build_liouvillian: duplicate level label '" +
                                l.label + "'");
      }
    }
  }

  Liouvillian L;
  L.scheme_ = scheme;
  L.drives_ = drives;
  L.delta_b_ = delta_b;
  const int n = scheme.dim();
  L.n_ = n;

  const int n_levels = static_cast<int>(scheme.levels.size());
  const int n_drives = static_cast<int>(drives.size());

  // Resolve drive endpoints; forbid two drives on one transition.
  std::vector<std::pair<int, int>> ends(n_drives);
  std::set<std::pair<int, int>> seen;
  for (int d = 0; d < n_drives; ++d) {
    const int li = scheme.level_index(drives[d].lower);
    const int ui = scheme.level_index(drives[d].upper);
    if (li == ui) {
      throw std::domain_error("build_liouvillian: drive '" +
                              drives[d].label +
                              "' connects a level to itself");
    }
    ends[d] = {li, ui};
    const auto key = std::minmax(li, ui);
    if (!seen.insert(key).second) {
      throw std::domain_error(
          "build_liouvillian: two drives share the transition " +
          drives[d].lower + " <-> " + drives[d].upper +
          "; combine them into one field model");
    }
  }

  // Rotating-frame bookkeeping: walk the drive graph from the root level and
  // record, per level, the net number of upward crossings of each drive.
  std::vector<std::vector<int>> coeffs(n_levels);
  std::vector<bool> assigned(n_levels, false);
  coeffs[0].assign(n_drives, 0);
  assigned[0] = true;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int d = 0; d < n_drives; ++d) {
      const auto [li, ui] = ends[d];
      if (li != cur && ui != cur) continue;
      const int other = (li == cur) ? ui : li;
      std::vector<int> cand = coeffs[cur];
      cand[d] += (li == cur) ? 1 : -1;
      if (!assigned[other]) {
        coeffs[other] = cand;
        assigned[other] = true;
        queue.push_back(other);
      } else if (coeffs[other] != cand) {
        throw std::domain_error(
            "build_liouvillian: inconsistent rotating frames (level '" +
            scheme.levels[other].label +
            "' is reached through conflicting drive paths)");
      }
    }
  }
  for (int l = 0; l < n_levels; ++l) {
    if (!assigned[l]) coeffs[l].assign(n_drives, 0);
  }
  L.frame_coeffs_ = coeffs;

  // Frame energies: crossing drive d upward subtracts its detuning.
  std::vector<double> eps(n_levels, 0.0);
  for (int l = 0; l < n_levels; ++l) {
    for (int d = 0; d < n_drives; ++d) {
      eps[l] -= coeffs[l][d] * drives[d].detuning;
    }
  }

  // Diagonal: frame energy + Zeeman splitting g * m * delta_B.
  L.h0_.resize(n);
  for (int l = 0; l < n_levels; ++l) {
    for (HalfInt m : m_range(scheme.levels[l].j)) {
      L.h0_(scheme.sublevel_index(l, m)) =
          eps[l] + scheme.levels[l].g * m.value() * delta_b;
    }
  }

  // Drive coupling patterns.
  const HalfInt one = HalfInt::from_doubled(2);
  for (int d = 0; d < n_drives; ++d) {
    const auto [li, ui] = ends[d];
    const HalfInt jl = scheme.levels[li].j, ju = scheme.levels[ui].j;
    check_dipole_pair(jl, ju, "build_liouvillian: drive '" + drives[d].label +
                                  "'");
    Liouvillian::DrivePattern pat;
    pat.field = drives[d].field;
    if (jl.doubled() == 0 && ju.doubled() == 0) {
      pat.by_q[1].push_back(
          {scheme.offset(li), scheme.offset(ui), -0.5 * drives[d].omega});
    } else {
      const double sqrt3 = std::sqrt(3.0);
      for (HalfInt ml : m_range(jl)) {
        for (HalfInt mu : m_range(ju)) {
          const int tq = mu.doubled() - ml.doubled();
          if (tq != -2 && tq != 0 && tq != 2) continue;
          const double w = wigner3j(jl, one, ju, -ml, ml - mu, mu);
          if (w == 0.0) continue;
          const double base = -0.5 * sqrt3 * drives[d].omega *
                              sign_pow((jl.doubled() - ml.doubled()) / 2) * w;
          pat.by_q[tq / 2 + 1].push_back({scheme.sublevel_index(li, ml),
                                          scheme.sublevel_index(ui, mu),
                                          base});
        }
      }
    }
    L.patterns_.push_back(std::move(pat));
    L.time_dependent_ = L.time_dependent_ || drives[d].field.is_modulated();
  }

  // Common period of all modulated drives.
  std::optional<double> period;
  for (const auto& d : drives) {
    const auto p = d.field.period();
    if (!p) continue;
    period = period ? commensurate_period(*period, *p) : *p;
  }
  L.period_ = period;

  // Decay: per-channel jump operators, split into upper-level damping and
  // lower-level feeding terms.
  Eigen::VectorXd total_decay = Eigen::VectorXd::Zero(n);
  for (const auto& ch : scheme.decays) {
    if (ch.rate < 0) {
      throw std::domain_error("build_liouvillian: negative decay rate on " +
                              ch.upper + " -> " + ch.lower);
    }
    if (ch.rate == 0) continue;
    const int ui = scheme.level_index(ch.upper);
    const int li = scheme.level_index(ch.lower);
    if (ui == li) {
      throw std::domain_error("build_liouvillian: decay " + ch.upper +
                              " -> " + ch.lower + " connects a level to itself");
    }
    const HalfInt ju = scheme.levels[ui].j, jl = scheme.levels[li].j;
    check_dipole_pair(jl, ju, "build_liouvillian: decay " + ch.upper + " -> " +
                                  ch.lower);
    if (ju.doubled() == 0 && jl.doubled() == 0) {
      const int a = scheme.offset(li), f = scheme.offset(ui);
      L.feeds_.push_back({a, a, f, f, ch.rate});
      total_decay(f) += ch.rate;
      continue;
    }
    const double scale = std::sqrt(ch.rate * (ju.doubled() + 1));
    for (int q = -1; q <= 1; ++q) {
      // One jump operator per emitted polarization q = m_u - m_l.
      std::vector<std::pair<int, int>> idx;  // (lower global, upper global)
      std::vector<double> amp;
      for (HalfInt mu : m_range(ju)) {
        const HalfInt ml = mu - HalfInt::from_doubled(2 * q);
        if (std::abs(ml.doubled()) > jl.doubled()) continue;
        const double w = wigner3j(ju, jl, one, -mu, ml,
                                  HalfInt::from_doubled(2 * q));
        if (w == 0.0) continue;
        const double c =
            scale * sign_pow((jl.doubled() - ml.doubled()) / 2) * w;
        idx.emplace_back(scheme.sublevel_index(li, ml),
                         scheme.sublevel_index(ui, mu));
        amp.push_back(c);
        total_decay(scheme.sublevel_index(ui, mu)) += c * c;
      }
      for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = 0; b < idx.size(); ++b) {
          L.feeds_.push_back({idx[a].first, idx[b].first, idx[a].second,
                              idx[b].second, amp[a] * amp[b]});
        }
      }
    }
  }

  L.damp_.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      L.damp_(i, j) = 0.5 * (total_decay(i) + total_decay(j));
    }
  }

  for (const auto& d : drives) {
    if (d.linewidth != 0) {
      L.apply_laser_dephasing(d.label.empty() ? d.lower + "-" + d.upper
                                              : d.label,
                              d.linewidth);
    }
  }
  return L;
}

void Liouvillian::apply_laser_dephasing(const std::string& drive_label,
                                        double rate) {
  if (rate < 0) {
    throw std::domain_error("apply_laser_dephasing: negative rate");
  }
  int di = -1;
  for (std::size_t d = 0; d < drives_.size(); ++d) {
    if (drives_[d].label == drive_label ||
        drives_[d].lower + "-" + drives_[d].upper == drive_label) {
      di = static_cast<int>(d);
      break;
    }
  }
  if (di < 0) {
    throw std::domain_error("apply_laser_dephasing: no drive named '" +
                            drive_label + "'");
  }
  if (rate == 0) return;
  // A coherence between sublevels of levels a and b carries the laser phase
  // with multiplicity |c_a - c_b|; independent phase diffusion adds rate *
  // (c_a - c_b)^2 to its decay.
  for (int i = 0; i < n_; ++i) {
    const int la = scheme_.level_of(i);
    for (int j = 0; j < n_; ++j) {
      const int lb = scheme_.level_of(j);
      const int dc = frame_coeffs_[la][di] - frame_coeffs_[lb][di];
      damp_(i, j) += rate * dc * dc;
    }
  }
}

void Liouvillian::hamiltonian(double t, Eigen::MatrixXcd& h) const {
  h.resize(n_, n_);
  h.setZero();
  h.diagonal() = h0_.cast<complexd>();
  for (const auto& pat : patterns_) {
    const SphericalField f = evaluate_field(pat.field, t);
    for (int qi = 0; qi < 3; ++qi) {
      const complexd eq = f.component(qi - 1);
      if (eq == complexd(0, 0)) continue;
      for (const auto& e : pat.by_q[qi]) {
        const complexd v = e.base * eq;
        h(e.upper_idx, e.lower_idx) += v;
        h(e.lower_idx, e.upper_idx) += std::conj(v);
      }
    }
  }
}

void Liouvillian::apply(double t, const Eigen::Ref<const Eigen::MatrixXcd>& rho,
                        Eigen::Ref<Eigen::MatrixXcd> drho) const {
  Eigen::MatrixXcd h;
  hamiltonian(t, h);
  drho.noalias() = complexd(0, -1) * (h * rho - rho * h);
  for (const auto& f : feeds_) {
    drho(f.la, f.lb) += f.w * rho(f.ua, f.ub);
  }
  drho.array() -= damp_.array() * rho.array();
}

Eigen::MatrixXcd Liouvillian::matrix(double t) const {
  Eigen::MatrixXcd out(n_ * n_, n_ * n_);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n_, n_);
  Eigen::MatrixXcd d(n_, n_);
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) {
      rho(i, j) = 1.0;
      apply(t, rho, d);
      out.col(j * n_ + i) =
          Eigen::Map<const Eigen::VectorXcd>(d.data(), n_ * n_);
      rho(i, j) = 0.0;
    }
  }
  return out;
}

}  // namespace darksim
