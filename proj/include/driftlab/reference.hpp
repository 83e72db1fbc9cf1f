#ifndef DRIFTLAB_REFERENCE_HPP
#define DRIFTLAB_REFERENCE_HPP

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "driftlab/vehicle.hpp"

namespace driftlab {

enum class ReferenceKind { Straight, Circle, Figure8, DriftInitiation };

inline ReferenceKind reference_kind_from_string(const std::string& s) {
  if (s == "straight") return ReferenceKind::Straight;
  if (s == "circle") return ReferenceKind::Circle;
  if (s == "figure8") return ReferenceKind::Figure8;
  if (s == "drift_initiation") return ReferenceKind::DriftInitiation;
  throw InvalidGeometry("unknown reference kind: " + s);
}

struct ReferenceParams {
  double speed = 7.5;          // [m/s]; start speed for the straight kind
  double speed_end = 20.0;     // [m/s] terminal speed (straight only)
  double radius = 20.0;        // [m]
  double duration = 4.5;       // [s]
  double drift_sideslip = 0.35;  // target |beta| in drifting arcs [rad]
  double corridor_half_width = 4.0;  // [m]
  double entry_length = 30.0;  // straight run-in before the arc [m] (drift_initiation)
  int laps = 1;                // figure8 only
};

// Path-relative target states on the control grid, with per-step curvature
// and lateral corridor.
struct ReferenceTrajectory {
  std::vector<VehicleState> states;  // size steps()+1
  std::vector<double> kappa;         // [1/m], same size as states
  std::vector<double> e_min, e_max;  // [m]

  int steps() const { return static_cast<int>(states.size()) - 1; }

  int clamp_index(int k) const {
    if (k < 0) k = 0;
    int last = static_cast<int>(states.size()) - 1;
    return k > last ? last : k;
  }
  const VehicleState& state_at(int k) const { return states[clamp_index(k)]; }
  double kappa_at(int k) const { return kappa[clamp_index(k)]; }
  double e_min_at(int k) const { return e_min[clamp_index(k)]; }
  double e_max_at(int k) const { return e_max[clamp_index(k)]; }

  void push(const VehicleState& x, double k, double lo, double hi) {
    states.push_back(x);
    kappa.push_back(k);
    e_min.push_back(lo);
    e_max.push_back(hi);
  }

  std::string to_csv() const {
    std::ostringstream os;
    os << "k,r_ref,v_ref,beta_ref,omega_ref,e_ref,dphi_ref,kappa,e_min,e_max\n";
    for (size_t k = 0; k < states.size(); ++k) {
      const auto& x = states[k];
      os << k << ',' << fmt_g17(x.r) << ',' << fmt_g17(x.v) << ',' << fmt_g17(x.beta)
         << ',' << fmt_g17(x.omega_r) << ',' << fmt_g17(x.e) << ',' << fmt_g17(x.dphi)
         << ',' << fmt_g17(kappa[k]) << ',' << fmt_g17(e_min[k]) << ','
         << fmt_g17(e_max[k]) << '\n';
    }
    return os.str();
  }
};

namespace detail {

inline VehicleState ref_point(double r, double v, double beta, double dphi) {
  VehicleState x;
  x.r = r;
  x.v = v;
  x.beta = beta;
  x.omega_r = v;  // rolling
  x.e = 0.0;
  x.dphi = dphi;
  return x;
}

}  // namespace detail

// Piecewise-geometric references. Drifting arcs carry a sideslip target with
// dphi = -beta so the course stays aligned with the path.
inline ReferenceTrajectory make_reference(ReferenceKind kind, const ReferenceParams& p) {
  if (p.duration <= 0.0) throw InvalidGeometry("reference duration must be positive");
  if (p.speed <= 0.0) throw InvalidGeometry("reference speed must be positive");
  const double hw = p.corridor_half_width;
  if (hw <= 0.0) throw InvalidGeometry("corridor half width must be positive");

  ReferenceTrajectory ref;
  switch (kind) {
    case ReferenceKind::Straight: {
      int n = static_cast<int>(std::lround(p.duration / kDt));
      if (n < 1) throw InvalidGeometry("straight: duration below one step");
      for (int k = 0; k <= n; ++k) {
        double v = p.speed + (p.speed_end - p.speed) * k / n;
        ref.push(detail::ref_point(0.0, v, 0.0, 0.0), 0.0, -hw, hw);
      }
      break;
    }
    case ReferenceKind::Circle: {
      if (p.radius <= 0.0) throw InvalidGeometry("circle: radius must be positive");
      int n = static_cast<int>(std::lround(p.duration / kDt));
      if (n < 1) throw InvalidGeometry("circle: duration below one step");
      double kap = 1.0 / p.radius;
      for (int k = 0; k <= n; ++k)
        ref.push(detail::ref_point(kap * p.speed, p.speed, 0.0, 0.0), kap, -hw, hw);
      break;
    }
    case ReferenceKind::Figure8: {
      if (p.radius <= 0.0) throw InvalidGeometry("figure8: radius must be positive");
      if (p.laps < 1) throw InvalidGeometry("figure8: laps must be >= 1");
      // Per lobe the heading turns through a full 2*pi; the step count is
      // rounded and kappa adjusted so the turn is exact.
      int n_lobe = static_cast<int>(std::lround(2.0 * M_PI * p.radius / (p.speed * kDt)));
      if (n_lobe < 4) throw InvalidGeometry("figure8: lobe shorter than four steps");
      double kap = 2.0 * M_PI / (n_lobe * p.speed * kDt);
      double bd = p.drift_sideslip;
      for (int lap = 0; lap < p.laps; ++lap) {
        for (int lobe = 0; lobe < 2; ++lobe) {
          double sgn = lobe == 0 ? 1.0 : -1.0;
          for (int k = 0; k < n_lobe; ++k)
            ref.push(detail::ref_point(sgn * kap * p.speed, p.speed, -sgn * bd, sgn * bd),
                     sgn * kap, -hw, hw);
        }
      }
      ref.push(detail::ref_point(kap * p.speed, p.speed, -bd, bd), kap, -hw, hw);
      break;
    }
    case ReferenceKind::DriftInitiation: {
      if (p.radius <= 0.0) throw InvalidGeometry("drift_initiation: radius must be positive");
      int n_entry = static_cast<int>(std::lround(p.entry_length / (p.speed * kDt)));
      int n_total = static_cast<int>(std::lround(p.duration / kDt));
      if (n_total <= n_entry)
        throw InvalidGeometry("drift_initiation: duration does not reach the arc");
      double kap = 1.0 / p.radius;
      double bd = p.drift_sideslip;
      for (int k = 0; k < n_entry; ++k)
        ref.push(detail::ref_point(0.0, p.speed, 0.0, 0.0), 0.0, -hw, hw);
      for (int k = n_entry; k <= n_total; ++k)
        ref.push(detail::ref_point(kap * p.speed, p.speed, -bd, bd), kap, -hw, hw);
      break;
    }
  }
  return ref;
}

}  // namespace driftlab

#endif  // DRIFTLAB_REFERENCE_HPP
