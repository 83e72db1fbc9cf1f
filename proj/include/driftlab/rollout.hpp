#ifndef DRIFTLAB_ROLLOUT_HPP
#define DRIFTLAB_ROLLOUT_HPP

#include <functional>
#include <vector>

#include "driftlab/dynamics.hpp"
#include "driftlab/reference.hpp"
#include "driftlab/trajectory.hpp"

namespace driftlab {

// A controller maps (step index, measured state) to the control point pair
// executed over the next interval. Open-loop plans and closed-loop MPC both
// fit this shape.
using Controller = std::function<ControlWithRate(int k, const VehicleState& x)>;

// Feedforward the planned controls, with proportional corrections on the
// planned lateral/heading/speed errors. Stands in for the unspecified
// low-level layer that executes open-loop plans.
struct TrackerGains {
  double k_e = 0.04;     // [rad/m]
  double k_dphi = 0.5;   // [rad/rad]
  double k_v = 120.0;    // [N*m per m/s]
};

inline Controller open_loop_tracker(std::vector<VehicleState> plan_states,
                                    std::vector<Control> plan_controls,
                                    Control u_min, Control u_max,
                                    TrackerGains gains = {}) {
  return [plan_states = std::move(plan_states), plan_controls = std::move(plan_controls),
          u_min, u_max, gains](int k, const VehicleState& x) {
    auto at = [](const auto& v, int i) {
      int last = static_cast<int>(v.size()) - 1;
      return v[i < 0 ? 0 : (i > last ? last : i)];
    };
    Control u0 = at(plan_controls, k);
    Control u1 = at(plan_controls, k + 1);
    const VehicleState& xp = at(plan_states, k);
    double dd = -gains.k_e * (x.e - xp.e) - gains.k_dphi * (x.dphi - xp.dphi);
    double dtau = -gains.k_v * (x.v - xp.v);
    auto clampc = [&](Control u) {
      u.delta = std::min(std::max(u.delta, u_min.delta), u_max.delta);
      u.tau = std::min(std::max(u.tau, u_min.tau), u_max.tau);
      return u;
    };
    Control c0 = clampc({u0.delta + dd, u0.tau + dtau});
    Control c1 = clampc({u1.delta + dd, u1.tau + dtau});
    return ControlWithRate::from_plan(c0, c1);
  };
}

// Generic plant hook used by tests; the physical plant wraps plant_step.
using PlantFn =
    std::function<VehicleState(const VehicleState&, const ControlWithRate&, double kappa,
                               const Vec6& noise)>;

inline PlantFn make_plant(const PlantParams& params) {
  return [params](const VehicleState& x, const ControlWithRate& uwr, double kappa,
                  const Vec6& noise) { return plant_step(params, x, uwr, kappa, noise); };
}

// Executes `steps` transitions at the grid period, logging each one.
// Terminates early with SpinOut once sideslip exceeds pi/2 or the lateral
// deviation escapes three corridor widths.
inline TrajectoryLog rollout(const PlantFn& plant, const Controller& controller,
                             const ReferenceTrajectory& reference,
                             const VehicleState& x_init, int steps, std::uint64_t seed) {
  if (steps < 1) throw Error("rollout: steps must be >= 1");
  Rng rng(seed);
  TrajectoryLog log;
  log.seed = seed;
  VehicleState x = x_init;
  for (int k = 0; k < steps; ++k) {
    ControlWithRate uwr = controller(k, x);
    Vec6 noise;
    for (int i = 0; i < 6; ++i) noise[i] = rng.gaussian();
    VehicleState x_next = plant(x, uwr, reference.kappa_at(k), noise);
    log.records.push_back({k * kDt, x, uwr.u, uwr.next()});
    double width = reference.e_max_at(k) - reference.e_min_at(k);
    x = x_next;
    if (std::abs(x.beta) > M_PI / 2.0 || std::abs(x.e) > 3.0 * width) {
      log.status = RunStatus::SpinOut;
      break;
    }
  }
  log.records.push_back({static_cast<double>(log.records.size()) * kDt, x,
                         log.records.back().u_next, log.records.back().u_next});
  return log;
}

inline TrajectoryLog rollout(const PlantParams& plant, const Controller& controller,
                             const ReferenceTrajectory& reference,
                             const VehicleState& x_init, int steps, std::uint64_t seed) {
  return rollout(make_plant(plant), controller, reference, x_init, steps, seed);
}

}  // namespace driftlab

#endif  // DRIFTLAB_ROLLOUT_HPP
