#ifndef DRIFTLAB_VEHICLE_HPP
#define DRIFTLAB_VEHICLE_HPP

#include <vector>

#include "driftlab/core.hpp"

namespace driftlab {

// Curvilinear vehicle state.
//
// omega_r is the rear wheel speed expressed at the contact patch (wheel
// angular rate times wheel radius, m/s): at pure rolling omega_r equals
// v*cos(beta), and omega_r > v indicates wheelspin. The raw angular rate is
// omega_r / wheel_radius.
struct VehicleState {
  double r = 0.0;        // yaw rate [rad/s]
  double v = 0.0;        // total speed [m/s]
  double beta = 0.0;     // sideslip angle [rad]
  double omega_r = 0.0;  // rear wheel speed at contact patch [m/s]
  double e = 0.0;        // lateral deviation from reference [m]
  double dphi = 0.0;     // heading deviation from reference [rad]

  Vec6 vec() const {
    Vec6 x;
    x << r, v, beta, omega_r, e, dphi;
    return x;
  }
  static VehicleState from_vec(const Vec6& x) {
    return {x[0], x[1], x[2], x[3], x[4], x[5]};
  }

  bool finite() const {
    return std::isfinite(r) && std::isfinite(v) && std::isfinite(beta) &&
           std::isfinite(omega_r) && std::isfinite(e) && std::isfinite(dphi);
  }
};

struct Control {
  double delta = 0.0;  // steering angle [rad]
  double tau = 0.0;    // engine torque [N*m]

  Vec2 vec() const { return Vec2(delta, tau); }
  static Control from_vec(const Vec2& u) { return {u[0], u[1]}; }
  bool finite() const { return std::isfinite(delta) && std::isfinite(tau); }
};

// Control point plus its rate over the next grid interval; the executed
// command is u + t*u_dot for t in [0, dt).
struct ControlWithRate {
  Control u;
  Control u_dot;  // [rad/s, N*m/s]

  static ControlWithRate from_plan(const Control& u_k, const Control& u_next) {
    return {u_k, {(u_next.delta - u_k.delta) / kDt, (u_next.tau - u_k.tau) / kDt}};
  }
  Control at(double t) const {
    return {u.delta + t * u_dot.delta, u.tau + t * u_dot.tau};
  }
  Control next() const { return at(kDt); }
};

// Physical parameters of one plant realization. The simulated fleet is drawn
// by perturbing base_plant_params().
struct PlantParams {
  double mass = 1750.0;       // [kg]
  double yaw_inertia = 3200.0;  // [kg*m^2]
  double a = 1.35;            // CG to front axle [m]
  double b = 1.45;            // CG to rear axle [m]
  double mu_f = 0.95;         // front tire friction coefficient
  double mu_r = 0.95;         // rear tire friction coefficient
  double c_f = 80000.0;       // front cornering stiffness [N/rad]
  double c_r = 95000.0;       // rear cornering stiffness [N/rad]
  double wheel_radius = 0.31;  // [m]
  double drive_gain = 3.0;    // engine torque -> wheel torque ratio
  double drive_lag = 0.15;    // drivetrain time constant [s]
  Vec6 noise_std = Vec6::Zero();  // per-dimension one-step disturbance std

  bool positive() const {
    return mass > 0 && yaw_inertia > 0 && a > 0 && b > 0 && mu_f > 0 &&
           mu_f <= 2.0 && mu_r > 0 && mu_r <= 2.0 && c_f > 0 && c_r > 0 &&
           wheel_radius > 0 && drive_gain > 0 && drive_lag > 0;
  }
};

// Drivetrain-referred rotational inertia of the rear axle [kg*m^2]. Fixed
// across the fleet; plant-to-plant variation enters through drive_gain.
inline constexpr double kWheelInertia = 6.0;

// Rolling resistance and aerodynamic drag constants (also fixed).
inline constexpr double kRollResist = 0.015;   // [-], times m*g
inline constexpr double kAeroDrag = 0.70;      // [N/(m/s)^2]
inline constexpr double kGravity = 9.81;

inline PlantParams base_plant_params() {
  PlantParams p;
  p.noise_std << 0.004, 0.008, 0.0012, 0.02, 0.002, 0.001;
  return p;
}

// Perturbs the base vehicle: log-uniform +/-25% on friction, stiffness and
// drive gain, +/-10% on mass and yaw inertia. Deterministic in seed.
inline std::vector<PlantParams> sample_plant_ensemble(std::uint64_t seed, int count) {
  if (count < 1) throw Error("plant ensemble count must be >= 1");
  std::vector<PlantParams> out;
  out.reserve(count);
  for (int j = 0; j < count; ++j) {
    Rng rng = Rng(seed).fork(static_cast<std::uint64_t>(j));
    PlantParams p = base_plant_params();
    p.mu_f *= rng.log_uniform_factor(0.25);
    p.mu_r *= rng.log_uniform_factor(0.25);
    p.c_f *= rng.log_uniform_factor(0.25);
    p.c_r *= rng.log_uniform_factor(0.25);
    p.drive_gain *= rng.log_uniform_factor(0.25);
    p.mass *= rng.log_uniform_factor(0.10);
    p.yaw_inertia *= rng.log_uniform_factor(0.10);
    out.push_back(p);
  }
  return out;
}

}  // namespace driftlab

#endif  // DRIFTLAB_VEHICLE_HPP
