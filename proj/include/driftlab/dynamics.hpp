#ifndef DRIFTLAB_DYNAMICS_HPP
#define DRIFTLAB_DYNAMICS_HPP

#include <utility>

#include "driftlab/dual.hpp"
#include "driftlab/vehicle.hpp"

namespace driftlab {

namespace detail {

// Brush-tire saturation: maps a linear force demand psi = C*slip onto the
// cubic that peaks exactly at fmax (C1-continuous at |psi| = 3*fmax).
template <class S>
S brush_saturate(const S& psi, double fmax) {
  using ad::abs;
  using std::abs;
  S a = abs(psi);
  if (a >= S(3.0 * fmax)) return psi < S(0.0) ? S(-fmax) : S(fmax);
  return psi * (S(1.0) - a / (3.0 * fmax) + (psi * psi) / (27.0 * fmax * fmax));
}

template <class S>
struct StateT {
  S r, v, beta, omega_r, e, dphi;
};

// One explicit-Euler step of the nominal single-track model. Decoupled
// tires: brush lateral forces on both axles, rear longitudinal force from
// the slip ratio with the same brush saturation. The wheel speed is
// propagated as identity so the learned residual carries its full increment.
template <class S>
StateT<S> nominal_step_core(const StateT<S>& x, const S& delta, double kappa,
                            const PlantParams& p) {
  using ad::atan2;
  using ad::cos;
  using ad::max;
  using ad::sin;
  using std::atan2;
  using std::cos;
  using std::max;
  using std::sin;

  const double wheelbase = p.a + p.b;
  const double fzf = p.mass * kGravity * p.b / wheelbase;
  const double fzr = p.mass * kGravity * p.a / wheelbase;

  S vx = x.v * cos(x.beta);
  S vy = x.v * sin(x.beta);

  S alpha_f = atan2(vy + S(p.a) * x.r, vx) - delta;
  S alpha_r = atan2(vy - S(p.b) * x.r, vx);

  S fyf = -brush_saturate(S(p.c_f) * alpha_f, p.mu_f * fzf);
  S fyr = -brush_saturate(S(p.c_r) * alpha_r, p.mu_r * fzr);

  S slip = (x.omega_r - vx) / max(vx, S(0.5));
  S fxr = brush_saturate(S(p.c_r) * slip, p.mu_r * fzr);

  S drag = S(kRollResist * p.mass * kGravity) + S(kAeroDrag) * x.v * x.v;
  S fx = fxr - fyf * sin(delta) - drag;
  S fy = fyr + fyf * cos(delta);

  S r_dot = (S(p.a) * fyf * cos(delta) - S(p.b) * fyr) / S(p.yaw_inertia);
  S v_dot = (fx * cos(x.beta) + fy * sin(x.beta)) / S(p.mass);
  S beta_dot = (fy * cos(x.beta) - fx * sin(x.beta)) / (S(p.mass) * x.v) - x.r;

  S course = x.beta + x.dphi;
  S e_dot = x.v * sin(course);
  // Guard the curvilinear singularity at e = 1/kappa.
  S denom = S(1.0) - S(kappa) * x.e;
  if (denom < S(0.1)) denom = S(0.1);
  S dphi_dot = x.r - S(kappa) * x.v * cos(course) / denom;

  StateT<S> out;
  out.r = x.r + S(kDt) * r_dot;
  out.v = x.v + S(kDt) * v_dot;
  out.beta = x.beta + S(kDt) * beta_dot;
  out.omega_r = x.omega_r;
  out.e = x.e + S(kDt) * e_dot;
  out.dphi = x.dphi + S(kDt) * dphi_dot;
  return out;
}

inline void check_step_inputs(const VehicleState& x, const Control& u, double kappa) {
  if (!x.finite() || !u.finite() || !std::isfinite(kappa))
    throw NonFiniteInput("nominal_step");
  if (x.v <= 0.1) throw DegenerateSpeed(x.v);
}

}  // namespace detail

// Nominal model h: one explicit-Euler step on the control grid.
inline VehicleState nominal_step(const VehicleState& x, const Control& u, double kappa,
                                 const PlantParams& p = base_plant_params()) {
  detail::check_step_inputs(x, u, kappa);
  detail::StateT<double> xs{x.r, x.v, x.beta, x.omega_r, x.e, x.dphi};
  auto n = detail::nominal_step_core<double>(xs, u.delta, kappa, p);
  return {n.r, n.v, n.beta, n.omega_r, n.e, n.dphi};
}

// Jacobians of nominal_step with respect to state and control, via
// forward-mode duals. Column order: (r, v, beta, omega_r, e, dphi | delta, tau).
inline std::pair<Eigen::Matrix<double, 6, 6>, Eigen::Matrix<double, 6, 2>>
nominal_step_jacobians(const VehicleState& x, const Control& u, double kappa,
                       const PlantParams& p = base_plant_params()) {
  detail::check_step_inputs(x, u, kappa);
  using D = ad::Dual<8>;
  detail::StateT<D> xs;
  xs.r = D::seed(x.r, 0);
  xs.v = D::seed(x.v, 1);
  xs.beta = D::seed(x.beta, 2);
  xs.omega_r = D::seed(x.omega_r, 3);
  xs.e = D::seed(x.e, 4);
  xs.dphi = D::seed(x.dphi, 5);
  D delta = D::seed(u.delta, 6);
  auto n = detail::nominal_step_core<D>(xs, delta, kappa, p);
  const D* rows[6] = {&n.r, &n.v, &n.beta, &n.omega_r, &n.e, &n.dphi};
  Eigen::Matrix<double, 6, 6> A;
  Eigen::Matrix<double, 6, 2> B;
  for (int i = 0; i < 6; ++i) {
    A.row(i) = rows[i]->d.head<6>().transpose();
    B(i, 0) = rows[i]->d[6];
    B(i, 1) = rows[i]->d[7];  // engine torque does not enter h
  }
  return {A, B};
}

namespace detail {

struct RearForces {
  double fx = 0.0;
  double fy = 0.0;
};

// Isotropic combined-slip brush tire: slip ratio and slip angle share one
// stiffness, and the resultant saturates on the friction circle.
inline RearForces rear_tire_combined(double slip_x, double alpha, double c, double fmax) {
  double sigma = std::sqrt(slip_x * slip_x + alpha * alpha);
  if (sigma < 1e-9) return {c * slip_x, -c * alpha};
  double f = brush_saturate(c * sigma, fmax);
  return {f * slip_x / sigma, -f * alpha / sigma};
}

struct PlantDerivs {
  double r_dot, v_dot, beta_dot, e_dot, dphi_dot;
  double fxr;  // rear longitudinal force used by the wheel equation
};

inline PlantDerivs plant_derivs(const PlantParams& p, double r, double v, double beta,
                                double omega_r, double e, double dphi, double delta,
                                double kappa) {
  const double wheelbase = p.a + p.b;
  const double fzf = p.mass * kGravity * p.b / wheelbase;
  const double fzr = p.mass * kGravity * p.a / wheelbase;

  double vx = v * std::cos(beta);
  double vy = v * std::sin(beta);
  double alpha_f = std::atan2(vy + p.a * r, vx) - delta;
  double alpha_r = std::atan2(vy - p.b * r, vx);

  double fyf = -brush_saturate(p.c_f * alpha_f, p.mu_f * fzf);
  double slip_x = (omega_r - vx) / std::max(vx, 0.5);
  RearForces rear = rear_tire_combined(slip_x, alpha_r, p.c_r, p.mu_r * fzr);

  double drag = kRollResist * p.mass * kGravity + kAeroDrag * v * v;
  double fx = rear.fx - fyf * std::sin(delta) - drag;
  double fy = rear.fy + fyf * std::cos(delta);

  PlantDerivs d;
  d.r_dot = (p.a * fyf * std::cos(delta) - p.b * rear.fy) / p.yaw_inertia;
  d.v_dot = (fx * std::cos(beta) + fy * std::sin(beta)) / p.mass;
  d.beta_dot = (fy * std::cos(beta) - fx * std::sin(beta)) / (p.mass * v) - r;
  double course = beta + dphi;
  d.e_dot = v * std::sin(course);
  double denom = 1.0 - kappa * e;
  if (denom < 0.1) denom = 0.1;
  d.dphi_dot = r - kappa * v * std::cos(course) / denom;
  d.fxr = rear.fx;
  return d;
}

}  // namespace detail

inline constexpr int kPlantSubsteps = 10;

// True dynamics f_xi: sub-stepped integration of the single-track model with
// combined-slip rear tire, first-order drivetrain lag on torque, and linear
// control interpolation across the step. Wheel speed is stepped implicitly
// (its tire coupling is stiff at the substep size); everything else is
// explicit Euler. One noise draw enters after the substeps, scaled by the
// per-dimension stds in params.
inline VehicleState plant_step(const PlantParams& params, const VehicleState& x,
                               const ControlWithRate& uwr, double kappa,
                               const Vec6& noise) {
  if (!x.finite() || !uwr.u.finite() || !uwr.u_dot.finite() || !std::isfinite(kappa) ||
      !noise.allFinite())
    throw NonFiniteInput("plant_step");
  if (x.v <= 0.1) throw DegenerateSpeed(x.v);

  const double h = kDt / kPlantSubsteps;
  double r = x.r, v = x.v, beta = x.beta, omega = x.omega_r, e = x.e, dphi = x.dphi;
  double tau_eff = uwr.u.tau;
  const double wheel_c = params.wheel_radius / kWheelInertia;

  for (int s = 0; s < kPlantSubsteps; ++s) {
    double t = s * h;
    Control cmd = uwr.at(t);
    tau_eff += h * (cmd.tau - tau_eff) / params.drive_lag;

    auto d = detail::plant_derivs(params, r, v, beta, omega, e, dphi, cmd.delta, kappa);

    // Implicit update for the wheel speed: fixed Newton iteration count on
    // w = omega + h * wheel_c * (gain*tau - R*fxr(w)), slope by central
    // difference. fxr is monotone in w, so the root is unique.
    double vx = v * std::cos(beta);
    double alpha_r = std::atan2(v * std::sin(beta) - params.b * r, vx);
    const double fzr = params.mass * kGravity * params.a / (params.a + params.b);
    auto fxr_of = [&](double w) {
      double sx = (w - vx) / std::max(vx, 0.5);
      return detail::rear_tire_combined(sx, alpha_r, params.c_r, params.mu_r * fzr).fx;
    };
    double w = omega;
    const double drive = params.drive_gain * tau_eff;
    for (int it = 0; it < 6; ++it) {
      double g = w - omega - h * wheel_c * (drive - params.wheel_radius * fxr_of(w));
      double dfx = (fxr_of(w + 1e-6) - fxr_of(w - 1e-6)) / 2e-6;
      double gp = 1.0 + h * wheel_c * params.wheel_radius * dfx;
      w -= g / gp;
    }
    if (w < 0.0) w = 0.0;

    r += h * d.r_dot;
    v += h * d.v_dot;
    beta += h * d.beta_dot;
    e += h * d.e_dot;
    dphi += h * d.dphi_dot;
    omega = w;
    if (v < 0.05) v = 0.05;  // keep slip quantities defined through crashes
  }

  VehicleState out{r, v, beta, omega, e, dphi};
  Vec6 xo = out.vec() + params.noise_std.cwiseProduct(noise);
  return VehicleState::from_vec(xo);
}

inline VehicleState plant_step(const PlantParams& params, const VehicleState& x,
                               const ControlWithRate& uwr, double kappa) {
  return plant_step(params, x, uwr, kappa, Vec6::Zero());
}

}  // namespace driftlab

#endif  // DRIFTLAB_DYNAMICS_HPP
