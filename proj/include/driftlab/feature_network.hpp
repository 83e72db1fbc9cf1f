#ifndef DRIFTLAB_FEATURE_NETWORK_HPP
#define DRIFTLAB_FEATURE_NETWORK_HPP

#include <array>

#include "driftlab/vehicle.hpp"

namespace driftlab {

inline constexpr int kInputDim = 8;    // (r, v, beta, omega_r, u_k, u_{k+1})
inline constexpr int kHiddenDim = 128;
inline constexpr int kFeatureDim = 16;
inline constexpr int kBeliefDims = 4;  // learned residual dimensions

using FeatureVec = Eigen::Matrix<double, kFeatureDim, 1>;
using InputVec = Eigen::Matrix<double, kInputDim, 1>;

// Model input: the dynamic states plus this and the next control point.
// Path-relative coordinates (e, dphi) are deliberately excluded.
inline InputVec feature_input(const VehicleState& x, const Control& u_k,
                              const Control& u_next) {
  InputVec z;
  z << x.r, x.v, x.beta, x.omega_r, u_k.delta, u_k.tau, u_next.delta, u_next.tau;
  return z;
}

// Shared-trunk tanh network with one linear head per learned dimension.
// Immutable after construction; input normalization is fitted from data and
// frozen before training.
struct FeatureNetwork {
  InputVec shift = InputVec::Zero();
  InputVec scale = InputVec::Ones();
  Eigen::Matrix<double, kHiddenDim, kInputDim> w1;
  Eigen::Matrix<double, kHiddenDim, 1> b1;
  Eigen::Matrix<double, kHiddenDim, kHiddenDim> w2;
  Eigen::Matrix<double, kHiddenDim, 1> b2;
  std::array<Eigen::Matrix<double, kFeatureDim, kHiddenDim>, kBeliefDims> w_out;
  std::array<FeatureVec, kBeliefDims> b_out;

  FeatureNetwork() {
    w1.setZero();
    b1.setZero();
    w2.setZero();
    b2.setZero();
    for (int i = 0; i < kBeliefDims; ++i) {
      w_out[i].setZero();
      b_out[i].setZero();
    }
  }

  static FeatureNetwork random_init(std::uint64_t seed) {
    FeatureNetwork net;
    Rng rng(seed);
    auto fill = [&rng](auto& m, int fan_in, int fan_out) {
      double lim = std::sqrt(6.0 / (fan_in + fan_out));
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = rng.uniform(-lim, lim);
    };
    fill(net.w1, kInputDim, kHiddenDim);
    fill(net.w2, kHiddenDim, kHiddenDim);
    for (int i = 0; i < kBeliefDims; ++i) fill(net.w_out[i], kHiddenDim, kFeatureDim);
    return net;
  }

  InputVec normalize(const InputVec& z) const {
    return (z - shift).cwiseQuotient(scale);
  }

  struct Activations {
    Eigen::Matrix<double, kHiddenDim, 1> t1, t2;
  };

  Activations trunk(const InputVec& z) const {
    Activations a;
    a.t1 = (w1 * normalize(z) + b1).array().tanh();
    a.t2 = (w2 * a.t1 + b2).array().tanh();
    return a;
  }

  std::array<FeatureVec, kBeliefDims> forward(const InputVec& z) const {
    if (!z.allFinite()) throw NonFiniteInput("feature input");
    Activations a = trunk(z);
    std::array<FeatureVec, kBeliefDims> phi;
    for (int i = 0; i < kBeliefDims; ++i) phi[i] = w_out[i] * a.t2 + b_out[i];
    return phi;
  }

  // d(phi_i)/dz for all heads, by the chain rule through the shared trunk.
  std::array<Eigen::Matrix<double, kFeatureDim, kInputDim>, kBeliefDims> jacobians(
      const InputVec& z) const {
    Activations a = trunk(z);
    Eigen::Matrix<double, kHiddenDim, kInputDim> j1 =
        (1.0 - a.t1.array().square()).matrix().asDiagonal() * w1 *
        scale.cwiseInverse().asDiagonal();
    Eigen::Matrix<double, kHiddenDim, kInputDim> j2 =
        (1.0 - a.t2.array().square()).matrix().asDiagonal() * (w2 * j1);
    std::array<Eigen::Matrix<double, kFeatureDim, kInputDim>, kBeliefDims> out;
    for (int i = 0; i < kBeliefDims; ++i) out[i] = w_out[i] * j2;
    return out;
  }
};

inline std::array<FeatureVec, kBeliefDims> features(const FeatureNetwork& net,
                                                    const InputVec& z) {
  return net.forward(z);
}

}  // namespace driftlab

#endif  // DRIFTLAB_FEATURE_NETWORK_HPP
