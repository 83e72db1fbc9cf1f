#ifndef DRIFTLAB_CORE_HPP
#define DRIFTLAB_CORE_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace driftlab {

// Control grid period. All trajectories, logs and plans live on this grid.
inline constexpr double kDt = 0.1;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sideslip is undefined once the speed collapses.
struct DegenerateSpeed : Error {
  explicit DegenerateSpeed(double v)
      : Error("degenerate speed v=" + std::to_string(v) + " (must exceed 0.1 m/s)") {}
};

struct NonFiniteInput : Error {
  explicit NonFiniteInput(const std::string& what) : Error("non-finite input: " + what) {}
};

struct NumericalBreakdown : Error {
  using Error::Error;
};

struct InvalidGeometry : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

inline void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw NonFiniteInput(name);
}

// Deterministic RNG used everywhere seeds appear in an interface. Gaussian
// draws are produced by an explicit Box-Muller transform so that streams do
// not depend on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // splitmix64 warm-up decorrelates small seeds
    next_u64();
    next_u64();
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // multiplier drawn log-uniformly from [1-frac, 1+frac]
  double log_uniform_factor(double frac) {
    return std::exp(uniform(std::log(1.0 - frac), std::log(1.0 + frac)));
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * M_PI * u2);
  }

  int uniform_int(int n) {  // in [0, n)
    return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
  }

  // Independent substream, stable under reordering of other draws.
  Rng fork(std::uint64_t tag) const {
    return Rng(state_ ^ (0x632be59bd9b4e019ULL * (tag + 1)));
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Shortest-width exact decimal formatting; round-trips doubles and keeps CSV
// output byte-stable across runs.
inline std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace driftlab

#endif  // DRIFTLAB_CORE_HPP
