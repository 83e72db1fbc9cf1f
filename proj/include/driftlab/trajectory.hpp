#ifndef DRIFTLAB_TRAJECTORY_HPP
#define DRIFTLAB_TRAJECTORY_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "driftlab/vehicle.hpp"

namespace driftlab {

enum class RunStatus { Completed, SpinOut, SolverFailure };

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "Completed";
    case RunStatus::SpinOut: return "SpinOut";
    case RunStatus::SolverFailure: return "SolverFailure";
  }
  return "?";
}

// One executed transition: state at t, the control point at t and the next
// control point (the low-level layer interpolates between them).
struct LogRecord {
  double t = 0.0;
  VehicleState x;
  Control u;
  Control u_next;
};

struct TrajectoryLog {
  std::vector<LogRecord> records;
  std::uint64_t seed = 0;
  int plant_id = -1;
  std::string scenario;
  RunStatus status = RunStatus::Completed;

  int transitions() const { return static_cast<int>(records.size()) - 1; }

  std::string to_csv() const {
    std::ostringstream os;
    os << "t,r,v,beta,omega_r,e,dphi,delta,tau,delta_next,tau_next\n";
    for (const auto& rec : records) {
      os << fmt_g17(rec.t) << ',' << fmt_g17(rec.x.r) << ',' << fmt_g17(rec.x.v) << ','
         << fmt_g17(rec.x.beta) << ',' << fmt_g17(rec.x.omega_r) << ','
         << fmt_g17(rec.x.e) << ',' << fmt_g17(rec.x.dphi) << ',' << fmt_g17(rec.u.delta)
         << ',' << fmt_g17(rec.u.tau) << ',' << fmt_g17(rec.u_next.delta) << ','
         << fmt_g17(rec.u_next.tau) << '\n';
    }
    return os.str();
  }

  std::string metadata_text() const {
    std::ostringstream os;
    os << "seed = " << seed << "\n"
       << "plant_id = " << plant_id << "\n"
       << "scenario = " << scenario << "\n"
       << "status = " << to_string(status) << "\n"
       << "records = " << records.size() << "\n";
    return os.str();
  }

  static TrajectoryLog from_csv(const std::string& csv) {
    TrajectoryLog log;
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      LogRecord rec;
      char c;
      ls >> rec.t >> c >> rec.x.r >> c >> rec.x.v >> c >> rec.x.beta >> c >>
          rec.x.omega_r >> c >> rec.x.e >> c >> rec.x.dphi >> c >> rec.u.delta >> c >>
          rec.u.tau >> c >> rec.u_next.delta >> c >> rec.u_next.tau;
      if (ls.fail()) throw Error("malformed trajectory CSV line: " + line);
      log.records.push_back(rec);
    }
    if (log.records.empty()) throw Error("trajectory CSV has no records");
    return log;
  }
};

// Left/right mirror of a maneuver: negates yaw rate, sideslip and steering,
// and with them the path-relative deviations. Speeds and torque are untouched.
inline TrajectoryLog mirror(const TrajectoryLog& log) {
  TrajectoryLog out = log;
  for (auto& rec : out.records) {
    rec.x.r = -rec.x.r;
    rec.x.beta = -rec.x.beta;
    rec.x.e = -rec.x.e;
    rec.x.dphi = -rec.x.dphi;
    rec.u.delta = -rec.u.delta;
    rec.u_next.delta = -rec.u_next.delta;
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open for writing: " + path);
  f << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open for reading: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace driftlab

#endif  // DRIFTLAB_TRAJECTORY_HPP
