#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "afd/grid.hpp"

namespace afd {

// One time slice of every tracked functional.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double min_u = 0.0;
  double max_u = 0.0;
  double l2_dist = 0.0;  // ||u - <u0>||_L2
  double entropy = 0.0;
  double entropy_dissipation = 0.0;
  double energy_dissipation = 0.0;
  double lyapunov = 0.0;
  double theta_linf = 0.0;
  double a1_norm = 0.0;  // Wiener norms of w = (u - <u0>) / <u0>
  double a3_norm = 0.0;
  double dt_used = 0.0;
};

enum class Termination { ReachedTEnd, PositivityViolation, SlopeBlowup, StepLimit };

std::string_view to_string(Termination t);

struct TrajectoryEntry {
  double t;
  GridFunction u;
  DiagnosticsRecord record;
};

struct Trajectory {
  std::vector<TrajectoryEntry> entries;  // strictly increasing t, first at t = 0
  Termination termination = Termination::ReachedTEnd;
  std::string message;  // breakdown reason, empty on success
};

// Called at every recording time with (t, u, dt of the last step taken).
using DiagnosticsHook =
    std::function<DiagnosticsRecord(double t, const GridFunction& u, double dt_used)>;

}  // namespace afd
