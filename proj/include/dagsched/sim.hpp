#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dagsched/dag.hpp"

namespace dagsched {

enum class Scheduler {
  Graphene,
  Cp,
  CpBackfill,
  Tetris,
  TetrisCpuMem,
  Bfs,
  Random,
  Cg,
  StripPart,
};

Scheduler scheduler_from_name(const std::string& name);
std::string scheduler_name(Scheduler s);
std::vector<std::string> scheduler_names();

enum class FairnessFlavor { Slot, Drf };

/// Snapshot handed to the launch hook just before a launch commits. Deficits
/// reflect the state used for the gating decision (pre-update).
struct LaunchInfo {
  double time = 0.0;
  int job = -1;
  int task = -1;
  std::string group;
  double max_deficit = 0.0;
  std::string max_deficit_group;
  bool overbooked = false;
  int machine = -1;
};

struct SimConfig {
  double kappa = 0.1;
  FairnessFlavor fairness = FairnessFlavor::Slot;
  double eta_m = 0.2;       // multiplier in the eta update
  int eta_window = 50;      // launches between eta refreshes
  double remote_penalty = 0.8;
  bool overbook = true;     // overbooking what-if for the online matcher
  double threshold = 1.0;   // fraction of parents that must finish
  double max_time = 1e7;    // non-termination guard
  double construction_delta = 0.1;
  /// Per-dimension class; true = fungible (overbookable, slows tasks down),
  /// false = hard (never overbooked). Empty = dims 0 and 1 hard, rest
  /// fungible.
  std::vector<bool> fungible;
  std::vector<double> jain_windows = {10.0, 60.0, 240.0};
  /// Optional observer invoked at every launch decision (tests, tracing).
  std::function<void(const LaunchInfo&)> launch_hook;
};

struct JobMetrics {
  std::string id;
  std::string group;
  double arrival = 0.0;
  double completion = 0.0;
  double jct = 0.0;
};

struct RunMetrics {
  std::string scheduler;
  std::uint64_t seed = 0;
  double makespan = 0.0;
  std::vector<JobMetrics> jobs;
  /// window length -> average Jain index over per-group resource-time
  /// allocated within consecutive windows of that length.
  std::map<double, double> jain;
};

/// (sum x)^2 / (N * sum x^2); 1 for the all-zero vector by convention.
double jain_index(const std::vector<double>& allocations);

/// What-if overbooking score: benefit of launching now on `machine` with the
/// fungible dimensions overbooked, minus the slowdown cost inflicted on the
/// tasks already running there; 0 when not worthwhile or when a hard
/// dimension would be exceeded. Completion predictions use the linear
/// slowdown model (load L > capacity runs affected tasks at capacity/L).
struct WhatIfTask {
  ResourceVector demand;
  double remaining = 0.0;
};
double overbook_score(const ResourceVector& demand, double duration,
                      int machine,
                      const std::vector<std::vector<WhatIfTask>>& running,
                      const ClusterSpec& cluster,
                      const std::vector<bool>& fungible);

/// Deterministic event-driven simulation of the workload under one
/// scheduler. Matching runs on job arrival and task completion; slowdowns
/// are recomputed whenever a machine's fungible load changes.
RunMetrics simulate(const std::vector<JobDag>& workload,
                    const ClusterSpec& cluster, Scheduler scheduler,
                    std::uint64_t seed, const SimConfig& config = {});

}  // namespace dagsched
