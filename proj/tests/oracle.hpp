#pragma once

#include <vector>

#include "dagsched/dag.hpp"
#include "dagsched/space.hpp"

namespace dagsched::testing {

/// Exact minimum makespan on a single machine, found by branch-and-bound over
/// event-aligned schedules (there is always an optimal schedule in which every
/// task starts at time 0 or at another task's completion). Exponential;
/// intended for instances of at most ~10 tasks.
double brute_force_opt(const JobDag& dag, const ResourceVector& capacity);

/// One entry of a hand-built witness schedule.
struct WitnessPlacement {
  int task = -1;
  int machine = 0;
  double begin = 0.0;
};

/// Commits a hand-built schedule onto a fresh space, checking capacity (via
/// commit) and dependency order; throws on any violation. Returns the
/// schedule length.
double check_witness(const JobDag& dag, const ClusterSpec& cluster,
                     const std::vector<WitnessPlacement>& placements);

}  // namespace dagsched::testing
