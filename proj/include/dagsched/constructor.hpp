#pragma once

#include <map>
#include <vector>

#include "dagsched/dag.hpp"
#include "dagsched/space.hpp"

namespace dagsched {

struct CandidateDivision {
  std::vector<int> T, O, P, C;  // disjoint, sorted, covering the universe
  double l = 0.0, f = 0.0;      // generating thresholds
};

struct PreferredSchedule {
  std::map<int, double> begin;     // task id -> begin time
  std::map<int, double> pri_score; // task id -> priority in (0, 1]
  std::map<int, int> machine;      // task id -> machine index
  double schedule_length = 0.0;
};

struct BuildOptions {
  double delta = 0.1;
  /// Construction-time overbooking ceilings to sweep (applied to every
  /// dimension); the default performs no overbooking.
  std::vector<double> ceilings = {1.0};
};

/// duration / max duration over the tasks considered.
double long_score(const TaskSpec& task, const std::vector<int>& universe,
                  const JobDag& dag);

/// Stage's capacity-normalized total work divided by the makespan a greedy
/// packer needs for the stage alone.
double frag_score(int stage, const JobDag& dag, const ClusterSpec& cluster);

/// Threshold grid over (l, f) in {delta, 2*delta, ..., 1}^2; T is the closure
/// of tasks with long score >= l or fragmentation score <= f; duplicate T
/// sets are skipped. Emission follows grid order (outer l, inner f).
std::vector<CandidateDivision> candidate_divisions(const JobDag& dag,
                                                   const ClusterSpec& cluster,
                                                   double delta);

/// As above but restricted to the tasks of a stage subset (used per part).
std::vector<CandidateDivision> candidate_divisions_for(
    const std::vector<int>& universe, const JobDag& dag,
    const ClusterSpec& cluster, double delta);

/// Places `tasks` into the space, repeatedly taking the longest task whose
/// in-universe parents are all placed, at the earliest feasible time after
/// its placed parents end. Parents outside both the space and `tasks` are
/// ignored: they will be placed backward before this begin later.
VirtualSpace place_forward(const std::vector<int>& tasks, const VirtualSpace& space,
                           const JobDag& dag);

/// Mirror: latest feasible time before the placed children begin.
VirtualSpace place_backward(const std::vector<int>& tasks, const VirtualSpace& space,
                            const JobDag& dag);

/// Whichever direction yields the smaller schedule length; ties go forward.
VirtualSpace place_tasks(const std::vector<int>& tasks, const VirtualSpace& space,
                         const JobDag& dag);

/// Evaluates the four dead-end-free orders for the remaining subsets around
/// an already placed T and returns the most compact result:
///   OPC: O both ways, P backward, C forward
///   OCP: O both ways, C forward, P backward
///   COP: C forward, O backward, P backward
///   POC: P backward, O forward, C forward
VirtualSpace try_subset_orders(const VirtualSpace& space_with_t,
                               const CandidateDivision& division,
                               const JobDag& dag);

/// Ranks placed tasks by ascending begin (ties by id); the i-th of n gets
/// 1 - (i-1)/n, so the first scores 1 and the last 1/n.
std::map<int, double> pri_score(const std::map<int, double>& begins);

/// Full construction: per totally-ordered part, sweeps candidate divisions,
/// places T both ways, tries the four orders, keeps the most compact, then
/// concatenates parts back to back and derives priorities.
PreferredSchedule build_schedule(const JobDag& dag, const ClusterSpec& cluster,
                                 const BuildOptions& options = {});

}  // namespace dagsched
