#pragma once

#include <vector>

#include "dagsched/dag.hpp"

namespace dagsched {

/// Makespan a greedy dot-product packer needs for a set of independent tasks:
/// machines are visited in index order, each repeatedly taking the fitting
/// task whose demand has the largest dot product with the machine's
/// availability; time then advances to the next completion.
double greedy_pack_makespan(const std::vector<TaskSpec>& tasks,
                            const ClusterSpec& cluster);

/// Classic two-phase labeling: labels assigned by lexicographic comparison of
/// successor label sequences, then a list order by decreasing label.
/// Returns task ids, schedule-first first.
std::vector<int> coffman_graham_order(const JobDag& dag);

/// Level index per task: longest path (in hops) from any root.
std::vector<int> level_of_tasks(const JobDag& dag);

struct MalleableResult {
  std::vector<double> rates;  // x_j, fraction of full speed
  double makespan = 0.0;      // equals P = max_d sum_j a_dj * p_j
  bool trivial = false;       // P < max p_j: some task alone dominates
};

/// Rate allocation for independent malleable tasks with lengths p_j and
/// demands A_j: P = max_d sum_j a_dj*p_j, x_j = p_j/P; every task then
/// completes exactly at P and no dimension is over-allocated.
MalleableResult greedy_malleable_opt(const std::vector<double>& lengths,
                                     const std::vector<ResourceVector>& demands);

}  // namespace dagsched
