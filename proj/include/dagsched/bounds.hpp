#pragma once

#include <vector>

#include "dagsched/dag.hpp"

namespace dagsched {

struct PartitionBound {
  std::vector<int> stages;
  double cp_len = 0.0;
  double t_work = 0.0;
  double mod_cp = 0.0;
  double best() const;
};

struct BoundReport {
  double cp_len = 0.0;
  double t_work = 0.0;
  double mod_cp = 0.0;
  double new_lb = 0.0;
  std::vector<PartitionBound> partitions;
};

/// Longest root-to-leaf path of summed task durations.
double cp_len(const JobDag& dag);

/// max over resources r of (1/C_r) * sum over tasks of duration * demand_r,
/// with C the total cluster capacity.
double t_work(const JobDag& dag, const ResourceVector& total_capacity);

/// Path bound that charges one stage on the path with its full work
/// max(TWork_s, CPLen_s) where valid, and the minimum task duration for the
/// other stages. Stages with identical parent and child sets are grouped; a
/// stage whose every edge is all-to-all contributes its full work in path
/// sums as well.
double mod_cp(const JobDag& dag, const ResourceVector& total_capacity);

/// Sum over the totally ordered parts of cut_dags of the per-part maximum of
/// the three bounds above.
BoundReport new_lb(const JobDag& dag, const ResourceVector& total_capacity);

/// Normalized gap 1 - measure/runtime. Negative when the measure exceeds the
/// runtime (jobs can finish faster than a total-work estimate suggests).
double gap(double runtime, double measure);

}  // namespace dagsched
