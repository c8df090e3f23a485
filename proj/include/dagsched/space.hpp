#pragma once

#include <map>
#include <vector>

#include "dagsched/dag.hpp"

namespace dagsched {

struct PlacementRecord {
  int task = -1;
  int machine = -1;
  double begin = 0.0;
  double end = 0.0;
  ResourceVector demand;
};

/// The placement canvas for offline construction: machines x resources x
/// continuous time. Per-machine usage is a piecewise-constant profile stored
/// as sorted breakpoints. Time may be negative (backward placement digs in
/// front of the origin); shift_to_zero() renormalizes after a full pass.
class VirtualSpace {
 public:
  VirtualSpace(int machine_count, ResourceVector capacity);

  /// Per-dimension multiplier (>= 1) on capacity during construction.
  void set_ceiling(const ResourceVector& ceiling);

  int machine_count() const { return machine_count_; }
  const ResourceVector& capacity() const { return capacity_; }

  /// Minimum begin >= not_before at which the task fits on some machine for
  /// its full duration. Ties across machines go to the lower machine index.
  /// Throws std::runtime_error when the demand can never fit.
  PlacementRecord earliest_fit(const TaskSpec& task, double not_before) const;

  /// Maximum begin with begin + duration <= not_after. Ties as above.
  PlacementRecord latest_fit(const TaskSpec& task, double not_after) const;

  /// Applies a record from a fit query. Re-checks capacity and throws if the
  /// record has gone stale.
  void commit(const PlacementRecord& record);

  VirtualSpace clone() const { return *this; }

  bool has(int task) const { return placements_.count(task) != 0; }
  const PlacementRecord& placement(int task) const { return placements_.at(task); }
  const std::map<int, PlacementRecord>& placements() const { return placements_; }

  bool empty() const { return placements_.empty(); }
  double min_begin() const;
  double max_end() const;
  /// max end - min begin over placements; 0 when empty.
  double schedule_length() const;

  /// Shifts all placements and profiles so the minimum begin becomes zero.
  void shift_to_zero();
  /// Shifts all placements and profiles by the given offset.
  void shift(double offset);

  ResourceVector usage_at(int machine, double time) const;

 private:
  struct Profile {
    // usage[i] holds on [time[i], time[i+1]); usage is zero before time[0]
    // and after the last breakpoint level returns to zero by construction.
    std::vector<double> time;
    std::vector<ResourceVector> usage;
  };

  bool fits_on(const Profile& p, const ResourceVector& demand, double begin,
               double end) const;
  double earliest_on(const Profile& p, const ResourceVector& demand,
                     double duration, double not_before) const;
  double latest_on(const Profile& p, const ResourceVector& demand,
                   double duration, double not_after) const;
  void add_usage(Profile& p, double begin, double end,
                 const ResourceVector& demand);

  int machine_count_;
  ResourceVector capacity_;
  ResourceVector limit_;  // capacity * ceiling
  std::vector<Profile> profiles_;
  std::map<int, PlacementRecord> placements_;
};

}  // namespace dagsched
