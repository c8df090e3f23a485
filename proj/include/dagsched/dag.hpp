#pragma once

#include <string>
#include <vector>

#include "dagsched/resource_vector.hpp"

namespace dagsched {

enum class EdgePattern { OneToOne, AllToAll, ManyToOne };

struct StageEdge {
  int to = -1;  // target stage index
  EdgePattern pattern = EdgePattern::AllToAll;
};

struct TaskSpec {
  int id = -1;     // global task index within the job
  int stage = -1;  // owning stage index
  double duration = 0.0;
  ResourceVector demand;
  bool locality_sensitive = false;
};

struct StageSpec {
  std::string name;
  std::vector<int> tasks;  // global task ids, in creation order
  std::vector<StageEdge> out;
};

struct ClusterSpec {
  int machine_count = 1;
  ResourceVector capacity;  // per machine
  double remote_penalty = 0.8;

  explicit ClusterSpec(int m = 1, ResourceVector cap = ResourceVector(4, 1.0),
                       double rp = 0.8)
      : machine_count(m), capacity(std::move(cap)), remote_penalty(rp) {}

  ResourceVector total_capacity() const {
    return capacity.scaled(static_cast<double>(machine_count));
  }
};

/// A job: stages of tasks plus typed stage-level dependency edges. Call
/// finalize() after mutating stages/tasks to rebuild the task-level adjacency.
struct JobDag {
  std::string id = "job";
  double arrival = 0.0;
  std::string group = "default";
  std::vector<StageSpec> stages;
  std::vector<TaskSpec> tasks;

  // Derived by finalize().
  std::vector<std::vector<int>> parents;   // task-level
  std::vector<std::vector<int>> children;  // task-level
  std::vector<std::vector<int>> stage_parents;
  std::vector<std::vector<int>> stage_children;

  int add_stage(const std::string& name, int task_count, double duration,
                const ResourceVector& demand, bool locality_sensitive = false);
  void add_edge(int from_stage, int to_stage,
                EdgePattern pattern = EdgePattern::AllToAll);

  /// Rebuilds task-level and stage-level adjacency from the stage edges.
  /// Throws std::runtime_error on malformed edges (bad indices, one-to-one
  /// with unequal task counts).
  void finalize();

  std::size_t task_count() const { return tasks.size(); }
  std::size_t stage_count() const { return stages.size(); }
};

struct StageRelatives {
  std::vector<int> parents, children, ancestors, descendants, unordered;
};

/// Returns empty when the job and every task demand fit the cluster;
/// otherwise one human-readable entry per problem.
std::vector<std::string> validate(const JobDag& dag, const ClusterSpec& cluster);

StageRelatives relatives(int stage, const JobDag& dag);

/// Input tasks plus every task on a directed path between two input tasks.
/// Idempotent; result is sorted.
std::vector<int> closure(const std::vector<int>& task_ids, const JobDag& dag);

/// Recursively splits the stage graph at stages with no unordered neighbors.
/// Parts are totally ordered: every edge goes from a part to the same or a
/// later part. Concatenation covers all stages exactly once.
std::vector<std::vector<int>> cut_dags(const JobDag& dag);

/// Task-level ancestor/descendant reachability helpers (sorted outputs).
std::vector<int> task_ancestors(const std::vector<int>& seeds, const JobDag& dag);
std::vector<int> task_descendants(const std::vector<int>& seeds, const JobDag& dag);

}  // namespace dagsched
