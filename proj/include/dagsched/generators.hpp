#pragma once

#include <cstdint>

#include "dagsched/dag.hpp"

namespace dagsched {

/// Family on which strict critical-path scheduling is ~n times slower than an
/// overlap schedule: n long tasks (duration 1, demand 1/n on resource 0) that
/// could all co-run, interleaved by the CP order with wide tasks
/// (duration eps, demand 1-eps) that cannot co-run with anything else.
/// Padding chains of negligible-demand tasks order the critical paths as
/// CP(L_1) > CP(w_1) > CP(L_2) > ...
JobDag gen_cp_adversarial(int n, double eps, std::size_t dims = 4);

/// Family on which the dot-product packer is ~(2d-2) times slower than an
/// overlap schedule on d resources: 2d-2 long tasks (demand 1/2 on their
/// group dimension plus a slack-dimension share that keeps their dot product
/// above every wide task's), and a chain of wide tasks W_i (demand 1/2+eps on
/// the group dimension of the currently running long) with W_i -> L_{i+1},
/// which fully serializes the packer.
JobDag gen_packer_adversarial(int d, double eps = 0.01);

/// Family on which structure-blind schedulers are slow in expectation: a
/// chain of d groups of k unit tasks, group i demanding all of resource i,
/// where one "red" task per group is the sole parent of the next group.
/// An informed schedule pipelines in (k+d-1)t; blind orders average ~k(d+1)t/2.
JobDag gen_structure_blind_adversarial(int d, int k);

struct RandomDagParams {
  int min_stages = 3;
  int max_stages = 8;
  int min_tasks_per_stage = 1;
  int max_tasks_per_stage = 4;
  int min_fanin = 1;
  int max_fanin = 2;
  int max_fanout = 3;
  double mean_duration = 10.0;
  double duration_cov = 1.0;
  double mean_demand = 0.2;
  double demand_cov = 0.5;
  double locality_prob = 0.1;
  std::size_t dims = 4;
};

/// Deterministic for a fixed seed; output always passes validate.
JobDag gen_random(const RandomDagParams& params, std::uint64_t seed);

/// Fixed 5-task instance with two short parent tasks feeding two of three
/// long tasks. Critical-path order and packing order both serialize all five
/// tasks (~3 time units) while overlapping the long tasks finishes in ~1.
JobDag contention_example(double eps = 0.01);

/// Fixed 8-stage instance (two heavy stages of parallel tasks among single
/// task connector stages) whose partitioned bound exceeds both the critical
/// path (5) and the total work (4.8), reaching 6.8.
JobDag bounds_example();

}  // namespace dagsched
