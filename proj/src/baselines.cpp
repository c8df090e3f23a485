#include "dagsched/baselines.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace dagsched {

double greedy_pack_makespan(const std::vector<TaskSpec>& tasks,
                            const ClusterSpec& cluster) {
  if (tasks.empty()) return 0.0;
  struct Running {
    double end;
    int machine;
    ResourceVector demand;
  };
  std::vector<ResourceVector> avail(
      static_cast<std::size_t>(cluster.machine_count), cluster.capacity);
  std::vector<bool> placed(tasks.size(), false);
  std::vector<Running> running;
  std::size_t remaining = tasks.size();
  double now = 0.0;
  double makespan = 0.0;

  while (remaining > 0 || !running.empty()) {
    for (int m = 0; m < cluster.machine_count; ++m) {
      while (true) {
        int best = -1;
        double best_dot = -1.0;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
          if (placed[i]) continue;
          if (!tasks[i].demand.fits_within(avail[static_cast<std::size_t>(m)]))
            continue;
          double dot = tasks[i].demand.dot(avail[static_cast<std::size_t>(m)]);
          if (dot > best_dot + kCapacityTol) {
            best_dot = dot;
            best = static_cast<int>(i);
          }
        }
        if (best < 0) break;
        placed[static_cast<std::size_t>(best)] = true;
        --remaining;
        avail[static_cast<std::size_t>(m)] -= tasks[static_cast<std::size_t>(best)].demand;
        running.push_back({now + tasks[static_cast<std::size_t>(best)].duration, m,
                           tasks[static_cast<std::size_t>(best)].demand});
        makespan = std::max(makespan, running.back().end);
      }
    }
    if (running.empty()) {
      if (remaining > 0)
        throw std::runtime_error("greedy_pack_makespan: task never fits");
      break;
    }
    double next = std::numeric_limits<double>::infinity();
    for (const Running& r : running) next = std::min(next, r.end);
    now = next;
    std::vector<Running> keep;
    for (const Running& r : running) {
      if (r.end <= now + kCapacityTol)
        avail[static_cast<std::size_t>(r.machine)] += r.demand;
      else
        keep.push_back(r);
    }
    running.swap(keep);
  }
  return makespan;
}

std::vector<int> level_of_tasks(const JobDag& dag) {
  int n = static_cast<int>(dag.tasks.size());
  std::vector<int> level(static_cast<std::size_t>(n), 0);
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  std::deque<int> q;
  for (int v = 0; v < n; ++v) {
    indeg[static_cast<std::size_t>(v)] = static_cast<int>(dag.parents[static_cast<std::size_t>(v)].size());
    if (indeg[static_cast<std::size_t>(v)] == 0) q.push_back(v);
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int c : dag.children[static_cast<std::size_t>(v)]) {
      level[static_cast<std::size_t>(c)] =
          std::max(level[static_cast<std::size_t>(c)], level[static_cast<std::size_t>(v)] + 1);
      if (--indeg[static_cast<std::size_t>(c)] == 0) q.push_back(c);
    }
  }
  return level;
}

std::vector<int> coffman_graham_order(const JobDag& dag) {
  int n = static_cast<int>(dag.tasks.size());
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  std::vector<bool> labeled(static_cast<std::size_t>(n), false);

  // Phase 1: assign labels 1..n, smallest labels to sinks, preferring the
  // task whose decreasing sequence of successor labels is lexicographically
  // smallest.
  for (int next = 1; next <= n; ++next) {
    int pick = -1;
    std::vector<int> pick_key;
    for (int v = 0; v < n; ++v) {
      if (labeled[static_cast<std::size_t>(v)]) continue;
      bool ready = true;
      std::vector<int> key;
      for (int c : dag.children[static_cast<std::size_t>(v)]) {
        if (!labeled[static_cast<std::size_t>(c)]) {
          ready = false;
          break;
        }
        key.push_back(label[static_cast<std::size_t>(c)]);
      }
      if (!ready) continue;
      std::sort(key.rbegin(), key.rend());
      if (pick < 0 || key < pick_key ||
          (key == pick_key && v < pick)) {
        pick = v;
        pick_key = std::move(key);
      }
    }
    label[static_cast<std::size_t>(pick)] = next;
    labeled[static_cast<std::size_t>(pick)] = true;
  }

  // Phase 2: list order by decreasing label.
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return label[static_cast<std::size_t>(a)] > label[static_cast<std::size_t>(b)];
  });
  return order;
}

MalleableResult greedy_malleable_opt(const std::vector<double>& lengths,
                                     const std::vector<ResourceVector>& demands) {
  if (lengths.size() != demands.size())
    throw std::invalid_argument("greedy_malleable_opt: size mismatch");
  MalleableResult res;
  if (lengths.empty()) return res;
  std::size_t dims = demands.front().dims();
  double p_max = 0.0;
  for (double p : lengths) p_max = std::max(p_max, p);
  double big_p = 0.0;
  for (std::size_t d = 0; d < dims; ++d) {
    double s = 0.0;
    for (std::size_t j = 0; j < lengths.size(); ++j)
      s += demands[j][d] * lengths[j];
    big_p = std::max(big_p, s);
  }
  if (big_p < p_max) {
    res.trivial = true;
    big_p = p_max;
  }
  res.makespan = big_p;
  for (double p : lengths) res.rates.push_back(p / big_p);
  return res;
}

}  // namespace dagsched
