#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dagsched::testing {

namespace {

constexpr double kTol = 1e-9;

struct Searcher {
  const JobDag& dag;
  const ResourceVector& cap;
  int n;
  std::vector<double> cp_tail;  // duration-weighted path to a leaf, incl self
  std::vector<unsigned> parent_mask;
  double best = std::numeric_limits<double>::infinity();

  explicit Searcher(const JobDag& d, const ResourceVector& c)
      : dag(d), cap(c), n(static_cast<int>(d.tasks.size())) {
    if (n > 20) throw std::invalid_argument("brute_force_opt: too many tasks");
    cp_tail.assign(n, 0.0);
    parent_mask.assign(n, 0);
    // Tail critical paths by fixpoint (n is tiny).
    for (int pass = 0; pass < n; ++pass)
      for (int v = 0; v < n; ++v) {
        double m = 0.0;
        for (int c2 : dag.children[v]) m = std::max(m, cp_tail[c2]);
        cp_tail[v] = dag.tasks[v].duration + m;
      }
    for (int v = 0; v < n; ++v)
      for (int p : dag.parents[v]) parent_mask[v] |= 1u << p;
  }

  void search(double now, unsigned started, const std::vector<double>& ends) {
    unsigned done = 0;
    double max_end = 0.0;
    std::vector<int> running;
    for (int v = 0; v < n; ++v)
      if (started & (1u << v)) {
        max_end = std::max(max_end, ends[v]);
        if (ends[v] <= now + kTol)
          done |= 1u << v;
        else
          running.push_back(v);
      }
    if (started == (1u << n) - 1) {
      best = std::min(best, max_end);
      return;
    }
    // Lower bound: every unstarted task begins at `now` or later.
    double lb = max_end;
    for (int v = 0; v < n; ++v)
      if (!(started & (1u << v))) lb = std::max(lb, now + cp_tail[v]);
    if (lb >= best - kTol) return;

    std::vector<int> ready;
    for (int v = 0; v < n; ++v)
      if (!(started & (1u << v)) && (parent_mask[v] & ~done) == 0)
        ready.push_back(v);

    ResourceVector used(cap.dims(), 0.0);
    for (int v : running) used += dag.tasks[v].demand;

    // Branch over every feasible subset of the ready tasks to start at `now`
    // (the empty subset waits for the next completion).
    unsigned r = static_cast<unsigned>(ready.size());
    for (unsigned s = 0; s < (1u << r); ++s) {
      ResourceVector load = used;
      bool feasible = true;
      for (unsigned i = 0; i < r && feasible; ++i)
        if (s & (1u << i)) {
          load += dag.tasks[ready[i]].demand;
          feasible = load.fits_within(cap);
        }
      if (!feasible) continue;
      if (s == 0) {
        if (running.empty()) continue;  // nothing would ever happen
        double next = std::numeric_limits<double>::infinity();
        for (int v : running) next = std::min(next, ends[v]);
        search(next, started, ends);
      } else {
        unsigned started2 = started;
        std::vector<double> ends2 = ends;
        for (unsigned i = 0; i < r; ++i)
          if (s & (1u << i)) {
            started2 |= 1u << ready[i];
            ends2[ready[i]] = now + dag.tasks[ready[i]].duration;
          }
        double next = std::numeric_limits<double>::infinity();
        for (int v = 0; v < n; ++v)
          if ((started2 & (1u << v)) && ends2[v] > now + kTol)
            next = std::min(next, ends2[v]);
        search(next, started2, ends2);
      }
    }
  }
};

}  // namespace

double brute_force_opt(const JobDag& dag, const ResourceVector& capacity) {
  if (dag.tasks.empty()) return 0.0;
  Searcher s(dag, capacity);
  std::vector<double> ends(dag.tasks.size(), 0.0);
  s.search(0.0, 0, ends);
  return s.best;
}

double check_witness(const JobDag& dag, const ClusterSpec& cluster,
                     const std::vector<WitnessPlacement>& placements) {
  if (placements.size() != dag.tasks.size())
    throw std::runtime_error("witness: wrong task count");
  VirtualSpace space(cluster.machine_count, cluster.capacity);
  std::vector<double> begin(dag.tasks.size()), end(dag.tasks.size());
  for (const WitnessPlacement& w : placements) {
    const TaskSpec& t = dag.tasks.at(static_cast<std::size_t>(w.task));
    PlacementRecord rec;
    rec.task = w.task;
    rec.machine = w.machine;
    rec.begin = w.begin;
    rec.end = w.begin + t.duration;
    rec.demand = t.demand;
    space.commit(rec);  // throws on capacity violation
    begin[static_cast<std::size_t>(w.task)] = rec.begin;
    end[static_cast<std::size_t>(w.task)] = rec.end;
  }
  for (std::size_t v = 0; v < dag.tasks.size(); ++v)
    for (int p : dag.parents[v])
      if (begin[v] < end[static_cast<std::size_t>(p)] - kTol)
        throw std::runtime_error("witness: dependency violated");
  return space.schedule_length();
}

}  // namespace dagsched::testing
