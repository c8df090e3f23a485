#include "dagsched/constructor.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "dagsched/baselines.hpp"
#include "dagsched/bounds.hpp"

namespace dagsched {

double long_score(const TaskSpec& task, const std::vector<int>& universe,
                  const JobDag& dag) {
  double max_dur = 0.0;
  for (int v : universe) max_dur = std::max(max_dur, dag.tasks[v].duration);
  return max_dur > 0 ? task.duration / max_dur : 1.0;
}

double frag_score(int stage, const JobDag& dag, const ClusterSpec& cluster) {
  std::vector<TaskSpec> tasks;
  for (int t : dag.stages.at(static_cast<std::size_t>(stage)).tasks)
    tasks.push_back(dag.tasks[static_cast<std::size_t>(t)]);
  double work = 0.0;
  ResourceVector total = cluster.total_capacity();
  for (std::size_t r = 0; r < total.dims(); ++r) {
    double w = 0.0;
    for (const TaskSpec& t : tasks) w += t.duration * t.demand[r];
    work = std::max(work, w / total[r]);
  }
  double exec = greedy_pack_makespan(tasks, cluster);
  return exec > 0 ? work / exec : 1.0;
}

namespace {

std::vector<double> threshold_grid(double delta) {
  std::vector<double> values;
  for (double v = delta; v < 1.0 - 1e-12; v += delta) values.push_back(v);
  values.push_back(1.0);
  return values;
}

}  // namespace

std::vector<CandidateDivision> candidate_divisions_for(
    const std::vector<int>& universe, const JobDag& dag,
    const ClusterSpec& cluster, double delta) {
  if (delta <= 0.0 || delta > 1.0)
    throw std::invalid_argument("candidate_divisions: need 0 < delta <= 1");

  std::set<int> in_universe(universe.begin(), universe.end());
  std::map<int, double> lscore;
  std::map<int, double> fscore;  // per stage
  for (int v : universe) {
    lscore[v] = long_score(dag.tasks[static_cast<std::size_t>(v)], universe, dag);
    int s = dag.tasks[static_cast<std::size_t>(v)].stage;
    if (!fscore.count(s)) fscore[s] = frag_score(s, dag, cluster);
  }

  std::vector<CandidateDivision> out;
  std::set<std::vector<int>> seen;
  for (double l : threshold_grid(delta)) {
    for (double f : threshold_grid(delta)) {
      std::vector<int> raw;
      for (int v : universe) {
        int s = dag.tasks[static_cast<std::size_t>(v)].stage;
        if (lscore[v] >= l - 1e-12 || fscore[s] <= f + 1e-12) raw.push_back(v);
      }
      std::vector<int> t_set;
      for (int v : closure(raw, dag))
        if (in_universe.count(v)) t_set.push_back(v);
      if (!seen.insert(t_set).second) continue;

      CandidateDivision div;
      div.l = l;
      div.f = f;
      div.T = t_set;
      std::set<int> t_lookup(t_set.begin(), t_set.end());
      std::set<int> p_lookup, c_lookup;
      for (int v : task_ancestors(t_set, dag))
        if (in_universe.count(v) && !t_lookup.count(v)) p_lookup.insert(v);
      for (int v : task_descendants(t_set, dag))
        if (in_universe.count(v) && !t_lookup.count(v)) c_lookup.insert(v);
      div.P.assign(p_lookup.begin(), p_lookup.end());
      div.C.assign(c_lookup.begin(), c_lookup.end());
      for (int v : universe)
        if (!t_lookup.count(v) && !p_lookup.count(v) && !c_lookup.count(v))
          div.O.push_back(v);
      out.push_back(std::move(div));
    }
  }
  return out;
}

std::vector<CandidateDivision> candidate_divisions(const JobDag& dag,
                                                   const ClusterSpec& cluster,
                                                   double delta) {
  std::vector<int> universe;
  for (const TaskSpec& t : dag.tasks) universe.push_back(t.id);
  return candidate_divisions_for(universe, dag, cluster, delta);
}

namespace {

enum class Direction { Forward, Backward };

VirtualSpace place_directed(const std::vector<int>& tasks,
                            const VirtualSpace& space, const JobDag& dag,
                            Direction dir) {
  VirtualSpace out = space.clone();
  std::set<int> pending(tasks.begin(), tasks.end());
  while (!pending.empty()) {
    int pick = -1;
    for (int v : pending) {
      const auto& gates =
          dir == Direction::Forward ? dag.parents[static_cast<std::size_t>(v)]
                                    : dag.children[static_cast<std::size_t>(v)];
      bool ready = true;
      for (int g : gates)
        // A gate inside the placement set must go first; one outside it that
        // is still unplaced is someone else's job and gets placed on the
        // other side of us later.
        if (pending.count(g)) {
          ready = false;
          break;
        }
      if (!ready) continue;
      if (pick < 0 ||
          dag.tasks[static_cast<std::size_t>(v)].duration >
              dag.tasks[static_cast<std::size_t>(pick)].duration + 1e-12)
        pick = v;
    }
    if (pick < 0)
      throw std::logic_error("placement dead-end: no ready task");

    const TaskSpec& task = dag.tasks[static_cast<std::size_t>(pick)];
    PlacementRecord rec;
    if (dir == Direction::Forward) {
      double not_before = std::min(0.0, out.min_begin());
      for (int p : dag.parents[static_cast<std::size_t>(pick)])
        if (out.has(p)) not_before = std::max(not_before, out.placement(p).end);
      rec = out.earliest_fit(task, not_before);
    } else {
      double not_after = out.empty() ? 0.0 : out.max_end();
      bool any_child = false;
      for (int c : dag.children[static_cast<std::size_t>(pick)])
        if (out.has(c)) {
          not_after = any_child ? std::min(not_after, out.placement(c).begin)
                                : out.placement(c).begin;
          any_child = true;
        }
      rec = out.latest_fit(task, not_after);
    }
    out.commit(rec);
    pending.erase(pick);
  }
  return out;
}

}  // namespace

VirtualSpace place_forward(const std::vector<int>& tasks,
                           const VirtualSpace& space, const JobDag& dag) {
  return place_directed(tasks, space, dag, Direction::Forward);
}

VirtualSpace place_backward(const std::vector<int>& tasks,
                            const VirtualSpace& space, const JobDag& dag) {
  return place_directed(tasks, space, dag, Direction::Backward);
}

VirtualSpace place_tasks(const std::vector<int>& tasks, const VirtualSpace& space,
                         const JobDag& dag) {
  if (tasks.empty()) return space.clone();
  VirtualSpace fwd = place_forward(tasks, space, dag);
  VirtualSpace bwd = place_backward(tasks, space, dag);
  return bwd.schedule_length() < fwd.schedule_length() - 1e-12 ? bwd : fwd;
}

VirtualSpace try_subset_orders(const VirtualSpace& space_with_t,
                               const CandidateDivision& div, const JobDag& dag) {
  VirtualSpace best = space_with_t.clone();
  bool have = false;
  auto consider = [&](VirtualSpace s) {
    if (!have || s.schedule_length() < best.schedule_length() - 1e-12) {
      best = std::move(s);
      have = true;
    }
  };
  // OPC
  consider(place_forward(
      div.C, place_backward(div.P, place_tasks(div.O, space_with_t, dag), dag),
      dag));
  // OCP
  consider(place_backward(
      div.P, place_forward(div.C, place_tasks(div.O, space_with_t, dag), dag),
      dag));
  // COP
  consider(place_backward(
      div.P, place_backward(div.O, place_forward(div.C, space_with_t, dag), dag),
      dag));
  // POC
  consider(place_forward(
      div.C, place_forward(div.O, place_backward(div.P, space_with_t, dag), dag),
      dag));
  return best;
}

std::map<int, double> pri_score(const std::map<int, double>& begins) {
  std::vector<std::pair<double, int>> order;
  for (const auto& [task, begin] : begins) order.emplace_back(begin, task);
  std::sort(order.begin(), order.end());
  std::map<int, double> out;
  double n = static_cast<double>(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    out[order[i].second] = 1.0 - static_cast<double>(i) / n;
  return out;
}

PreferredSchedule build_schedule(const JobDag& dag, const ClusterSpec& cluster,
                                 const BuildOptions& options) {
  PreferredSchedule result;
  double offset = 0.0;

  for (const std::vector<int>& part : cut_dags(dag)) {
    std::vector<int> universe;
    for (int s : part)
      for (int t : dag.stages[static_cast<std::size_t>(s)].tasks)
        universe.push_back(t);
    std::sort(universe.begin(), universe.end());
    if (universe.empty()) continue;

    auto divisions = candidate_divisions_for(universe, dag, cluster, options.delta);
    VirtualSpace best(cluster.machine_count, cluster.capacity);
    bool have = false;
    for (double ceiling : options.ceilings) {
      for (const CandidateDivision& div : divisions) {
        VirtualSpace space(cluster.machine_count, cluster.capacity);
        space.set_ceiling(ResourceVector(cluster.capacity.dims(), ceiling));
        space = place_tasks(div.T, space, dag);
        space = try_subset_orders(space, div, dag);
        if (!have || space.schedule_length() < best.schedule_length() - 1e-12) {
          best = std::move(space);
          have = true;
        }
      }
    }

    best.shift_to_zero();
    for (const auto& [task, rec] : best.placements()) {
      result.begin[task] = offset + rec.begin;
      result.machine[task] = rec.machine;
    }
    offset += best.schedule_length();
  }

  result.schedule_length = offset;
  result.pri_score = pri_score(result.begin);
  return result;
}

}  // namespace dagsched
