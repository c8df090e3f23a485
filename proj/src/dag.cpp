#include "dagsched/dag.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace dagsched {

int JobDag::add_stage(const std::string& name, int task_count, double duration,
                      const ResourceVector& demand, bool locality_sensitive) {
  StageSpec s;
  s.name = name;
  int stage_idx = static_cast<int>(stages.size());
  for (int i = 0; i < task_count; ++i) {
    TaskSpec t;
    t.id = static_cast<int>(tasks.size());
    t.stage = stage_idx;
    t.duration = duration;
    t.demand = demand;
    t.locality_sensitive = locality_sensitive;
    s.tasks.push_back(t.id);
    tasks.push_back(t);
  }
  stages.push_back(std::move(s));
  return stage_idx;
}

void JobDag::add_edge(int from_stage, int to_stage, EdgePattern pattern) {
  stages.at(from_stage).out.push_back(StageEdge{to_stage, pattern});
}

void JobDag::finalize() {
  int ns = static_cast<int>(stages.size());
  int nt = static_cast<int>(tasks.size());
  parents.assign(nt, {});
  children.assign(nt, {});
  stage_parents.assign(ns, {});
  stage_children.assign(ns, {});

  for (int s = 0; s < ns; ++s) {
    for (const StageEdge& e : stages[s].out) {
      if (e.to < 0 || e.to >= ns)
        throw std::runtime_error("stage edge from '" + stages[s].name +
                                 "' points to unknown stage index " +
                                 std::to_string(e.to));
      stage_children[s].push_back(e.to);
      stage_parents[e.to].push_back(s);
      const auto& src = stages[s].tasks;
      const auto& dst = stages[e.to].tasks;
      if (e.pattern == EdgePattern::OneToOne) {
        if (src.size() != dst.size())
          throw std::runtime_error("one-to-one edge between stages '" +
                                   stages[s].name + "' and '" +
                                   stages[e.to].name +
                                   "' with unequal task counts");
        for (std::size_t i = 0; i < src.size(); ++i) {
          children[src[i]].push_back(dst[i]);
          parents[dst[i]].push_back(src[i]);
        }
      } else {
        // all-to-all; many-to-one defaults to the same task-level expansion
        for (int u : src)
          for (int v : dst) {
            children[u].push_back(v);
            parents[v].push_back(u);
          }
      }
    }
  }
  for (auto& v : parents) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  for (auto& v : children) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  for (auto& v : stage_parents) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  for (auto& v : stage_children) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
}

namespace {

// Kahn's algorithm; returns false when the graph has a cycle.
bool is_acyclic(const std::vector<std::vector<int>>& children,
                const std::vector<std::vector<int>>& parents) {
  int n = static_cast<int>(children.size());
  std::vector<int> indeg(n);
  std::deque<int> q;
  for (int v = 0; v < n; ++v) {
    indeg[v] = static_cast<int>(parents[v].size());
    if (indeg[v] == 0) q.push_back(v);
  }
  int seen = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    ++seen;
    for (int c : children[v])
      if (--indeg[c] == 0) q.push_back(c);
  }
  return seen == n;
}

std::vector<int> reach(const std::vector<int>& seeds,
                       const std::vector<std::vector<int>>& adj) {
  std::set<int> out;
  std::deque<int> q(seeds.begin(), seeds.end());
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v])
      if (out.insert(w).second) q.push_back(w);
  }
  return {out.begin(), out.end()};
}

}  // namespace

std::vector<std::string> validate(const JobDag& dag, const ClusterSpec& cluster) {
  std::vector<std::string> report;
  if (dag.stages.empty()) report.push_back("job has no stages");
  if (dag.arrival < 0) report.push_back("negative arrival time");
  if (cluster.machine_count < 1) report.push_back("cluster has no machines");
  for (std::size_t i = 0; i < cluster.capacity.dims(); ++i)
    if (cluster.capacity[i] <= 0)
      report.push_back("non-positive capacity in dimension " + std::to_string(i));

  for (const StageSpec& s : dag.stages)
    if (s.tasks.empty()) report.push_back("stage '" + s.name + "' has no tasks");

  std::vector<int> owner(dag.tasks.size(), -1);
  for (std::size_t si = 0; si < dag.stages.size(); ++si)
    for (int t : dag.stages[si].tasks) {
      if (t < 0 || t >= static_cast<int>(dag.tasks.size())) {
        report.push_back("stage '" + dag.stages[si].name +
                         "' references unknown task " + std::to_string(t));
        continue;
      }
      if (owner[t] != -1)
        report.push_back("task " + std::to_string(t) +
                         " belongs to more than one stage");
      owner[t] = static_cast<int>(si);
    }
  for (std::size_t t = 0; t < dag.tasks.size(); ++t)
    if (owner[t] == -1)
      report.push_back("task " + std::to_string(t) + " belongs to no stage");

  for (const TaskSpec& t : dag.tasks) {
    if (t.duration <= 0)
      report.push_back("task " + std::to_string(t.id) +
                       " has non-positive duration");
    if (t.demand.dims() != cluster.capacity.dims()) {
      report.push_back("task " + std::to_string(t.id) +
                       " demand dimensionality mismatch");
      continue;
    }
    for (std::size_t i = 0; i < t.demand.dims(); ++i) {
      if (t.demand[i] < 0)
        report.push_back("task " + std::to_string(t.id) +
                         " has negative demand in dimension " +
                         std::to_string(i));
    }
    if (!t.demand.fits_within(cluster.capacity))
      report.push_back("task " + std::to_string(t.id) +
                       " demand exceeds per-machine capacity");
  }

  for (const StageSpec& s : dag.stages)
    for (const StageEdge& e : s.out)
      if (e.to < 0 || e.to >= static_cast<int>(dag.stages.size()))
        report.push_back("stage '" + s.name + "' has a dangling edge");

  if (report.empty() && !is_acyclic(dag.children, dag.parents))
    report.push_back("dependency graph has a cycle");
  return report;
}

StageRelatives relatives(int stage, const JobDag& dag) {
  if (stage < 0 || stage >= static_cast<int>(dag.stages.size()))
    throw std::out_of_range("unknown stage index " + std::to_string(stage));
  StageRelatives r;
  r.parents = dag.stage_parents[stage];
  r.children = dag.stage_children[stage];
  r.ancestors = reach({stage}, dag.stage_parents);
  r.descendants = reach({stage}, dag.stage_children);
  std::set<int> excluded(r.ancestors.begin(), r.ancestors.end());
  excluded.insert(r.descendants.begin(), r.descendants.end());
  excluded.insert(stage);
  for (int s = 0; s < static_cast<int>(dag.stages.size()); ++s)
    if (!excluded.count(s)) r.unordered.push_back(s);
  return r;
}

std::vector<int> task_ancestors(const std::vector<int>& seeds, const JobDag& dag) {
  return reach(seeds, dag.parents);
}

std::vector<int> task_descendants(const std::vector<int>& seeds, const JobDag& dag) {
  return reach(seeds, dag.children);
}

std::vector<int> closure(const std::vector<int>& task_ids, const JobDag& dag) {
  // A task is on a path between two inputs iff it is reachable from some
  // input and some input is reachable from it.
  std::vector<int> down = task_descendants(task_ids, dag);
  std::vector<int> up = task_ancestors(task_ids, dag);
  std::set<int> result(task_ids.begin(), task_ids.end());
  std::set<int> up_set(up.begin(), up.end());
  for (int v : down)
    if (up_set.count(v)) result.insert(v);
  return {result.begin(), result.end()};
}

namespace {

void cut_rec(const JobDag& dag, const std::vector<int>& part,
             std::vector<std::vector<int>>& out) {
  if (part.empty()) return;
  if (part.size() == 1) {
    out.push_back(part);
    return;
  }
  std::set<int> in_part(part.begin(), part.end());
  for (int s : part) {
    // Relatives restricted to the induced subgraph.
    std::set<int> anc, desc;
    std::deque<int> q{s};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int p : dag.stage_parents[v])
        if (in_part.count(p) && anc.insert(p).second) q.push_back(p);
    }
    q = {s};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int c : dag.stage_children[v])
        if (in_part.count(c) && desc.insert(c).second) q.push_back(c);
    }
    if (anc.size() + desc.size() + 1 == part.size()) {
      cut_rec(dag, {anc.begin(), anc.end()}, out);
      out.push_back({s});
      cut_rec(dag, {desc.begin(), desc.end()}, out);
      return;
    }
  }
  out.push_back(part);
}

}  // namespace

std::vector<std::vector<int>> cut_dags(const JobDag& dag) {
  std::vector<int> all(dag.stages.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<std::vector<int>> out;
  cut_rec(dag, all, out);
  return out;
}

}  // namespace dagsched
