#include "dagsched/bounds.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace dagsched {

namespace {

double cp_len_part(const JobDag& dag, const std::set<int>& part) {
  std::vector<int> tasks;
  for (const TaskSpec& t : dag.tasks)
    if (part.count(t.stage)) tasks.push_back(t.id);

  std::map<int, double> down;  // longest duration-weighted path starting at v
  std::map<int, int> pending;  // children not yet resolved, within the part
  std::deque<int> q;
  for (int v : tasks) {
    int c = 0;
    for (int w : dag.children[v])
      if (part.count(dag.tasks[w].stage)) ++c;
    pending[v] = c;
    if (c == 0) q.push_back(v);
  }
  double best = 0.0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    double d = dag.tasks[v].duration;
    for (int w : dag.children[v])
      if (part.count(dag.tasks[w].stage)) d = std::max(d, dag.tasks[v].duration + down[w]);
    down[v] = d;
    best = std::max(best, d);
    for (int u : dag.parents[v])
      if (part.count(dag.tasks[u].stage) && --pending[u] == 0) q.push_back(u);
  }
  return best;
}

double t_work_tasks(const JobDag& dag, const std::vector<int>& tasks,
                    const ResourceVector& total_capacity) {
  double best = 0.0;
  for (std::size_t r = 0; r < total_capacity.dims(); ++r) {
    double work = 0.0;
    for (int v : tasks)
      work += dag.tasks[v].duration * dag.tasks[v].demand[r];
    best = std::max(best, work / total_capacity[r]);
  }
  return best;
}

double t_work_part(const JobDag& dag, const std::set<int>& part,
                   const ResourceVector& total_capacity) {
  std::vector<int> tasks;
  for (const TaskSpec& t : dag.tasks)
    if (part.count(t.stage)) tasks.push_back(t.id);
  return t_work_tasks(dag, tasks, total_capacity);
}

double mod_cp_part(const JobDag& dag, const std::set<int>& part,
                   const ResourceVector& total_capacity) {
  // Group stages with identical (part-internal) parent and child sets.
  std::map<std::pair<std::vector<int>, std::vector<int>>, int> group_of_key;
  std::vector<std::vector<int>> group_stages;
  std::vector<int> stage_group(dag.stages.size(), -1);
  for (int s = 0; s < static_cast<int>(dag.stages.size()); ++s) {
    if (!part.count(s)) continue;
    std::vector<int> ps, cs;
    for (int p : dag.stage_parents[s])
      if (part.count(p)) ps.push_back(p);
    for (int c : dag.stage_children[s])
      if (part.count(c)) cs.push_back(c);
    auto key = std::make_pair(ps, cs);
    auto it = group_of_key.find(key);
    int g;
    if (it == group_of_key.end()) {
      g = static_cast<int>(group_stages.size());
      group_of_key[key] = g;
      group_stages.push_back({});
    } else {
      g = it->second;
    }
    group_stages[g].push_back(s);
    stage_group[s] = g;
  }

  int ng = static_cast<int>(group_stages.size());
  std::vector<std::set<int>> gp(ng), gc(ng);
  for (int s = 0; s < static_cast<int>(dag.stages.size()); ++s) {
    if (!part.count(s)) continue;
    for (int c : dag.stage_children[s])
      if (part.count(c) && stage_group[c] != stage_group[s]) {
        gc[stage_group[s]].insert(stage_group[c]);
        gp[stage_group[c]].insert(stage_group[s]);
      }
  }

  // Per-group figures. A group may be charged with its full work
  // max(TWork, longest task) when every part-internal edge touching it is
  // all-to-all (all of its tasks then sit between the path neighbors);
  // otherwise only the longest single task is a safe charge. In the
  // non-charged positions a fully all-to-all group still contributes its
  // full work, anything else only its shortest task.
  std::vector<double> w(ng), charged(ng);
  for (int g = 0; g < ng; ++g) {
    std::vector<int> tasks;
    double maxdur = 0.0, mindur = 0.0;
    bool first = true;
    bool all_a2a = true;
    for (int s : group_stages[g]) {
      for (int t : dag.stages[s].tasks) {
        tasks.push_back(t);
        maxdur = std::max(maxdur, dag.tasks[t].duration);
        mindur = first ? dag.tasks[t].duration
                       : std::min(mindur, dag.tasks[t].duration);
        first = false;
      }
      for (const StageEdge& e : dag.stages[s].out)
        if (part.count(e.to) && e.pattern != EdgePattern::AllToAll &&
            e.pattern != EdgePattern::ManyToOne)
          all_a2a = false;
      for (int p : dag.stage_parents[s])
        if (part.count(p))
          for (const StageEdge& e : dag.stages[p].out)
            if (e.to == s && e.pattern != EdgePattern::AllToAll &&
                e.pattern != EdgePattern::ManyToOne)
              all_a2a = false;
    }
    double twork = t_work_tasks(dag, tasks, total_capacity);
    double full = std::max(twork, maxdur);
    w[g] = all_a2a ? full : mindur;
    charged[g] = all_a2a ? full : maxdur;
  }

  // Longest path with exactly one charged group: up0 tracks the plain
  // weight sum, up1 the best sum with the charge already spent.
  std::vector<double> up0(ng, 0.0), up1(ng, 0.0);
  std::vector<int> indeg(ng, 0);
  std::deque<int> q;
  for (int g = 0; g < ng; ++g) {
    indeg[g] = static_cast<int>(gp[g].size());
    if (indeg[g] == 0) q.push_back(g);
  }
  double best = 0.0;
  while (!q.empty()) {
    int g = q.front();
    q.pop_front();
    double p0 = 0.0, p1 = 0.0;
    bool has_parent = false;
    for (int p : gp[g]) {
      has_parent = true;
      p0 = std::max(p0, up0[p]);
      p1 = std::max(p1, up1[p]);
    }
    up0[g] = w[g] + p0;
    up1[g] = std::max(charged[g] + p0, has_parent ? w[g] + p1 : 0.0);
    best = std::max(best, up1[g]);
    for (int c : gc[g])
      if (--indeg[c] == 0) q.push_back(c);
  }
  return best;
}

}  // namespace

double PartitionBound::best() const {
  return std::max({cp_len, t_work, mod_cp});
}

double cp_len(const JobDag& dag) {
  std::set<int> all;
  for (int s = 0; s < static_cast<int>(dag.stages.size()); ++s) all.insert(s);
  return cp_len_part(dag, all);
}

double t_work(const JobDag& dag, const ResourceVector& total_capacity) {
  std::set<int> all;
  for (int s = 0; s < static_cast<int>(dag.stages.size()); ++s) all.insert(s);
  return t_work_part(dag, all, total_capacity);
}

double mod_cp(const JobDag& dag, const ResourceVector& total_capacity) {
  std::set<int> all;
  for (int s = 0; s < static_cast<int>(dag.stages.size()); ++s) all.insert(s);
  return mod_cp_part(dag, all, total_capacity);
}

BoundReport new_lb(const JobDag& dag, const ResourceVector& total_capacity) {
  BoundReport report;
  report.cp_len = cp_len(dag);
  report.t_work = t_work(dag, total_capacity);
  report.mod_cp = mod_cp(dag, total_capacity);
  double sum = 0.0;
  for (const std::vector<int>& part : cut_dags(dag)) {
    PartitionBound pb;
    pb.stages = part;
    std::set<int> ps(part.begin(), part.end());
    pb.cp_len = cp_len_part(dag, ps);
    pb.t_work = t_work_part(dag, ps, total_capacity);
    pb.mod_cp = mod_cp_part(dag, ps, total_capacity);
    sum += pb.best();
    report.partitions.push_back(std::move(pb));
  }
  report.new_lb = sum;
  return report;
}

double gap(double runtime, double measure) { return 1.0 - measure / runtime; }

}  // namespace dagsched
