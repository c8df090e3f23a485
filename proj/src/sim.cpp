#include "dagsched/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

#include "dagsched/baselines.hpp"
#include "dagsched/constructor.hpp"
#include "dagsched/rng.hpp"

namespace dagsched {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Scheduler scheduler_from_name(const std::string& name) {
  if (name == "graphene") return Scheduler::Graphene;
  if (name == "cp") return Scheduler::Cp;
  if (name == "cp-backfill") return Scheduler::CpBackfill;
  if (name == "tetris") return Scheduler::Tetris;
  if (name == "tetris-cpumem") return Scheduler::TetrisCpuMem;
  if (name == "bfs") return Scheduler::Bfs;
  if (name == "random") return Scheduler::Random;
  if (name == "cg") return Scheduler::Cg;
  if (name == "strippart") return Scheduler::StripPart;
  throw std::invalid_argument("unknown scheduler '" + name + "'");
}

std::string scheduler_name(Scheduler s) {
  switch (s) {
    case Scheduler::Graphene: return "graphene";
    case Scheduler::Cp: return "cp";
    case Scheduler::CpBackfill: return "cp-backfill";
    case Scheduler::Tetris: return "tetris";
    case Scheduler::TetrisCpuMem: return "tetris-cpumem";
    case Scheduler::Bfs: return "bfs";
    case Scheduler::Random: return "random";
    case Scheduler::Cg: return "cg";
    case Scheduler::StripPart: return "strippart";
  }
  return "?";
}

std::vector<std::string> scheduler_names() {
  return {"graphene", "cp", "cp-backfill", "tetris", "tetris-cpumem",
          "bfs", "random", "cg", "strippart"};
}

double jain_index(const std::vector<double>& allocations) {
  double sum = 0.0, sum_sq = 0.0;
  for (double x : allocations) {
    sum += x;
    sum_sq += x * x;
  }
  if (sum_sq <= 0.0) return 1.0;
  double n = static_cast<double>(allocations.size());
  return sum * sum / (n * sum_sq);
}

namespace {

std::vector<bool> default_fungible(std::size_t dims) {
  std::vector<bool> f(dims, true);
  if (dims > 0) f[0] = false;  // cores
  if (dims > 1) f[1] = false;  // memory
  return f;
}

double rate_under_load(const ResourceVector& demand, const ResourceVector& load,
                       const ResourceVector& cap,
                       const std::vector<bool>& fungible) {
  double rate = 1.0;
  for (std::size_t d = 0; d < demand.dims(); ++d)
    if (fungible[d] && demand[d] > kCapacityTol && load[d] > cap[d] + kCapacityTol)
      rate = std::min(rate, cap[d] / load[d]);
  return rate;
}

}  // namespace

double overbook_score(const ResourceVector& demand, double duration,
                      int machine,
                      const std::vector<std::vector<WhatIfTask>>& running,
                      const ClusterSpec& cluster,
                      const std::vector<bool>& fungible) {
  const ResourceVector& cap = cluster.capacity;
  ResourceVector used(cap.dims(), 0.0);
  for (const WhatIfTask& t : running[static_cast<std::size_t>(machine)])
    used += t.demand;
  for (std::size_t d = 0; d < cap.dims(); ++d)
    if (!fungible[d] && used[d] + demand[d] > cap[d] + kCapacityTol) return 0.0;

  ResourceVector load_new = used + demand;
  double cost = 0.0;
  for (const WhatIfTask& t : running[static_cast<std::size_t>(machine)]) {
    double before = t.remaining / rate_under_load(t.demand, used, cap, fungible);
    double after = t.remaining / rate_under_load(t.demand, load_new, cap, fungible);
    cost += std::max(0.0, after - before);
  }
  double after_self = duration / rate_under_load(demand, load_new, cap, fungible);

  // Earliest predicted time the task fits somewhere without overbooking,
  // assuming currently running tasks complete on schedule.
  double next_opp = kInf;
  for (std::size_t m = 0; m < running.size(); ++m) {
    ResourceVector mused(cap.dims(), 0.0);
    std::vector<std::pair<double, const WhatIfTask*>> by_end;
    for (const WhatIfTask& t : running[m]) mused += t.demand;
    for (const WhatIfTask& t : running[m])
      by_end.emplace_back(t.remaining / rate_under_load(t.demand, mused, cap, fungible), &t);
    std::sort(by_end.begin(), by_end.end());
    double when = 0.0;
    bool fits = (mused + demand).fits_within(cap);
    for (std::size_t i = 0; i < by_end.size() && !fits; ++i) {
      mused -= by_end[i].second->demand;
      when = by_end[i].first;
      fits = (mused + demand).fits_within(cap);
    }
    if (fits) next_opp = std::min(next_opp, when);
  }
  if (next_opp == kInf) return 0.0;

  double benefit = next_opp + duration - after_self;
  double score = benefit - cost;
  return score > kCapacityTol ? score : 0.0;
}

namespace {

struct RunningTask {
  int job = -1, task = -1;
  ResourceVector demand;
  double remaining = 0.0;
  double last_update = 0.0;
  double rate = 1.0;
  std::uint64_t gen = 0;
};

struct Machine {
  ResourceVector used;
  std::vector<RunningTask> running;
};

struct Event {
  double time = 0.0;
  std::uint64_t seq = 0;
  int type = 0;  // 0 arrival, 1 completion
  int job = -1, task = -1, machine = -1;
  std::uint64_t gen = 0;
};

struct EventLater {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

struct JobState {
  const JobDag* dag = nullptr;
  bool arrived = false;
  int tasks_left = 0;
  double completion = -1.0;
  std::vector<char> state;     // 0 pending, 1 running, 2 done
  std::vector<int> gate;       // parent completions still required
  std::vector<double> pri;     // priority score per task
  std::vector<double> cp;      // duration-weighted path to a leaf, incl self
  std::vector<int> level;      // hops from roots
  std::vector<int> cg_pos;     // position in the Coffman-Graham list
  std::vector<int> level_left; // unfinished tasks per level (strip gating)
  int current_level = 0;
};

struct Allocation {
  double time;
  std::string group;
  double amount;
};

class Simulation {
 public:
  Simulation(const std::vector<JobDag>& workload, const ClusterSpec& cluster,
             Scheduler scheduler, std::uint64_t seed, const SimConfig& cfg)
      : workload_(workload),
        cluster_(cluster),
        scheduler_(scheduler),
        cfg_(cfg),
        rng_(seed),
        seed_(seed) {
    fungible_ = cfg.fungible.empty() ? default_fungible(cluster.capacity.dims())
                                     : cfg.fungible;
    if (fungible_.size() != cluster.capacity.dims())
      throw std::invalid_argument("fungible mask dimensionality mismatch");
    machines_.assign(static_cast<std::size_t>(cluster.machine_count),
                     Machine{ResourceVector(cluster.capacity.dims(), 0.0), {}});
    jobs_.resize(workload.size());
    for (std::size_t j = 0; j < workload.size(); ++j)
      push_event({workload[j].arrival, next_seq_++, 0, static_cast<int>(j)});
  }

  RunMetrics run() {
    while (!events_.empty()) {
      Event e = events_.top();
      events_.pop();
      if (e.time > cfg_.max_time)
        throw std::runtime_error("simulation exceeded the time limit");
      now_ = std::max(now_, e.time);
      if (e.type == 0) {
        handle_arrival(e.job);
      } else {
        if (!handle_completion(e)) continue;  // stale event
      }
      match_all();
    }
    return collect();
  }

 private:
  // --- event plumbing -----------------------------------------------------

  void push_event(Event e) {
    e.seq = next_seq_++;
    events_.push(e);
  }

  void handle_arrival(int j) {
    JobState& js = jobs_[static_cast<std::size_t>(j)];
    const JobDag& dag = workload_[static_cast<std::size_t>(j)];
    js.dag = &dag;
    js.arrived = true;
    int n = static_cast<int>(dag.tasks.size());
    js.tasks_left = n;
    js.state.assign(static_cast<std::size_t>(n), 0);
    js.gate.resize(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
      int parents = static_cast<int>(dag.parents[static_cast<std::size_t>(t)].size());
      js.gate[static_cast<std::size_t>(t)] =
          static_cast<int>(std::ceil(cfg_.threshold * parents - kCapacityTol));
    }
    js.pri.assign(static_cast<std::size_t>(n), 1.0);
    if (scheduler_ == Scheduler::Graphene) {
      BuildOptions opt;
      opt.delta = cfg_.construction_delta;
      PreferredSchedule ps = build_schedule(dag, cluster_, opt);
      for (const auto& [task, score] : ps.pri_score)
        js.pri[static_cast<std::size_t>(task)] = score;
    }
    js.cp.assign(static_cast<std::size_t>(n), 0.0);
    compute_cp(js, dag);
    js.level = level_of_tasks(dag);
    js.cg_pos.assign(static_cast<std::size_t>(n), 0);
    if (scheduler_ == Scheduler::Cg) {
      std::vector<int> order = coffman_graham_order(dag);
      for (std::size_t i = 0; i < order.size(); ++i)
        js.cg_pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    }
    int max_level = 0;
    for (int l : js.level) max_level = std::max(max_level, l);
    js.level_left.assign(static_cast<std::size_t>(max_level + 1), 0);
    for (int l : js.level) ++js.level_left[static_cast<std::size_t>(l)];
    js.current_level = 0;
    groups_.insert(dag.group);
    if (!deficit_.count(dag.group)) deficit_[dag.group] = 0.0;
    active_jobs_.insert(j);
    ++active_group_count_[dag.group];
  }

  static void compute_cp(JobState& js, const JobDag& dag) {
    int n = static_cast<int>(dag.tasks.size());
    std::vector<int> pending(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    for (int v = 0; v < n; ++v) {
      pending[static_cast<std::size_t>(v)] =
          static_cast<int>(dag.children[static_cast<std::size_t>(v)].size());
      if (pending[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
    }
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      double best = 0.0;
      for (int c : dag.children[static_cast<std::size_t>(v)])
        best = std::max(best, js.cp[static_cast<std::size_t>(c)]);
      js.cp[static_cast<std::size_t>(v)] =
          dag.tasks[static_cast<std::size_t>(v)].duration + best;
      for (int p : dag.parents[static_cast<std::size_t>(v)])
        if (--pending[static_cast<std::size_t>(p)] == 0) stack.push_back(p);
    }
  }

  bool handle_completion(const Event& e) {
    Machine& m = machines_[static_cast<std::size_t>(e.machine)];
    auto it = std::find_if(m.running.begin(), m.running.end(), [&](const RunningTask& r) {
      return r.job == e.job && r.task == e.task && r.gen == e.gen;
    });
    if (it == m.running.end()) return false;
    advance_machine(e.machine);
    m.used -= it->demand;
    m.used = m.used.clamped_nonneg();
    m.running.erase(it);
    rekey_machine(e.machine);

    JobState& js = jobs_[static_cast<std::size_t>(e.job)];
    const JobDag& dag = *js.dag;
    js.state[static_cast<std::size_t>(e.task)] = 2;
    --js.tasks_left;
    --js.level_left[static_cast<std::size_t>(
        js.level[static_cast<std::size_t>(e.task)])];
    while (js.current_level < static_cast<int>(js.level_left.size()) &&
           js.level_left[static_cast<std::size_t>(js.current_level)] == 0)
      ++js.current_level;
    for (int c : dag.children[static_cast<std::size_t>(e.task)])
      --js.gate[static_cast<std::size_t>(c)];
    if (js.tasks_left == 0) {
      js.completion = now_;
      active_jobs_.erase(e.job);
      if (--active_group_count_[dag.group] == 0)
        active_group_count_.erase(dag.group);
    }
    return true;
  }

  // --- machine load model -------------------------------------------------

  void advance_machine(int mi) {
    Machine& m = machines_[static_cast<std::size_t>(mi)];
    for (RunningTask& r : m.running) {
      r.remaining = std::max(0.0, r.remaining - (now_ - r.last_update) * r.rate);
      r.last_update = now_;
    }
  }

  void advance_all() {
    for (int m = 0; m < cluster_.machine_count; ++m) advance_machine(m);
  }

  void rekey_machine(int mi) {
    Machine& m = machines_[static_cast<std::size_t>(mi)];
    for (RunningTask& r : m.running) {
      r.rate = rate_under_load(r.demand, m.used, cluster_.capacity, fungible_);
      r.gen = ++gen_counter_;
      push_event({now_ + r.remaining / r.rate, 0, 1, r.job, r.task, mi, r.gen});
    }
  }

  ResourceVector avail(int mi) const {
    return (cluster_.capacity - machines_[static_cast<std::size_t>(mi)].used)
        .clamped_nonneg();
  }

  void launch(int j, int t, int mi) {
    advance_machine(mi);
    JobState& js = jobs_[static_cast<std::size_t>(j)];
    const TaskSpec& task = js.dag->tasks[static_cast<std::size_t>(t)];
    js.state[static_cast<std::size_t>(t)] = 1;
    Machine& m = machines_[static_cast<std::size_t>(mi)];
    m.used += task.demand;
    m.running.push_back({j, t, task.demand, task.duration, now_, 1.0, 0});
    rekey_machine(mi);
    allocations_.push_back({now_, js.dag->group, task.duration * task.demand.l1()});
  }

  // --- runnable bookkeeping ------------------------------------------------

  bool runnable(int j, int t) const {
    const JobState& js = jobs_[static_cast<std::size_t>(j)];
    if (!js.arrived || js.state[static_cast<std::size_t>(t)] != 0) return false;
    if (js.gate[static_cast<std::size_t>(t)] > 0) return false;
    if (scheduler_ == Scheduler::StripPart &&
        js.level[static_cast<std::size_t>(t)] != js.current_level)
      return false;
    return true;
  }

  std::vector<std::pair<int, int>> runnable_tasks() const {
    std::vector<std::pair<int, int>> out;
    for (int j : active_jobs_) {
      const JobState& js = jobs_[static_cast<std::size_t>(j)];
      for (std::size_t t = 0; t < js.state.size(); ++t)
        if (runnable(j, static_cast<int>(t)))
          out.emplace_back(j, static_cast<int>(t));
    }
    return out;
  }

  double srpt(int j) const {
    const JobState& js = jobs_[static_cast<std::size_t>(j)];
    double total = 0.0;
    for (std::size_t t = 0; t < js.state.size(); ++t)
      if (js.state[t] == 0) {
        const TaskSpec& task = js.dag->tasks[t];
        total += task.duration * task.demand.l1();
      }
    return total;
  }

  int preferred_machine(int j, int t) const {
    return static_cast<int>((static_cast<std::uint64_t>(j) * 1000003u +
                             static_cast<std::uint64_t>(t) * 7919u) %
                            static_cast<std::uint64_t>(cluster_.machine_count));
  }

  bool fits(const ResourceVector& demand, const ResourceVector& av) const {
    return demand.fits_within(av);
  }

  bool fits_cpumem(const ResourceVector& demand, const ResourceVector& av) const {
    for (std::size_t d = 0; d < std::min<std::size_t>(2, demand.dims()); ++d)
      if (demand[d] > av[d] + kCapacityTol) return false;
    return true;
  }

  // --- matching -----------------------------------------------------------

  void match_all() {
    advance_all();
    switch (scheduler_) {
      case Scheduler::Graphene:
        for (int m = 0; m < cluster_.machine_count; ++m) match_graphene(m);
        break;
      case Scheduler::Cp:
        match_cp(false);
        break;
      case Scheduler::CpBackfill:
        match_cp(true);
        break;
      case Scheduler::Tetris:
      case Scheduler::TetrisCpuMem:
      case Scheduler::StripPart:
        for (int m = 0; m < cluster_.machine_count; ++m) match_tetris(m);
        break;
      case Scheduler::Bfs:
        match_in_order([&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
          const JobState& ja = jobs_[static_cast<std::size_t>(a.first)];
          const JobState& jb = jobs_[static_cast<std::size_t>(b.first)];
          int la = ja.level[static_cast<std::size_t>(a.second)];
          int lb = jb.level[static_cast<std::size_t>(b.second)];
          if (la != lb) return la < lb;
          return a < b;
        });
        break;
      case Scheduler::Cg:
        match_in_order([&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
          int ra = jobs_[static_cast<std::size_t>(a.first)].cg_pos[static_cast<std::size_t>(a.second)];
          int rb = jobs_[static_cast<std::size_t>(b.first)].cg_pos[static_cast<std::size_t>(b.second)];
          if (ra != rb) return ra < rb;
          return a < b;
        });
        break;
      case Scheduler::Random:
        match_random();
        break;
    }
  }

  void match_graphene(int mi) {
    while (true) {
      ResourceVector av = avail(mi);
      // Deficit gate: when some group with pending work has fallen behind by
      // at least kappa * (machine count), only its tasks may be picked.
      std::string top_group;
      double top_deficit = 0.0;
      for (const auto& [g, count] : active_group_count_) {
        auto it = deficit_.find(g);
        double d = it == deficit_.end() ? 0.0 : it->second;
        if (top_group.empty() || d > top_deficit + 1e-12) {
          top_group = g;
          top_deficit = d;
        }
      }
      std::string gated_group;
      if (!top_group.empty() &&
          top_deficit >= cfg_.kappa * cluster_.machine_count - 1e-12)
        gated_group = top_group;

      int best_j = -1, best_t = -1, best_tier = -1;
      double best_value = 0.0, best_pscore = 0.0;
      bool best_overbooked = false;
      for (const auto& [j, t] : runnable_tasks()) {
        const JobState& js = jobs_[static_cast<std::size_t>(j)];
        if (!gated_group.empty() && js.dag->group != gated_group) continue;
        const TaskSpec& task = js.dag->tasks[static_cast<std::size_t>(t)];
        int tier;
        double value, pscore = 0.0;
        if (fits(task.demand, av)) {
          double rpen = task.locality_sensitive && preferred_machine(j, t) != mi
                            ? cfg_.remote_penalty
                            : 1.0;
          pscore = av.dot(task.demand) * rpen;
          tier = 1;
          value = js.pri[static_cast<std::size_t>(t)] * pscore - eta_ * srpt(j);
        } else if (cfg_.overbook &&
                   hard_dims_fit(task.demand,
                                 machines_[static_cast<std::size_t>(mi)].used)) {
          double os = overbook_score_now(task.demand, task.duration, mi);
          if (os <= 0.0) continue;
          tier = 0;
          value = js.pri[static_cast<std::size_t>(t)] * os - eta_ * srpt(j);
        } else {
          continue;
        }
        bool better = tier > best_tier ||
                      (tier == best_tier && value > best_value + 1e-12);
        if (better) {
          best_j = j;
          best_t = t;
          best_tier = tier;
          best_value = value;
          best_pscore = pscore;
          best_overbooked = tier == 0;
        }
      }
      if (best_j < 0) break;

      if (cfg_.launch_hook)
        cfg_.launch_hook({now_, best_j, best_t,
                          jobs_[static_cast<std::size_t>(best_j)].dag->group,
                          top_deficit, top_group, best_overbooked, mi});

      launch(best_j, best_t, mi);
      update_deficit(jobs_[static_cast<std::size_t>(best_j)].dag->group,
                     jobs_[static_cast<std::size_t>(best_j)]
                         .dag->tasks[static_cast<std::size_t>(best_t)]
                         .demand);
      recent_pscores_.push_back(best_pscore);
      maybe_update_eta();
    }
  }

  bool hard_dims_fit(const ResourceVector& demand,
                     const ResourceVector& used) const {
    for (std::size_t d = 0; d < demand.dims(); ++d)
      if (!fungible_[d] &&
          used[d] + demand[d] > cluster_.capacity[d] + kCapacityTol)
        return false;
    return true;
  }

  double overbook_score_now(const ResourceVector& demand, double duration,
                            int mi) const {
    std::vector<std::vector<WhatIfTask>> running(machines_.size());
    for (std::size_t m = 0; m < machines_.size(); ++m)
      for (const RunningTask& r : machines_[m].running)
        running[m].push_back({r.demand, r.remaining});
    return overbook_score(demand, duration, mi, running, cluster_, fungible_);
  }

  void update_deficit(const std::string& group, const ResourceVector& demand) {
    if (active_group_count_.empty()) return;
    double share = 1.0 / static_cast<double>(active_group_count_.size());
    double f = cfg_.fairness == FairnessFlavor::Slot ? 1.0 : demand.max_entry();
    for (const auto& [g, count] : active_group_count_)
      deficit_[g] += g == group ? f * (share - 1.0) : f * share;
  }

  void maybe_update_eta() {
    ++launch_count_;
    if (launch_count_ % cfg_.eta_window != 0) return;
    double ps = 0.0;
    for (double v : recent_pscores_) ps += v;
    ps /= static_cast<double>(recent_pscores_.size());
    recent_pscores_.clear();
    double sr = 0.0;
    int count = 0;
    for (int j : active_jobs_) {
      double s = srpt(j);
      if (s <= 0.0) continue;  // all tasks already running
      sr += s;
      ++count;
    }
    eta_ = (count == 0 || sr <= 0.0)
               ? 0.0
               : cfg_.eta_m * ps / (sr / static_cast<double>(count));
  }

  void match_cp(bool backfill) {
    while (true) {
      auto tasks = runnable_tasks();
      std::sort(tasks.begin(), tasks.end(), [&](const auto& a, const auto& b) {
        double ca = jobs_[static_cast<std::size_t>(a.first)].cp[static_cast<std::size_t>(a.second)];
        double cb = jobs_[static_cast<std::size_t>(b.first)].cp[static_cast<std::size_t>(b.second)];
        if (ca != cb) return ca > cb;
        return a < b;
      });
      bool launched = false;
      for (const auto& [j, t] : tasks) {
        const TaskSpec& task =
            jobs_[static_cast<std::size_t>(j)].dag->tasks[static_cast<std::size_t>(t)];
        int where = -1;
        for (int m = 0; m < cluster_.machine_count && where < 0; ++m)
          if (fits(task.demand, avail(m))) where = m;
        if (where >= 0) {
          launch(j, t, where);
          launched = true;
          break;  // re-rank from scratch
        }
        if (!backfill) return;  // head of line blocks
      }
      if (!launched) break;
    }
  }

  void match_tetris(int mi) {
    bool cpumem_only = scheduler_ == Scheduler::TetrisCpuMem;
    while (true) {
      ResourceVector av = avail(mi);
      int best_j = -1, best_t = -1;
      double best_dot = -1.0;
      for (const auto& [j, t] : runnable_tasks()) {
        const TaskSpec& task =
            jobs_[static_cast<std::size_t>(j)].dag->tasks[static_cast<std::size_t>(t)];
        bool ok = cpumem_only ? fits_cpumem(task.demand, av) : fits(task.demand, av);
        if (!ok) continue;
        double dot = task.demand.dot(av);
        if (dot > best_dot + 1e-12) {
          best_dot = dot;
          best_j = j;
          best_t = t;
        }
      }
      if (best_j < 0) break;
      launch(best_j, best_t, mi);
    }
  }

  template <typename Less>
  void match_in_order(Less less) {
    while (true) {
      auto tasks = runnable_tasks();
      std::sort(tasks.begin(), tasks.end(), less);
      bool launched = false;
      for (const auto& [j, t] : tasks) {
        const TaskSpec& task =
            jobs_[static_cast<std::size_t>(j)].dag->tasks[static_cast<std::size_t>(t)];
        for (int m = 0; m < cluster_.machine_count; ++m)
          if (fits(task.demand, avail(m))) {
            launch(j, t, m);
            launched = true;
            break;
          }
        if (launched) break;
      }
      if (!launched) break;
    }
  }

  void match_random() {
    while (true) {
      std::vector<std::pair<std::pair<int, int>, int>> options;
      for (const auto& jt : runnable_tasks()) {
        const TaskSpec& task = jobs_[static_cast<std::size_t>(jt.first)]
                                   .dag->tasks[static_cast<std::size_t>(jt.second)];
        for (int m = 0; m < cluster_.machine_count; ++m)
          if (fits(task.demand, avail(m))) {
            options.push_back({jt, m});
            break;
          }
      }
      if (options.empty()) break;
      std::size_t pick = static_cast<std::size_t>(
          rng_.uniform_int(0, static_cast<std::int64_t>(options.size()) - 1));
      launch(options[pick].first.first, options[pick].first.second,
             options[pick].second);
    }
  }

  // --- metrics ------------------------------------------------------------

  RunMetrics collect() const {
    RunMetrics rm;
    rm.scheduler = scheduler_name(scheduler_);
    rm.seed = seed_;
    for (std::size_t j = 0; j < jobs_.size(); ++j) {
      const JobState& js = jobs_[j];
      if (!js.arrived || js.tasks_left != 0)
        throw std::runtime_error("job '" + workload_[j].id +
                                 "' did not finish (starved workload?)");
      JobMetrics jm;
      jm.id = workload_[j].id;
      jm.group = workload_[j].group;
      jm.arrival = workload_[j].arrival;
      jm.completion = js.completion;
      jm.jct = js.completion - workload_[j].arrival;
      rm.makespan = std::max(rm.makespan, js.completion);
      rm.jobs.push_back(std::move(jm));
    }
    std::vector<std::string> group_list(groups_.begin(), groups_.end());
    for (double window : cfg_.jain_windows) {
      int nwin = std::max(1, static_cast<int>(std::ceil(rm.makespan / window)));
      double total = 0.0;
      for (int w = 0; w < nwin; ++w) {
        double lo = w * window, hi = lo + window;
        std::vector<double> alloc(group_list.size(), 0.0);
        for (const Allocation& a : allocations_)
          if (a.time >= lo && a.time < hi)
            for (std::size_t g = 0; g < group_list.size(); ++g)
              if (group_list[g] == a.group) alloc[g] += a.amount;
        total += jain_index(alloc);
      }
      rm.jain[window] = total / nwin;
    }
    return rm;
  }

  const std::vector<JobDag>& workload_;
  ClusterSpec cluster_;
  Scheduler scheduler_;
  SimConfig cfg_;
  Rng rng_;
  std::uint64_t seed_;
  std::vector<bool> fungible_;
  std::vector<Machine> machines_;
  std::vector<JobState> jobs_;
  std::priority_queue<Event, std::vector<Event>, EventLater> events_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t gen_counter_ = 0;
  double now_ = 0.0;
  double eta_ = 0.0;
  int launch_count_ = 0;
  std::vector<double> recent_pscores_;
  std::map<std::string, double> deficit_;
  std::set<std::string> groups_;
  std::set<int> active_jobs_;  // arrived with unfinished tasks
  std::map<std::string, int> active_group_count_;
  std::vector<Allocation> allocations_;
};

}  // namespace

RunMetrics simulate(const std::vector<JobDag>& workload,
                    const ClusterSpec& cluster, Scheduler scheduler,
                    std::uint64_t seed, const SimConfig& config) {
  Simulation sim(workload, cluster, scheduler, seed, config);
  return sim.run();
}

}  // namespace dagsched
