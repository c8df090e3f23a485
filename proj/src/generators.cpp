#include "dagsched/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dagsched/rng.hpp"

namespace dagsched {

namespace {

ResourceVector one_hot(std::size_t dims, std::size_t dim, double value) {
  ResourceVector v(dims, 0.0);
  v[dim] = value;
  return v;
}

}  // namespace

JobDag gen_cp_adversarial(int n, double eps, std::size_t dims) {
  if (n < 2) throw std::invalid_argument("gen_cp_adversarial: n must be >= 2");
  if (eps <= 0.0 || eps >= 1.0 / n)
    throw std::invalid_argument("gen_cp_adversarial: need 0 < eps < 1/n");
  if (dims < 2) throw std::invalid_argument("gen_cp_adversarial: dims must be >= 2");

  JobDag dag;
  dag.id = "cp-adversarial-n" + std::to_string(n);

  std::vector<int> longs, wides;
  for (int i = 1; i <= n; ++i)
    longs.push_back(dag.add_stage("long" + std::to_string(i), 1, 1.0,
                                  one_hot(dims, 0, 1.0 / n)));
  for (int i = 1; i < n; ++i)
    wides.push_back(dag.add_stage("wide" + std::to_string(i), 1, eps,
                                  one_hot(dims, 0, 1.0 - eps)));

  // wide_i gates long_{i+1}, so a head-of-line CP scheduler alternates
  // between a long task and a non-co-runnable wide task.
  for (int i = 1; i < n; ++i)
    dag.add_edge(wides[i - 1], longs[i], EdgePattern::OneToOne);

  // Padding chain below long_i of n-i tasks, each 1.5*eps long, with tiny
  // demand on another resource. This makes CP(long_i) exceed CP(wide_i) by
  // 0.5*eps and CP(wide_i) exceed CP(long_{i+1}) by eps.
  for (int i = 1; i < n; ++i) {
    int prev = longs[i - 1];
    for (int j = 1; j <= n - i; ++j) {
      int pad = dag.add_stage(
          "pad" + std::to_string(i) + "_" + std::to_string(j), 1, 1.5 * eps,
          one_hot(dims, 1, 0.001));
      dag.add_edge(prev, pad, EdgePattern::OneToOne);
      prev = pad;
    }
  }

  dag.finalize();
  return dag;
}

JobDag gen_packer_adversarial(int d, double eps) {
  if (d < 2) throw std::invalid_argument("gen_packer_adversarial: d must be >= 2");
  int m = 2 * d - 2;  // number of long tasks
  double slack = 0.9 / m;
  if (slack <= eps)
    throw std::invalid_argument("gen_packer_adversarial: d too large for eps");

  JobDag dag;
  dag.id = "packer-adversarial-d" + std::to_string(d);
  std::size_t dims = static_cast<std::size_t>(d);

  // Long task j (1-based) belongs to group ceil(j/2); groups use dimensions
  // 0..d-2 and dimension d-1 is slack shared by all longs. The slack share
  // keeps every long's dot product above every wide's at full availability.
  auto group_dim = [](int j) { return static_cast<std::size_t>((j - 1) / 2); };

  std::vector<int> longs;
  for (int j = 1; j <= m; ++j) {
    ResourceVector demand(dims, 0.0);
    demand[group_dim(j)] = 0.5;
    demand[dims - 1] = slack;
    longs.push_back(dag.add_stage("long" + std::to_string(j), 1, 1.0, demand));
  }
  std::vector<int> wides;
  for (int i = 1; i < m; ++i)
    wides.push_back(dag.add_stage("wide" + std::to_string(i), 1, eps,
                                  one_hot(dims, group_dim(i), 0.5 + eps)));

  // Wide chain: wide_i conflicts with the long of its own group, and gates
  // both the next wide and the next long.
  for (int i = 1; i < m; ++i) {
    dag.add_edge(wides[i - 1], longs[i], EdgePattern::OneToOne);
    if (i + 1 < m) dag.add_edge(wides[i - 1], wides[i], EdgePattern::OneToOne);
  }

  dag.finalize();
  return dag;
}

JobDag gen_structure_blind_adversarial(int d, int k) {
  if (d < 2 || k < 2)
    throw std::invalid_argument("gen_structure_blind_adversarial: need d,k >= 2");

  JobDag dag;
  dag.id = "blind-adversarial-d" + std::to_string(d) + "k" + std::to_string(k);
  std::size_t dims = static_cast<std::size_t>(d);

  int prev_red = -1;
  for (int i = 0; i < d; ++i) {
    ResourceVector demand = one_hot(dims, static_cast<std::size_t>(i), 1.0);
    int red = dag.add_stage("red" + std::to_string(i + 1), 1, 1.0, demand);
    int body = dag.add_stage("body" + std::to_string(i + 1), k - 1, 1.0, demand);
    if (prev_red >= 0) {
      dag.add_edge(prev_red, red, EdgePattern::AllToAll);
      dag.add_edge(prev_red, body, EdgePattern::AllToAll);
    }
    prev_red = red;
  }

  dag.finalize();
  return dag;
}

JobDag gen_random(const RandomDagParams& p, std::uint64_t seed) {
  if (p.min_stages < 1 || p.max_stages < p.min_stages ||
      p.min_tasks_per_stage < 1 || p.max_tasks_per_stage < p.min_tasks_per_stage ||
      p.min_fanin < 1 || p.max_fanin < p.min_fanin || p.max_fanout < 1 ||
      p.mean_duration <= 0 || p.mean_demand <= 0 || p.dims < 1)
    throw std::invalid_argument("gen_random: malformed parameter ranges");

  Rng rng(seed);
  JobDag dag;
  dag.id = "random-" + std::to_string(seed);

  int ns = static_cast<int>(rng.uniform_int(p.min_stages, p.max_stages));
  for (int s = 0; s < ns; ++s) {
    int nt = static_cast<int>(
        rng.uniform_int(p.min_tasks_per_stage, p.max_tasks_per_stage));
    double dur =
        std::max(1e-3, rng.lognormal_mean_cov(p.mean_duration, p.duration_cov));
    ResourceVector demand(p.dims, 0.0);
    for (std::size_t i = 0; i < p.dims; ++i)
      demand[i] = std::clamp(
          rng.lognormal_mean_cov(p.mean_demand, p.demand_cov), 0.001, 1.0);
    bool local = rng.uniform() < p.locality_prob;
    dag.add_stage("s" + std::to_string(s), nt, dur, demand, local);
  }

  std::vector<int> fanout(ns, 0);
  for (int s = 1; s < ns; ++s) {
    std::vector<int> avail;
    for (int t = 0; t < s; ++t)
      if (fanout[t] < p.max_fanout) avail.push_back(t);
    if (avail.empty()) avail.push_back(s - 1);
    int want = static_cast<int>(
        rng.uniform_int(p.min_fanin, std::min<std::int64_t>(p.max_fanin, s)));
    want = std::min<int>(want, static_cast<int>(avail.size()));
    for (int j = 0; j < want; ++j) {
      int pick = static_cast<int>(
          rng.uniform_int(0, static_cast<std::int64_t>(avail.size()) - 1));
      int from = avail[pick];
      avail.erase(avail.begin() + pick);
      ++fanout[from];
      bool same_size = dag.stages[from].tasks.size() == dag.stages[s].tasks.size();
      EdgePattern pat = (same_size && rng.uniform() < 0.3)
                            ? EdgePattern::OneToOne
                            : EdgePattern::AllToAll;
      dag.add_edge(from, s, pat);
    }
  }

  dag.finalize();
  return dag;
}

JobDag contention_example(double eps) {
  JobDag dag;
  dag.id = "contention-example";

  // Three long tasks that can all co-run, and two short tasks that conflict
  // (via dimension 3) with every task they must not overlap. Entry sums give
  // the packing order t0=t2 > t1 > t3 > t4 at full availability, and the
  // critical-path order is t0, t3, t4, t1, t2 (t0/t3 tie broken by id).
  int t0 = dag.add_stage("t0", 1, 1.0,
                         ResourceVector{0.30, 0.20, 0.15, 0.25});
  int t1 = dag.add_stage("t1", 1, eps,
                         ResourceVector{0.004, 0.003, 0.003, 0.84});
  int t2 = dag.add_stage("t2", 1, 1.0 - 3 * eps,
                         ResourceVector{0.20, 0.30, 0.15, 0.25});
  int t3 = dag.add_stage("t3", 1, eps,
                         ResourceVector{0.003, 0.003, 0.004, 0.79});
  int t4 = dag.add_stage("t4", 1, 1.0 - eps,
                         ResourceVector{0.004, 0.003, 0.003, 0.19});
  (void)t0;
  dag.add_edge(t1, t2, EdgePattern::OneToOne);
  dag.add_edge(t3, t4, EdgePattern::OneToOne);

  dag.finalize();
  return dag;
}

JobDag bounds_example() {
  JobDag dag;
  dag.id = "bounds-example";

  ResourceVector light{0.0, 0.01, 0.0, 0.0};
  int s1 = dag.add_stage("s1", 1, 1.0, light);
  int s2 = dag.add_stage("s2", 1, 1.0, light);
  int s3 = dag.add_stage("s3", 1, 1.0, light);
  int s4 = dag.add_stage("s4", 3, 1.0, ResourceVector{1.0, 0.0, 0.0, 0.0});
  int s5 = dag.add_stage("s5", 1, 1.0, light);
  int s6 = dag.add_stage("s6", 1, 1.0, light);
  int s7 = dag.add_stage("s7", 3, 1.0, ResourceVector{0.6, 0.0, 0.0, 0.0});
  int s8 = dag.add_stage("s8", 1, 1.0, light);

  dag.add_edge(s1, s3, EdgePattern::OneToOne);
  dag.add_edge(s2, s3, EdgePattern::OneToOne);
  dag.add_edge(s3, s6, EdgePattern::OneToOne);
  dag.add_edge(s4, s6, EdgePattern::AllToAll);
  dag.add_edge(s5, s6, EdgePattern::OneToOne);
  dag.add_edge(s6, s7, EdgePattern::AllToAll);
  dag.add_edge(s7, s8, EdgePattern::AllToAll);

  dag.finalize();
  return dag;
}

}  // namespace dagsched
