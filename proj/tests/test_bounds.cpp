#include "doctest.h"

#include "dagsched/bounds.hpp"
#include "dagsched/constructor.hpp"
#include "dagsched/generators.hpp"
#include "oracle.hpp"

using namespace dagsched;

namespace {
const ResourceVector kUnitTotal(4, 1.0);
}

TEST_CASE("cp_len follows the longest duration path") {
  JobDag dag;
  int a = dag.add_stage("a", 1, 2.0, ResourceVector(4, 0.1));
  int b = dag.add_stage("b", 1, 3.0, ResourceVector(4, 0.1));
  int c = dag.add_stage("c", 1, 1.0, ResourceVector(4, 0.1));
  dag.add_edge(a, b);
  dag.add_edge(a, c);
  dag.finalize();
  CHECK(cp_len(dag) == doctest::Approx(5.0));
}

TEST_CASE("t_work is the max over dimensions of normalized work") {
  JobDag dag;
  dag.add_stage("s", 3, 2.0, ResourceVector({0.5, 0.1, 0.0, 0.0}));
  dag.finalize();
  // dim 0: 3 * 2 * 0.5 = 3; dim 1: 0.6
  CHECK(t_work(dag, kUnitTotal) == doctest::Approx(3.0));
}

TEST_CASE("mod_cp charges a lone parallel stage with its full work") {
  JobDag dag;
  dag.add_stage("s", 3, 1.0, ResourceVector({0.6, 0, 0, 0}));
  dag.finalize();
  CHECK(mod_cp(dag, kUnitTotal) == doctest::Approx(1.8));
}

TEST_CASE("the reference instance reproduces 5 / 4.8 / 6.8") {
  JobDag dag = bounds_example();
  BoundReport rep = new_lb(dag, kUnitTotal);
  CHECK(rep.cp_len == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(rep.t_work == doctest::Approx(4.8).epsilon(1e-12));
  CHECK(std::abs(rep.new_lb - 6.8) <= 1e-9);
  // The partition bound must dominate its ingredients.
  CHECK(rep.new_lb >= rep.cp_len - 1e-9);
  CHECK(rep.new_lb >= rep.t_work - 1e-9);
}

TEST_CASE("gap is 1 - measure/runtime") {
  CHECK(gap(10.0, 8.0) == doctest::Approx(0.2));
  CHECK(gap(10.0, 10.0) == doctest::Approx(0.0));
  CHECK(gap(10.0, 12.0) == doctest::Approx(-0.2));
}

TEST_CASE("property: new_lb dominates cp_len and t_work on random jobs") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    JobDag dag = gen_random(RandomDagParams{}, seed);
    BoundReport rep = new_lb(dag, kUnitTotal);
    CHECK(rep.new_lb >= rep.cp_len - 1e-9);
    CHECK(rep.new_lb >= rep.t_work - 1e-9);
    CHECK(rep.new_lb >= rep.mod_cp - 1e-9);
  }
}

TEST_CASE("sandwich: new_lb <= optimal <= constructed length (small jobs)") {
  RandomDagParams small;
  small.min_stages = 2;
  small.max_stages = 4;
  small.min_tasks_per_stage = 1;
  small.max_tasks_per_stage = 2;
  ClusterSpec one(1, ResourceVector(4, 1.0));
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    JobDag dag = gen_random(small, seed);
    if (dag.tasks.size() > 8) continue;
    ++checked;
    double opt = testing::brute_force_opt(dag, one.capacity);
    BoundReport rep = new_lb(dag, one.total_capacity());
    PreferredSchedule sched = build_schedule(dag, one);
    CHECK(rep.new_lb <= opt + 1e-6);
    CHECK(opt <= sched.schedule_length + 1e-6);
  }
  CHECK(checked >= 30);
}
