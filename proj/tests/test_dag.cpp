#include <algorithm>
#include <set>

#include "doctest.h"

#include "dagsched/dag.hpp"
#include "dagsched/generators.hpp"
#include "dagsched/json_io.hpp"

using namespace dagsched;

namespace {

JobDag diamond() {
  // a -> {b, c} -> d, single tasks per stage.
  JobDag dag;
  ResourceVector dem(4, 0.1);
  int a = dag.add_stage("a", 1, 1.0, dem);
  int b = dag.add_stage("b", 1, 1.0, dem);
  int c = dag.add_stage("c", 1, 1.0, dem);
  int d = dag.add_stage("d", 1, 1.0, dem);
  dag.add_edge(a, b);
  dag.add_edge(a, c);
  dag.add_edge(b, d);
  dag.add_edge(c, d);
  dag.finalize();
  return dag;
}

}  // namespace

TEST_CASE("validate accepts well-formed jobs and reports problems") {
  ClusterSpec cluster(2, ResourceVector(4, 1.0));
  CHECK(validate(diamond(), cluster).empty());

  JobDag empty;
  CHECK(!validate(empty, cluster).empty());

  JobDag bad = diamond();
  bad.tasks[0].duration = -1.0;
  CHECK(!validate(bad, cluster).empty());

  JobDag big = diamond();
  big.tasks[1].demand = ResourceVector(4, 1.5);  // exceeds one machine
  CHECK(!validate(big, cluster).empty());

  JobDag late = diamond();
  late.arrival = -3.0;
  CHECK(!validate(late, cluster).empty());
}

TEST_CASE("one-to-one edges require matching task counts") {
  JobDag dag;
  ResourceVector dem(4, 0.1);
  int a = dag.add_stage("a", 2, 1.0, dem);
  int b = dag.add_stage("b", 3, 1.0, dem);
  dag.add_edge(a, b, EdgePattern::OneToOne);
  CHECK_THROWS(dag.finalize());
}

TEST_CASE("edge patterns expand to the expected task adjacency") {
  JobDag dag;
  ResourceVector dem(4, 0.1);
  int a = dag.add_stage("a", 2, 1.0, dem);
  int b = dag.add_stage("b", 2, 1.0, dem);
  int c = dag.add_stage("c", 2, 1.0, dem);
  dag.add_edge(a, b, EdgePattern::OneToOne);
  dag.add_edge(b, c, EdgePattern::AllToAll);
  dag.finalize();
  // one-to-one: task i of a feeds task i of b only
  CHECK(dag.children[0] == std::vector<int>{2});
  CHECK(dag.children[1] == std::vector<int>{3});
  // all-to-all: both b tasks feed both c tasks
  CHECK(dag.children[2] == std::vector<int>{4, 5});
  CHECK(dag.children[3] == std::vector<int>{4, 5});
}

TEST_CASE("closure adds exactly the tasks between the inputs") {
  JobDag dag = diamond();  // task ids a=0 b=1 c=2 d=3
  SUBCASE("endpoints pull in both middle branches") {
    CHECK(closure({0, 3}, dag) == std::vector<int>{0, 1, 2, 3});
  }
  SUBCASE("independent middle tasks add nothing") {
    CHECK(closure({1, 2}, dag) == std::vector<int>{1, 2});
  }
  SUBCASE("idempotent") {
    auto once = closure({0, 3}, dag);
    CHECK(closure(once, dag) == once);
  }
  SUBCASE("monotone in the input") {
    auto small = closure({1}, dag);
    auto large = closure({0, 1, 3}, dag);
    CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  }
}

TEST_CASE("relatives partitions every other stage") {
  JobDag dag = diamond();
  StageRelatives r = relatives(1, dag);  // stage b
  CHECK(r.parents == std::vector<int>{0});
  CHECK(r.children == std::vector<int>{3});
  CHECK(r.ancestors == std::vector<int>{0});
  CHECK(r.descendants == std::vector<int>{3});
  CHECK(r.unordered == std::vector<int>{2});
}

TEST_CASE("cut_dags splits a diamond at its articulation stages") {
  std::vector<std::vector<int>> parts = cut_dags(diamond());
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == std::vector<int>{0});
  CHECK(parts[1] == std::vector<int>{1, 2});
  CHECK(parts[2] == std::vector<int>{3});
}

TEST_CASE("cut_dags yields a totally ordered partition on random jobs") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    JobDag dag = gen_random(RandomDagParams{}, seed);
    auto parts = cut_dags(dag);
    std::vector<int> part_of(dag.stages.size(), -1);
    std::size_t total = 0;
    for (std::size_t p = 0; p < parts.size(); ++p)
      for (int s : parts[p]) {
        REQUIRE(part_of[static_cast<std::size_t>(s)] == -1);
        part_of[static_cast<std::size_t>(s)] = static_cast<int>(p);
        ++total;
      }
    CHECK(total == dag.stages.size());
    for (std::size_t s = 0; s < dag.stages.size(); ++s)
      for (const StageEdge& e : dag.stages[s].out)
        CHECK(part_of[s] <= part_of[static_cast<std::size_t>(e.to)]);
  }
}

TEST_CASE("random generator is deterministic and always valid") {
  ClusterSpec cluster(2, ResourceVector(4, 1.0));
  JobDag a = gen_random(RandomDagParams{}, 42);
  JobDag b = gen_random(RandomDagParams{}, 42);
  REQUIRE(a.tasks.size() == b.tasks.size());
  for (std::size_t i = 0; i < a.tasks.size(); ++i) {
    CHECK(a.tasks[i].duration == b.tasks[i].duration);  // bit-stable
    CHECK(a.tasks[i].demand == b.tasks[i].demand);
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    CHECK(validate(gen_random(RandomDagParams{}, seed), cluster).empty());
}

TEST_CASE("demand variance follows the coefficient-of-variation knob") {
  RandomDagParams tight;
  tight.mean_demand = 0.1;
  tight.demand_cov = 0.0;
  JobDag dag = gen_random(tight, 7);
  for (const TaskSpec& t : dag.tasks)
    for (std::size_t d = 0; d < t.demand.dims(); ++d)
      CHECK(t.demand[d] == doctest::Approx(0.1));
}

TEST_CASE("json round trip preserves the job") {
  JobDag dag = gen_random(RandomDagParams{}, 9);
  dag.tasks[0].locality_sensitive = true;
  JobDag back = dag_from_json_string(dag_to_json_string(dag));
  REQUIRE(back.tasks.size() == dag.tasks.size());
  CHECK(back.id == dag.id);
  CHECK(back.group == dag.group);
  for (std::size_t i = 0; i < dag.tasks.size(); ++i) {
    CHECK(back.tasks[i].duration == dag.tasks[i].duration);
    CHECK(back.tasks[i].demand == dag.tasks[i].demand);
    CHECK(back.tasks[i].locality_sensitive == dag.tasks[i].locality_sensitive);
    CHECK(back.parents[i] == dag.parents[i]);
  }
}

TEST_CASE("json parser names the missing field") {
  CHECK_THROWS_WITH_AS(dag_from_json_string("{\"version\": 1}"),
                       doctest::Contains("missing field 'job'"),
                       std::runtime_error);
  CHECK_THROWS_AS(dag_from_json_string("{\"version\": 99, \"job\": {}, \"stages\": []}"),
                  std::runtime_error);
  CHECK_THROWS_AS(dag_from_json_string("not json"), std::runtime_error);
}
