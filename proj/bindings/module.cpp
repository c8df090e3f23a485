#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dagsched/bounds.hpp"
#include "dagsched/constructor.hpp"
#include "dagsched/dag.hpp"
#include "dagsched/generators.hpp"
#include "dagsched/json_io.hpp"
#include "dagsched/sim.hpp"

namespace py = pybind11;
using namespace dagsched;

namespace {

ClusterSpec make_cluster(int machines, std::vector<double> capacity,
                         double remote_penalty) {
  ClusterSpec c;
  c.machine_count = machines;
  c.capacity = ResourceVector(std::move(capacity));
  c.remote_penalty = remote_penalty;
  return c;
}

py::dict schedule_to_dict(const PreferredSchedule& s) {
  py::dict d;
  d["begin"] = s.begin;
  d["machine"] = s.machine;
  d["pri_score"] = s.pri_score;
  d["schedule_length"] = s.schedule_length;
  return d;
}

py::dict bounds_to_dict(const BoundReport& r) {
  py::dict d;
  d["cp_len"] = r.cp_len;
  d["t_work"] = r.t_work;
  d["mod_cp"] = r.mod_cp;
  d["new_lb"] = r.new_lb;
  py::list parts;
  for (const PartitionBound& p : r.partitions) {
    py::dict pd;
    pd["stages"] = p.stages;
    pd["cp_len"] = p.cp_len;
    pd["t_work"] = p.t_work;
    pd["mod_cp"] = p.mod_cp;
    parts.append(pd);
  }
  d["partitions"] = parts;
  return d;
}

py::dict metrics_to_dict(const RunMetrics& m) {
  py::dict d;
  d["scheduler"] = m.scheduler;
  d["seed"] = m.seed;
  d["makespan"] = m.makespan;
  py::list jobs;
  for (const JobMetrics& jm : m.jobs) {
    py::dict jd;
    jd["id"] = jm.id;
    jd["group"] = jm.group;
    jd["arrival"] = jm.arrival;
    jd["completion"] = jm.completion;
    jd["jct"] = jm.jct;
    jobs.append(jd);
  }
  d["jobs"] = jobs;
  d["jain"] = m.jain;
  return d;
}

}  // namespace

PYBIND11_MODULE(_dagsched, mod) {
  mod.doc() = "DAG-aware multi-resource cluster scheduling toolkit";
  mod.attr("SCHEMA_VERSION") = kSchemaVersion;

  mod.def("load_dag", &load_json, py::arg("path"));
  mod.def("save_dag", &save_json, py::arg("dag"), py::arg("path"));
  mod.def("dag_from_json", &dag_from_json_string, py::arg("text"));
  mod.def("dag_to_json", &dag_to_json_string, py::arg("dag"));

  py::class_<JobDag>(mod, "JobDag")
      .def_readonly("id", &JobDag::id)
      .def_readwrite("arrival", &JobDag::arrival)
      .def_readwrite("group", &JobDag::group)
      .def_property_readonly("task_count",
                             [](const JobDag& d) { return d.tasks.size(); })
      .def_property_readonly("stage_count",
                             [](const JobDag& d) { return d.stages.size(); });

  mod.def(
      "validate",
      [](const JobDag& dag, int machines, std::vector<double> capacity) {
        return validate(dag, make_cluster(machines, std::move(capacity), 0.8));
      },
      py::arg("dag"), py::arg("machines") = 1,
      py::arg("capacity") = std::vector<double>{1, 1, 1, 1},
      "Returns a list of problems; empty means valid.");

  mod.def(
      "gen_random",
      [](std::uint64_t seed) { return gen_random(RandomDagParams{}, seed); },
      py::arg("seed"));
  mod.def("gen_cp_adversarial", &gen_cp_adversarial, py::arg("n"),
          py::arg("eps"), py::arg("dims") = 4);
  mod.def("gen_packer_adversarial", &gen_packer_adversarial, py::arg("d"),
          py::arg("eps") = 0.01);
  mod.def("gen_structure_blind_adversarial", &gen_structure_blind_adversarial,
          py::arg("d"), py::arg("k"));
  mod.def("contention_example", &contention_example, py::arg("eps") = 0.01);
  mod.def("bounds_example", &bounds_example);

  mod.def(
      "build_schedule",
      [](const JobDag& dag, int machines, std::vector<double> capacity,
         double delta) {
        BuildOptions opt;
        opt.delta = delta;
        return schedule_to_dict(build_schedule(
            dag, make_cluster(machines, std::move(capacity), 0.8), opt));
      },
      py::arg("dag"), py::arg("machines") = 2,
      py::arg("capacity") = std::vector<double>{1, 1, 1, 1},
      py::arg("delta") = 0.1);

  mod.def(
      "bounds",
      [](const JobDag& dag, std::vector<double> total_capacity) {
        return bounds_to_dict(
            new_lb(dag, ResourceVector(std::move(total_capacity))));
      },
      py::arg("dag"), py::arg("total_capacity") = std::vector<double>{1, 1, 1, 1});

  mod.def("jain_index", &jain_index, py::arg("allocations"));

  mod.def(
      "simulate",
      [](const std::vector<JobDag>& workload, int machines,
         std::vector<double> capacity, const std::string& scheduler,
         std::uint64_t seed, double kappa, const std::string& fairness) {
        SimConfig cfg;
        cfg.kappa = kappa;
        cfg.fairness =
            fairness == "drf" ? FairnessFlavor::Drf : FairnessFlavor::Slot;
        return metrics_to_dict(
            simulate(workload, make_cluster(machines, std::move(capacity), 0.8),
                     scheduler_from_name(scheduler), seed, cfg));
      },
      py::arg("workload"), py::arg("machines") = 10,
      py::arg("capacity") = std::vector<double>{1, 1, 1, 1},
      py::arg("scheduler") = "graphene", py::arg("seed") = 1,
      py::arg("kappa") = 0.1, py::arg("fairness") = "slot");

  mod.def("scheduler_names", &scheduler_names);
}
