// Command-line front end: build preferred schedules, run the cluster
// simulator, and compute lower bounds for DAG corpora.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dagsched/baselines.hpp"
#include "dagsched/bounds.hpp"
#include "dagsched/constructor.hpp"
#include "dagsched/dag.hpp"
#include "dagsched/generators.hpp"
#include "dagsched/json_io.hpp"
#include "dagsched/rng.hpp"
#include "dagsched/sim.hpp"

namespace {

using dagsched::ClusterSpec;
using dagsched::JobDag;
using dagsched::ResourceVector;

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

ClusterSpec make_cluster(int machines, std::size_t dims, double remote_penalty) {
  ClusterSpec cluster;
  cluster.machine_count = machines;
  cluster.capacity = ResourceVector(dims, 1.0);
  cluster.remote_penalty = remote_penalty;
  return cluster;
}

/// Nearest-rank percentile of an already sorted sample.
double percentile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(p / 100.0 * static_cast<double>(sorted.size())));
  rank = std::max<std::size_t>(1, std::min(rank, sorted.size()));
  return sorted[rank - 1];
}

int cmd_build(const std::string& dag_file, int machines, double delta,
              const std::string& out_file, bool dump_division) {
  JobDag dag;
  try {
    dag = dagsched::load_json(dag_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::size_t dims = dag.tasks.empty() ? 4 : dag.tasks.front().demand.dims();
  ClusterSpec cluster = make_cluster(machines, dims, 0.8);
  std::vector<std::string> problems = dagsched::validate(dag, cluster);
  if (!problems.empty()) {
    for (const std::string& p : problems) std::cerr << "error: " << p << "\n";
    return 2;
  }

  dagsched::BuildOptions opt;
  opt.delta = delta;
  dagsched::PreferredSchedule sched = dagsched::build_schedule(dag, cluster, opt);
  dagsched::BoundReport bounds = dagsched::new_lb(dag, cluster.total_capacity());

  std::cout << "schedule_length " << fmt(sched.schedule_length) << "\n";
  std::cout << "new_lb " << fmt(bounds.new_lb) << "\n";
  std::cout << "ratio "
            << fmt(bounds.new_lb > 0 ? sched.schedule_length / bounds.new_lb : 1.0)
            << "\n";

  if (dump_division) {
    for (const auto& div :
         dagsched::candidate_divisions(dag, cluster, delta)) {
      nlohmann::json j{{"l", div.l}, {"f", div.f}, {"T", div.T},
                       {"O", div.O}, {"P", div.P}, {"C", div.C}};
      std::cout << j.dump() << "\n";
    }
  }

  if (!out_file.empty()) {
    nlohmann::json placements = nlohmann::json::array();
    for (const auto& [task, begin] : sched.begin) {
      placements.push_back(
          {{"task", task},
           {"machine", sched.machine.at(task)},
           {"begin", begin},
           {"end", begin + dag.tasks[static_cast<std::size_t>(task)].duration},
           {"pri_score", sched.pri_score.at(task)}});
    }
    std::ofstream out(out_file);
    if (!out) {
      std::cerr << "error: cannot write " << out_file << "\n";
      return 2;
    }
    out << placements.dump(2) << "\n";
  }
  return 0;
}

std::vector<JobDag> make_workload(int jobs, double arrival_mean, int groups,
                                  std::uint64_t seed, std::size_t dims) {
  dagsched::Rng arrivals(seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<JobDag> workload;
  double t = 0.0;
  for (int j = 0; j < jobs; ++j) {
    dagsched::RandomDagParams params;
    params.dims = dims;
    JobDag dag = dagsched::gen_random(params, seed + static_cast<std::uint64_t>(j));
    dag.id = "job-" + std::to_string(j);
    dag.group = "g" + std::to_string(j % std::max(1, groups));
    t += arrivals.exponential(arrival_mean);
    dag.arrival = t;
    workload.push_back(std::move(dag));
  }
  return workload;
}

int cmd_sim(const std::vector<std::string>& scheduler_names, int jobs,
            double arrival_mean, int machines, std::uint64_t seed, double kappa,
            const std::string& fairness, double eta_m, double remote_penalty,
            int groups, const std::string& out_file) {
  std::vector<dagsched::Scheduler> schedulers;
  for (const std::string& name : scheduler_names) {
    try {
      schedulers.push_back(dagsched::scheduler_from_name(name));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  dagsched::SimConfig cfg;
  cfg.kappa = kappa;
  cfg.eta_m = eta_m;
  cfg.remote_penalty = remote_penalty;
  if (fairness == "slot") {
    cfg.fairness = dagsched::FairnessFlavor::Slot;
  } else if (fairness == "drf") {
    cfg.fairness = dagsched::FairnessFlavor::Drf;
  } else {
    std::cerr << "error: unknown fairness flavor '" << fairness << "'\n";
    return 2;
  }

  ClusterSpec cluster = make_cluster(machines, 4, remote_penalty);
  std::vector<JobDag> workload =
      make_workload(jobs, arrival_mean, groups, seed, 4);

  std::vector<dagsched::RunMetrics> runs;
  for (dagsched::Scheduler s : schedulers)
    runs.push_back(dagsched::simulate(workload, cluster, s, seed, cfg));
  std::sort(runs.begin(), runs.end(),
            [](const dagsched::RunMetrics& a, const dagsched::RunMetrics& b) {
              return a.scheduler < b.scheduler;
            });

  std::ostringstream csv;
  csv << "scheduler,seed,job,group,arrival,completion,jct\n";
  for (const dagsched::RunMetrics& run : runs)
    for (const dagsched::JobMetrics& jm : run.jobs)
      csv << csv_field(run.scheduler) << "," << run.seed << ","
          << csv_field(jm.id) << "," << csv_field(jm.group) << ","
          << fmt(jm.arrival) << "," << fmt(jm.completion) << ","
          << fmt(jm.jct) << "\n";
  if (out_file.empty() || out_file == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_file, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot write " << out_file << "\n";
      return 2;
    }
    out << csv.str();
  }

  for (const dagsched::RunMetrics& run : runs) {
    std::vector<double> jcts;
    for (const dagsched::JobMetrics& jm : run.jobs) jcts.push_back(jm.jct);
    std::sort(jcts.begin(), jcts.end());
    std::cout << run.scheduler << ": makespan " << fmt(run.makespan)
              << " median_jct " << fmt(percentile(jcts, 50.0));
    for (const auto& [window, value] : run.jain)
      std::cout << " jain[" << window << "] " << fmt(value);
    std::cout << "\n";
  }

  // Pairwise percentile summary of per-job JCT improvement relative to each
  // other scheduler, as a percentage (positive = row scheduler is faster).
  if (runs.size() >= 2) {
    std::cout << "\nJCT improvement percentiles (p25/p50/p75/p90, %):\n";
    for (const dagsched::RunMetrics& a : runs) {
      for (const dagsched::RunMetrics& b : runs) {
        if (a.scheduler == b.scheduler) continue;
        std::map<std::string, double> b_jct;
        for (const dagsched::JobMetrics& jm : b.jobs) b_jct[jm.id] = jm.jct;
        std::vector<double> gains;
        for (const dagsched::JobMetrics& jm : a.jobs) {
          double other = b_jct.at(jm.id);
          if (other > 0) gains.push_back(100.0 * (other - jm.jct) / other);
        }
        std::sort(gains.begin(), gains.end());
        std::cout << "  " << a.scheduler << " vs " << b.scheduler << ": "
                  << fmt(percentile(gains, 25.0)) << " / "
                  << fmt(percentile(gains, 50.0)) << " / "
                  << fmt(percentile(gains, 75.0)) << " / "
                  << fmt(percentile(gains, 90.0)) << "\n";
      }
    }
  }
  return 0;
}

int cmd_bounds(const std::string& corpus_dir, const std::string& out_file) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(corpus_dir)) {
    std::cerr << "error: not a directory: " << corpus_dir << "\n";
    return 2;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::ostringstream csv;
  csv << "file,cp_len,t_work,mod_cp,new_lb,runtime,gap_cp,gap_new\n";
  for (const fs::path& file : files) {
    JobDag dag;
    double runtime = -1.0;
    try {
      dag = dagsched::load_json(file.string());
      if (dag.tasks.empty()) throw std::runtime_error("no tasks");
      ClusterSpec one(1, ResourceVector(dag.tasks.front().demand.dims(), 1.0));
      std::vector<std::string> problems = dagsched::validate(dag, one);
      if (!problems.empty()) throw std::runtime_error(problems.front());
      std::ifstream in(file);
      nlohmann::json raw = nlohmann::json::parse(in);
      if (raw.contains("runtime")) runtime = raw["runtime"].get<double>();
    } catch (const std::exception& e) {
      std::cerr << "skipping " << file.string() << ": " << e.what() << "\n";
      continue;
    }
    ResourceVector total(dag.tasks.front().demand.dims(), 1.0);
    dagsched::BoundReport rep = dagsched::new_lb(dag, total);
    csv << csv_field(file.filename().string()) << "," << fmt(rep.cp_len) << ","
        << fmt(rep.t_work) << "," << fmt(rep.mod_cp) << "," << fmt(rep.new_lb);
    if (runtime >= 0)
      csv << "," << fmt(runtime) << "," << fmt(dagsched::gap(runtime, rep.cp_len))
          << "," << fmt(dagsched::gap(runtime, rep.new_lb));
    else
      csv << ",,,";
    csv << "\n";
  }
  if (out_file.empty() || out_file == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_file, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot write " << out_file << "\n";
      return 2;
    }
    out << csv.str();
  }
  return 0;
}

int cmd_gen(const std::string& kind, std::uint64_t seed, int n, int d, int k,
            double eps, const std::string& out_file) {
  JobDag dag;
  try {
    if (kind == "random") {
      dag = dagsched::gen_random(dagsched::RandomDagParams{}, seed);
    } else if (kind == "cp-adversarial") {
      dag = dagsched::gen_cp_adversarial(n, eps);
    } else if (kind == "packer-adversarial") {
      dag = dagsched::gen_packer_adversarial(d, eps);
    } else if (kind == "structure-blind") {
      dag = dagsched::gen_structure_blind_adversarial(d, k);
    } else if (kind == "contention") {
      dag = dagsched::contention_example(eps);
    } else if (kind == "bounds-example") {
      dag = dagsched::bounds_example();
    } else {
      std::cerr << "error: unknown kind '" << kind << "'\n";
      return 2;
    }
    if (out_file.empty() || out_file == "-")
      std::cout << dagsched::dag_to_json_string(dag) << "\n";
    else
      dagsched::save_json(dag, out_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DAG-aware multi-resource cluster scheduling toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       "dagsched schema " + std::to_string(dagsched::kSchemaVersion));

  // build
  std::string build_file, build_out;
  int build_machines = 2;
  double build_delta = 0.1;
  bool dump_division = false;
  CLI::App* build = app.add_subcommand("build", "construct a preferred schedule");
  build->add_option("dag", build_file, "DAG JSON file")->required();
  build->add_option("--machines", build_machines, "machine count");
  build->add_option("--delta", build_delta, "threshold grid step");
  build->add_option("--out", build_out, "placement JSON output path");
  build->add_flag("--dump-division", dump_division, "emit T/O/P/C candidate sets");

  // sim
  std::string sim_schedulers = "graphene";
  int sim_jobs = 50, sim_machines = 10, sim_groups = 1;
  double sim_arrival = 25.0, sim_kappa = 0.1, sim_m = 0.2, sim_rp = 0.8;
  std::uint64_t sim_seed = 1;
  std::string sim_fairness = "slot", sim_out;
  CLI::App* sim = app.add_subcommand("sim", "run the online cluster simulation");
  sim->add_option("--scheduler", sim_schedulers, "comma-separated scheduler names");
  sim->add_option("--jobs", sim_jobs, "number of jobs");
  sim->add_option("--arrival-mean", sim_arrival, "mean inter-arrival time");
  sim->add_option("--machines", sim_machines, "machine count");
  sim->add_option("--seed", sim_seed, "random seed");
  sim->add_option("--kappa", sim_kappa, "unfairness bound (fraction of cluster)");
  sim->add_option("--fairness", sim_fairness, "slot or drf");
  sim->add_option("--m", sim_m, "multiplier in the eta update");
  sim->add_option("--rp", sim_rp, "remote penalty for locality-sensitive tasks");
  sim->add_option("--groups", sim_groups, "number of job groups");
  sim->add_option("--out", sim_out, "metrics CSV path ('-' = stdout)");

  // bounds
  std::string bounds_dir, bounds_out;
  CLI::App* bounds = app.add_subcommand("bounds", "lower bounds for a DAG corpus");
  bounds->add_option("corpus", bounds_dir, "directory of DAG JSON files")->required();
  bounds->add_option("--out", bounds_out, "CSV path ('-' = stdout)");

  // gen
  std::string gen_kind = "random", gen_out;
  std::uint64_t gen_seed = 1;
  int gen_n = 8, gen_d = 4, gen_k = 4;
  double gen_eps = 0.01;
  CLI::App* gen = app.add_subcommand("gen", "generate a DAG JSON file");
  gen->add_option("--kind", gen_kind,
                  "random | cp-adversarial | packer-adversarial | "
                  "structure-blind | contention | bounds-example");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--n", gen_n, "size parameter");
  gen->add_option("--d", gen_d, "resource dimensions");
  gen->add_option("--k", gen_k, "tasks per group");
  gen->add_option("--eps", gen_eps, "epsilon parameter");
  gen->add_option("--out", gen_out, "output path ('-' = stdout)");

  CLI11_PARSE(app, argc, argv);

  if (build->parsed())
    return cmd_build(build_file, build_machines, build_delta, build_out,
                     dump_division);
  if (sim->parsed()) {
    std::vector<std::string> names;
    std::stringstream ss(sim_schedulers);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) names.push_back(item);
    return cmd_sim(names, sim_jobs, sim_arrival, sim_machines, sim_seed,
                   sim_kappa, sim_fairness, sim_m, sim_rp, sim_groups, sim_out);
  }
  if (bounds->parsed()) return cmd_bounds(bounds_dir, bounds_out);
  if (gen->parsed())
    return cmd_gen(gen_kind, gen_seed, gen_n, gen_d, gen_k, gen_eps, gen_out);
  return 0;
}
