#include "dagsched/json_io.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace dagsched {

using nlohmann::json;

namespace {

std::string pattern_name(EdgePattern p) {
  switch (p) {
    case EdgePattern::OneToOne: return "one-to-one";
    case EdgePattern::AllToAll: return "all-to-all";
    case EdgePattern::ManyToOne: return "many-to-one";
  }
  return "all-to-all";
}

EdgePattern parse_pattern(const std::string& s) {
  if (s == "one-to-one") return EdgePattern::OneToOne;
  if (s == "all-to-all") return EdgePattern::AllToAll;
  if (s == "many-to-one") return EdgePattern::ManyToOne;
  throw std::runtime_error("unknown edge pattern '" + s + "'");
}

json require(const json& obj, const char* field, const std::string& ctx) {
  if (!obj.contains(field))
    throw std::runtime_error(std::string("missing field '") + field + "' in " + ctx);
  return obj.at(field);
}

}  // namespace

JobDag dag_from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("JSON parse error: ") + e.what());
  }

  int version = require(j, "version", "document").get<int>();
  if (version != kSchemaVersion)
    throw std::runtime_error("unsupported schema version " + std::to_string(version));

  JobDag dag;
  json job = require(j, "job", "document");
  dag.id = require(job, "id", "job").get<std::string>();
  dag.arrival = require(job, "arrival", "job").get<double>();
  dag.group = require(job, "group", "job").get<std::string>();

  std::map<std::string, int> stage_index;
  json stages = require(j, "stages", "document");
  if (!stages.is_array()) throw std::runtime_error("field 'stages' must be an array");

  for (const json& js : stages) {
    std::string sid = require(js, "id", "stage").get<std::string>();
    if (stage_index.count(sid))
      throw std::runtime_error("duplicate stage id '" + sid + "'");
    StageSpec s;
    s.name = sid;
    for (const json& jt : require(js, "tasks", "stage '" + sid + "'")) {
      TaskSpec t;
      t.id = static_cast<int>(dag.tasks.size());
      t.stage = static_cast<int>(dag.stages.size());
      if (!require(jt, "dur", "task").is_number())
        throw std::runtime_error("field 'dur' must be a number in stage '" + sid + "'");
      t.duration = jt.at("dur").get<double>();
      json dem = require(jt, "demand", "task");
      if (!dem.is_array())
        throw std::runtime_error("field 'demand' must be an array in stage '" + sid + "'");
      std::vector<double> values;
      for (const json& v : dem) {
        if (!v.is_number())
          throw std::runtime_error("field 'demand' must contain numbers in stage '" + sid + "'");
        values.push_back(v.get<double>());
      }
      t.demand = ResourceVector(values);
      t.locality_sensitive = jt.value("local", false);
      s.tasks.push_back(t.id);
      dag.tasks.push_back(t);
    }
    stage_index[sid] = static_cast<int>(dag.stages.size());
    dag.stages.push_back(std::move(s));
  }

  // Edges reference stages by id, so resolve them in a second pass.
  for (std::size_t si = 0; si < stages.size(); ++si) {
    const json& js = stages[si];
    if (!js.contains("edges")) continue;
    for (const json& je : js.at("edges")) {
      std::string to = require(je, "to", "edge").get<std::string>();
      auto it = stage_index.find(to);
      if (it == stage_index.end())
        throw std::runtime_error("edge target '" + to + "' is not a stage id");
      EdgePattern p = parse_pattern(je.value("pattern", "all-to-all"));
      dag.stages[si].out.push_back(StageEdge{it->second, p});
    }
  }

  dag.finalize();
  return dag;
}

std::string dag_to_json_string(const JobDag& dag) {
  json j;
  j["version"] = kSchemaVersion;
  j["job"] = {{"id", dag.id}, {"arrival", dag.arrival}, {"group", dag.group}};
  json stages = json::array();
  for (const StageSpec& s : dag.stages) {
    json js;
    js["id"] = s.name;
    json tasks = json::array();
    for (int tid : s.tasks) {
      const TaskSpec& t = dag.tasks[tid];
      json jt;
      jt["dur"] = t.duration;
      jt["demand"] = t.demand.values();
      if (t.locality_sensitive) jt["local"] = true;
      tasks.push_back(std::move(jt));
    }
    js["tasks"] = std::move(tasks);
    json edges = json::array();
    for (const StageEdge& e : s.out)
      edges.push_back({{"to", dag.stages[e.to].name},
                       {"pattern", pattern_name(e.pattern)}});
    js["edges"] = std::move(edges);
    stages.push_back(std::move(js));
  }
  j["stages"] = std::move(stages);
  return j.dump(2);
}

JobDag load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return dag_from_json_string(text);
}

void save_json(const JobDag& dag, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << dag_to_json_string(dag) << "\n";
}

}  // namespace dagsched
