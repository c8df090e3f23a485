#pragma once

#include <string>

#include "dagsched/dag.hpp"

namespace dagsched {

inline constexpr int kSchemaVersion = 1;

/// File format (schema version 1):
/// {
///   "version": 1,
///   "job": {"id": "...", "arrival": 0.0, "group": "..."},
///   "stages": [
///     {"id": "...",
///      "tasks": [{"dur": 1.0, "demand": [...], "local": false}, ...],
///      "edges": [{"to": "<stage id>", "pattern": "all-to-all"}, ...]}
///   ]
/// }
/// "local" is optional and defaults to false. "pattern" is one of
/// "one-to-one", "all-to-all", "many-to-one".
JobDag load_json(const std::string& path);
void save_json(const JobDag& dag, const std::string& path);

JobDag dag_from_json_string(const std::string& text);
std::string dag_to_json_string(const JobDag& dag);

}  // namespace dagsched
