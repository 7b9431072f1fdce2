#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "robotsp/model.hpp"
#include "robotsp/pipeline.hpp"

namespace robotsp::io {

using Json = nlohmann::ordered_json;

/// Task file layout:
///   {"robot": {"dof", "vel_max", "acc_max", "weights"?, "planar_links"?},
///    "home": [...],
///    "targets": [{"id", "position"?: [x, y], "ik_solutions"?: [[...], ...]}]}
/// Explicit targets may also carry a position (used only for task-space
/// ordering). Files that mix planar and explicit targets are rejected.
Json task_to_json(const Task& task);
/// Throws TaskError on schema violations. Missing limits default to 1.
Task task_from_json(const Json& doc);

Task read_task(const std::filesystem::path& path);
void write_task(const std::filesystem::path& path, const Task& task);

struct ResultEcho {
  std::string method = "robotsp";
  PipelineConfig config;
};

Json result_to_json(const PipelineResult& result, const ResultEcho& echo);

/// Throws std::runtime_error on schema violations or inconsistent counts.
void check_result_json(const Json& doc);

inline constexpr const char* kBenchmarkHeader =
    "axis,variant,n,repeat,seed,step1_ms,ik_ms,step2_ms,step3_ms,step1_cost,step2_cost,schedule_s,"
    "total_ik,edges";

/// CSV with LF endings. Skipped (guarded) rows leave the measurement cells empty.
std::string benchmark_csv(const std::vector<BenchmarkRow>& rows);

/// Writes via a temporary file and rename. Throws std::runtime_error on failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_file(const std::filesystem::path& path);

/// Parses "pi", "pi/4", "2*pi/3" or a plain number of radians.
double parse_step_size(std::string_view text);

}  // namespace robotsp::io
