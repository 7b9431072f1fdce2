#include "robotsp/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace robotsp::io {

namespace {

std::vector<double> number_array(const Json& j, const char* what) {
  if (!j.is_array()) throw TaskError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw TaskError(std::string(what) + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_ms(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw std::invalid_argument("bad number '" + std::string(s) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Json task_to_json(const Task& task) {
  Json robot;
  robot["dof"] = task.robot.dof;
  robot["vel_max"] = task.robot.vel_max;
  robot["acc_max"] = task.robot.acc_max;
  if (task.robot.weights) robot["weights"] = *task.robot.weights;
  if (task.robot.planar_links) robot["planar_links"] = *task.robot.planar_links;

  Json targets = Json::array();
  for (const TaskTarget& t : task.targets) {
    Json jt;
    jt["id"] = t.id;
    if (t.position) jt["position"] = {t.position->x, t.position->y};
    if (t.ik_solutions) {
      Json sols = Json::array();
      for (const auto& q : *t.ik_solutions) sols.push_back(q.q);
      jt["ik_solutions"] = std::move(sols);
    }
    targets.push_back(std::move(jt));
  }

  Json doc;
  doc["robot"] = std::move(robot);
  doc["home"] = task.home.q;
  doc["targets"] = std::move(targets);
  return doc;
}

Task task_from_json(const Json& doc) {
  if (!doc.is_object()) throw TaskError("task file: top level must be an object");
  for (const char* key : {"robot", "home", "targets"}) {
    if (!doc.contains(key)) throw TaskError(std::string("task file: missing '") + key + "'");
  }
  const Json& jr = doc.at("robot");
  if (!jr.is_object() || !jr.contains("dof") || !jr.at("dof").is_number_integer()) {
    throw TaskError("task file: robot.dof must be an integer");
  }

  Task task;
  const int dof = jr.at("dof").get<int>();
  if (dof < 1) throw TaskError("task file: robot.dof must be positive");
  task.robot = RobotModel::with_default_limits(dof);
  if (jr.contains("vel_max")) task.robot.vel_max = number_array(jr.at("vel_max"), "robot.vel_max");
  if (jr.contains("acc_max")) task.robot.acc_max = number_array(jr.at("acc_max"), "robot.acc_max");
  if (jr.contains("weights")) task.robot.weights = number_array(jr.at("weights"), "robot.weights");
  if (jr.contains("planar_links")) {
    task.robot.planar_links = number_array(jr.at("planar_links"), "robot.planar_links");
  }
  task.home = Configuration(number_array(doc.at("home"), "home"));

  const Json& jts = doc.at("targets");
  if (!jts.is_array()) throw TaskError("task file: targets must be an array");
  std::size_t with_ik = 0;
  for (const Json& jt : jts) {
    if (!jt.is_object() || !jt.contains("id") || !jt.at("id").is_number_integer()) {
      throw TaskError("task file: every target needs an integer id");
    }
    TaskTarget t;
    t.id = jt.at("id").get<int>();
    if (jt.contains("position")) {
      const auto p = number_array(jt.at("position"), "target position");
      if (p.size() != 2) throw TaskError("task file: target position must be [x, y]");
      t.position = Point2{p[0], p[1]};
    }
    if (jt.contains("ik_solutions")) {
      const Json& js = jt.at("ik_solutions");
      if (!js.is_array()) throw TaskError("task file: ik_solutions must be an array");
      std::vector<Configuration> sols;
      for (const Json& q : js) sols.emplace_back(number_array(q, "ik solution"));
      t.ik_solutions = std::move(sols);
      ++with_ik;
    }
    if (!t.position && !t.ik_solutions) {
      throw TaskError("task file: target " + std::to_string(t.id) + " has neither position nor ik_solutions");
    }
    task.targets.push_back(std::move(t));
  }
  if (with_ik != 0 && with_ik != task.targets.size()) {
    throw TaskError("task file: mixes planar targets with explicit ik_solutions targets");
  }
  return task;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Task read_task(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw TaskError("task file '" + path.string() + "': " + e.what());
  }
  return task_from_json(doc);
}

void write_task(const std::filesystem::path& path, const Task& task) {
  write_file_atomic(path, task_to_json(task).dump(2) + "\n");
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move output into '" + path.string() + "'");
  }
}

Json result_to_json(const PipelineResult& result, const ResultEcho& echo) {
  const PipelineConfig& c = echo.config;
  Json config;
  config["method"] = echo.method;
  config["solver"] = tsp::to_string(c.tsp_solver);
  config["metric"] = metrics::to_string(c.metric);
  config["step_size"] = c.step_size;
  config["rnn_restarts"] = c.rnn_restarts;
  config["include_home_depot"] = c.include_home_depot;
  config["seed"] = c.seed;

  Json doc;
  doc["config"] = std::move(config);
  doc["schedule_model"] = kScheduleModel;
  doc["order"] = result.order.order;
  doc["chosen"] = result.selection.chosen;
  doc["step1_cost"] = result.step1_cost;
  doc["step2_cost"] = result.selection.total_cost;
  doc["schedule_duration_s"] = result.schedule_duration;
  doc["timings_ms"] = {{"step1", result.timings.step1_ms},
                       {"ik", result.timings.ik_ms},
                       {"step2", result.timings.step2_ms},
                       {"step3", result.timings.step3_ms}};
  doc["counts"] = {{"n", result.counts.n},
                   {"total_ik", result.counts.total_ik},
                   {"edges", result.counts.edges}};
  return doc;
}

void check_result_json(const Json& doc) {
  auto fail = [](const std::string& why) { throw std::runtime_error("result file: " + why); };
  for (const char* key : {"config", "order", "chosen", "step1_cost", "step2_cost", "schedule_duration_s",
                          "timings_ms", "counts"}) {
    if (!doc.contains(key)) fail(std::string("missing '") + key + "'");
  }
  const auto& counts = doc.at("counts");
  for (const char* key : {"n", "total_ik", "edges"}) {
    if (!counts.contains(key) || !counts.at(key).is_number_unsigned()) fail(std::string("bad counts.") + key);
  }
  const auto n = counts.at("n").get<std::size_t>();
  if (!doc.at("order").is_array() || doc.at("order").size() != n) fail("order must have n entries");
  if (!doc.at("chosen").is_array() || doc.at("chosen").size() != n) fail("chosen must have n entries");
  std::vector<bool> seen(n, false);
  for (const auto& v : doc.at("order")) {
    if (!v.is_number_integer()) fail("order entries must be integers");
    const auto k = v.get<long long>();
    if (k < 0 || static_cast<std::size_t>(k) >= n || seen[static_cast<std::size_t>(k)]) fail("order is not a permutation");
    seen[static_cast<std::size_t>(k)] = true;
  }
  for (const char* key : {"step1_cost", "step2_cost", "schedule_duration_s"}) {
    if (!doc.at(key).is_number() || doc.at(key).get<double>() < 0.0) fail(std::string(key) + " must be >= 0");
  }
  for (const char* key : {"step1", "ik", "step2", "step3"}) {
    const auto& t = doc.at("timings_ms");
    if (!t.contains(key) || !t.at(key).is_number() || t.at(key).get<double>() < 0.0) {
      fail(std::string("timings_ms.") + key + " must be >= 0");
    }
  }
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows) {
  std::string out = kBenchmarkHeader;
  out += '\n';
  for (const BenchmarkRow& r : rows) {
    out += r.axis + ',' + r.variant + ',' + std::to_string(r.n) + ',' + std::to_string(r.repeat) + ',' +
           std::to_string(r.seed);
    if (r.skipped) {
      out += ",,,,,,,,,\n";
      continue;
    }
    out += ',' + fmt_ms(r.timings.step1_ms) + ',' + fmt_ms(r.timings.ik_ms) + ',' + fmt_ms(r.timings.step2_ms) +
           ',' + fmt_ms(r.timings.step3_ms) + ',' + fmt_double(r.step1_cost) + ',' + fmt_double(r.step2_cost) +
           ',' + fmt_double(r.schedule_s) + ',' + std::to_string(r.total_ik) + ',' + std::to_string(r.edges) +
           '\n';
  }
  return out;
}

double parse_step_size(std::string_view text) {
  std::string_view s = trim(text);
  const auto pi_at = s.find("pi");
  if (pi_at == std::string_view::npos) return parse_number(s);

  double value = std::numbers::pi;
  std::string_view head = trim(s.substr(0, pi_at));
  if (!head.empty()) {
    if (head.back() != '*') throw std::invalid_argument("bad step size '" + std::string(text) + "'");
    head.remove_suffix(1);
    value *= parse_number(trim(head));
  }
  std::string_view tail = trim(s.substr(pi_at + 2));
  if (!tail.empty()) {
    if (tail.front() != '/') throw std::invalid_argument("bad step size '" + std::string(text) + "'");
    value /= parse_number(trim(tail.substr(1)));
  }
  return value;
}

}  // namespace robotsp::io
