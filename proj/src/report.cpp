#include "effacengine/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "effacengine/corpus.hpp"

namespace effacengine {

using json = nlohmann::ordered_json;

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::undetermined:
      return "undetermined";
  }
  return "fail";
}

Status parse_status(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "undetermined") return Status::undetermined;
  throw InputError("unknown check status '" + s + "'");
}

void Report::add(std::string name, Status status, std::string details, double seconds) {
  checks.push_back({std::move(name), status, std::move(details), seconds});
}

void Report::sort() {
  std::stable_sort(checks.begin(), checks.end(), [](const CheckRow& a, const CheckRow& b) { return a.name < b.name; });
}

bool Report::any_fail() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckRow& c) { return c.status == Status::fail; });
}

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [s](const CheckRow& c) { return c.status == s; }));
}

std::string Report::text(bool timing) const {
  std::ostringstream os;
  os << "effacengine " << version << "  " << command;
  if (!scenario.empty()) os << "  " << scenario;
  os << "  seed " << seed << "\n";
  if (!output.empty()) {
    os << output;
    if (output.back() != '\n') os << "\n";
  }
  for (const auto& c : checks) {
    os << (c.status == Status::pass ? "PASS " : c.status == Status::fail ? "FAIL " : "UNDET") << " " << c.name;
    if (!c.details.empty()) os << "  " << c.details;
    if (timing) os << "  [" << std::fixed << std::setprecision(3) << c.seconds << " s]";
    os << "\n";
  }
  os << count(Status::pass) << " passed, " << count(Status::fail) << " failed, " << count(Status::undetermined)
     << " undetermined\n";
  return os.str();
}

std::string Report::jsonl(bool timing) const {
  std::ostringstream os;
  json head;
  head["type"] = "report";
  head["command"] = command;
  head["scenario"] = scenario;
  head["seed"] = seed;
  head["version"] = version;
  if (!output.empty()) head["output"] = output;
  os << head.dump() << "\n";
  for (const auto& c : checks) {
    json row;
    row["type"] = "check";
    row["name"] = c.name;
    row["status"] = to_string(c.status);
    row["details"] = c.details;
    if (timing) row["timing"] = c.seconds;
    os << row.dump() << "\n";
  }
  return os.str();
}

Report parse_report_jsonl(const std::string& text) {
  Report r;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
      const auto type = j.at("type").get<std::string>();
      if (type == "report") {
        r.command = j.at("command").get<std::string>();
        r.scenario = j.value("scenario", "");
        r.seed = j.value("seed", std::uint64_t{0});
        r.version = j.value("version", std::string(kToolVersion));
        r.output = j.value("output", "");
        header = true;
      } else if (type == "check") {
        r.add(j.at("name").get<std::string>(), parse_status(j.at("status").get<std::string>()), j.value("details", ""),
              j.value("timing", 0.0));
      } else {
        throw InputError("unknown record type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw InputError("report line " + std::to_string(lineno) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError("report line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!header) throw InputError("report has no header line");
  return r;
}

}  // namespace effacengine
