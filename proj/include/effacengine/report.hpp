#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace effacengine {

inline constexpr const char* kToolVersion = "1.0.0";

enum class Status { pass, fail, undetermined };

std::string to_string(Status s);
Status parse_status(const std::string& s);

struct CheckRow {
  std::string name;
  Status status = Status::pass;
  std::string details;
  double seconds = 0.0;
};

struct Report {
  std::string command;
  std::string scenario;
  std::uint64_t seed = 0;
  std::string version = kToolVersion;
  std::string output;  // free-form body, e.g. a functor value
  std::vector<CheckRow> checks;

  void add(std::string name, Status status, std::string details = {}, double seconds = 0.0);
  void add(std::string name, bool ok, std::string details = {}) {
    add(std::move(name), ok ? Status::pass : Status::fail, std::move(details));
  }
  /// Canonical row order (by name).
  void sort();
  bool any_fail() const;
  std::size_t count(Status s) const;
  /// 0 all pass (undetermined rows allowed), 1 some row failed.
  int exit_code() const { return any_fail() ? 1 : 0; }

  std::string text(bool timing = false) const;
  /// One header line, then one line per check.
  std::string jsonl(bool timing = false) const;
};

/// Reads back the output of Report::jsonl. Throws InputError.
Report parse_report_jsonl(const std::string& text);

}  // namespace effacengine
