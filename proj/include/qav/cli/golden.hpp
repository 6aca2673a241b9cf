#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qav/cli/commands.hpp"

namespace qav::cli {

/// One manifest entry: a command applied to a .tor file with fixed options.
/// `expect` maps JSON pointers to required values; with `expected_fail` at
/// least one of them must be violated instead.
struct Scenario {
  std::string name, file, command;
  Options options;
  Json expect = Json::object();
  bool expected_fail = false;
  std::string note;
};

struct ScenarioResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
  out << text;
}

inline Options options_from_json(const Json& j) {
  Options o;
  auto str = [&](const char* key, std::optional<std::string>& slot) {
    if (j.contains(key)) slot = j.at(key).get<std::string>();
  };
  str("matrix", o.matrix);
  str("form", o.form);
  str("witness", o.witness);
  str("bounds", o.bounds);
  str("subspace", o.subspace);
  str("vector", o.vector);
  str("intmatrix", o.intmatrix);
  str("compare", o.compare);
  if (j.contains("height")) o.height = j.at("height").get<long>();
  if (j.contains("dim")) o.dim = j.at("dim").get<std::size_t>();
  return o;
}

inline std::vector<Scenario> load_manifest(const std::filesystem::path& dir) {
  const Json m = Json::parse(read_file(dir / "manifest.json"));
  std::vector<Scenario> out;
  for (const auto& e : m.at("scenarios")) {
    Scenario s;
    s.name = e.at("name").get<std::string>();
    s.file = e.at("file").get<std::string>();
    s.command = e.at("command").get<std::string>();
    if (e.contains("options")) s.options = options_from_json(e.at("options"));
    if (e.contains("expect")) s.expect = e.at("expect");
    s.expected_fail = e.value("expected_fail", false);
    s.note = e.value("note", "");
    out.push_back(std::move(s));
  }
  return out;
}

/// Canonical scenario output: exit code plus report.
inline std::string render(const Outcome& o) { return dump(Json{{"exit_code", o.exit_code}, {"report", o.report}}); }

inline Outcome run_scenario(const Scenario& s, const std::filesystem::path& dir) {
  return run_text(s.command, read_file(dir / s.file), s.options);
}

/// JSON pointer of the first difference, or empty when equal.
inline std::string first_divergence(const Json& a, const Json& b, const std::string& path = "") {
  if (a.type() != b.type()) return path.empty() ? "/" : path;
  if (a.is_object()) {
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
      if (ia.key() != ib.key()) return path + "/" + ia.key();
      auto d = first_divergence(ia.value(), ib.value(), path + "/" + ia.key());
      if (!d.empty()) return d;
    }
    if (ia != a.end()) return path + "/" + ia.key();
    if (ib != b.end()) return path + "/" + ib.key();
    return "";
  }
  if (a.is_array()) {
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
      auto d = first_divergence(a[k], b[k], path + "/" + std::to_string(k));
      if (!d.empty()) return d;
    }
    if (a.size() != b.size()) return path + "/" + std::to_string(std::min(a.size(), b.size()));
    return "";
  }
  return a == b ? "" : (path.empty() ? "/" : path);
}

/// Checks the manifest expectations; returns the first violated pointer or "".
inline std::string violated_expectation(const Scenario& s, const Json& rendered) {
  for (const auto& [ptr, want] : s.expect.items()) {
    const Json::json_pointer p(ptr);
    if (!rendered.contains(p)) return ptr + " (missing)";
    if (rendered.at(p) != want) return ptr + " = " + rendered.at(p).dump() + ", expected " + want.dump();
  }
  return "";
}

inline ScenarioResult check_scenario(const Scenario& s, const std::filesystem::path& dir, bool update) {
  ScenarioResult r{s.name, false, ""};
  const std::string text = render(run_scenario(s, dir));
  const Json got = Json::parse(text);
  const std::string violation = violated_expectation(s, got);
  if (s.expected_fail && violation.empty()) {
    r.detail = "expected-fail scenario satisfied all expectations";
    return r;
  }
  if (!s.expected_fail && !violation.empty()) {
    r.detail = "expectation violated: " + violation;
    return r;
  }
  const auto path = dir / "expected" / (s.name + ".json");
  if (!std::filesystem::exists(path)) {
    if (!update) {
      r.detail = "no stored output at " + path.string();
      return r;
    }
    write_file(path, text);
    r.passed = true;
    r.detail = "stored";
    return r;
  }
  const std::string stored = read_file(path);
  if (stored == text) {
    r.passed = true;
    r.detail = s.expected_fail ? "expected failure: " + violation : "ok";
    return r;
  }
  const auto where = first_divergence(Json::parse(stored), got);
  r.detail = "output differs at " + (where.empty() ? std::string("formatting") : where);
  return r;
}

inline std::vector<ScenarioResult> run_golden(const std::filesystem::path& dir, bool update) {
  std::vector<ScenarioResult> out;
  for (const auto& s : load_manifest(dir)) out.push_back(check_scenario(s, dir, update));
  return out;
}

}  // namespace qav::cli
