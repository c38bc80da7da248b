#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "eznav/planner.hpp"

namespace eznav {

inline constexpr int kScenarioSchemaVersion = 1;

struct OutputOptions {
  std::string directory = ".";
  std::vector<std::string> formats{"csv", "json"};

  friend bool operator==(const OutputOptions&, const OutputOptions&) = default;
};

struct ScenarioFile {
  int schema_version = kScenarioSchemaVersion;
  Scenario scenario;
  OutputOptions output;
};

// Parses schema-v1 scenario text (JSON with // and /* */ comments). Throws
// ParseError with line/column for syntax errors and a JSON pointer for
// schema violations, including unknown keys.
ScenarioFile parse_scenario(const std::string& text);
ScenarioFile load_scenario(const std::filesystem::path& path);

// Canonical JSON text; parse_scenario(serialize_scenario(f)) == f.
std::string serialize_scenario(const ScenarioFile& file);

bool operator==(const ScenarioFile& a, const ScenarioFile& b);

}  // namespace eznav
