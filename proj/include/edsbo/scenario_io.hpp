// Scenario files: YAML with explicit keys, validated on load.
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "edsbo/model.hpp"

namespace edsbo {

/// Validation or syntax problem in a scenario file; the message names the
/// offending key and line.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Scenario parse_scenario(const std::filesystem::path& path);
/// Parses scenario text; `origin` is used in diagnostics.
Scenario parse_scenario_text(const std::string& text, const std::string& origin = "<scenario>");

}  // namespace edsbo
