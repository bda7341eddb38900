#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgswap/scenario.hpp"

namespace mgswap {

/// Every problem found in a scenario file, one "file:line: path: message"
/// entry each (the line is omitted when the field is absent from the file).
class ScenarioError : public std::invalid_argument {
 public:
  explicit ScenarioError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Keys mirror the struct fields. Absent keys keep the struct defaults; the
/// top-level delta_t also sets price.delta_t.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<scenario>");
Scenario load_scenario(const std::string& path);

nlohmann::ordered_json scenario_to_json(const Scenario& s);
/// The file form: indented, arrays of numbers on one line.
std::string scenario_text(const Scenario& s);
void save_scenario(const Scenario& s, const std::string& path);

/// Line (1-based) of every key and array element in a JSON text, keyed by
/// path such as "bss.eta_ch" or "mts[1].p_min".
std::vector<std::pair<std::string, int>> json_line_index(const std::string& text);

}  // namespace mgswap
