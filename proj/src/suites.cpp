#include "leslab/experiments.hpp"

#include <map>

#include "suites_data.hpp"

namespace leslab {

std::vector<std::string> list_suites() {
  std::vector<std::string> names;
  names.reserve(detail::kSuiteEntryCount);
  for (std::size_t i = 0; i < detail::kSuiteEntryCount; ++i) {
    names.emplace_back(detail::kSuiteEntries[i].name);
  }
  return names;
}

const std::string& suite_config_text(const std::string& name) {
  static const std::map<std::string, std::string> table = [] {
    std::map<std::string, std::string> m;
    for (std::size_t i = 0; i < detail::kSuiteEntryCount; ++i) {
      m.emplace(detail::kSuiteEntries[i].name, detail::kSuiteEntries[i].text);
    }
    return m;
  }();
  const auto it = table.find(name);
  if (it == table.end()) {
    throw ConfigError("unknown suite \"" + name +
                      "\"; `les-lab suites` lists the bundled configs");
  }
  return it->second;
}

ExperimentConfig suite_config(const std::string& name) {
  ExperimentConfig cfg = ExperimentConfig::from_json_text(suite_config_text(name));
  cfg.validate();
  return cfg;
}

}  // namespace leslab
