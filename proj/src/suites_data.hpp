#pragma once

// Registry of bundled suite configs.  The definitions are generated at
// configure time from the JSON files under configs/ (see CMakeLists.txt), so
// the binary embeds the shipped config text verbatim.

#include <cstddef>

namespace leslab::detail {

struct SuiteEntry {
  const char* name;
  const char* text;
};

extern const SuiteEntry kSuiteEntries[];
extern const std::size_t kSuiteEntryCount;

}  // namespace leslab::detail
