#pragma once

// Named identities with fixed setups. Each entry rebuilds both sides of its
// identity, compares them, and records any side conditions as checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expro/report.hpp"

namespace expro {

struct RegistryEntry {
  std::string id;
  std::string title;
  int n = 2;
  int depth = 3;
  Mode mode = Mode::kSymbolic;
  bool expect_equal = true;
};

struct RegistryOverrides {
  std::optional<int> depth;
  std::optional<Mode> mode;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
};

struct NamedCheck {
  std::string name;
  bool ok = false;
};

struct RegistryOutcome {
  RegistryEntry entry;
  int depth = 0;
  Verdict verdict;
  std::vector<NamedCheck> checks;
  Json details = Json::object();
  double seconds = 0;
  // verdict.equal matches the expectation and every check holds
  bool passed() const;
};

const std::vector<RegistryEntry>& registry_entries();
const RegistryEntry& registry_entry(const std::string& id);  // throws unknown-id
RegistryOutcome run_registry(const std::string& id, const RegistryOverrides& overrides = {});

Json to_json(const RegistryOutcome& o);

}  // namespace expro
