// Reads a complete clash-free forest as a fuzzy tableau and checks every
// tableau property on it, one predicate at a time.
#pragma once

#include "fuzzydl/tableau.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace fdl::testing {

struct AuditFailure {
  std::string property;
  std::string detail;
};

struct AuditReport {
  // Property name to the number of instances examined.
  std::map<std::string, std::size_t> checked;
  std::vector<AuditFailure> failures;

  bool ok() const { return failures.empty(); }
  std::string summary() const;
};

// `abox` is the ABox the forest was initialised from (see Prepared).
AuditReport audit_forest(const Forest& forest, const ABox& abox);

}  // namespace fdl::testing
