#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scitype/persistence.hpp"
#include "scitype/registry.hpp"

namespace scitype {

enum class CheckStatus { Pass, Fail, Skip };
std::string_view to_string(CheckStatus s) noexcept;

struct CheckResult {
  std::string check_id;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
  /// Set exactly when status is Skip: "scitype: <id>" or
  /// "capability: <tag>=<value>".
  std::optional<std::string> skip_reason;
};

/// A contract check and the scitype level that requires it.
struct CheckSpec {
  std::string id;
  /// The check runs for kinds whose scitype chain contains this level.
  std::string level;
  /// Composite-only checks are skipped for atomic kinds.
  bool composite_only = false;
  std::string description;
};

/// Every check, each id once, in execution order.
const std::vector<CheckSpec>& check_catalog();

struct ConformanceReport {
  std::string kind;
  std::string scitype;
  std::vector<CheckResult> results;

  std::size_t count(CheckStatus s) const;
  bool passed() const { return count(CheckStatus::Fail) == 0; }
  const CheckResult* find(std::string_view check_id) const;
  Json to_json() const;
};

/// Runs the full catalog against fresh instances of `kind` built from the
/// registry; the registry itself is only read. Unregistered.
ConformanceReport check_estimator(const Registry& registry, std::string_view kind);
/// One report per registered kind, in registration order.
std::vector<ConformanceReport> check_all(const Registry& registry);

/// {"reports": [...], "summary": {"kinds", "failed_kinds", "passed"}}.
Json reports_to_json(const std::vector<ConformanceReport>& reports);
/// Plain-text table: kind, check, status, detail.
std::string render_table(const std::vector<ConformanceReport>& reports);

/// Parameter names that denote data rather than strategy configuration.
bool is_data_bound_param_name(std::string_view name);

}  // namespace scitype
