#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "scitype/error.hpp"
#include "scitype/persistence.hpp"
#include "scitype/registry.hpp"
#include "scitype/tasks.hpp"

namespace scitype {

/// Declarative evaluation workflow, read from a TOML file:
///
///   [estimator]  kind = "...", params = { ... }        (params optional)
///   [task]       type = "supervised" | "forecasting"
///                supervised:  target, features (optional), loss, flavor
///                forecasting: fh, variant, loss, target (optional column)
///   [data]       path = "...", format = "csv"
///   [splitter]   kind = "kfold" | "holdout" | "temporal_holdout", params = { ... }
///   [output]     path = "..." (optional), format = "json"
///
/// Relative data and output paths resolve against `base_dir`.
struct WorkflowSpec {
  std::string estimator_kind;
  Json estimator_params = Json::object();
  std::variant<SupervisedTask, ForecastingTask> task;
  /// Series column for forecasting tasks; the only numeric column when unset.
  std::optional<std::string> series_column;
  std::filesystem::path data_path;
  std::string data_format = "csv";
  std::string splitter_kind;
  Json splitter_params = Json::object();
  std::optional<std::filesystem::path> output_path;
  std::string output_format = "json";
  std::filesystem::path base_dir;

  bool is_forecasting() const noexcept { return task.index() == 1; }
  /// Parsed spec as JSON, embedded in reports as "spec_echo".
  Json to_json() const;
};

/// SpecParseError for malformed TOML, missing or mistyped fields, or
/// unknown task types/flavors/losses/formats.
WorkflowSpec parse_workflow(std::string_view toml_text, const std::filesystem::path& base_dir = {});
WorkflowSpec parse_workflow_file(const std::filesystem::path& path);

/// Default instance of the kind with the spec's params applied via
/// set_params. Unregistered, UnknownParameter, DomainViolation.
std::unique_ptr<Estimator> build_estimator(const WorkflowSpec& spec, const Registry& registry);

/// Ingests the data, dispatches to evaluate_supervised or
/// evaluate_forecaster and returns the evaluation report extended with
/// "spec_echo" and "generated_at".
Json run_workflow(const WorkflowSpec& spec, const Registry& registry);

/// Copy of a report without its "generated_at" timestamp.
Json strip_timestamps(Json report);

/// `tag=value` predicate over registered kinds.
struct TagFilter {
  std::string tag;
  std::string value;

  /// Text tags compare by content, other tags by their compact rendering
  /// (`true`, `2`, ...).
  bool matches(const KindDescriptor& kind) const;
};

/// BadFilterSyntax unless the text is `name=value` with a single `=` and
/// both sides non-empty.
TagFilter parse_tag_filter(std::string_view text);

/// Plain-text table with one row per kind: name, scitype and the tags
/// deterministic, handles_missing and is_composite.
std::string render_kind_list(const Registry& registry, const std::optional<TagFilter>& filter = std::nullopt);

/// Process exit code for a failure: 2 for specification and usage errors
/// (bad spec, unknown kind, invalid parameter), 1 for domain failures
/// (data, evaluation).
int exit_code_for(ErrorCode code) noexcept;

}  // namespace scitype
