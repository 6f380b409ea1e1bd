// Command-line front end: list registered kinds, run conformance checks and
// execute declarative evaluation workflows. All behavior lives in the
// library; this file only parses arguments and maps errors to exit codes.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scitype/conformance.hpp"
#include "scitype/registry.hpp"
#include "scitype/workflow.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomainFailure = 1;
constexpr int kExitUsage = 2;

void write_json(const scitype::Json& j, const std::optional<std::filesystem::path>& path) {
  const std::string text = j.dump(2) + "\n";
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw scitype::Error(scitype::ErrorCode::DataError, "cannot write " + path->string());
  out << text;
}

int cmd_list(const scitype::Registry& registry, const std::string& filter_text) {
  std::optional<scitype::TagFilter> filter;
  if (!filter_text.empty()) filter = scitype::parse_tag_filter(filter_text);
  std::cout << scitype::render_kind_list(registry, filter);
  return kExitOk;
}

int cmd_check(const scitype::Registry& registry, const std::string& kind, bool all,
              const std::string& output) {
  if (all == !kind.empty()) {
    std::cerr << "error: give exactly one of <kind> or --all\n";
    return kExitUsage;
  }
  std::vector<scitype::ConformanceReport> reports;
  if (all) {
    reports = scitype::check_all(registry);
  } else {
    if (!registry.has_kind(kind)) {
      std::cerr << "error: unregistered kind '" << kind << "'\n";
      return kExitUsage;
    }
    reports.push_back(scitype::check_estimator(registry, kind));
  }
  std::cout << scitype::render_table(reports);
  if (!output.empty()) write_json(scitype::reports_to_json(reports), output);
  for (const auto& r : reports) {
    if (!r.passed()) return kExitDomainFailure;
  }
  return kExitOk;
}

int cmd_run(const scitype::Registry& registry, const std::string& workflow, const std::string& output) {
  const scitype::WorkflowSpec spec = scitype::parse_workflow_file(workflow);
  const scitype::Json report = scitype::run_workflow(spec, registry);
  std::optional<std::filesystem::path> target;
  if (!output.empty()) {
    target = output;
  } else if (spec.output_path) {
    target = spec.output_path->is_absolute() ? *spec.output_path : spec.base_dir / *spec.output_path;
  }
  write_json(report, target);
  if (target) std::cerr << "report written to " << target->string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scientific-type estimator toolbox: listing, conformance checks and workflows", "scitype"};
  app.require_subcommand(1);
  bool include_defects = false;
  app.add_flag("--include-defects", include_defects,
               "also register the planted-defect kinds used to validate the conformance checks");

  auto* list = app.add_subcommand("list", "list registered kinds");
  std::string filter;
  list->add_option("--filter", filter, "only kinds whose tag equals a value, as tag=value");

  auto* check = app.add_subcommand("check", "run the conformance suite");
  std::string check_kind;
  bool check_all = false;
  std::string check_output;
  check->add_option("kind", check_kind, "kind to check");
  check->add_flag("--all", check_all, "check every registered kind");
  check->add_option("--output", check_output, "write the JSON report to this path");
  check->add_flag("--include-defects", include_defects, "also register the planted-defect kinds");

  auto* run = app.add_subcommand("run", "execute a TOML evaluation workflow");
  std::string workflow;
  std::string run_output;
  run->add_option("workflow", workflow, "workflow file")->required();
  run->add_option("--output", run_output, "write the JSON report here instead of [output] path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    scitype::Registry registry = scitype::builtin_registry();
    if (include_defects) scitype::register_defects(registry);
    if (*list) return cmd_list(registry, filter);
    if (*check) return cmd_check(registry, check_kind, check_all, check_output);
    return cmd_run(registry, workflow, run_output);
  } catch (const scitype::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return scitype::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainFailure;
  }
}
