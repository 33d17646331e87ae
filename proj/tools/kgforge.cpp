// kgforge command line: builds, refines, populates and reports on product
// knowledge graphs. See README.md for the pipeline walkthrough.

#include <chrono>
#include <ctime>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kgforge/kgforge.hpp"

namespace {

std::string default_run_dir() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm);
    return std::string("runs/") + buf;
}

struct CliOptions {
    std::string config_path;
    std::map<std::string, std::string> overrides;
    bool paper_mode = false;
    bool strict = false;
    bool allow_drops = false;
};

// Flags beat config-file values; --paper-mode pins max_attempts to 1 so
// failure accounting matches a single-shot run.
kgforge::PipelineConfig resolve_config(const CliOptions& cli) {
    kgforge::PipelineConfig cfg;
    if (!cli.config_path.empty()) cfg = kgforge::load_config(cli.config_path);
    kgforge::apply_config_values(cfg, cli.overrides);
    if (cli.strict) cfg.conformance = kgforge::stages::ConformanceMode::Strict;
    if (cli.allow_drops) cfg.allow_drops = true;
    if (cli.paper_mode) cfg.max_attempts = 1;
    if (cfg.run_dir.empty()) cfg.run_dir = default_run_dir();
    return cfg;
}

void add_override_flag(CLI::App* cmd, CliOptions& cli, const std::string& flag,
                       const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
           flag, [&cli, key](const std::string& value) { cli.overrides[key] = value; }, help)
        ->expected(1);
}

void add_common_flags(CLI::App* cmd, CliOptions& cli) {
    cmd->add_option("--config", cli.config_path, "TOML config file");
    add_override_flag(cmd, cli, "--run-dir", "run_dir", "run directory for stage artifacts");
    add_override_flag(cmd, cli, "--corpus", "corpus", "JSONL corpus file");
    add_override_flag(cmd, cli, "--category", "category", "product category to process");
    add_override_flag(cmd, cli, "--namespace", "namespace", "base namespace IRI");
    add_override_flag(cmd, cli, "--prompts-dir", "prompts_dir", "prompt template directory");
    add_override_flag(cmd, cli, "--backend", "backend.mode", "backend: http|replay|record");
    add_override_flag(cmd, cli, "--fixtures-dir", "backend.fixtures_dir",
                      "fixture store for replay/record");
    add_override_flag(cmd, cli, "--base-url", "backend.base_url", "chat-completions base URL");
    add_override_flag(cmd, cli, "--model", "backend.model", "model name for the http backend");
    add_override_flag(cmd, cli, "--seed", "expansion.seed", "sampling seed");
    add_override_flag(cmd, cli, "--batch-size", "expansion.batch_size", "expansion batch size");
    add_override_flag(cmd, cli, "--sample-budget", "expansion.sample_budget",
                      "total samples for expansion");
    add_override_flag(cmd, cli, "--max-attempts", "max_attempts", "attempts per agent exchange");
    add_override_flag(cmd, cli, "--max-inflight", "max_inflight", "concurrent agent requests");
    add_override_flag(cmd, cli, "--format", "format", "report format: json|text");
    cmd->add_flag("--paper-mode", cli.paper_mode, "single-shot mode (max_attempts = 1)");
    cmd->add_flag("--strict", cli.strict, "drop conformance-error triples from the graph");
    cmd->add_flag("--allow-drops", cli.allow_drops, "accept refinements that drop elements");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Product knowledge graph construction pipeline"};
    app.require_subcommand(1);

    CliOptions cli;

    CLI::App* ontology = app.add_subcommand("ontology", "ontology lifecycle");
    ontology->require_subcommand(1);
    CLI::App* build = ontology->add_subcommand("build", "bootstrap and expand the ontology");
    add_common_flags(build, cli);
    CLI::App* refine = ontology->add_subcommand("refine", "zero-shot ontology refinement");
    add_common_flags(refine, cli);

    CLI::App* populate = app.add_subcommand("populate", "generate the knowledge graph");
    add_common_flags(populate, cli);

    CLI::App* report = app.add_subcommand("report", "recompute and print run metrics");
    add_common_flags(report, cli);

    CLI::App* run_all = app.add_subcommand("run-all", "build, refine, populate, report");
    add_common_flags(run_all, cli);

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "parse and check a Turtle file");
    validate->add_option("file", validate_path, "Turtle file to check")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return kgforge::cli::cmd_validate(validate_path);

        kgforge::PipelineConfig cfg = resolve_config(cli);
        if (build->parsed()) return kgforge::cli::cmd_ontology_build(cfg);
        if (refine->parsed()) return kgforge::cli::cmd_ontology_refine(cfg);
        if (populate->parsed()) return kgforge::cli::cmd_populate(cfg);
        if (report->parsed()) return kgforge::cli::cmd_report(cfg);
        if (run_all->parsed()) return kgforge::cli::cmd_run_all(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kgforge::cli::kExitConfig;
    }
    return kgforge::cli::kExitConfig;
}
