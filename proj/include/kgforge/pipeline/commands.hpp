#pragma once
// Subcommand implementations behind the CLI. Exit codes: 0 success,
// 1 config/IO error, 2 stage error, 3 rejected refinement. Commands never
// mutate a prior stage's artifacts.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "kgforge/metrics.hpp"
#include "kgforge/pipeline/artifacts.hpp"
#include "kgforge/pipeline/config.hpp"

namespace kgforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitStage = 2;
inline constexpr int kExitRejectedRefinement = 3;

namespace paths {

inline std::filesystem::path ontology(const PipelineConfig& cfg) {
    return std::filesystem::path(cfg.run_dir) / "ontology.ttl";
}
inline std::filesystem::path refined(const PipelineConfig& cfg) {
    return std::filesystem::path(cfg.run_dir) / "ontology.refined.ttl";
}
inline std::filesystem::path trace(const PipelineConfig& cfg) {
    return std::filesystem::path(cfg.run_dir) / "trace.json";
}
inline std::filesystem::path refinement(const PipelineConfig& cfg) {
    return std::filesystem::path(cfg.run_dir) / "refinement.json";
}
inline std::filesystem::path kg(const PipelineConfig& cfg) {
    return std::filesystem::path(cfg.run_dir) / "kg.ttl";
}
inline std::filesystem::path results(const PipelineConfig& cfg) {
    return std::filesystem::path(cfg.run_dir) / "results.json";
}
inline std::filesystem::path report(const PipelineConfig& cfg) {
    return std::filesystem::path(cfg.run_dir) / "report.json";
}

}  // namespace paths

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline onto::Ontology load_ontology_file(const std::filesystem::path& path) {
    rdf::Graph g = rdf::parse_turtle(read_file(path));
    auto [ontology, issues] = onto::ontology_from_graph(g);
    return ontology;
}

// The populate/report stages use the refined ontology when present, else
// the base one.
inline std::filesystem::path pick_ontology(const PipelineConfig& cfg) {
    if (std::filesystem::exists(paths::refined(cfg))) return paths::refined(cfg);
    return paths::ontology(cfg);
}

}  // namespace detail

/// ontology build: sample, bootstrap, expand to plateau; writes ontology.ttl
/// and trace.json.
inline int cmd_ontology_build(const PipelineConfig& cfg, std::ostream& err = std::cerr) {
    Corpus corpus;
    TemplateSet templates;
    try {
        validate_config(cfg);
        if (cfg.corpus_path.empty()) throw ConfigError("corpus path is required");
        corpus = load_corpus(cfg.corpus_path);
        templates = load_templates(cfg.prompts_dir);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        AgentGateway gw = make_gateway(cfg);
        auto [ontology, trace] = stages::expansion_loop(corpus, cfg.category, cfg.expansion, gw,
                                                        templates, cfg.schema_namespace(), {},
                                                        cfg.max_attempts);
        detail::write_file(paths::ontology(cfg),
                           rdf::serialize_turtle(onto::ontology_to_graph(ontology)));
        detail::write_file(paths::trace(cfg), trace_to_json(trace).dump(2) + "\n");
        return kExitOk;
    } catch (const UnknownCategory& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "stage error: " << e.what() << "\n";
        return kExitStage;
    }
}

/// ontology refine: zero-shot refinement of ontology.ttl; writes
/// ontology.refined.ttl and refinement.json. A refinement with unmapped
/// removals (without allow_drops) exits 3 and leaves the refined file
/// absent.
inline int cmd_ontology_refine(const PipelineConfig& cfg, std::ostream& err = std::cerr) {
    onto::Ontology ontology;
    TemplateSet templates;
    try {
        validate_config(cfg);
        if (!std::filesystem::exists(paths::ontology(cfg))) {
            throw ConfigError("missing " + paths::ontology(cfg).string() +
                              " (run `ontology build` first)");
        }
        ontology = detail::load_ontology_file(paths::ontology(cfg));
        templates = load_templates(cfg.prompts_dir);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        AgentGateway gw = make_gateway(cfg);
        auto [refined, report] =
            stages::refine_ontology(ontology, gw, templates, cfg.allow_drops, {},
                                    cfg.max_attempts);
        detail::write_file(paths::refinement(cfg), refinement_to_json(report).dump(2) + "\n");
        if (!report.accepted) {
            if (!report.error.empty()) {
                err << "stage error: refinement failed: " << report.error << "\n";
                return kExitStage;
            }
            err << "refinement rejected: " << report.unmapped_removals.size()
                << " removal(s) have no mapped replacement (use --allow-drops to accept)\n";
            return kExitRejectedRefinement;
        }
        detail::write_file(paths::refined(cfg),
                           rdf::serialize_turtle(onto::ontology_to_graph(refined)));
        return kExitOk;
    } catch (const std::exception& e) {
        err << "stage error: " << e.what() << "\n";
        return kExitStage;
    }
}

/// populate: generate triples for every product against the refined (or
/// base) ontology; writes kg.ttl, results.json and report.json. Per-product
/// failures are results, not process errors; exits 2 only when a non-empty
/// corpus produced zero successes.
inline int cmd_populate(const PipelineConfig& cfg, std::ostream& err = std::cerr) {
    Corpus corpus;
    onto::Ontology ontology;
    TemplateSet templates;
    try {
        validate_config(cfg);
        if (cfg.corpus_path.empty()) throw ConfigError("corpus path is required");
        corpus = load_corpus(cfg.corpus_path);
        std::filesystem::path onto_path = detail::pick_ontology(cfg);
        if (!std::filesystem::exists(onto_path)) {
            throw ConfigError("missing ontology file: " + onto_path.string());
        }
        ontology = detail::load_ontology_file(onto_path);
        templates = load_templates(cfg.prompts_dir);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        AgentGateway gw = make_gateway(cfg);
        stages::PopulateOptions opts;
        opts.instance_base = cfg.instance_base();
        opts.max_attempts = cfg.max_attempts;
        opts.mode = cfg.conformance;
        auto [kg, results] =
            stages::populate_corpus(corpus, ontology, gw, templates, opts, cfg.max_inflight);

        detail::write_file(paths::kg(cfg), rdf::serialize_turtle(kg));
        detail::write_file(paths::results(cfg), results_to_json(results).dump(2) + "\n");
        RunMetrics metrics = run_summary(results, kg, ontology);
        detail::write_file(paths::report(cfg), render_report(metrics, ReportFormat::Json));

        size_t succeeded = metrics.products_succeeded;
        if (succeeded == 0 && !corpus.empty()) {
            err << "stage error: no product produced valid triples\n";
            return kExitStage;
        }
        return kExitOk;
    } catch (const std::exception& e) {
        err << "stage error: " << e.what() << "\n";
        return kExitStage;
    }
}

/// report: recompute metrics from the artifacts on disk (never from cached
/// values) and print them in the requested format.
inline int cmd_report(const PipelineConfig& cfg, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
    try {
        std::filesystem::path onto_path = detail::pick_ontology(cfg);
        for (const auto& p : {paths::kg(cfg), onto_path, paths::results(cfg)}) {
            if (!std::filesystem::exists(p)) {
                throw ConfigError("missing artifact: " + p.string());
            }
        }
        rdf::Graph kg = rdf::parse_turtle(detail::read_file(paths::kg(cfg)));
        onto::Ontology ontology = detail::load_ontology_file(onto_path);
        auto summaries = result_summaries_from_json(
            nlohmann::json::parse(detail::read_file(paths::results(cfg))));

        RunMetrics m;
        m.products_total = summaries.size();
        for (const auto& s : summaries) {
            if (s.succeeded) {
                ++m.products_succeeded;
                m.conformance_errors += s.conformance_errors;
                m.conformance_warnings += s.conformance_warnings;
            } else {
                ++m.products_failed;
            }
        }
        if (m.products_total > 0) {
            m.failure_rate =
                static_cast<double>(m.products_failed) / static_cast<double>(m.products_total);
            m.failure_rate_defined = true;
        }
        m.triples_total = kg.size();
        CoverageResult coverage = property_coverage(kg, ontology);
        m.properties_total = coverage.total;
        m.properties_instantiated = coverage.instantiated;
        m.property_coverage = coverage.ratio;
        m.property_coverage_defined = coverage.defined;
        m.ontology_stats = onto::ontology_stats(ontology);

        out << render_report(m, cfg.format);
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

/// validate <file.ttl>: parse and, when the file declares schema elements,
/// lift and check it. Exit 0 when clean, 2 on syntax errors or
/// Error-severity issues, 1 when the file is missing.
inline int cmd_validate(const std::string& path, std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
    if (!std::filesystem::exists(path)) {
        err << "error: no such file: " << path << "\n";
        return kExitConfig;
    }
    rdf::Graph g;
    try {
        g = rdf::parse_turtle(detail::read_file(path));
    } catch (const rdf::SyntaxError& e) {
        err << "syntax error: " << e.what() << "\n";
        return kExitStage;
    }
    out << path << ": " << g.size() << " triple(s)\n";
    try {
        auto [ontology, lift_issues] = onto::ontology_from_graph(g);
        if (ontology.empty()) return kExitOk;  // instance data, nothing to lift

        auto issues = onto::validate_ontology(ontology);
        for (const auto& issue : issues) {
            out << (issue.severity == onto::Severity::Error ? "error" : "warning") << " ["
                << onto::to_string(issue.code) << "] " << issue.subject.value << ": "
                << issue.message << "\n";
        }
        out << "classes: " << ontology.classes.size()
            << ", properties: " << ontology.properties.size() << ", issues: " << issues.size()
            << "\n";
        return onto::has_errors(issues) ? kExitStage : kExitOk;
    } catch (const onto::StructureError& e) {
        err << "error: " << e.what() << "\n";
        return kExitStage;
    }
}

/// run-all: build, refine, populate, report in one process. A rejected
/// refinement is reported but does not abort the run; population then uses
/// the base ontology.
inline int cmd_run_all(const PipelineConfig& cfg, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
    if (int rc = cmd_ontology_build(cfg, err); rc != kExitOk) return rc;
    int refine_rc = cmd_ontology_refine(cfg, err);
    if (refine_rc != kExitOk && refine_rc != kExitRejectedRefinement) return refine_rc;
    if (refine_rc == kExitRejectedRefinement) {
        err << "note: continuing with the unrefined ontology\n";
    }
    if (int rc = cmd_populate(cfg, err); rc != kExitOk) return rc;
    return cmd_report(cfg, out, err);
}

}  // namespace kgforge::cli
