#include "aligndash/cli.hpp"

#include <CLI11.hpp>
#include <map>
#include <ostream>
#include <thread>

#include "aligndash/alignment_io.hpp"
#include "aligndash/campaign.hpp"
#include "aligndash/dashboard.hpp"
#include "aligndash/errors.hpp"
#include "aligndash/eval.hpp"
#include "aligndash/ontology_index.hpp"
#include "parallel.hpp"

namespace aligndash {

namespace fs = std::filesystem;

namespace {

struct Options {
    fs::path config;
    fs::path results;
    fs::path out = "dashboard.html";
    fs::path csv;
    fs::path report;
    fs::path ui_bundle;
    std::string baseline = "both";
    std::string syntax = "auto";
    std::string title;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    bool flat = false;
};

/// A ParseError together with the file it came from.
class FileParseError : public std::runtime_error {
  public:
    FileParseError(const fs::path& file, const ParseError& e) : std::runtime_error(file.string() + ": " + e.what()) {}
};

template <typename Fn>
auto with_file(const fs::path& file, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        throw FileParseError(file, e);
    }
}

std::optional<BaselineConfig> baseline_config(const std::string& mode) {
    BaselineConfig config;
    if (mode == "off") return std::nullopt;
    if (mode == "labels") config.source = BaselineConfig::Source::LabelsOnly;
    if (mode == "localnames") config.source = BaselineConfig::Source::LocalNamesOnly;
    return config;
}

void report_warnings(std::ostream& err, const fs::path& file, const Diagnostics& warnings) {
    for (const auto& w : warnings) {
        err << "warning: ";
        if (!file.empty()) err << file.string() << ": ";
        if (w.position.line != 0) err << to_string(w.position) << ": ";
        err << w.message << '\n';
    }
}

int evaluate(const Options& opt, std::ostream& out, std::ostream& err) {
    const TrackConfig config = load_track_config(opt.config);
    Diagnostics scan_warnings;
    const DiscoveredResults discovered = discover_results(opt.results, config, opt.flat, &scan_warnings);
    report_warnings(err, {}, scan_warnings);
    const std::optional<rdf::Syntax> syntax =
        opt.syntax == "auto" ? std::nullopt : rdf::syntax_from_name(opt.syntax);

    // Ontologies, loaded once per distinct path.
    std::map<fs::path, std::size_t> onto_slot;
    std::vector<fs::path> onto_paths;
    for (const auto& t : config.tracks) {
        for (const auto& tc : t.testcases) {
            for (const fs::path& p : {tc.left_ontology, tc.right_ontology}) {
                if (onto_slot.emplace(p, onto_paths.size()).second) onto_paths.push_back(p);
            }
        }
    }
    std::vector<OntologyIndex> ontologies(onto_paths.size());
    parallel_for(onto_paths.size(), opt.jobs, [&](std::size_t i) {
        ontologies[i] = with_file(onto_paths[i], [&] { return load_ontology_file(onto_paths[i], syntax); });
    });

    const auto baseline = baseline_config(opt.baseline);
    std::vector<TestCaseInput> testcases;
    std::vector<const TestCaseConfig*> testcase_configs;
    for (const auto& t : config.tracks) {
        for (const auto& tc : t.testcases) {
            TestCaseInput input;
            input.track = t.name;
            input.id = tc.id;
            input.completeness = tc.completeness;
            input.left = &ontologies[onto_slot.at(tc.left_ontology)];
            input.right = &ontologies[onto_slot.at(tc.right_ontology)];
            testcases.push_back(std::move(input));
            testcase_configs.push_back(&tc);
        }
    }
    std::vector<Diagnostics> reference_warnings(testcases.size());
    parallel_for(testcases.size(), opt.jobs, [&](std::size_t i) {
        const fs::path& ref = testcase_configs[i]->reference;
        testcases[i].reference = with_file(ref, [&] { return read_alignment_file(ref, &reference_warnings[i]); });
        if (baseline) testcases[i].baseline = baseline_match(*testcases[i].left, *testcases[i].right, *baseline);
    });
    for (std::size_t i = 0; i < testcases.size(); ++i) {
        report_warnings(err, testcase_configs[i]->reference, reference_warnings[i]);
    }

    // Every matcher is evaluated on every test case; gaps become empty alignments.
    std::map<std::tuple<std::string, std::string, std::string>, fs::path> files;
    for (const auto& f : discovered.files) files[{f.matcher, f.track, f.testcase}] = f.file;
    std::vector<MatcherResult> results;
    std::vector<fs::path> result_paths;
    std::vector<EvaluatedPair> pairs;
    for (const auto& matcher : discovered.matchers) {
        for (const auto& tc : testcases) {
            pairs.push_back(EvaluatedPair{matcher, tc.track, tc.id});
            results.push_back(MatcherResult{matcher, tc.track, tc.id, {}});
            auto it = files.find({matcher, tc.track, tc.id});
            if (it == files.end()) {
                err << "warning: matcher " << matcher << " has no result for " << tc.track << "/" << tc.id
                    << "; treating it as an empty alignment\n";
                result_paths.emplace_back();
            } else {
                result_paths.push_back(it->second);
            }
        }
    }
    if (discovered.matchers.empty()) err << "warning: no matcher results found under " << opt.results.string() << '\n';

    std::vector<Diagnostics> result_warnings(results.size());
    parallel_for(results.size(), opt.jobs, [&](std::size_t i) {
        if (result_paths[i].empty()) return;
        results[i].system =
            with_file(result_paths[i], [&] { return read_alignment_file(result_paths[i], &result_warnings[i]); });
    });
    for (std::size_t i = 0; i < results.size(); ++i) report_warnings(err, result_paths[i], result_warnings[i]);

    std::vector<AnnotatedCell> dataset = build_dataset(results, testcases, opt.jobs);
    const std::vector<ReportRow> report = metric_report(dataset, pairs);

    if (!opt.csv.empty()) write_file(opt.csv, write_dataset_csv(dataset));
    if (!opt.report.empty()) write_file(opt.report, write_metric_report(report));

    RenderOptions render;
    if (!opt.ui_bundle.empty()) render.ui_script = read_file(opt.ui_bundle);
    DashboardSpec spec = default_spec(std::move(dataset));
    if (!opt.title.empty()) spec.title = opt.title;
    write_dashboard(opt.out, spec, render);

    out << summary_table(report);
    err << "wrote " << opt.out.string() << " (" << spec.dataset.size() << " correspondences)\n";
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Evaluate ontology matcher alignments and build an interactive HTML dashboard.", "aligndash"};
    app.set_version_flag("--version", std::string("aligndash ") + std::string(kVersion));
    app.require_subcommand(0, 1);

    Options opt;
    CLI::App* eval = app.add_subcommand("evaluate", "Evaluate matcher results against reference alignments");
    for (CLI::App* target : {&app, eval}) {
        target->add_option("--config", opt.config, "Track configuration (JSON)");
        target->add_option("--results", opt.results, "Directory laid out as <matcher>/<track>/<testcase>.rdf");
        target->add_option("--out", opt.out, "Dashboard HTML output")->capture_default_str();
        target->add_option("--csv", opt.csv, "Also write the annotated dataset as CSV");
        target->add_option("--report", opt.report, "Write per-matcher metric report (CSV)");
        target->add_option("--baseline", opt.baseline, "Baseline matcher for residual recall")
            ->check(CLI::IsMember({"labels", "localnames", "both", "off"}))
            ->capture_default_str();
        target->add_option("--jobs", opt.jobs, "Parallel evaluation threads")
            ->check(CLI::Range(1u, 1024u))
            ->capture_default_str();
        target->add_option("--syntax", opt.syntax, "Ontology syntax (default: from file extension)")
            ->check(CLI::IsMember({"auto", "rdfxml", "turtle", "ntriples"}))
            ->capture_default_str();
        target->add_option("--title", opt.title, "Dashboard title");
        target->add_option("--ui-bundle", opt.ui_bundle, "Replace the built-in dashboard script with this file");
        target->add_flag("--flat", opt.flat, "Results directory holds <matcher>.rdf files for a single test case");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\nRun with --help for usage.\n";
        return kExitBadArguments;
    }

    if (opt.config.empty() || opt.results.empty()) {
        err << "error: --config and --results are required\nRun with --help for usage.\n";
        return kExitBadArguments;
    }

    try {
        return evaluate(opt, out, err);
    } catch (const FileParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParseError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParseError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
}

}  // namespace aligndash
