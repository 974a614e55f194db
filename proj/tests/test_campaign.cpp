#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "aligndash/campaign.hpp"
#include "aligndash/cli.hpp"
#include "aligndash/errors.hpp"

using namespace aligndash;
namespace fs = std::filesystem;

namespace {

const fs::path kCampaign = fs::path(ALIGNDASH_FIXTURES) / "campaign";

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("aligndash-test-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "aligndash");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("config parsing") {
    const auto config = parse_track_config(
        R"({"tracks":[{"name":"t","testcases":[{"id":"a","leftOntology":"l.owl","rightOntology":"/abs/r.owl",
            "reference":"ref.rdf","completeness":"partial"}]}]})",
        "/base");
    REQUIRE(config.tracks.size() == 1);
    const auto& tc = config.tracks[0].testcases[0];
    CHECK(tc.left_ontology == fs::path("/base/l.owl"));
    CHECK(tc.right_ontology == fs::path("/abs/r.owl"));
    CHECK(tc.completeness == GoldStandardCompleteness::Partial);

    CHECK_THROWS_AS(parse_track_config("{", "."), ConfigError);
    CHECK_THROWS_AS(parse_track_config(R"({"tracks":{}})", "."), ConfigError);
    CHECK_THROWS_AS(parse_track_config(R"({"tracks":[{"name":"t","testcases":[{"id":"a"}]}]})", "."), ConfigError);
    CHECK_THROWS_AS(parse_track_config(R"({"tracks":[{"name":"t","testcases":[
        {"id":"a","leftOntology":"l","rightOntology":"r","reference":"x","completeness":"mostly"}]}]})",
                                       "."),
                    ConfigError);
    CHECK_THROWS_AS(parse_track_config(R"({"tracks":[{"name":"t","testcases":[]},{"name":"t","testcases":[]}]})", "."),
                    ConfigError);
}

TEST_CASE("result discovery") {
    const auto config = load_track_config(kCampaign / "config.json");
    Diagnostics warnings;
    const auto found = discover_results(kCampaign / "results", config, false, &warnings);
    CHECK(found.matchers == std::vector<std::string>{"alpha", "beta"});
    CHECK(found.files.size() == 3);
    CHECK(warnings.empty());
    CHECK_THROWS_AS(discover_results(kCampaign / "results", config, true), ConfigError);
    CHECK_THROWS_AS(discover_results(kCampaign / "nope", config, false), IoError);
}

TEST_CASE("metric report aggregates") {
    std::vector<AnnotatedCell> rows(3);
    for (auto& r : rows) {
        r.matcher = "m";
        r.track = "t";
        r.testcase = "a";
    }
    rows[1].outcome = EvalOutcome::FalsePositive;
    rows[2].testcase = "b";
    rows[2].outcome = EvalOutcome::FalseNegative;
    const std::vector<EvaluatedPair> pairs = {{"m", "t", "a"}, {"m", "t", "b"}, {"m", "t", "c"}};
    const auto report = metric_report(rows, pairs);
    REQUIRE(report.size() == 4);
    CHECK(report[0].testcase.empty());
    CHECK(report[0].counts == ConfusionCounts{1, 1, 1});
    CHECK(report[3].testcase == "c");
    CHECK(report[3].counts == ConfusionCounts{0, 0, 0});
    // macro P over a (1/2), b (0), c (1).
    CHECK(report[0].macro->precision == doctest::Approx(0.5));
    const std::string csv = write_metric_report(report);
    CHECK(csv.rfind(std::string(kMetricReportHeader) + "\n", 0) == 0);
}

TEST_CASE("cli argument errors exit with 1") {
    CHECK(run_cli({}).code == kExitBadArguments);
    CHECK(run_cli({"evaluate", "--results", "x"}).code == kExitBadArguments);
    CHECK(run_cli({"evaluate", "--config", "c", "--results", "r", "--baseline", "fuzzy"}).code == kExitBadArguments);
    CHECK(run_cli({"evaluate", "--config", "c", "--results", "r", "--jobs", "0"}).code == kExitBadArguments);
    CHECK(run_cli({"evaluate", "--bogus"}).code == kExitBadArguments);
    const Run help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("--config") != std::string::npos);
    const Run version = run_cli({"--version"});
    CHECK(version.code == 0);
    CHECK(version.out.find(std::string(kVersion)) != std::string::npos);
}

TEST_CASE("cli file errors exit with 2 and name the path") {
    TempDir tmp;
    const Run missing = run_cli({"evaluate", "--config", (tmp.path / "none.json").string(), "--results", "."});
    CHECK(missing.code == kExitConfigError);
    CHECK(missing.err.find("none.json") != std::string::npos);

    write_file(tmp.path / "bad.json", "{\"tracks\": 3}");
    const Run bad = run_cli({"evaluate", "--config", (tmp.path / "bad.json").string(), "--results", "."});
    CHECK(bad.code == kExitConfigError);
    CHECK(bad.err.find("bad.json") != std::string::npos);

    const Run no_results = run_cli({"evaluate", "--config", (kCampaign / "config.json").string(), "--results",
                                    (tmp.path / "missing").string()});
    CHECK(no_results.code == kExitConfigError);
}

TEST_CASE("cli parse errors exit with 3 and name file and position") {
    TempDir tmp;
    fs::copy(kCampaign, tmp.path / "c", fs::copy_options::recursive);
    write_file(tmp.path / "c/results/alpha/conference/t1.rdf", "<?xml version='1.0'?>\n<rdf:RDF>\n<oops>\n");
    const Run r = run_cli({"evaluate", "--config", (tmp.path / "c/config.json").string(), "--results",
                           (tmp.path / "c/results").string(), "--out", (tmp.path / "d.html").string()});
    CHECK(r.code == kExitParseError);
    CHECK(r.err.find("t1.rdf") != std::string::npos);
    CHECK(r.err.find("line") != std::string::npos);
    CHECK_FALSE(fs::exists(tmp.path / "d.html"));
}

TEST_CASE("cli end to end on the fixture campaign") {
    TempDir tmp;
    for (const char* baseline : {"both", "labels", "localnames", "off"}) {
        const Run r = run_cli({"evaluate", "--config", (kCampaign / "config.json").string(), "--results",
                               (kCampaign / "results").string(), "--out", (tmp.path / "d.html").string(), "--csv",
                               (tmp.path / "d.csv").string(), "--report", (tmp.path / "r.csv").string(),
                               "--baseline", baseline, "--jobs", "3"});
        CHECK(r.code == 0);
        CHECK(r.err.find("beta has no result for conference/t2") != std::string::npos);
        CHECK(read_file(tmp.path / "r.csv") == read_file(kCampaign / "expected_report.csv"));
        CHECK(fs::file_size(tmp.path / "d.html") > 0);
        const auto rows = read_dataset_csv(read_file(tmp.path / "d.csv"));
        const auto residual = std::count_if(rows.begin(), rows.end(), [](const AnnotatedCell& c) { return c.residual; });
        if (std::string(baseline) == "off") {
            // Every non-FP row is residual without a baseline.
            const auto non_fp = std::count_if(rows.begin(), rows.end(), [](const AnnotatedCell& c) {
                return c.outcome != EvalOutcome::FalsePositive;
            });
            CHECK(residual == non_fp);
        }
        if (std::string(baseline) == "both") CHECK(residual == 16);
    }
}

TEST_CASE("cli flat layout") {
    TempDir tmp;
    fs::create_directories(tmp.path / "flat");
    fs::copy(kCampaign / "ontologies", tmp.path / "ontologies", fs::copy_options::recursive);
    fs::copy(kCampaign / "reference", tmp.path / "reference", fs::copy_options::recursive);
    write_file(tmp.path / "config.json",
               R"({"tracks":[{"name":"conference","testcases":[{"id":"t1","leftOntology":"ontologies/a.ttl",
                   "rightOntology":"ontologies/b.owl","reference":"reference/t1.rdf"}]}]})");
    write_file(tmp.path / "ui.js", "window.flatBundle = true;");
    fs::copy(kCampaign / "results/alpha/conference/t1.rdf", tmp.path / "flat/alpha.rdf");
    fs::copy(kCampaign / "results/beta/conference/t1.rdf", tmp.path / "flat/beta.rdf");
    const Run r = run_cli({"evaluate", "--config", (tmp.path / "config.json").string(), "--results",
                           (tmp.path / "flat").string(), "--flat", "--out", (tmp.path / "d.html").string(),
                           "--report", (tmp.path / "r.csv").string(), "--ui-bundle", (tmp.path / "ui.js").string(),
                           "--title", "Flat run"});
    CHECK(r.code == 0);
    const std::string html = read_file(tmp.path / "d.html");
    CHECK(html.find("window.flatBundle = true;") != std::string::npos);
    CHECK(html.find("<title>Flat run</title>") != std::string::npos);
    const std::string report = read_file(tmp.path / "r.csv");
    CHECK(report.find("alpha,conference,t1,6,3,4,") != std::string::npos);
    CHECK(report.find("beta,conference,t1,4,1,6,") != std::string::npos);
}
