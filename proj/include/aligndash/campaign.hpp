#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aligndash/dashboard.hpp"
#include "aligndash/errors.hpp"
#include "aligndash/eval.hpp"

namespace aligndash {

// ---- track configuration ------------------------------------------------------
//
// {
//   "tracks": [
//     { "name": "conference",
//       "testcases": [
//         { "id": "cmt-ekaw", "leftOntology": "cmt.owl", "rightOntology": "ekaw.owl",
//           "reference": "cmt-ekaw.rdf", "completeness": "complete" } ] } ]
// }
//
// Relative paths are relative to the directory holding the config file.

struct TestCaseConfig {
    std::string id;
    std::filesystem::path left_ontology;
    std::filesystem::path right_ontology;
    std::filesystem::path reference;
    GoldStandardCompleteness completeness = GoldStandardCompleteness::Complete;
};

struct TrackEntry {
    std::string name;
    std::vector<TestCaseConfig> testcases;
};

struct TrackConfig {
    std::vector<TrackEntry> tracks;

    std::size_t testcase_count() const;
};

/// Invalid configuration content; `path()` names the offending file.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::filesystem::path path, const std::string& what);
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

TrackConfig parse_track_config(std::string_view json, const std::filesystem::path& base_dir,
                               const std::filesystem::path& origin = {});

/// Reads and validates a config file, including that every referenced file
/// exists. Throws IoError or ConfigError.
TrackConfig load_track_config(const std::filesystem::path& path);

// ---- matcher results --------------------------------------------------------------

struct ResultFile {
    std::string matcher;
    std::string track;
    std::string testcase;
    std::filesystem::path file;
};

struct DiscoveredResults {
    std::vector<std::string> matchers;  // sorted
    std::vector<ResultFile> files;      // sorted by matcher, track, testcase
};

/// Scans `root` laid out as <matcher>/<track>/<testcase>.rdf, or as
/// <matcher>.rdf when `flat` is set (which requires a single-testcase
/// config). Files that match no configured test case are skipped with a
/// warning.
DiscoveredResults discover_results(const std::filesystem::path& root, const TrackConfig& config, bool flat,
                                   Diagnostics* warnings = nullptr);

// ---- metric report ------------------------------------------------------------------

struct EvaluatedPair {
    std::string matcher;
    std::string track;
    std::string testcase;
};

/// Track rows have an empty testcase and carry both micro and macro values;
/// testcase rows carry only micro values (which are just their metrics).
struct ReportRow {
    std::string matcher;
    std::string track;
    std::string testcase;
    ConfusionCounts counts;
    MetricSet micro;
    std::optional<MetricSet> macro;
};

/// Aggregates dataset rows per (matcher, testcase) and per (matcher, track).
/// `pairs` lists every evaluated combination, so pairs without rows still
/// get a (0,0,0) entry. Order: matcher, track, the track row, then testcases.
std::vector<ReportRow> metric_report(std::span<const AnnotatedCell> rows, std::span<const EvaluatedPair> pairs);

inline constexpr std::string_view kMetricReportHeader =
    "matcher,track,testcase,tp,fp,fn,micro_p,micro_r,micro_f1,macro_p,macro_r,macro_f1";

std::string write_metric_report(std::span<const ReportRow> report);

/// Fixed-width per-(matcher, track) summary for the terminal.
std::string summary_table(std::span<const ReportRow> report);

}  // namespace aligndash
