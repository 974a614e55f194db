#include "aligndash/campaign.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <tuple>

#include "text_util.hpp"

namespace aligndash {

namespace fs = std::filesystem;

std::size_t TrackConfig::testcase_count() const {
    std::size_t n = 0;
    for (const auto& t : tracks) n += t.testcases.size();
    return n;
}

ConfigError::ConfigError(fs::path path, const std::string& what)
    : std::runtime_error(path.string() + ": " + what), path_(std::move(path)) {}

namespace {

std::string required_string(const nlohmann::json& obj, const char* key, const std::string& where, const fs::path& origin) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string() || it->get_ref<const std::string&>().empty()) {
        throw ConfigError(origin, where + ": \"" + key + "\" must be a non-empty string");
    }
    return it->get<std::string>();
}

fs::path resolve_path(const fs::path& base_dir, const std::string& p) {
    fs::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
}

}  // namespace

TrackConfig parse_track_config(std::string_view json, const fs::path& base_dir, const fs::path& origin) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(origin, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("tracks") || !doc["tracks"].is_array()) {
        throw ConfigError(origin, "expected an object with a \"tracks\" array");
    }

    TrackConfig config;
    std::set<std::string> track_names;
    for (const auto& t : doc["tracks"]) {
        if (!t.is_object()) throw ConfigError(origin, "track entries must be objects");
        TrackEntry track;
        track.name = required_string(t, "name", "track", origin);
        if (!track_names.insert(track.name).second) throw ConfigError(origin, "duplicate track \"" + track.name + "\"");
        if (!t.contains("testcases") || !t["testcases"].is_array()) {
            throw ConfigError(origin, "track \"" + track.name + "\": \"testcases\" must be an array");
        }
        std::set<std::string> ids;
        for (const auto& tc : t["testcases"]) {
            if (!tc.is_object()) throw ConfigError(origin, "track \"" + track.name + "\": test cases must be objects");
            const std::string where = "track \"" + track.name + "\"";
            TestCaseConfig c;
            c.id = required_string(tc, "id", where, origin);
            const std::string here = where + ", test case \"" + c.id + "\"";
            if (!ids.insert(c.id).second) throw ConfigError(origin, where + ": duplicate test case id \"" + c.id + "\"");
            c.left_ontology = resolve_path(base_dir, required_string(tc, "leftOntology", here, origin));
            c.right_ontology = resolve_path(base_dir, required_string(tc, "rightOntology", here, origin));
            c.reference = resolve_path(base_dir, required_string(tc, "reference", here, origin));
            if (auto it = tc.find("completeness"); it != tc.end()) {
                auto value = it->is_string() ? completeness_from_string(it->get<std::string>()) : std::nullopt;
                if (!value) throw ConfigError(origin, here + ": completeness must be \"complete\" or \"partial\"");
                c.completeness = *value;
            }
            track.testcases.push_back(std::move(c));
        }
        config.tracks.push_back(std::move(track));
    }
    return config;
}

TrackConfig load_track_config(const fs::path& path) {
    if (!fs::is_regular_file(path)) throw IoError(path, "config file does not exist");
    TrackConfig config = parse_track_config(read_file(path), path.parent_path(), path);
    for (const auto& track : config.tracks) {
        for (const auto& tc : track.testcases) {
            for (const fs::path* p : {&tc.left_ontology, &tc.right_ontology, &tc.reference}) {
                if (!fs::is_regular_file(*p)) {
                    throw IoError(*p, "referenced by test case " + track.name + "/" + tc.id + " but does not exist");
                }
            }
        }
    }
    return config;
}

DiscoveredResults discover_results(const fs::path& root, const TrackConfig& config, bool flat, Diagnostics* warnings) {
    if (!fs::is_directory(root)) throw IoError(root, "results directory does not exist");
    auto warn = [&](std::string message) {
        if (warnings != nullptr) warnings->push_back(Diagnostic{{}, std::move(message)});
    };

    std::set<std::pair<std::string, std::string>> known;
    for (const auto& t : config.tracks) {
        for (const auto& tc : t.testcases) known.emplace(t.name, tc.id);
    }

    DiscoveredResults out;
    std::set<std::string> matchers;
    if (flat) {
        if (config.testcase_count() != 1) {
            throw ConfigError(root, "--flat needs a configuration with exactly one test case, found " +
                                        std::to_string(config.testcase_count()));
        }
        auto track = std::find_if(config.tracks.begin(), config.tracks.end(),
                                  [](const TrackEntry& t) { return !t.testcases.empty(); });
        for (const auto& entry : fs::directory_iterator(root)) {
            if (!entry.is_regular_file() || entry.path().extension() != ".rdf") continue;
            const std::string matcher = entry.path().stem().string();
            matchers.insert(matcher);
            out.files.push_back(ResultFile{matcher, track->name, track->testcases.front().id, entry.path()});
        }
    } else {
        for (const auto& m : fs::directory_iterator(root)) {
            if (!m.is_directory()) continue;
            const std::string matcher = m.path().filename().string();
            matchers.insert(matcher);
            for (const auto& t : fs::directory_iterator(m.path())) {
                if (!t.is_directory()) continue;
                const std::string track = t.path().filename().string();
                for (const auto& f : fs::directory_iterator(t.path())) {
                    if (!f.is_regular_file() || f.path().extension() != ".rdf") continue;
                    const std::string testcase = f.path().stem().string();
                    if (!known.contains({track, testcase})) {
                        warn("ignoring " + f.path().string() + ": no test case " + track + "/" + testcase +
                             " in the configuration");
                        continue;
                    }
                    out.files.push_back(ResultFile{matcher, track, testcase, f.path()});
                }
            }
        }
    }
    out.matchers.assign(matchers.begin(), matchers.end());
    std::sort(out.files.begin(), out.files.end(), [](const ResultFile& a, const ResultFile& b) {
        return std::tie(a.matcher, a.track, a.testcase) < std::tie(b.matcher, b.track, b.testcase);
    });
    return out;
}

std::vector<ReportRow> metric_report(std::span<const AnnotatedCell> rows, std::span<const EvaluatedPair> pairs) {
    // matcher -> track -> testcase -> counts
    std::map<std::string, std::map<std::string, std::map<std::string, ConfusionCounts>>> tally;
    for (const auto& p : pairs) tally[p.matcher][p.track][p.testcase];
    for (const auto& r : rows) tally[r.matcher][r.track][r.testcase].count(r.outcome);

    std::vector<ReportRow> report;
    for (const auto& [matcher, tracks] : tally) {
        for (const auto& [track, testcases] : tracks) {
            std::vector<ConfusionCounts> per_case;
            ConfusionCounts total;
            for (const auto& [id, counts] : testcases) {
                per_case.push_back(counts);
                total += counts;
            }
            report.push_back(ReportRow{matcher, track, {}, total, micro_average(per_case), macro_average(per_case)});
            for (const auto& [id, counts] : testcases) {
                report.push_back(ReportRow{matcher, track, id, counts, metrics(counts), std::nullopt});
            }
        }
    }
    return report;
}

std::string write_metric_report(std::span<const ReportRow> report) {
    std::string out(kMetricReportHeader);
    out.push_back('\n');
    for (const auto& r : report) {
        append_csv_field(out, r.matcher);
        out.push_back(',');
        append_csv_field(out, r.track);
        out.push_back(',');
        append_csv_field(out, r.testcase);
        out += fmt::format(",{},{},{},{},{},{},", r.counts.tp, r.counts.fp, r.counts.fn, format_double(r.micro.precision),
                           format_double(r.micro.recall), format_double(r.micro.f1));
        if (r.macro) {
            out += fmt::format("{},{},{}", format_double(r.macro->precision), format_double(r.macro->recall),
                               format_double(r.macro->f1));
        } else {
            out += ",,";
        }
        out.push_back('\n');
    }
    return out;
}

std::string summary_table(std::span<const ReportRow> report) {
    std::size_t mw = 7;
    std::size_t tw = 5;
    for (const auto& r : report) {
        if (!r.testcase.empty()) continue;
        mw = std::max(mw, r.matcher.size());
        tw = std::max(tw, r.track.size());
    }
    std::string out = fmt::format("{:<{}}  {:<{}}  {:>7} {:>7} {:>7}  {:>7} {:>7} {:>7}  {:>6} {:>6} {:>6}\n", "matcher",
                                  mw, "track", tw, "micro-P", "micro-R", "micro-F1", "macro-P", "macro-R", "macro-F1",
                                  "TP", "FP", "FN");
    for (const auto& r : report) {
        if (!r.testcase.empty()) continue;
        out += fmt::format("{:<{}}  {:<{}}  {:>7.4f} {:>7.4f} {:>8.4f}  {:>7.4f} {:>7.4f} {:>8.4f}  {:>6} {:>6} {:>6}\n",
                           r.matcher, mw, r.track, tw, r.micro.precision, r.micro.recall, r.micro.f1,
                           r.macro->precision, r.macro->recall, r.macro->f1, r.counts.tp, r.counts.fp, r.counts.fn);
    }
    return out;
}

}  // namespace aligndash
