#include <algorithm>
#include <iterator>
#include <map>
#include <tuple>

#include "aligndash/dashboard.hpp"
#include "parallel.hpp"

namespace aligndash {

namespace {

constexpr std::string_view kControlTokens[kControlKindCount] = {
    "TrackSelector",  "TestCaseSelector", "ConfidenceHistogram", "RelationChart", "MatcherChart",
    "OutcomeChart",   "LeftTypeChart",    "RightTypeChart",      "ResidualChart", "PerTestCaseStack",
    "PerMatcherStack", "MetricTable",     "CorrespondenceTable",
};

const TestCaseInput& lookup(const std::map<std::pair<std::string_view, std::string_view>, const TestCaseInput*>& by_id,
                            const MatcherResult& r) {
    auto it = by_id.find({r.track, r.testcase});
    if (it == by_id.end()) {
        throw DatasetError(DatasetError::Kind::MissingReference, r.track, r.testcase,
                           "no reference alignment for test case " + r.track + "/" + r.testcase);
    }
    return *it->second;
}

void validate(const TestCaseInput& tc) {
    if (!tc.reference) {
        throw DatasetError(DatasetError::Kind::MissingReference, tc.track, tc.id,
                           "no reference alignment for test case " + tc.track + "/" + tc.id);
    }
    if (tc.left == nullptr || tc.right == nullptr) {
        throw DatasetError(DatasetError::Kind::MissingOntology, tc.track, tc.id,
                           "ontologies not loaded for test case " + tc.track + "/" + tc.id);
    }
}

}  // namespace

std::string_view to_token(ControlKind kind) { return kControlTokens[static_cast<std::size_t>(kind)]; }

std::optional<ControlKind> control_from_token(std::string_view token) {
    for (std::size_t i = 0; i < kControlKindCount; ++i) {
        if (kControlTokens[i] == token) return static_cast<ControlKind>(i);
    }
    return std::nullopt;
}

std::vector<ControlKind> all_controls() {
    std::vector<ControlKind> out;
    for (std::size_t i = 0; i < kControlKindCount; ++i) out.push_back(static_cast<ControlKind>(i));
    return out;
}

bool row_less(const AnnotatedCell& a, const AnnotatedCell& b) {
    return std::tie(a.track, a.testcase, a.matcher, a.source, a.target, a.relation.raw()) <
           std::tie(b.track, b.testcase, b.matcher, b.source, b.target, b.relation.raw());
}

DatasetError::DatasetError(Kind kind, std::string track, std::string testcase, const std::string& what)
    : std::runtime_error(what), kind_(kind), track_(std::move(track)), testcase_(std::move(testcase)) {}

std::vector<AnnotatedCell> annotate(const MatcherResult& result, const TestCaseInput& tc) {
    validate(tc);
    const auto classified = classify(result.system, *tc.reference, tc.completeness);
    const KeySet residual = residual_reference(*tc.reference, tc.baseline);

    std::vector<AnnotatedCell> rows;
    rows.reserve(classified.size());
    for (const auto& [cell, outcome] : classified) {
        AnnotatedCell row;
        row.track = tc.track;
        row.testcase = tc.id;
        row.matcher = result.matcher;
        row.source = cell.source;
        row.target = cell.target;
        row.relation = cell.relation;
        row.confidence = cell.confidence;
        row.outcome = outcome;
        row.left_type = tc.left->type_of(cell.source);
        row.right_type = tc.right->type_of(cell.target);
        row.residual = outcome != EvalOutcome::FalsePositive && residual.contains(key_of(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<AnnotatedCell> build_dataset(std::span<const MatcherResult> results,
                                         std::span<const TestCaseInput> testcases, unsigned jobs) {
    std::map<std::pair<std::string_view, std::string_view>, const TestCaseInput*> by_id;
    for (const auto& tc : testcases) by_id[{tc.track, tc.id}] = &tc;

    // Validate up front so the reported error does not depend on scheduling.
    std::vector<const TestCaseInput*> targets;
    targets.reserve(results.size());
    std::map<std::tuple<std::string_view, std::string_view, std::string_view>, bool> seen;
    for (const auto& r : results) {
        const TestCaseInput& tc = lookup(by_id, r);
        validate(tc);
        if (!seen.emplace(std::tuple{std::string_view(r.matcher), std::string_view(r.track),
                                     std::string_view(r.testcase)},
                          true)
                 .second) {
            throw DatasetError(DatasetError::Kind::DuplicateResult, r.track, r.testcase,
                               "duplicate result for matcher " + r.matcher + " on " + r.track + "/" + r.testcase);
        }
        targets.push_back(&tc);
    }

    std::vector<std::vector<AnnotatedCell>> parts(results.size());
    parallel_for(results.size(), jobs, [&](std::size_t i) { parts[i] = annotate(results[i], *targets[i]); });

    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    std::vector<AnnotatedCell> rows;
    rows.reserve(total);
    for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(rows));
    std::sort(rows.begin(), rows.end(), row_less);
    return rows;
}

DashboardSpec default_spec(std::vector<AnnotatedCell> dataset) {
    DashboardSpec spec;
    spec.controls = all_controls();
    spec.confidence_bin_width = 0.05;
    spec.dataset = std::move(dataset);
    return spec;
}

DashboardSpec customize(DashboardSpec spec, std::span<const ControlKind> add, std::span<const ControlKind> remove) {
    std::erase_if(spec.controls, [&](ControlKind k) { return std::find(remove.begin(), remove.end(), k) != remove.end(); });
    for (ControlKind k : add) {
        if (std::find(spec.controls.begin(), spec.controls.end(), k) == spec.controls.end()) spec.controls.push_back(k);
    }
    return spec;
}

}  // namespace aligndash
