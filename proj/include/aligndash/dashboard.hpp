#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aligndash/alignment.hpp"
#include "aligndash/eval.hpp"
#include "aligndash/ontology_index.hpp"

namespace aligndash {

/// One row of the dashboard: a correspondence with everything the controls
/// filter on.
struct AnnotatedCell {
    std::string track;
    std::string testcase;
    std::string matcher;
    std::string source;
    std::string target;
    Relation relation;
    double confidence = 1.0;
    EvalOutcome outcome = EvalOutcome::TruePositive;
    ElementType left_type = ElementType::Unknown;
    ElementType right_type = ElementType::Unknown;
    bool residual = false;

    friend bool operator==(const AnnotatedCell&, const AnnotatedCell&) = default;
};

/// Dataset row order: track, testcase, matcher, source, target, relation.
bool row_less(const AnnotatedCell& a, const AnnotatedCell& b);

enum class ControlKind {
    TrackSelector,
    TestCaseSelector,
    ConfidenceHistogram,
    RelationChart,
    MatcherChart,
    OutcomeChart,
    LeftTypeChart,
    RightTypeChart,
    ResidualChart,
    PerTestCaseStack,
    PerMatcherStack,
    MetricTable,
    CorrespondenceTable,
};

inline constexpr std::size_t kControlKindCount = 13;

std::string_view to_token(ControlKind kind);
std::optional<ControlKind> control_from_token(std::string_view token);

/// All control kinds in canonical order.
std::vector<ControlKind> all_controls();

struct DashboardSpec {
    std::string title = "Alignment Evaluation Dashboard";
    std::vector<ControlKind> controls;
    double confidence_bin_width = 0.05;
    std::vector<AnnotatedCell> dataset;
};

// ---- dataset assembly -------------------------------------------------------

struct TestCaseInput {
    std::string track;
    std::string id;
    std::optional<Alignment> reference;
    GoldStandardCompleteness completeness = GoldStandardCompleteness::Complete;
    const OntologyIndex* left = nullptr;
    const OntologyIndex* right = nullptr;
    /// Trivial correspondences; reference cells not in here are residual.
    Alignment baseline;
};

struct MatcherResult {
    std::string matcher;
    std::string track;
    std::string testcase;
    Alignment system;
};

class DatasetError : public std::runtime_error {
  public:
    enum class Kind { MissingReference, MissingOntology, DuplicateResult };
    DatasetError(Kind kind, std::string track, std::string testcase, const std::string& what);

    Kind kind() const { return kind_; }
    const std::string& track() const { return track_; }
    const std::string& testcase() const { return testcase_; }

  private:
    Kind kind_;
    std::string track_;
    std::string testcase_;
};

/// Classifies every result against its test case and annotates the rows with
/// element types and residual flags. Pairs are evaluated on up to `jobs`
/// threads; the output is sorted with row_less regardless.
std::vector<AnnotatedCell> build_dataset(std::span<const MatcherResult> results,
                                         std::span<const TestCaseInput> testcases, unsigned jobs = 1);

/// Rows for a single (matcher, test case) pair.
std::vector<AnnotatedCell> annotate(const MatcherResult& result, const TestCaseInput& testcase);

// ---- layout -----------------------------------------------------------------

/// Every control in canonical order, bins of width 0.05.
DashboardSpec default_spec(std::vector<AnnotatedCell> dataset);

/// Removes `remove`, then appends each of `add` that is not already present.
DashboardSpec customize(DashboardSpec spec, std::span<const ControlKind> add, std::span<const ControlKind> remove);

// ---- output -----------------------------------------------------------------

inline constexpr std::string_view kDatasetCsvHeader =
    "track,testcase,matcher,source,target,relation,confidence,outcome,left_type,right_type,residual";

/// Confidence text as exported: at most 6 decimals, trailing zeros dropped.
std::string format_confidence(double confidence);

std::string write_dataset_csv(std::span<const AnnotatedCell> rows);

/// Inverse of write_dataset_csv. Throws std::runtime_error on malformed input.
std::vector<AnnotatedCell> read_dataset_csv(std::string_view csv);

struct RenderOptions {
    /// Replacement UI script and stylesheet; empty selects the built-in ones.
    std::string ui_script;
    std::string ui_style;
};

/// One self-contained HTML document: stylesheet, configuration, dataset and
/// script are all inline. Throws std::invalid_argument for a spec with a
/// non-positive bin width or duplicate controls.
std::string render_dashboard(const DashboardSpec& spec, const RenderOptions& options = {});

void write_dashboard(const std::filesystem::path& path, const DashboardSpec& spec, const RenderOptions& options = {});

// ---- inspection of rendered pages ----------------------------------------------

std::vector<AnnotatedCell> extract_embedded_dataset(std::string_view html);
std::vector<ControlKind> extract_embedded_controls(std::string_view html);

/// Every `src=`/`href=` attribute or CSS `url(` that points at http(s).
std::vector<std::string> find_external_references(std::string_view html);

}  // namespace aligndash
