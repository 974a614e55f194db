#include <doctest.h>

#include <random>

#include "aligndash/dashboard.hpp"
#include "aligndash/rdf.hpp"
#include "support.hpp"

using namespace aligndash;
using testsupport::cell;

namespace {

AnnotatedCell row(std::string source, EvalOutcome outcome, double confidence = 0.5) {
    AnnotatedCell r;
    r.track = "conference";
    r.testcase = "cmt-ekaw";
    r.matcher = "m1";
    r.source = std::move(source);
    r.target = "http://b.org/o#T";
    r.confidence = confidence;
    r.outcome = outcome;
    r.left_type = ElementType::Class;
    r.right_type = ElementType::Instance;
    return r;
}

struct Fixture {
    OntologyIndex left = load_ontology(
        "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
        "<urn:l:A> a owl:Class . <urn:l:B> a owl:Class . <urn:l:p> a owl:ObjectProperty .",
        rdf::Syntax::Turtle);
    OntologyIndex right = load_ontology(
        "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
        "<urn:r:A> a owl:Class . <urn:r:B> a owl:Class . <urn:r:p> a owl:DatatypeProperty .",
        rdf::Syntax::Turtle);

    TestCaseInput testcase() const {
        TestCaseInput tc;
        tc.track = "t";
        tc.id = "c";
        tc.reference = testsupport::make_alignment({cell("urn:l:A", "urn:r:A"), cell("urn:l:B", "urn:r:B"),
                                                    cell("urn:l:p", "urn:r:p")});
        tc.baseline = testsupport::make_alignment({cell("urn:l:A", "urn:r:A"), cell("urn:l:p", "urn:r:B")});
        tc.left = &left;
        tc.right = &right;
        return tc;
    }
};

}  // namespace

TEST_CASE("control tokens") {
    const auto all = all_controls();
    REQUIRE(all.size() == kControlKindCount);
    CHECK(to_token(all.front()) == "TrackSelector");
    CHECK(to_token(all.back()) == "CorrespondenceTable");
    for (auto k : all) CHECK(control_from_token(to_token(k)) == k);
    CHECK(control_from_token("PieChart") == std::nullopt);
}

TEST_CASE("default spec and customize") {
    DashboardSpec spec = default_spec({});
    CHECK(spec.controls == all_controls());
    CHECK(spec.confidence_bin_width == 0.05);
    const std::vector<ControlKind> remove = {ControlKind::ResidualChart, ControlKind::MetricTable};
    const std::vector<ControlKind> add = {ControlKind::MetricTable, ControlKind::TrackSelector};
    spec = customize(spec, add, remove);
    CHECK(spec.controls.size() == kControlKindCount - 1);
    CHECK(spec.controls.back() == ControlKind::MetricTable);
    CHECK(std::count(spec.controls.begin(), spec.controls.end(), ControlKind::TrackSelector) == 1);
}

TEST_CASE("annotate types, outcomes and residual flags") {
    Fixture f;
    const TestCaseInput tc = f.testcase();
    MatcherResult result{"m", "t", "c",
                         testsupport::make_alignment({cell("urn:l:A", "urn:r:A", "=", 0.9),
                                                      cell("urn:l:B", "urn:r:B", "=", 0.8),
                                                      cell("urn:l:p", "urn:r:A", "=", 0.3)})};
    const auto rows = annotate(result, tc);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].outcome == EvalOutcome::TruePositive);
    CHECK_FALSE(rows[0].residual);  // found by the baseline
    CHECK(rows[1].residual);        // B/B is not in the baseline
    CHECK(rows[2].outcome == EvalOutcome::FalsePositive);
    CHECK_FALSE(rows[2].residual);
    CHECK(rows[2].left_type == ElementType::ObjectProperty);
    CHECK(rows[3].outcome == EvalOutcome::FalseNegative);
    CHECK(rows[3].residual);
    CHECK(rows[3].right_type == ElementType::DatatypeProperty);
}

TEST_CASE("build_dataset is deterministic and validates inputs") {
    Fixture f;
    std::vector<TestCaseInput> tcs = {f.testcase()};
    std::vector<MatcherResult> results;
    std::mt19937_64 rng(3);
    for (int m = 0; m < 8; ++m) {
        Alignment a;
        for (int i = 0; i < 3; ++i) {
            const char* ents[] = {"urn:l:A", "urn:l:B", "urn:l:p"};
            const char* tgts[] = {"urn:r:A", "urn:r:B", "urn:r:p"};
            a.add(cell(ents[rng() % 3], tgts[rng() % 3], "=", (rng() % 100) / 100.0));
        }
        results.push_back({"m" + std::to_string(m), "t", "c", a});
    }
    const auto one = build_dataset(results, tcs, 1);
    const auto many = build_dataset(results, tcs, 8);
    CHECK(one == many);
    CHECK(std::is_sorted(one.begin(), one.end(), row_less));

    std::vector<MatcherResult> bad = {{"m", "t", "nope", {}}};
    CHECK_THROWS_AS(build_dataset(bad, tcs), DatasetError);
    std::vector<MatcherResult> dup = {{"m", "t", "c", {}}, {"m", "t", "c", {}}};
    try {
        build_dataset(dup, tcs);
        FAIL("expected DatasetError");
    } catch (const DatasetError& e) {
        CHECK(e.kind() == DatasetError::Kind::DuplicateResult);
    }
    tcs[0].reference.reset();
    std::vector<MatcherResult> ok = {{"m", "t", "c", {}}};
    try {
        build_dataset(ok, tcs);
        FAIL("expected DatasetError");
    } catch (const DatasetError& e) {
        CHECK(e.kind() == DatasetError::Kind::MissingReference);
        CHECK(e.testcase() == "c");
    }
}

TEST_CASE("confidence formatting") {
    CHECK(format_confidence(1.0) == "1");
    CHECK(format_confidence(0.5) == "0.5");
    CHECK(format_confidence(0.1234567) == "0.123457");
    CHECK(format_confidence(0.0) == "0");
}

TEST_CASE("csv round trip with awkward text") {
    std::vector<AnnotatedCell> rows = {row("http://a.org/o#A,\"quoted\"", EvalOutcome::TruePositive, 0.25),
                                       row("urn:x\nnewline", EvalOutcome::FalseNegative, 1.0),
                                       row("http://a.org/é", EvalOutcome::FalsePositive, 0.000001)};
    rows[1].relation = Relation::parse("skos:broadMatch");
    rows[1].residual = true;
    const std::string csv = write_dataset_csv(rows);
    CHECK(csv.rfind(std::string(kDatasetCsvHeader) + "\n", 0) == 0);
    CHECK(read_dataset_csv(csv) == rows);
    CHECK_THROWS(read_dataset_csv("a,b\n1,2\n"));
    CHECK_THROWS(read_dataset_csv(std::string(kDatasetCsvHeader) + "\nt,c,m,s,t,=,x,TP,CLASS,CLASS,false\n"));
}

TEST_CASE("rendered page is self-contained and carries the dataset") {
    std::vector<AnnotatedCell> rows = {row("http://evil.org/</script><script src=\"http://x.org/a.js\">",
                                           EvalOutcome::TruePositive),
                                       row("a & b <i>", EvalOutcome::FalsePositive, 0.125)};
    DashboardSpec spec = default_spec(rows);
    spec.title = "Run </title> & more";
    const std::string html = render_dashboard(spec);
    CHECK(find_external_references(html).empty());
    CHECK(html.find("<div id=\"aldash-root\">") != std::string::npos);
    CHECK(extract_embedded_dataset(html) == rows);
    CHECK(extract_embedded_controls(html) == all_controls());
    CHECK(html.find("#2ca02c") != std::string::npos);

    const std::vector<ControlKind> remove = {ControlKind::ConfidenceHistogram};
    const auto trimmed = customize(spec, {}, remove);
    CHECK(extract_embedded_controls(render_dashboard(trimmed)).size() == kControlKindCount - 1);

    CHECK_FALSE(find_external_references("<img src=\"https://cdn.example.com/x.png\">").empty());
    CHECK_FALSE(find_external_references("<link href='http://cdn.example.com/x.css'>").empty());
    CHECK_FALSE(find_external_references("<style>a{background:url(http://x.org/i.png)}</style>").empty());
}

TEST_CASE("custom UI bundle replaces the built-in script") {
    RenderOptions options;
    options.ui_script = "window.custom = 1; // </script> guarded";
    const std::string html = render_dashboard(default_spec({}), options);
    CHECK(html.find("window.custom = 1;") != std::string::npos);
    CHECK(html.find("</script> guarded") == std::string::npos);
}

TEST_CASE("invalid specs are rejected") {
    DashboardSpec spec = default_spec({});
    spec.confidence_bin_width = 0.0;
    CHECK_THROWS_AS(render_dashboard(spec), std::invalid_argument);
    spec = default_spec({});
    spec.controls.push_back(ControlKind::MatcherChart);
    CHECK_THROWS_AS(render_dashboard(spec), std::invalid_argument);
}
