#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "aligndash/alignment.hpp"
#include "aligndash/ontology_index.hpp"

namespace aligndash {

enum class EvalOutcome { TruePositive, FalsePositive, FalseNegative };

/// "TP", "FP" or "FN".
std::string_view to_token(EvalOutcome outcome);
std::optional<EvalOutcome> outcome_from_token(std::string_view token);

/// A Partial reference is known to be incomplete: system cells whose source
/// and target both never occur in it are not judged at all.
enum class GoldStandardCompleteness { Complete, Partial };

std::string_view to_string(GoldStandardCompleteness completeness);
std::optional<GoldStandardCompleteness> completeness_from_string(std::string_view text);

class EvalError : public std::invalid_argument {
  public:
    enum class Kind { EmptyInput, BadInterval };
    EvalError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

struct ClassifiedCell {
    Correspondence cell;
    EvalOutcome outcome;
};

/// Matches cells on exact (source, target, relation kind). System cells come
/// first in system order (TP or FP, keeping the system confidence), followed
/// by the missed reference cells as FN with the reference confidence.
std::vector<ClassifiedCell> classify(const Alignment& system, const Alignment& reference,
                                     GoldStandardCompleteness completeness = GoldStandardCompleteness::Complete);

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    ConfusionCounts& operator+=(const ConfusionCounts& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        return *this;
    }
    void count(EvalOutcome outcome);

    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion(std::span<const ClassifiedCell> rows);

struct MetricSet {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Harmonic mean, 0 when both inputs are 0.
double f1_score(double precision, double recall);

/// Precision with no system cells is 1 if nothing was missed, else 0; recall
/// with an empty reference is 1 if nothing was wrongly proposed, else 0.
MetricSet metrics(const ConfusionCounts& c);

/// metrics() of the summed counts. Throws EvalError(EmptyInput).
MetricSet micro_average(std::span<const ConfusionCounts> counts);

enum class MacroF1Mode {
    FromMeanPrecisionRecall,  // harmonic mean of macro precision and macro recall
    MeanOfF1,                 // arithmetic mean of per-case F1
};

/// Mean of per-case precision and recall. Throws EvalError(EmptyInput).
MetricSet macro_average(std::span<const ConfusionCounts> counts,
                        MacroF1Mode mode = MacroF1Mode::FromMeanPrecisionRecall);

struct BaselineConfig {
    enum class Source { LabelsAndLocalNames, LocalNamesOnly, LabelsOnly };
    Source source = Source::LabelsAndLocalNames;
    bool case_sensitive = false;
};

/// String-equality matcher: (u, v, =, 1.0) for every left/right entity pair
/// sharing a trimmed (and by default case-folded) label or local name.
/// Output is sorted by (source, target).
Alignment baseline_match(const OntologyIndex& left, const OntologyIndex& right, const BaselineConfig& config = {});

using KeySet = std::unordered_set<CellKey, CellKeyHash>;

/// Keys of reference cells the baseline does not find, i.e. the non-trivial
/// part of the reference.
KeySet residual_reference(const Alignment& reference, const Alignment& baseline);

/// Cells with lo <= confidence <= hi. Throws EvalError(BadInterval) when
/// lo > hi or either bound is NaN.
Alignment threshold(const Alignment& alignment, double lo, double hi);

}  // namespace aligndash
