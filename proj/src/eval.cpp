#include "aligndash/eval.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <unordered_map>

#include "text_util.hpp"

namespace aligndash {

std::string_view to_token(EvalOutcome outcome) {
    switch (outcome) {
        case EvalOutcome::TruePositive: return "TP";
        case EvalOutcome::FalsePositive: return "FP";
        case EvalOutcome::FalseNegative: return "FN";
    }
    return "FN";
}

std::optional<EvalOutcome> outcome_from_token(std::string_view token) {
    if (token == "TP") return EvalOutcome::TruePositive;
    if (token == "FP") return EvalOutcome::FalsePositive;
    if (token == "FN") return EvalOutcome::FalseNegative;
    return std::nullopt;
}

std::string_view to_string(GoldStandardCompleteness completeness) {
    return completeness == GoldStandardCompleteness::Complete ? "complete" : "partial";
}

std::optional<GoldStandardCompleteness> completeness_from_string(std::string_view text) {
    const std::string lower = ascii_lower(text);
    if (lower == "complete") return GoldStandardCompleteness::Complete;
    if (lower == "partial") return GoldStandardCompleteness::Partial;
    return std::nullopt;
}

std::vector<ClassifiedCell> classify(const Alignment& system, const Alignment& reference,
                                     GoldStandardCompleteness completeness) {
    std::unordered_set<std::string_view> reference_entities;
    if (completeness == GoldStandardCompleteness::Partial) {
        reference_entities.reserve(reference.size() * 2);
        for (const auto& c : reference.cells()) {
            reference_entities.insert(c.source);
            reference_entities.insert(c.target);
        }
    }

    std::vector<ClassifiedCell> rows;
    rows.reserve(system.size() + reference.size());
    for (const auto& c : system.cells()) {
        if (reference.contains(key_of(c))) {
            rows.push_back({c, EvalOutcome::TruePositive});
        } else if (completeness == GoldStandardCompleteness::Complete || reference_entities.contains(c.source) ||
                   reference_entities.contains(c.target)) {
            rows.push_back({c, EvalOutcome::FalsePositive});
        }
    }
    for (const auto& c : reference.cells()) {
        if (!system.contains(key_of(c))) rows.push_back({c, EvalOutcome::FalseNegative});
    }
    return rows;
}

void ConfusionCounts::count(EvalOutcome outcome) {
    switch (outcome) {
        case EvalOutcome::TruePositive: ++tp; break;
        case EvalOutcome::FalsePositive: ++fp; break;
        case EvalOutcome::FalseNegative: ++fn; break;
    }
}

ConfusionCounts confusion(std::span<const ClassifiedCell> rows) {
    ConfusionCounts c;
    for (const auto& row : rows) c.count(row.outcome);
    return c;
}

double f1_score(double precision, double recall) {
    const double sum = precision + recall;
    return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

MetricSet metrics(const ConfusionCounts& c) {
    MetricSet m;
    if (c.tp + c.fp > 0) {
        m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    } else {
        m.precision = c.fn == 0 ? 1.0 : 0.0;
    }
    if (c.tp + c.fn > 0) {
        m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    } else {
        m.recall = c.fp == 0 ? 1.0 : 0.0;
    }
    m.f1 = f1_score(m.precision, m.recall);
    return m;
}

MetricSet micro_average(std::span<const ConfusionCounts> counts) {
    if (counts.empty()) throw EvalError(EvalError::Kind::EmptyInput, "micro_average of an empty list");
    ConfusionCounts sum;
    for (const auto& c : counts) sum += c;
    return metrics(sum);
}

MetricSet macro_average(std::span<const ConfusionCounts> counts, MacroF1Mode mode) {
    if (counts.empty()) throw EvalError(EvalError::Kind::EmptyInput, "macro_average of an empty list");
    double p = 0.0;
    double r = 0.0;
    double f = 0.0;
    for (const auto& c : counts) {
        const MetricSet m = metrics(c);
        p += m.precision;
        r += m.recall;
        f += m.f1;
    }
    const auto n = static_cast<double>(counts.size());
    MetricSet out;
    out.precision = p / n;
    out.recall = r / n;
    out.f1 = mode == MacroF1Mode::MeanOfF1 ? f / n : f1_score(out.precision, out.recall);
    return out;
}

namespace {

std::vector<std::string> baseline_strings(const OntologyIndex& index, const std::string& uri,
                                          const BaselineConfig& config) {
    std::vector<std::string> raw;
    switch (config.source) {
        case BaselineConfig::Source::LabelsAndLocalNames:
            raw = index.labels_of(uri);
            break;
        case BaselineConfig::Source::LocalNamesOnly:
            raw = {index.labels_of(uri).front()};
            break;
        case BaselineConfig::Source::LabelsOnly:
            raw = index.declared_labels(uri);
            break;
    }
    std::vector<std::string> out;
    out.reserve(raw.size());
    for (const auto& s : raw) {
        std::string_view t = trim(s);
        if (t.empty()) continue;
        out.push_back(config.case_sensitive ? std::string(t) : ascii_lower(t));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

Alignment baseline_match(const OntologyIndex& left, const OntologyIndex& right, const BaselineConfig& config) {
    std::unordered_map<std::string, std::vector<const std::string*>> by_label;
    const std::vector<std::string> left_entities = left.entities();
    for (const auto& uri : left_entities) {
        for (auto& label : baseline_strings(left, uri, config)) by_label[std::move(label)].push_back(&uri);
    }

    std::set<std::pair<std::string_view, std::string_view>> pairs;
    const std::vector<std::string> right_entities = right.entities();
    for (const auto& uri : right_entities) {
        for (const auto& label : baseline_strings(right, uri, config)) {
            auto it = by_label.find(label);
            if (it == by_label.end()) continue;
            for (const std::string* source : it->second) pairs.emplace(*source, uri);
        }
    }

    Alignment out;
    out.onto1 = left.origin();
    out.onto2 = right.origin();
    for (const auto& [source, target] : pairs) {
        out.add(Correspondence{std::string(source), std::string(target), Relation::of(RelationKind::Equivalence), 1.0,
                               {}});
    }
    return out;
}

KeySet residual_reference(const Alignment& reference, const Alignment& baseline) {
    KeySet out;
    for (const auto& c : reference.cells()) {
        CellKey key = key_of(c);
        if (!baseline.contains(key)) out.insert(std::move(key));
    }
    return out;
}

Alignment threshold(const Alignment& alignment, double lo, double hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
        throw EvalError(EvalError::Kind::BadInterval,
                        "bad confidence interval [" + format_double(lo) + ", " + format_double(hi) + "]");
    }
    Alignment out = alignment.empty_copy();
    for (const auto& c : alignment.cells()) {
        if (lo <= c.confidence && c.confidence <= hi) out.add(c);
    }
    return out;
}

}  // namespace aligndash
