// SPDX-License-Identifier: Apache-2.0

#ifndef SINYAL_METRICS_HPP
#define SINYAL_METRICS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sinyal {

struct ConfusionMatrix {
    std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;

    std::uint64_t total() const { return tp + fp + fn + tn; }

    bool operator==(const ConfusionMatrix&) const = default;
};

/// Predictions and labels as 0/1; equal non-zero lengths required.
ConfusionMatrix confusion(std::span<const std::uint8_t> predictions,
                          std::span<const std::uint8_t> labels);

/// A zero denominator makes that rate undefined (nullopt), never an error.
struct Rates {
    std::optional<double> sensitivity; // tp / (tp + fn)
    std::optional<double> specificity; // tn / (tn + fp)
    std::optional<double> ppv;         // tp / (tp + fp)
    std::optional<double> npv;         // tn / (tn + fn)
    std::optional<double> accuracy;    // (tp + tn) / total
};

Rates rates(const ConfusionMatrix& cm);

struct ScoredLabel {
    double score = 0.0; // classifier p_true
    bool label = false;
};

/// Threshold sweep over the distinct scores, descending; predict TRUE iff
/// score >= threshold. Starts at (0,0), ends at (1,1), consecutive
/// duplicates removed. Requires both classes present.
struct RocCurve {
    std::vector<std::pair<double, double>> points; // (fpr, tpr)
};

RocCurve roc(std::span<const ScoredLabel> scored);

/// Trapezoidal area under the piecewise-linear curve; equals the
/// Mann-Whitney pair statistic of the scores.
double auc(const RocCurve& curve);

/// One decimal, half away from zero: 0.84615 -> "84.6" (Table-style percent).
std::string format_percent(double fraction);

/// One labeled column of the report table.
struct MetricsColumn {
    std::string name; // e.g. "Validation"
    Rates rates;
    std::optional<double> auc;
    std::uint64_t n = 0;
};

/// Plain-text table, metrics as rows and datasets as columns.
std::string render_metrics_table(std::span<const MetricsColumn> columns);

/// `metric,value` rows for a single column; undefined rates print NA.
void write_metrics_csv(const MetricsColumn& column, std::ostream& out);

} // namespace sinyal

#endif
