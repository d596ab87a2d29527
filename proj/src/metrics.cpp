// SPDX-License-Identifier: Apache-2.0

#include "sinyal/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "sinyal/error.hpp"

namespace sinyal {

ConfusionMatrix confusion(std::span<const std::uint8_t> predictions,
                          std::span<const std::uint8_t> labels) {
    if (predictions.size() != labels.size())
        throw DataError("prediction and label lengths differ: " +
                        std::to_string(predictions.size()) + " vs " +
                        std::to_string(labels.size()));
    if (predictions.empty())
        throw DataError("cannot build a confusion matrix from no predictions");

    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const bool pred = predictions[i] != 0;
        const bool truth = labels[i] != 0;
        if (pred && truth) ++cm.tp;
        else if (pred && !truth) ++cm.fp;
        else if (!pred && truth) ++cm.fn;
        else ++cm.tn;
    }
    return cm;
}

namespace {

std::optional<double> ratio(std::uint64_t num, std::uint64_t denom) {
    if (denom == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(denom);
}

} // namespace

Rates rates(const ConfusionMatrix& cm) {
    Rates r;
    r.sensitivity = ratio(cm.tp, cm.tp + cm.fn);
    r.specificity = ratio(cm.tn, cm.tn + cm.fp);
    r.ppv = ratio(cm.tp, cm.tp + cm.fp);
    r.npv = ratio(cm.tn, cm.tn + cm.fn);
    r.accuracy = ratio(cm.tp + cm.tn, cm.total());
    return r;
}

RocCurve roc(std::span<const ScoredLabel> scored) {
    std::uint64_t positives = 0, negatives = 0;
    for (const ScoredLabel& s : scored) {
        if (!std::isfinite(s.score))
            throw DataError("ROC scores must be finite");
        (s.label ? positives : negatives) += 1;
    }
    if (positives == 0 || negatives == 0)
        throw DataError("ROC needs at least one positive and one negative label");

    std::vector<double> thresholds;
    thresholds.reserve(scored.size());
    for (const ScoredLabel& s : scored) thresholds.push_back(s.score);
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    RocCurve curve;
    curve.points.emplace_back(0.0, 0.0);
    for (double t : thresholds) {
        std::uint64_t tp = 0, fp = 0;
        for (const ScoredLabel& s : scored) {
            if (s.score >= t) (s.label ? tp : fp) += 1;
        }
        const std::pair<double, double> point{static_cast<double>(fp) / negatives,
                                              static_cast<double>(tp) / positives};
        if (point != curve.points.back()) curve.points.push_back(point);
    }
    if (curve.points.back() != std::pair{1.0, 1.0}) curve.points.emplace_back(1.0, 1.0);
    return curve;
}

double auc(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& [x0, y0] = curve.points[i - 1];
        const auto& [x1, y1] = curve.points[i];
        area += (x1 - x0) * (y0 + y1) / 2.0;
    }
    return area;
}

std::string format_percent(double fraction) {
    const double pct = fraction * 100.0;
    const double rounded = std::floor(std::abs(pct) * 10.0 + 0.5) / 10.0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", std::copysign(rounded, pct));
    return buf;
}

namespace {

std::string cell(const std::optional<double>& rate) {
    return rate ? format_percent(*rate) : "NA";
}

std::string auc_cell(const std::optional<double>& value) {
    if (!value) return "NA";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", *value);
    return buf;
}

} // namespace

std::string render_metrics_table(std::span<const MetricsColumn> columns) {
    static const char* kRowNames[] = {"Sensitivity", "Specificity", "Positive Predictive Value",
                                      "Negative Predictive Value", "Accuracy", "AUC", "N"};
    std::ostringstream out;
    auto row = [&](const std::string& name, auto&& value_of) {
        out << name;
        for (std::size_t pad = name.size(); pad < 28; ++pad) out << ' ';
        for (const MetricsColumn& col : columns) {
            const std::string v = value_of(col);
            for (std::size_t pad = v.size(); pad < 12; ++pad) out << ' ';
            out << v;
        }
        out << '\n';
    };
    row("", [](const MetricsColumn& c) { return c.name; });
    row(kRowNames[0], [](const MetricsColumn& c) { return cell(c.rates.sensitivity); });
    row(kRowNames[1], [](const MetricsColumn& c) { return cell(c.rates.specificity); });
    row(kRowNames[2], [](const MetricsColumn& c) { return cell(c.rates.ppv); });
    row(kRowNames[3], [](const MetricsColumn& c) { return cell(c.rates.npv); });
    row(kRowNames[4], [](const MetricsColumn& c) { return cell(c.rates.accuracy); });
    row(kRowNames[5], [](const MetricsColumn& c) { return auc_cell(c.auc); });
    row(kRowNames[6], [](const MetricsColumn& c) { return std::to_string(c.n); });
    return out.str();
}

void write_metrics_csv(const MetricsColumn& column, std::ostream& out) {
    auto num = [](const std::optional<double>& v) -> std::string {
        if (!v) return "NA";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6f", *v);
        return buf;
    };
    out << "metric,value\n";
    out << "n," << column.n << '\n';
    out << "sensitivity," << num(column.rates.sensitivity) << '\n';
    out << "specificity," << num(column.rates.specificity) << '\n';
    out << "ppv," << num(column.rates.ppv) << '\n';
    out << "npv," << num(column.rates.npv) << '\n';
    out << "accuracy," << num(column.rates.accuracy) << '\n';
    out << "auc," << num(column.auc) << '\n';
}

} // namespace sinyal
