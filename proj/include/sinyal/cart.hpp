// SPDX-License-Identifier: Apache-2.0

#ifndef SINYAL_CART_HPP
#define SINYAL_CART_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sinyal {

/// Term-count feature matrix with boolean labels.
struct Dataset {
    std::size_t n_rows = 0;
    std::size_t n_features = 0;
    std::vector<std::uint32_t> values; // row-major, n_rows * n_features
    std::vector<std::uint8_t> labels;  // 0 = FALSE, 1 = TRUE
    std::vector<std::string> feature_names;

    std::uint32_t at(std::size_t row, std::size_t col) const {
        return values[row * n_features + col];
    }
    std::span<const std::uint32_t> row(std::size_t r) const {
        return {values.data() + r * n_features, n_features};
    }

    static Dataset build(std::vector<std::vector<std::uint32_t>> rows,
                         std::vector<std::uint8_t> labels,
                         std::vector<std::string> feature_names);

    /// Throws DataError when the invariants do not hold (n >= 1, p >= 1,
    /// rectangular, distinct feature names).
    void validate() const;
};

/// Routing is LEFT iff feature value < threshold, RIGHT otherwise.
struct SplitRule {
    std::size_t feature_index = 0;
    double threshold = 0.0;

    bool operator==(const SplitRule&) const = default;
};

struct TreeNode {
    std::array<std::uint64_t, 2> class_counts{0, 0}; // [n_false, n_true]
    std::optional<SplitRule> split;
    std::unique_ptr<TreeNode> left, right;

    bool is_leaf() const { return !split.has_value(); }
    std::uint64_t total() const { return class_counts[0] + class_counts[1]; }
    /// Majority class; exact tie resolves to FALSE.
    bool predicted_class() const { return class_counts[1] > class_counts[0]; }
    double p_true() const {
        return static_cast<double>(class_counts[1]) / static_cast<double>(total());
    }
    /// Training rows this node would misclassify as a leaf.
    std::uint64_t misclassified() const { return std::min(class_counts[0], class_counts[1]); }
};

struct FitParams {
    std::uint64_t min_split = 20; // fewer rows than this: never split
    std::uint64_t min_bucket = 7; // every child must keep at least this many rows
    double cp = 0.01;             // complexity: split gain must reach cp * root gini
    std::uint64_t max_depth = 30;
    std::uint64_t seed = 0;

    /// Throws ConfigError on invalid values.
    void validate() const;
    /// Non-fatal advisories (e.g. min_split < 2 * min_bucket).
    std::vector<std::string> warnings() const;
};

struct Tree {
    std::unique_ptr<TreeNode> root;
    std::vector<std::string> feature_names;
    FitParams params;
    // true when the model was trained on 0/1 presence instead of raw counts;
    // persisted with the model so prediction vectorizes the same way
    bool binary_features = false;

    std::size_t node_count() const;
    std::size_t leaf_count() const;
    std::size_t depth() const;
    Tree clone() const;
};

/// Gini impurity 1 - p_false^2 - p_true^2; errors when both counts are zero.
double gini(std::uint64_t n_false, std::uint64_t n_true);

/// Best gain-maximizing rule over every feature and every midpoint between
/// consecutive distinct values, children >= min_bucket; ties break to the
/// lowest feature index, then the lowest threshold. Gain comparisons are
/// done in exact integer arithmetic. nullopt when no legal split has
/// positive gain.
std::optional<SplitRule> best_split(const Dataset& data, const FitParams& params);

/// Recursive partitioning; a node becomes a leaf when it is pure, has fewer
/// than min_split rows, sits at max_depth, has no positive-gain legal split,
/// or the best gain fails gain / gini(root) >= cp.
Tree grow(const Dataset& data, const FitParams& params);

/// Weakest-link cost-complexity pruning on training misclassification
/// counts. For cp > 0, an internal node survives only while its improvement
/// per pruned split exceeds cp * (root misclassification count); ties are
/// pruned, so cp = 1 always collapses to a single leaf. cp = 0 leaves the
/// tree unchanged. The result is a structural subtree sharing the root.
Tree prune(const Tree& tree, double cp);

bool predict(const Tree& tree, std::span<const std::uint32_t> x);
double predict_proba(const Tree& tree, std::span<const std::uint32_t> x);

/// Seeded uniform partition without replacement; the first part holds
/// round(n * train_fraction) rows. Errors when either side would be empty.
std::pair<Dataset, Dataset> train_valid_split(const Dataset& data, double train_fraction,
                                              std::uint64_t seed);

/// Versioned JSON model document: params, feature names, nested node tree
/// (split nodes carry feature name + threshold, every node its class
/// counts). Loading validates all structural invariants.
void save_model(const Tree& tree, const std::string& path);
Tree load_model(const std::string& path);

} // namespace sinyal

#endif
