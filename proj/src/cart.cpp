// SPDX-License-Identifier: Apache-2.0

#include "sinyal/cart.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "sinyal/error.hpp"
#include "sinyal/rng.hpp"

namespace sinyal {

using nlohmann::json;
using u128 = unsigned __int128;

Dataset Dataset::build(std::vector<std::vector<std::uint32_t>> rows,
                       std::vector<std::uint8_t> labels,
                       std::vector<std::string> feature_names) {
    Dataset d;
    d.n_rows = rows.size();
    d.n_features = feature_names.size();
    d.feature_names = std::move(feature_names);
    d.labels = std::move(labels);
    d.values.reserve(d.n_rows * d.n_features);
    for (const auto& row : rows) {
        if (row.size() != d.n_features)
            throw DataError("feature row length does not match feature count");
        d.values.insert(d.values.end(), row.begin(), row.end());
    }
    d.validate();
    return d;
}

void Dataset::validate() const {
    if (n_rows < 1) throw DataError("dataset has no rows");
    if (n_features < 1) throw DataError("dataset has no features");
    if (values.size() != n_rows * n_features) throw DataError("dataset shape mismatch");
    if (labels.size() != n_rows) throw DataError("label count does not match row count");
    std::unordered_set<std::string_view> names(feature_names.begin(), feature_names.end());
    if (feature_names.size() != n_features || names.size() != n_features)
        throw DataError("feature names must be distinct and match feature count");
}

void FitParams::validate() const {
    if (min_bucket < 1) throw ConfigError("min_bucket must be >= 1");
    if (min_split < 2) throw ConfigError("min_split must be >= 2");
    if (cp < 0.0 || cp > 1.0) throw ConfigError("cp must lie in [0, 1]");
    if (max_depth < 1) throw ConfigError("max_depth must be >= 1");
}

std::vector<std::string> FitParams::warnings() const {
    std::vector<std::string> w;
    if (min_split < 2 * min_bucket)
        w.push_back("min_split (" + std::to_string(min_split) + ") is below 2*min_bucket (" +
                    std::to_string(2 * min_bucket) + "); some splits will be blocked by min_bucket");
    return w;
}

double gini(std::uint64_t n_false, std::uint64_t n_true) {
    const std::uint64_t n = n_false + n_true;
    if (n == 0) throw DataError("gini of an empty node is undefined");
    const double pf = static_cast<double>(n_false) / static_cast<double>(n);
    const double pt = static_cast<double>(n_true) / static_cast<double>(n);
    return 1.0 - pf * pf - pt * pt;
}

namespace {

struct Candidate {
    SplitRule rule;
    u128 score = 0;      // gain * n^2 * n_left * n_right, exact
    std::uint64_t n_left = 0, n_right = 0;
    std::uint64_t node_rows = 0;

    double gain() const {
        const double denom = static_cast<double>(node_rows) * static_cast<double>(node_rows) *
                             static_cast<double>(n_left) * static_cast<double>(n_right);
        return static_cast<double>(score) / denom;
    }
};

// score = n*nR*(fL^2+tL^2) + n*nL*(fR^2+tR^2) - nL*nR*(f^2+t^2)
// which equals the weighted Gini decrease scaled by n^2*nL*nR. Gini is
// concave, so the value is never negative; positive means real gain.
u128 split_score(std::uint64_t f_left, std::uint64_t t_left, std::uint64_t f_right,
                 std::uint64_t t_right) {
    const std::uint64_t n_left = f_left + t_left;
    const std::uint64_t n_right = f_right + t_right;
    const std::uint64_t n = n_left + n_right;
    const std::uint64_t f = f_left + f_right;
    const std::uint64_t t = t_left + t_right;
    const u128 sl = u128(f_left) * f_left + u128(t_left) * t_left;
    const u128 sr = u128(f_right) * f_right + u128(t_right) * t_right;
    const u128 s = u128(f) * f + u128(t) * t;
    return u128(n) * n_right * sl + u128(n) * n_left * sr - u128(n_left) * n_right * s;
}

// a.score/(a.nl*a.nr) > b.score/(b.nl*b.nr), cross-multiplied. The n^2
// factor is shared by candidates of the same node and cancels.
bool strictly_better(const Candidate& a, const Candidate& b) {
    return a.score * (u128(b.n_left) * b.n_right) > b.score * (u128(a.n_left) * a.n_right);
}

std::optional<Candidate> best_split_rows(const Dataset& data,
                                         std::span<const std::uint32_t> rows,
                                         const FitParams& params) {
    const std::uint64_t n = rows.size();
    std::uint64_t t_total = 0;
    for (std::uint32_t r : rows) t_total += data.labels[r];
    const std::uint64_t f_total = n - t_total;

    std::optional<Candidate> best;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> column(rows.size());

    for (std::size_t feature = 0; feature < data.n_features; ++feature) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            column[i] = {data.at(rows[i], feature), data.labels[rows[i]]};
        std::sort(column.begin(), column.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        std::uint64_t f_left = 0, t_left = 0;
        for (std::size_t i = 1; i < column.size(); ++i) {
            f_left += column[i - 1].second == 0;
            t_left += column[i - 1].second == 1;
            if (column[i].first == column[i - 1].first) continue;

            const std::uint64_t n_left = f_left + t_left;
            const std::uint64_t n_right = n - n_left;
            if (n_left < params.min_bucket || n_right < params.min_bucket) continue;

            Candidate cand;
            cand.rule.feature_index = feature;
            cand.rule.threshold =
                (static_cast<double>(column[i - 1].first) + static_cast<double>(column[i].first)) / 2.0;
            cand.n_left = n_left;
            cand.n_right = n_right;
            cand.node_rows = n;
            cand.score = split_score(f_left, t_left, f_total - f_left, t_total - t_left);
            if (cand.score == 0) continue; // no gain
            if (!best || strictly_better(cand, *best)) best = cand;
        }
    }
    return best;
}

std::unique_ptr<TreeNode> grow_node(const Dataset& data, std::vector<std::uint32_t>& rows,
                                    std::uint64_t depth, double root_gini,
                                    const FitParams& params) {
    auto node = std::make_unique<TreeNode>();
    for (std::uint32_t r : rows) ++node->class_counts[data.labels[r]];

    const bool pure = node->class_counts[0] == 0 || node->class_counts[1] == 0;
    if (pure || rows.size() < params.min_split || depth >= params.max_depth)
        return node;

    const std::optional<Candidate> cand = best_split_rows(data, rows, params);
    if (!cand) return node;
    if (cand->gain() < params.cp * root_gini) return node;

    node->split = cand->rule;
    std::vector<std::uint32_t> left_rows, right_rows;
    left_rows.reserve(cand->n_left);
    right_rows.reserve(cand->n_right);
    for (std::uint32_t r : rows) {
        if (static_cast<double>(data.at(r, cand->rule.feature_index)) < cand->rule.threshold)
            left_rows.push_back(r);
        else
            right_rows.push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    node->left = grow_node(data, left_rows, depth + 1, root_gini, params);
    node->right = grow_node(data, right_rows, depth + 1, root_gini, params);
    return node;
}

} // namespace

std::optional<SplitRule> best_split(const Dataset& data, const FitParams& params) {
    data.validate();
    std::vector<std::uint32_t> rows(data.n_rows);
    std::iota(rows.begin(), rows.end(), 0);
    const std::optional<Candidate> cand = best_split_rows(data, rows, params);
    if (!cand) return std::nullopt;
    return cand->rule;
}

Tree grow(const Dataset& data, const FitParams& params) {
    data.validate();
    params.validate();

    std::uint64_t t_total = 0;
    for (std::uint8_t l : data.labels) t_total += l;
    const double root_gini = gini(data.n_rows - t_total, t_total);

    std::vector<std::uint32_t> rows(data.n_rows);
    std::iota(rows.begin(), rows.end(), 0);

    Tree tree;
    tree.feature_names = data.feature_names;
    tree.params = params;
    tree.root = grow_node(data, rows, 0, root_gini, params);
    return tree;
}

namespace {

std::unique_ptr<TreeNode> clone_node(const TreeNode& node) {
    auto copy = std::make_unique<TreeNode>();
    copy->class_counts = node.class_counts;
    copy->split = node.split;
    if (!node.is_leaf()) {
        copy->left = clone_node(*node.left);
        copy->right = clone_node(*node.right);
    }
    return copy;
}

struct LinkStats {
    TreeNode* node;
    std::uint64_t improvement; // R(node as leaf) - sum of leaf errors below
    std::uint64_t n_splits;    // leaves below - 1
};

// Post-order walk: collects (leaf count, subtree error) and the per-split
// improvement of every internal node.
std::pair<std::uint64_t, std::uint64_t> collect_links(TreeNode* node,
                                                      std::vector<LinkStats>& out) {
    if (node->is_leaf()) return {1, node->misclassified()};
    auto [leaves_l, err_l] = collect_links(node->left.get(), out);
    auto [leaves_r, err_r] = collect_links(node->right.get(), out);
    const std::uint64_t leaves = leaves_l + leaves_r;
    const std::uint64_t err = err_l + err_r;
    out.push_back({node, node->misclassified() - err, leaves - 1});
    return {leaves, err};
}

// improvement_a / splits_a < improvement_b / splits_b, exactly.
bool weaker_link(const LinkStats& a, const LinkStats& b) {
    return u128(a.improvement) * b.n_splits < u128(b.improvement) * a.n_splits;
}

} // namespace

Tree prune(const Tree& tree, double cp) {
    if (cp < 0.0 || cp > 1.0) throw ConfigError("cp must lie in [0, 1]");
    Tree out = tree.clone();
    if (cp == 0.0 || out.root->is_leaf()) return out;

    const double root_errors = static_cast<double>(out.root->misclassified());

    for (;;) {
        std::vector<LinkStats> links;
        collect_links(out.root.get(), links);
        if (links.empty()) break;

        const LinkStats* weakest = &links[0];
        for (const LinkStats& l : links) {
            if (weaker_link(l, *weakest)) weakest = &l;
        }
        // survive only with improvement-per-split strictly above cp * R(root);
        // ties collapse, so cp = 1 always reaches a single leaf
        const double threshold = cp * root_errors;
        if (static_cast<double>(weakest->improvement) >
            threshold * static_cast<double>(weakest->n_splits))
            break;

        std::set<const TreeNode*> to_collapse;
        for (const LinkStats& l : links) {
            if (!weaker_link(*weakest, l)) to_collapse.insert(l.node);
        }
        for (const LinkStats& l : links) {
            if (to_collapse.contains(l.node)) {
                l.node->split.reset();
                l.node->left.reset();
                l.node->right.reset();
            }
        }
    }
    return out;
}

namespace {

const TreeNode& route(const Tree& tree, std::span<const std::uint32_t> x) {
    if (x.size() != tree.feature_names.size())
        throw DataError("feature vector has " + std::to_string(x.size()) +
                        " entries, model expects " + std::to_string(tree.feature_names.size()));
    const TreeNode* node = tree.root.get();
    while (!node->is_leaf()) {
        const SplitRule& rule = *node->split;
        node = static_cast<double>(x[rule.feature_index]) < rule.threshold ? node->left.get()
                                                                           : node->right.get();
    }
    return *node;
}

} // namespace

bool predict(const Tree& tree, std::span<const std::uint32_t> x) {
    return route(tree, x).predicted_class();
}

double predict_proba(const Tree& tree, std::span<const std::uint32_t> x) {
    return route(tree, x).p_true();
}

std::pair<Dataset, Dataset> train_valid_split(const Dataset& data, double train_fraction,
                                              std::uint64_t seed) {
    data.validate();
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ConfigError("train_fraction must lie strictly between 0 and 1");

    const std::size_t n = data.n_rows;
    const std::size_t n_train = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) * train_fraction));
    if (n_train == 0 || n_train >= n)
        throw DataError("degenerate train/validation split: " + std::to_string(n_train) + "/" +
                        std::to_string(n - n_train) + " of " + std::to_string(n) + " rows");

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    auto take = [&](std::size_t begin, std::size_t end) {
        Dataset part;
        part.n_rows = end - begin;
        part.n_features = data.n_features;
        part.feature_names = data.feature_names;
        part.values.reserve(part.n_rows * part.n_features);
        part.labels.reserve(part.n_rows);
        for (std::size_t i = begin; i < end; ++i) {
            const auto row = data.row(order[i]);
            part.values.insert(part.values.end(), row.begin(), row.end());
            part.labels.push_back(data.labels[order[i]]);
        }
        return part;
    };
    return {take(0, n_train), take(n_train, n)};
}

std::size_t Tree::node_count() const {
    std::size_t count = 0;
    auto walk = [&](auto&& self, const TreeNode& node) -> void {
        ++count;
        if (!node.is_leaf()) {
            self(self, *node.left);
            self(self, *node.right);
        }
    };
    if (root) walk(walk, *root);
    return count;
}

std::size_t Tree::leaf_count() const {
    std::size_t count = 0;
    auto walk = [&](auto&& self, const TreeNode& node) -> void {
        if (node.is_leaf()) {
            ++count;
        } else {
            self(self, *node.left);
            self(self, *node.right);
        }
    };
    if (root) walk(walk, *root);
    return count;
}

std::size_t Tree::depth() const {
    auto walk = [&](auto&& self, const TreeNode& node) -> std::size_t {
        if (node.is_leaf()) return 0;
        return 1 + std::max(self(self, *node.left), self(self, *node.right));
    };
    return root ? walk(walk, *root) : 0;
}

Tree Tree::clone() const {
    Tree copy;
    copy.feature_names = feature_names;
    copy.params = params;
    copy.binary_features = binary_features;
    if (root) copy.root = clone_node(*root);
    return copy;
}

namespace {

constexpr const char* kModelFormat = "sinyal-cart-model";
constexpr int kModelVersion = 1;

json node_to_json(const TreeNode& node, const std::vector<std::string>& names) {
    json obj;
    obj["counts"] = {node.class_counts[0], node.class_counts[1]};
    if (!node.is_leaf()) {
        obj["split"] = {{"feature", names[node.split->feature_index]},
                        {"threshold", node.split->threshold}};
        obj["left"] = node_to_json(*node.left, names);
        obj["right"] = node_to_json(*node.right, names);
    }
    return obj;
}

std::unique_ptr<TreeNode> node_from_json(const json& obj,
                                         const std::vector<std::string>& names) {
    if (!obj.is_object()) throw DataError("model node is not an object");
    auto node = std::make_unique<TreeNode>();

    const auto counts = obj.find("counts");
    if (counts == obj.end() || !counts->is_array() || counts->size() != 2 ||
        !(*counts)[0].is_number_unsigned() || !(*counts)[1].is_number_unsigned())
        throw DataError("model node counts must be two non-negative integers");
    node->class_counts = {(*counts)[0].get<std::uint64_t>(), (*counts)[1].get<std::uint64_t>()};
    if (node->total() == 0) throw DataError("model node has zero training rows");

    const bool has_split = obj.contains("split");
    if (has_split != obj.contains("left") || has_split != obj.contains("right"))
        throw DataError("model split node must carry split, left and right together");
    if (!has_split) return node;

    const json& split = obj.at("split");
    if (!split.contains("feature") || !split.at("feature").is_string() ||
        !split.contains("threshold") || !split.at("threshold").is_number())
        throw DataError("model split must carry a feature name and numeric threshold");
    const std::string feature = split.at("feature").get<std::string>();
    const auto it = std::find(names.begin(), names.end(), feature);
    if (it == names.end())
        throw DataError("model split references unknown feature '" + feature + "'");
    const double threshold = split.at("threshold").get<double>();
    if (!std::isfinite(threshold)) throw DataError("model split threshold is not finite");

    node->split = SplitRule{static_cast<std::size_t>(it - names.begin()), threshold};
    node->left = node_from_json(obj.at("left"), names);
    node->right = node_from_json(obj.at("right"), names);
    if (node->class_counts[0] != node->left->class_counts[0] + node->right->class_counts[0] ||
        node->class_counts[1] != node->left->class_counts[1] + node->right->class_counts[1])
        throw DataError("model node counts do not equal the sum of its children");
    return node;
}

} // namespace

void save_model(const Tree& tree, const std::string& path) {
    json doc;
    doc["format"] = kModelFormat;
    doc["version"] = kModelVersion;
    doc["params"] = {{"min_split", tree.params.min_split},
                     {"min_bucket", tree.params.min_bucket},
                     {"cp", tree.params.cp},
                     {"max_depth", tree.params.max_depth},
                     {"seed", tree.params.seed}};
    doc["binary_features"] = tree.binary_features;
    doc["feature_names"] = tree.feature_names;
    doc["tree"] = node_to_json(*tree.root, tree.feature_names);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open model file for writing: " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write failure on model file: " + path);
}

Tree load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed model file: ") + e.what());
    }
    if (!doc.is_object() || doc.value("format", "") != kModelFormat)
        throw DataError("not a model file: " + path);
    if (doc.value("version", -1) != kModelVersion)
        throw DataError("unsupported model version in " + path);
    if (!doc.contains("feature_names") || !doc.at("feature_names").is_array())
        throw DataError("model file lacks feature_names");

    Tree tree;
    for (const json& name : doc.at("feature_names")) {
        if (!name.is_string() || name.get<std::string>().empty())
            throw DataError("model feature names must be non-empty strings");
        tree.feature_names.push_back(name.get<std::string>());
    }
    std::unordered_set<std::string_view> distinct(tree.feature_names.begin(),
                                                  tree.feature_names.end());
    if (distinct.size() != tree.feature_names.size() || tree.feature_names.empty())
        throw DataError("model feature names must be distinct and non-empty");

    const json& params = doc.value("params", json::object());
    tree.params.min_split = params.value("min_split", std::uint64_t{20});
    tree.params.min_bucket = params.value("min_bucket", std::uint64_t{7});
    tree.params.cp = params.value("cp", 0.01);
    tree.params.max_depth = params.value("max_depth", std::uint64_t{30});
    tree.params.seed = params.value("seed", std::uint64_t{0});
    tree.params.validate();
    tree.binary_features = doc.value("binary_features", false);

    if (!doc.contains("tree")) throw DataError("model file lacks a tree");
    tree.root = node_from_json(doc.at("tree"), tree.feature_names);
    return tree;
}

} // namespace sinyal
