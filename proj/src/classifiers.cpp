#include "strokeminer/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "strokeminer/rng.hpp"

namespace strokeminer {

namespace {

constexpr const char* kModelHeader = "strokeminer-model v1";

std::vector<long> count_classes(const Dataset& ds, std::span<const int> indices) {
    std::vector<long> counts(ds.class_alphabet.size(), 0);
    for (int i : indices) {
        counts[static_cast<std::size_t>(
            ds.class_index(ds.instances[static_cast<std::size_t>(i)].label))]++;
    }
    return counts;
}

int majority_index(const std::vector<long>& counts, int fallback) {
    long best = 0;
    int arg = -1;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] > best) {  // strict: count ties keep the lowest class index
            best = counts[c];
            arg = static_cast<int>(c);
        }
    }
    return arg < 0 ? fallback : arg;
}

// Split statistics from count vectors. The arithmetic below (accumulation in
// class-index order, gain evaluated as H - (nl/n)*Hl - (nr/n)*Hr left to
// right) is the canonical evaluation order that independent oracles follow,
// so equal partitions produce bit-equal statistics.
double entropy_of(const std::vector<long>& counts, long total) {
    double h = 0.0;
    for (long c : counts) {
        if (c > 0) {
            double p = static_cast<double>(c) / static_cast<double>(total);
            h -= p * std::log2(p);
        }
    }
    return h;
}

SplitCandidate candidate_from_counts(const std::vector<long>& total_counts,
                                     const std::vector<long>& left_counts,
                                     long n, int attribute, double threshold) {
    long nl = std::accumulate(left_counts.begin(), left_counts.end(), 0L);
    long nr = n - nl;
    std::vector<long> right_counts(total_counts.size());
    for (std::size_t c = 0; c < total_counts.size(); ++c) {
        right_counts[c] = total_counts[c] - left_counts[c];
    }
    double wl = static_cast<double>(nl) / static_cast<double>(n);
    double wr = static_cast<double>(nr) / static_cast<double>(n);
    SplitCandidate cand;
    cand.attribute = attribute;
    cand.threshold = threshold;
    cand.info_gain = entropy_of(total_counts, n) -
                     wl * entropy_of(left_counts, nl) -
                     wr * entropy_of(right_counts, nr);
    cand.split_info = -(wl * std::log2(wl)) - (wr * std::log2(wr));
    cand.gain_ratio = cand.info_gain / cand.split_info;
    return cand;
}

// All midpoint candidates of the node, enumerated attribute-major with
// thresholds ascending. This enumeration order is part of the tie-break
// contract.
std::vector<SplitCandidate> enumerate_candidates(const Dataset& ds,
                                                 std::span<const int> indices) {
    const long n = static_cast<long>(indices.size());
    const std::vector<long> total_counts = count_classes(ds, indices);
    std::vector<SplitCandidate> candidates;

    std::vector<int> order(indices.begin(), indices.end());
    for (int attr = 0; attr < ds.attribute_count(); ++attr) {
        auto value_of = [&](int i) {
            return ds.instances[static_cast<std::size_t>(i)]
                .features[static_cast<std::size_t>(attr)];
        };
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return value_of(a) < value_of(b);
        });
        std::vector<long> left_counts(ds.class_alphabet.size(), 0);
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            left_counts[static_cast<std::size_t>(ds.class_index(
                ds.instances[static_cast<std::size_t>(order[i])].label))]++;
            double v = value_of(order[i]);
            double next = value_of(order[i + 1]);
            if (v == next) continue;
            double threshold = (v + next) / 2.0;
            // Midpoints of adjacent doubles can round up to `next`, which
            // would move `next` into the left side; fall back to v.
            if (threshold >= next) threshold = v;
            candidates.push_back(
                candidate_from_counts(total_counts, left_counts, n, attr, threshold));
        }
    }
    return candidates;
}

// Gain-ratio selection under the mean-gain admissibility guard. Returns an
// index into `candidates` or -1 when nothing is admissible.
int select_candidate(const std::vector<SplitCandidate>& candidates) {
    if (candidates.empty()) return -1;
    double gain_sum = 0.0;
    for (const SplitCandidate& c : candidates) gain_sum += c.info_gain;
    double mean_gain = gain_sum / static_cast<double>(candidates.size());

    int best = -1;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].info_gain < mean_gain) continue;
        if (best < 0 || candidates[i].gain_ratio >
                            candidates[static_cast<std::size_t>(best)].gain_ratio) {
            best = static_cast<int>(i);  // strict >: enumeration order breaks ties
        }
    }
    return best;
}

void partition_indices(const Dataset& ds, std::span<const int> indices, int attr,
                       double threshold, std::vector<int>& left,
                       std::vector<int>& right) {
    for (int i : indices) {
        double v = ds.instances[static_cast<std::size_t>(i)]
                       .features[static_cast<std::size_t>(attr)];
        (v <= threshold ? left : right).push_back(i);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Primitives
// ---------------------------------------------------------------------------

double entropy(std::span<const long> class_counts) {
    long total = 0;
    for (long c : class_counts) {
        if (c < 0) throw std::invalid_argument("negative class count");
        total += c;
    }
    if (total == 0) throw EmptyPartition("entropy of an all-zero count vector");
    double h = 0.0;
    for (long c : class_counts) {
        if (c > 0) {
            double p = static_cast<double>(c) / static_cast<double>(total);
            h -= p * std::log2(p);
        }
    }
    return h;
}

SplitCandidate evaluate_split(const Dataset& ds, int attribute, double threshold) {
    if (ds.instances.empty()) throw EmptyDataset("evaluate_split on empty dataset");
    if (attribute < 0 || attribute >= ds.attribute_count()) {
        throw SchemaError("attribute index out of range");
    }
    const long n = ds.size();
    std::vector<long> total_counts(ds.class_alphabet.size(), 0);
    std::vector<long> left_counts(ds.class_alphabet.size(), 0);
    long nl = 0;
    for (const FeatureWindow& w : ds.instances) {
        std::size_t c = static_cast<std::size_t>(ds.class_index(w.label));
        total_counts[c]++;
        if (w.features[static_cast<std::size_t>(attribute)] <= threshold) {
            left_counts[c]++;
            ++nl;
        }
    }
    if (nl == 0 || nl == n) {
        throw DegenerateSplit("threshold " + format_double(threshold) +
                              " leaves one side of attribute " +
                              ds.schema[static_cast<std::size_t>(attribute)] +
                              " empty");
    }
    return candidate_from_counts(total_counts, left_counts, n, attribute, threshold);
}

// ---------------------------------------------------------------------------
// C4.5
// ---------------------------------------------------------------------------

int TreeNode::node_count() const {
    if (is_leaf()) return 1;
    return 1 + left->node_count() + right->node_count();
}

std::unique_ptr<TreeNode> TreeNode::clone() const {
    auto copy = std::make_unique<TreeNode>();
    copy->attribute = attribute;
    copy->threshold = threshold;
    copy->class_counts = class_counts;
    copy->majority = majority;
    if (!is_leaf()) {
        copy->left = left->clone();
        copy->right = right->clone();
    }
    return copy;
}

namespace {

std::unique_ptr<TreeNode> make_leaf(std::vector<long> counts, int parent_majority) {
    auto leaf = std::make_unique<TreeNode>();
    leaf->majority = majority_index(counts, parent_majority);
    leaf->class_counts = std::move(counts);
    return leaf;
}

std::unique_ptr<TreeNode> build_c45(const Dataset& ds, std::span<const int> indices,
                                    const C45Params& params, int parent_majority) {
    std::vector<long> counts = count_classes(ds, indices);
    const long n = static_cast<long>(indices.size());
    bool pure = std::count_if(counts.begin(), counts.end(),
                              [](long c) { return c > 0; }) <= 1;
    if (pure || n < 2L * params.min_leaf) {
        return make_leaf(std::move(counts), parent_majority);
    }

    auto candidates = enumerate_candidates(ds, indices);
    int chosen = select_candidate(candidates);
    if (chosen < 0) {
        return make_leaf(std::move(counts), parent_majority);
    }
    const SplitCandidate& split = candidates[static_cast<std::size_t>(chosen)];

    std::vector<int> left, right;
    partition_indices(ds, indices, split.attribute, split.threshold, left, right);

    auto node = std::make_unique<TreeNode>();
    node->attribute = split.attribute;
    node->threshold = split.threshold;
    int node_majority = majority_index(counts, parent_majority);
    node->majority = node_majority;
    node->class_counts = std::move(counts);
    node->left = build_c45(ds, left, params, node_majority);
    node->right = build_c45(ds, right, params, node_majority);
    return node;
}

}  // namespace

DecisionTree train_c45(const Dataset& ds, const C45Params& params) {
    if (ds.instances.empty()) throw EmptyDataset("train_c45 on empty dataset");
    std::vector<int> indices(static_cast<std::size_t>(ds.size()));
    std::iota(indices.begin(), indices.end(), 0);

    DecisionTree tree;
    tree.schema = ds.schema;
    tree.classes = ds.class_alphabet;
    tree.root = build_c45(ds, indices, params, 0);
    if (params.prune) {
        return prune_tree(tree, ds, params.cf);
    }
    return tree;
}

// ---------------------------------------------------------------------------
// Pessimistic pruning
// ---------------------------------------------------------------------------

namespace {

double binomial_cdf(long errors, long n, double p) {
    // sum_{i=0..errors} C(n,i) p^i (1-p)^(n-i), evaluated in log space.
    double cdf = 0.0;
    double log_p = std::log(p);
    double log_q = std::log1p(-p);
    double lgamma_n1 = std::lgamma(static_cast<double>(n) + 1.0);
    for (long i = 0; i <= errors; ++i) {
        double log_term = lgamma_n1 - std::lgamma(static_cast<double>(i) + 1.0) -
                          std::lgamma(static_cast<double>(n - i) + 1.0) +
                          static_cast<double>(i) * log_p +
                          static_cast<double>(n - i) * log_q;
        cdf += std::exp(log_term);
    }
    return cdf;
}

}  // namespace

double pessimistic_errors(long errors, long n, double cf) {
    if (n <= 0) return 0.0;
    if (cf <= 0.0 || cf > 1.0) throw std::invalid_argument("cf must be in (0, 1]");
    double observed = static_cast<double>(errors) / static_cast<double>(n);
    if (errors >= n) return static_cast<double>(n);

    // Invert P(Binomial(n, p) <= errors) = cf for p; the CDF decreases in p.
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
        double mid = (lo + hi) / 2.0;
        if (binomial_cdf(errors, n, mid) >= cf) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double upper = (lo + hi) / 2.0;
    return static_cast<double>(n) * std::max(observed, upper);
}

namespace {

double prune_node(TreeNode& node, const Dataset& ds, std::span<const int> reached,
                  double cf) {
    std::vector<long> counts = count_classes(ds, reached);
    const long n = static_cast<long>(reached.size());
    long errors = n;
    for (long c : counts) errors = std::min(errors, n - c);

    if (node.is_leaf()) {
        return pessimistic_errors(errors, n, cf);
    }

    std::vector<int> left, right;
    partition_indices(ds, reached, node.attribute, node.threshold, left, right);
    double subtree_errors = prune_node(*node.left, ds, left, cf) +
                            prune_node(*node.right, ds, right, cf);
    double leaf_errors = pessimistic_errors(errors, n, cf);
    if (leaf_errors <= subtree_errors) {
        node.left.reset();
        node.right.reset();
        node.attribute = -1;
        node.threshold = 0.0;
        node.majority = majority_index(counts, node.majority);
        node.class_counts = std::move(counts);
        return leaf_errors;
    }
    return subtree_errors;
}

}  // namespace

DecisionTree prune_tree(const DecisionTree& tree, const Dataset& ds, double cf) {
    DecisionTree pruned;
    pruned.schema = tree.schema;
    pruned.classes = tree.classes;
    pruned.root = tree.root->clone();
    std::vector<int> indices(static_cast<std::size_t>(ds.size()));
    std::iota(indices.begin(), indices.end(), 0);
    prune_node(*pruned.root, ds, indices, cf);
    return pruned;
}

// ---------------------------------------------------------------------------
// Prediction
// ---------------------------------------------------------------------------

namespace {

Prediction leaf_prediction(const TreeNode& leaf,
                           const std::vector<SkillClass>& classes) {
    Prediction pred;
    pred.label = classes[static_cast<std::size_t>(leaf.majority)];
    long total = std::accumulate(leaf.class_counts.begin(),
                                 leaf.class_counts.end(), 0L);
    if (total == 0) {
        pred.distribution[static_cast<std::size_t>(pred.label)] = 1.0;
        return pred;
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
        pred.distribution[static_cast<std::size_t>(classes[c])] =
            static_cast<double>(leaf.class_counts[c]) / static_cast<double>(total);
    }
    return pred;
}

}  // namespace

Prediction predict_tree(const DecisionTree& tree, std::span<const double> features) {
    if (features.size() != tree.schema.size()) {
        throw SchemaError("feature vector length " + std::to_string(features.size()) +
                          " does not match schema length " +
                          std::to_string(tree.schema.size()));
    }
    const TreeNode* node = tree.root.get();
    while (!node->is_leaf()) {
        node = features[static_cast<std::size_t>(node->attribute)] <= node->threshold
                   ? node->left.get()
                   : node->right.get();
    }
    return leaf_prediction(*node, tree.classes);
}

// ---------------------------------------------------------------------------
// Gaussian naive Bayes
// ---------------------------------------------------------------------------

namespace {

NaiveBayesModel fit_nb_on(const Dataset& ds, std::span<const int> indices) {
    if (indices.empty()) throw EmptyDataset("fit_naive_bayes on empty dataset");
    NaiveBayesModel model;
    model.attribute_count = ds.attribute_count();
    const std::vector<long> counts = count_classes(ds, indices);
    long represented = std::count_if(counts.begin(), counts.end(),
                                     [](long c) { return c > 0; });
    const long n = static_cast<long>(indices.size());

    for (std::size_t c = 0; c < ds.class_alphabet.size(); ++c) {
        if (counts[c] == 0) continue;
        NaiveBayesModel::ClassStats stats;
        stats.cls = ds.class_alphabet[c];
        stats.count = counts[c];
        stats.prior = static_cast<double>(counts[c] + 1) /
                      static_cast<double>(n + represented);
        stats.mean.assign(static_cast<std::size_t>(model.attribute_count), 0.0);
        stats.variance.assign(static_cast<std::size_t>(model.attribute_count), 0.0);
        for (int i : indices) {
            const FeatureWindow& w = ds.instances[static_cast<std::size_t>(i)];
            if (w.label != stats.cls) continue;
            for (int a = 0; a < model.attribute_count; ++a) {
                stats.mean[static_cast<std::size_t>(a)] +=
                    w.features[static_cast<std::size_t>(a)];
            }
        }
        for (double& m : stats.mean) m /= static_cast<double>(counts[c]);
        for (int i : indices) {
            const FeatureWindow& w = ds.instances[static_cast<std::size_t>(i)];
            if (w.label != stats.cls) continue;
            for (int a = 0; a < model.attribute_count; ++a) {
                double d = w.features[static_cast<std::size_t>(a)] -
                           stats.mean[static_cast<std::size_t>(a)];
                stats.variance[static_cast<std::size_t>(a)] += d * d;
            }
        }
        for (double& v : stats.variance) {
            v = std::max(v / static_cast<double>(counts[c]), kVarianceFloor);
        }
        model.classes.push_back(std::move(stats));
    }
    return model;
}

}  // namespace

NaiveBayesModel fit_naive_bayes(const Dataset& ds) {
    std::vector<int> indices(static_cast<std::size_t>(ds.size()));
    std::iota(indices.begin(), indices.end(), 0);
    return fit_nb_on(ds, indices);
}

Prediction predict_nb(const NaiveBayesModel& model, std::span<const double> features) {
    if (static_cast<int>(features.size()) != model.attribute_count) {
        throw SchemaError("feature vector length " + std::to_string(features.size()) +
                          " does not match model attribute count " +
                          std::to_string(model.attribute_count));
    }
    constexpr double kLog2Pi = 1.8378770664093453;  // log(2*pi)
    std::vector<double> log_post(model.classes.size());
    for (std::size_t c = 0; c < model.classes.size(); ++c) {
        const auto& stats = model.classes[c];
        double lp = std::log(stats.prior);
        for (std::size_t a = 0; a < features.size(); ++a) {
            double var = stats.variance[a];
            double d = features[a] - stats.mean[a];
            lp += -0.5 * (kLog2Pi + std::log(var)) - d * d / (2.0 * var);
        }
        log_post[c] = lp;
    }
    // Softmax with the max shifted out; invariant to adding any constant.
    double peak = *std::max_element(log_post.begin(), log_post.end());
    double norm = 0.0;
    for (double lp : log_post) norm += std::exp(lp - peak);

    Prediction pred;
    std::size_t best = 0;
    for (std::size_t c = 0; c < model.classes.size(); ++c) {
        double p = std::exp(log_post[c] - peak) / norm;
        pred.distribution[static_cast<std::size_t>(model.classes[c].cls)] = p;
        if (log_post[c] > log_post[best]) best = c;
    }
    pred.label = model.classes[best].cls;
    return pred;
}

// ---------------------------------------------------------------------------
// NBTree
// ---------------------------------------------------------------------------

namespace {

double nb_accuracy_on(const Dataset& ds, const NaiveBayesModel& model,
                      std::span<const int> indices) {
    long correct = 0;
    for (int i : indices) {
        const FeatureWindow& w = ds.instances[static_cast<std::size_t>(i)];
        if (predict_nb(model, w.features).label == w.label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(indices.size());
}

// Stratified cross-validated accuracy of one NB model over `indices`.
// Falls back to resubstitution when the node is too small to fold.
double nb_cv_accuracy(const Dataset& ds, std::span<const int> indices, int folds,
                      std::uint64_t seed) {
    const int n = static_cast<int>(indices.size());
    folds = std::min(folds, n);
    if (folds < 2) {
        return nb_accuracy_on(ds, fit_nb_on(ds, indices), indices);
    }

    std::vector<int> fold_of(indices.size());
    for (std::size_t c = 0; c < ds.class_alphabet.size(); ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < indices.size(); ++i) {
            const FeatureWindow& w =
                ds.instances[static_cast<std::size_t>(indices[i])];
            if (ds.class_index(w.label) == static_cast<int>(c)) members.push_back(i);
        }
        seeded_shuffle(members, derive_seed(seed, c));
        for (std::size_t i = 0; i < members.size(); ++i) {
            fold_of[members[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
        }
    }

    long correct = 0;
    for (int f = 0; f < folds; ++f) {
        std::vector<int> train, test;
        for (std::size_t i = 0; i < indices.size(); ++i) {
            (fold_of[i] == f ? test : train).push_back(indices[i]);
        }
        if (test.empty()) continue;
        if (train.empty()) continue;  // cannot happen with folds >= 2
        NaiveBayesModel model = fit_nb_on(ds, train);
        for (int i : test) {
            const FeatureWindow& w = ds.instances[static_cast<std::size_t>(i)];
            if (predict_nb(model, w.features).label == w.label) ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(n);
}

std::unique_ptr<NBTreeNode> build_nbtree(const Dataset& ds,
                                         std::span<const int> indices,
                                         const NBTreeParams& params,
                                         std::uint64_t node_seed) {
    auto leaf = [&]() {
        auto node = std::make_unique<NBTreeNode>();
        node->leaf_model = fit_nb_on(ds, indices);
        return node;
    };

    const long n = static_cast<long>(indices.size());
    if (n < params.min_node) return leaf();

    double leaf_acc = nb_cv_accuracy(ds, indices, params.cv_folds, node_seed);
    double err_leaf = 1.0 - leaf_acc;
    if (err_leaf <= 0.0) return leaf();

    // Per attribute, two midpoints enter the utility contest: the
    // max-info-gain one and the median one. The median candidate covers
    // class layouts whose useful split carries no marginal information
    // gain (XOR-style blobs). Candidates then compete on instance-weighted
    // child NB CV accuracy, enumerated attribute-major with thresholds
    // ascending so ties resolve to the lowest attribute, lowest threshold.
    auto candidates = enumerate_candidates(ds, indices);
    std::vector<SplitCandidate> per_attr;
    for (std::size_t lo = 0; lo < candidates.size();) {
        std::size_t hi = lo;
        while (hi < candidates.size() &&
               candidates[hi].attribute == candidates[lo].attribute) {
            ++hi;
        }
        std::size_t best_gain = lo;
        for (std::size_t i = lo; i < hi; ++i) {
            if (candidates[i].info_gain > candidates[best_gain].info_gain) {
                best_gain = i;  // strict: gain ties keep the lowest threshold
            }
        }
        std::size_t median = lo + (hi - lo) / 2;
        std::size_t first = std::min(best_gain, median);
        std::size_t second = std::max(best_gain, median);
        per_attr.push_back(candidates[first]);
        if (second != first) per_attr.push_back(candidates[second]);
        lo = hi;
    }

    double best_utility = -1.0;
    SplitCandidate best_split;
    std::vector<int> best_left, best_right;
    for (std::size_t k = 0; k < per_attr.size(); ++k) {
        const SplitCandidate& cand = per_attr[k];
        std::vector<int> left, right;
        partition_indices(ds, indices, cand.attribute, cand.threshold, left, right);
        double acc_l = nb_cv_accuracy(ds, left, params.cv_folds,
                                      derive_seed(node_seed, 2 * k));
        double acc_r = nb_cv_accuracy(ds, right, params.cv_folds,
                                      derive_seed(node_seed, 2 * k + 1));
        double utility = (static_cast<double>(left.size()) * acc_l +
                          static_cast<double>(right.size()) * acc_r) /
                         static_cast<double>(n);
        if (utility > best_utility) {  // strict: ties keep the lowest attribute
            best_utility = utility;
            best_split = cand;
            best_left = std::move(left);
            best_right = std::move(right);
        }
    }
    if (best_utility < 0.0) return leaf();

    double err_split = 1.0 - best_utility;
    double relative_reduction = (err_leaf - err_split) / err_leaf;
    if (relative_reduction <= params.min_split_gain) return leaf();

    auto node = std::make_unique<NBTreeNode>();
    node->attribute = best_split.attribute;
    node->threshold = best_split.threshold;
    node->left = build_nbtree(ds, best_left, params, derive_seed(node_seed, 1000001));
    node->right = build_nbtree(ds, best_right, params, derive_seed(node_seed, 1000002));
    return node;
}

}  // namespace

int NBTreeNode::node_count() const {
    if (is_leaf()) return 1;
    return 1 + left->node_count() + right->node_count();
}

NBTree train_nbtree(const Dataset& ds, const NBTreeParams& params) {
    if (ds.instances.empty()) throw EmptyDataset("train_nbtree on empty dataset");
    std::vector<int> indices(static_cast<std::size_t>(ds.size()));
    std::iota(indices.begin(), indices.end(), 0);
    NBTree tree;
    tree.schema = ds.schema;
    tree.classes = ds.class_alphabet;
    tree.root = build_nbtree(ds, indices, params, params.seed);
    return tree;
}

Prediction predict_nbtree(const NBTree& model, std::span<const double> features) {
    if (features.size() != model.schema.size()) {
        throw SchemaError("feature vector length " + std::to_string(features.size()) +
                          " does not match schema length " +
                          std::to_string(model.schema.size()));
    }
    const NBTreeNode* node = model.root.get();
    while (!node->is_leaf()) {
        node = features[static_cast<std::size_t>(node->attribute)] <= node->threshold
                   ? node->left.get()
                   : node->right.get();
    }
    return predict_nb(node->leaf_model, features);
}

// ---------------------------------------------------------------------------
// Model container
// ---------------------------------------------------------------------------

Prediction predict(const Model& model, std::span<const double> features) {
    return std::visit(
        [&](const auto& m) -> Prediction {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DecisionTree>) {
                return predict_tree(m, features);
            } else {
                return predict_nbtree(m, features);
            }
        },
        model);
}

std::string_view learner_name(const Model& model) {
    return std::holds_alternative<DecisionTree>(model) ? "c45" : "nbtree";
}

const std::vector<SkillClass>& model_classes(const Model& model) {
    return std::visit([](const auto& m) -> const std::vector<SkillClass>& {
        return m.classes;
    }, model);
}

const std::vector<std::string>& model_schema(const Model& model) {
    return std::visit([](const auto& m) -> const std::vector<std::string>& {
        return m.schema;
    }, model);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json tree_node_to_json(const TreeNode& node,
                               const std::vector<std::string>& schema,
                               const std::vector<SkillClass>& classes) {
    ordered_json doc;
    if (node.is_leaf()) {
        ordered_json counts;
        for (std::size_t c = 0; c < classes.size(); ++c) {
            counts[std::string(to_string(classes[c]))] = node.class_counts[c];
        }
        doc["counts"] = std::move(counts);
        doc["majority"] =
            std::string(to_string(classes[static_cast<std::size_t>(node.majority)]));
        return doc;
    }
    doc["split"] = schema[static_cast<std::size_t>(node.attribute)];
    doc["threshold"] = node.threshold;
    doc["left"] = tree_node_to_json(*node.left, schema, classes);
    doc["right"] = tree_node_to_json(*node.right, schema, classes);
    return doc;
}

ordered_json nb_to_json(const NaiveBayesModel& model) {
    ordered_json doc;
    ordered_json class_array = ordered_json::array();
    for (const auto& stats : model.classes) {
        ordered_json entry;
        entry["class"] = std::string(to_string(stats.cls));
        entry["count"] = stats.count;
        entry["prior"] = stats.prior;
        entry["mean"] = stats.mean;
        entry["variance"] = stats.variance;
        class_array.push_back(std::move(entry));
    }
    doc["classes"] = std::move(class_array);
    return doc;
}

ordered_json nbtree_node_to_json(const NBTreeNode& node,
                                 const std::vector<std::string>& schema) {
    ordered_json doc;
    if (node.is_leaf()) {
        doc["nb"] = nb_to_json(node.leaf_model);
        return doc;
    }
    doc["split"] = schema[static_cast<std::size_t>(node.attribute)];
    doc["threshold"] = node.threshold;
    doc["left"] = nbtree_node_to_json(*node.left, schema);
    doc["right"] = nbtree_node_to_json(*node.right, schema);
    return doc;
}

int schema_index(const std::vector<std::string>& schema, const std::string& name) {
    auto it = std::find(schema.begin(), schema.end(), name);
    if (it == schema.end()) {
        throw FormatError("model references unknown attribute '" + name + "'");
    }
    return static_cast<int>(it - schema.begin());
}

int class_position(const std::vector<SkillClass>& classes, SkillClass cls) {
    auto it = std::find(classes.begin(), classes.end(), cls);
    if (it == classes.end()) {
        throw FormatError("model references class outside its alphabet");
    }
    return static_cast<int>(it - classes.begin());
}

std::unique_ptr<TreeNode> tree_node_from_json(const ordered_json& doc,
                                              const std::vector<std::string>& schema,
                                              const std::vector<SkillClass>& classes) {
    auto node = std::make_unique<TreeNode>();
    if (doc.contains("split")) {
        node->attribute = schema_index(schema, doc.at("split").get<std::string>());
        node->threshold = doc.at("threshold").get<double>();
        node->left = tree_node_from_json(doc.at("left"), schema, classes);
        node->right = tree_node_from_json(doc.at("right"), schema, classes);
        return node;
    }
    node->class_counts.assign(classes.size(), 0);
    for (const auto& [key, value] : doc.at("counts").items()) {
        node->class_counts[static_cast<std::size_t>(
            class_position(classes, skill_from_string(key)))] = value.get<long>();
    }
    node->majority = class_position(
        classes, skill_from_string(doc.at("majority").get<std::string>()));
    return node;
}

NaiveBayesModel nb_from_json(const ordered_json& doc, int attribute_count) {
    NaiveBayesModel model;
    model.attribute_count = attribute_count;
    for (const auto& entry : doc.at("classes")) {
        NaiveBayesModel::ClassStats stats;
        stats.cls = skill_from_string(entry.at("class").get<std::string>());
        stats.count = entry.at("count").get<long>();
        stats.prior = entry.at("prior").get<double>();
        stats.mean = entry.at("mean").get<std::vector<double>>();
        stats.variance = entry.at("variance").get<std::vector<double>>();
        if (static_cast<int>(stats.mean.size()) != attribute_count ||
            static_cast<int>(stats.variance.size()) != attribute_count) {
            throw FormatError("nb leaf statistics do not match the schema width");
        }
        model.classes.push_back(std::move(stats));
    }
    if (model.classes.empty()) throw FormatError("nb leaf without classes");
    return model;
}

std::unique_ptr<NBTreeNode> nbtree_node_from_json(
    const ordered_json& doc, const std::vector<std::string>& schema) {
    auto node = std::make_unique<NBTreeNode>();
    if (doc.contains("split")) {
        node->attribute = schema_index(schema, doc.at("split").get<std::string>());
        node->threshold = doc.at("threshold").get<double>();
        node->left = nbtree_node_from_json(doc.at("left"), schema);
        node->right = nbtree_node_from_json(doc.at("right"), schema);
        return node;
    }
    node->leaf_model = nb_from_json(doc.at("nb"), static_cast<int>(schema.size()));
    return node;
}

}  // namespace

std::string serialize_model(const Model& model) {
    ordered_json doc;
    doc["learner"] = std::string(learner_name(model));
    std::vector<std::string> class_names;
    for (SkillClass cls : model_classes(model)) {
        class_names.emplace_back(to_string(cls));
    }
    doc["classes"] = class_names;
    doc["schema"] = model_schema(model);
    if (const auto* tree = std::get_if<DecisionTree>(&model)) {
        doc["tree"] = tree_node_to_json(*tree->root, tree->schema, tree->classes);
    } else {
        const auto& nbt = std::get<NBTree>(model);
        doc["tree"] = nbtree_node_to_json(*nbt.root, nbt.schema);
    }
    return std::string(kModelHeader) + "\n" + doc.dump(2) + "\n";
}

Model deserialize_model(std::string_view text) {
    std::size_t eol = text.find('\n');
    if (eol == std::string_view::npos || text.substr(0, eol) != kModelHeader) {
        throw FormatError(std::string("model file must start with '") + kModelHeader +
                          "'");
    }
    ordered_json doc;
    try {
        doc = ordered_json::parse(text.substr(eol + 1));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("model body: ") + e.what());
    }
    try {
        std::string learner = doc.at("learner").get<std::string>();
        std::vector<SkillClass> classes;
        for (const auto& name : doc.at("classes")) {
            classes.push_back(skill_from_string(name.get<std::string>()));
        }
        std::vector<std::string> schema =
            doc.at("schema").get<std::vector<std::string>>();
        if (learner == "c45") {
            DecisionTree tree;
            tree.schema = std::move(schema);
            tree.classes = std::move(classes);
            tree.root = tree_node_from_json(doc.at("tree"), tree.schema, tree.classes);
            return tree;
        }
        if (learner == "nbtree") {
            NBTree tree;
            tree.schema = std::move(schema);
            tree.classes = std::move(classes);
            tree.root = nbtree_node_from_json(doc.at("tree"), tree.schema);
            return tree;
        }
        throw FormatError("unknown learner '" + learner + "'");
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("model body: ") + e.what());
    }
}

}  // namespace strokeminer
