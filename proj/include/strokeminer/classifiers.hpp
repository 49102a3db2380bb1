#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "strokeminer/windowing.hpp"

namespace strokeminer {

// ---------------------------------------------------------------------------
// Information-theoretic primitives
// ---------------------------------------------------------------------------

// Shannon entropy in bits of a class-count vector, -sum p_i log2 p_i with
// 0 log 0 = 0. Accumulated in class-index order (the canonical evaluation
// order shared with independent oracles). Throws EmptyPartition when the
// counts sum to zero.
double entropy(std::span<const long> class_counts);

struct SplitCandidate {
    int attribute = -1;
    double threshold = 0.0;
    double info_gain = 0.0;
    double split_info = 0.0;
    double gain_ratio = 0.0;
};

// Evaluates one binary threshold split ("value <= threshold goes left"):
//   info_gain  = H(ds) - sum |part|/|ds| * H(part)
//   split_info = entropy of the two partition sizes
//   gain_ratio = info_gain / split_info
// Throws DegenerateSplit when either side of the partition is empty.
SplitCandidate evaluate_split(const Dataset& ds, int attribute,
                              double threshold);

// ---------------------------------------------------------------------------
// C4.5 decision tree
// ---------------------------------------------------------------------------

struct C45Params {
    int min_leaf = 2;   // a node splits only when it holds >= 2*min_leaf instances
    bool prune = true;
    double cf = 0.25;   // confidence factor for pessimistic pruning
};

struct TreeNode {
    // Internal node fields; a node is a leaf iff left is null.
    int attribute = -1;
    double threshold = 0.0;
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;

    // Leaf fields: training class counts (alphabet order) and the majority
    // class index (count ties break toward the lowest alphabet index; an
    // empty-count leaf keeps the majority it inherited from its parent).
    std::vector<long> class_counts;
    int majority = 0;

    bool is_leaf() const { return left == nullptr; }
    int node_count() const;
    std::unique_ptr<TreeNode> clone() const;
};

struct DecisionTree {
    std::vector<std::string> schema;
    std::vector<SkillClass> classes;
    std::unique_ptr<TreeNode> root;
};

// Top-down induction with binary numeric splits. Candidate thresholds are
// midpoints between consecutive distinct sorted values of each attribute;
// the chosen split maximizes gain ratio among candidates whose info gain is
// >= the mean info gain of all candidates at the node; ties break toward
// the lowest attribute index, then the lowest threshold. Recursion stops on
// purity, on fewer than 2*min_leaf instances, or when no candidate exists.
// Deterministic given (ds order, params). Throws EmptyDataset.
DecisionTree train_c45(const Dataset& ds, const C45Params& params = {});

// Bottom-up pessimistic-error pruning: a subtree collapses to a leaf when
// the collapsed leaf's pessimistic error count is <= the sum of its leaves'
// pessimistic error counts, where the pessimistic error is the binomial
// upper confidence bound at `cf` on the training errors (never below the
// observed error rate). ds must be the training set. Returns a new tree.
DecisionTree prune_tree(const DecisionTree& tree, const Dataset& ds, double cf);

// Pessimistic error count N * U_cf(E, N) used by the pruner; exposed for
// tests. U solves P(Binomial(N, U) <= E) = cf, clamped to >= E/N.
double pessimistic_errors(long errors, long n, double cf);

// Prediction distribution is reported over the three canonical skill
// classes; classes outside the model's alphabet carry probability zero.
struct Prediction {
    SkillClass label;
    std::array<double, 3> distribution{};  // indexed by canonical class order
};

// Routes left on value <= threshold. Throws SchemaError when the feature
// length does not match the training schema.
Prediction predict_tree(const DecisionTree& tree, std::span<const double> features);

// ---------------------------------------------------------------------------
// Gaussian naive Bayes and NBTree
// ---------------------------------------------------------------------------

inline constexpr double kVarianceFloor = 1e-9;

struct NaiveBayesModel {
    struct ClassStats {
        SkillClass cls;
        long count = 0;
        double prior = 0.0;            // Laplace-smoothed over represented classes
        std::vector<double> mean;      // per attribute
        std::vector<double> variance;  // per attribute, floored at kVarianceFloor
    };
    std::vector<ClassStats> classes;  // represented classes, alphabet order
    int attribute_count = 0;
};

// Priors are (count_c + 1) / (N + k) with k the number of represented
// classes; per-attribute Gaussians use the sample mean and the population
// variance floored at kVarianceFloor. Throws EmptyDataset.
NaiveBayesModel fit_naive_bayes(const Dataset& ds);

// Log-domain posterior; ties break toward the lowest canonical class.
Prediction predict_nb(const NaiveBayesModel& model, std::span<const double> features);

struct NBTreeParams {
    int cv_folds = 5;
    double min_split_gain = 0.05;  // required relative error reduction
    int min_node = 30;             // nodes smaller than this become leaves
    std::uint64_t seed = 0;        // drives the CV fold shuffles
};

struct NBTreeNode {
    int attribute = -1;
    double threshold = 0.0;
    std::unique_ptr<NBTreeNode> left;
    std::unique_ptr<NBTreeNode> right;
    NaiveBayesModel leaf_model;  // valid iff left is null

    bool is_leaf() const { return left == nullptr; }
    int node_count() const;
};

struct NBTree {
    std::vector<std::string> schema;
    std::vector<SkillClass> classes;
    std::unique_ptr<NBTreeNode> root;
};

// Hybrid tree with naive-Bayes leaves. At each node the cross-validated
// accuracy of a single NB model is compared against the instance-weighted
// NB accuracy of the best threshold split (per attribute, the max-info-gain
// midpoint is the candidate); the node splits only when the relative error
// reduction exceeds min_split_gain and the node holds >= min_node
// instances. Deterministic given (ds order, params). Throws EmptyDataset.
NBTree train_nbtree(const Dataset& ds, const NBTreeParams& params = {});

Prediction predict_nbtree(const NBTree& model, std::span<const double> features);

// ---------------------------------------------------------------------------
// Model container and serialization
// ---------------------------------------------------------------------------

using Model = std::variant<DecisionTree, NBTree>;

Prediction predict(const Model& model, std::span<const double> features);
std::string_view learner_name(const Model& model);
const std::vector<SkillClass>& model_classes(const Model& model);
const std::vector<std::string>& model_schema(const Model& model);

// Text format: a `strokeminer-model v1` header line followed by a pretty-
// printed JSON document. Splits record schema names (never indices) and
// thresholds at full round-trip precision, so a deserialized model routes
// identically, including at threshold boundary values. serialize is
// deterministic and serialize(deserialize(text)) == text.
std::string serialize_model(const Model& model);
Model deserialize_model(std::string_view text);  // FormatError on malformed input

}  // namespace strokeminer
