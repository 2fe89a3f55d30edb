// ============================================================================
// learners.hpp — from-scratch binary classifiers over feature vectors
// ============================================================================
//
// Four algorithms (CART decision tree, bagged random forest, k-nearest
// neighbors, logistic regression), the seeded Bernoulli train/test split,
// and the accuracy / ROC-AUC metrics.  Labels are 0/1 with 1 = Holds;
// scores are oriented so that higher means more likely label 1.
//
// Everything here is a pure function of its inputs (seeds included):
// serialized models are byte-equal across runs and platforms.  Tie-breaks
// are pinned:
//   CART   best split maximizes Gini decrease; ties -> lowest feature
//          index, then lowest threshold.  Leaf class ties -> label 1.
//   KNN    distance ties -> lower training-row index; vote ties -> label 1.
//   RF     majority vote, ties -> label 1; per-tree seed = seed + tree index.
// ============================================================================

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ltloracle/features.hpp"

namespace ltloracle {

// ── Data containers ─────────────────────────────────────────────────────

struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data; // row major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    const double* row(std::size_t r) const { return data.data() + r * cols; }
    double* row(std::size_t r) { return data.data() + r * cols; }
};

struct SplitSpec {
    double fraction = 0.88; // inclusion probability for the training side
    std::uint64_t seed = 0;
};

/// Assign each of count records independently to train with probability
/// fraction; when either side would be empty the draw is repeated with
/// seed+1 (then +2, ...).  count must be >= 2.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
bernoulli_split(std::size_t count, const SplitSpec& spec);

// ── Decision tree (CART, Gini) ──────────────────────────────────────────

struct DTParams {
    int max_depth = 10;
    int min_samples_split = 2;
};

struct DTModel {
    struct Node {
        int feature = -1;      // -1 for leaves
        double threshold = 0.0; // goes left when x[feature] <= threshold
        std::int32_t left = -1;
        std::int32_t right = -1;
        int leaf_class = -1;
        double leaf_prob = 0.0; // positive fraction at the leaf
    };
    std::vector<Node> nodes; // preorder; nodes[0] is the root
};

DTModel train_dt(const Matrix& x, const std::vector<int>& y, const DTParams& params = {});
int predict_dt(const DTModel& m, const double* x);
double score_dt(const DTModel& m, const double* x);

// ── Random forest ───────────────────────────────────────────────────────

struct RFParams {
    int n_trees = 100;
    int max_depth = 10;
    int min_samples_split = 2;
    int features_per_split = 0; // 0 = ceil(sqrt(d))
    std::uint64_t seed = 0;
    bool bootstrap = true; // test hook; disabling makes n_trees=1 equal a DT
};

struct RFModel {
    std::vector<DTModel> trees;
    RFParams params;
};

RFModel train_rf(const Matrix& x, const std::vector<int>& y, const RFParams& params = {});
int predict_rf(const RFModel& m, const double* x);
double score_rf(const RFModel& m, const double* x); // fraction of trees voting 1

// ── K-nearest neighbors ─────────────────────────────────────────────────

struct KNNModel {
    Matrix points; // standardized training matrix
    std::vector<int> labels;
    int k = 1;
};

KNNModel train_knn(const Matrix& x, const std::vector<int>& y, int k);
int predict_knn(const KNNModel& m, const double* x);
double score_knn(const KNNModel& m, const double* x); // positive-neighbor fraction

// ── Logistic regression ─────────────────────────────────────────────────

struct LRParams {
    double learning_rate = 0.1;
    int epochs = 500;
    double l2 = 0.0; // penalty (l2/2)*||w||^2; bias excluded
};

struct LRModel {
    std::vector<double> weights;
    double bias = 0.0;
};

/// Full-batch gradient descent on mean binary cross-entropy, weights
/// initialized to zero.  epoch_loss (when given) receives the objective
/// after every epoch.  Throws DataError("...diverged") on non-finite loss.
LRModel train_lr(const Matrix& x, const std::vector<int>& y, const LRParams& params = {},
                 std::vector<double>* epoch_loss = nullptr);
double score_lr(const LRModel& m, const double* x); // sigmoid(w.x + b)
int predict_lr(const LRModel& m, const double* x);  // score >= 0.5

/// Objective and its analytic gradient, exposed for the finite-difference
/// oracle.
double lr_loss(const Matrix& x, const std::vector<int>& y, const std::vector<double>& w,
               double bias, double l2);
void lr_gradient(const Matrix& x, const std::vector<int>& y, const std::vector<double>& w,
                 double bias, double l2, std::vector<double>& grad_w, double& grad_b);

// ── Metrics ─────────────────────────────────────────────────────────────

/// Matching fraction; throws DataError on length mismatch or empty input.
double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

/// Mann-Whitney statistic P(score+ > score-) + 0.5 P(equal), exact via
/// midranks; auc(s) + auc(-s) == 1 holds bit-exactly.  Throws DataError
/// unless both classes are present.
double auc(const std::vector<double>& scores, const std::vector<int>& truth);

// ── Trained model bundle ────────────────────────────────────────────────

struct TrainedModel {
    std::string algorithm; // "rf" | "knn" | "dt" | "lr"
    std::variant<DTModel, RFModel, KNNModel, LRModel> model;
    Scaler scaler;
    int schema_version = kFeatureSchemaVersion;

    int predict(const FeatureVector& raw) const;
    double score(const FeatureVector& raw) const;
};

struct EvalReport {
    std::size_t train_count = 0;
    std::size_t test_count = 0;
    double accuracy = 0.0;
    double auc = 0.0;
    double per_record_predict_seconds = 0.0;
    std::string algorithm;
    SplitSpec split;
};

/// Accuracy, AUC and per-record wall time of model on a raw (unscaled)
/// test set.  train_count/split are echoed from the arguments.
EvalReport evaluate(const TrainedModel& model, const std::vector<FeatureVector>& test_x,
                    const std::vector<int>& test_y, std::size_t train_count,
                    const SplitSpec& split);

// ── Persistence (self-describing versioned text) ────────────────────────

std::string write_model(const TrainedModel& m);
TrainedModel read_model(const std::string& text);

std::string write_eval_report(const EvalReport& r);
EvalReport read_eval_report(const std::string& text);

} // namespace ltloracle
