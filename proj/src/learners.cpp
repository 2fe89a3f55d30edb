#include "ltloracle/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ltloracle/errors.hpp"
#include "ltloracle/rng.hpp"

namespace ltloracle {

namespace {

void require_xy(const Matrix& x, const std::vector<int>& y) {
    if (x.rows == 0) throw DataError("training set is empty");
    if (x.rows != y.size())
        throw DataError("dimension mismatch: " + std::to_string(x.rows) + " rows vs " +
                        std::to_string(y.size()) + " labels");
    for (int v : y)
        if (v != 0 && v != 1) throw DataError("labels must be 0/1");
}

// ── CART tree builder shared by DT and RF ───────────────────────────────

struct TreeBuilder {
    const Matrix& x;
    const std::vector<int>& y;
    int max_depth;
    int min_samples_split;
    int features_per_split; // >= cols means "all features"
    SplitMix64* rng;        // nullptr when no subsampling
    DTModel model;

    static double gini(std::size_t n, std::size_t pos) {
        const double p = static_cast<double>(pos) / static_cast<double>(n);
        return 2.0 * p * (1.0 - p);
    }

    std::int32_t leaf(std::size_t n, std::size_t pos) {
        DTModel::Node node;
        node.leaf_class = pos * 2 >= n ? 1 : 0; // tie -> label 1
        node.leaf_prob = static_cast<double>(pos) / static_cast<double>(n);
        model.nodes.push_back(node);
        return static_cast<std::int32_t>(model.nodes.size() - 1);
    }

    std::vector<int> candidate_features() {
        const int d = static_cast<int>(x.cols);
        if (!rng || features_per_split >= d) {
            std::vector<int> all(d);
            std::iota(all.begin(), all.end(), 0);
            return all;
        }
        // partial Fisher-Yates, then sorted so the lowest-index tie-break
        // stays meaningful
        std::vector<int> pool(d);
        std::iota(pool.begin(), pool.end(), 0);
        for (int i = 0; i < features_per_split; ++i) {
            const std::size_t j = i + rng->next_below(d - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(features_per_split);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    std::int32_t build(std::vector<std::size_t>& idx, int depth) {
        const std::size_t n = idx.size();
        std::size_t pos = 0;
        for (std::size_t i : idx) pos += y[i];
        if (pos == 0 || pos == n || depth >= max_depth ||
            n < static_cast<std::size_t>(min_samples_split))
            return leaf(n, pos);

        const std::vector<int> features = candidate_features();

        // Maximize the Gini decrease over all (feature, midpoint threshold)
        // candidates.  Zero-decrease splits are allowed (the node is not
        // pure here, so recursing still makes progress, which is what lets
        // two levels separate xor-patterned data); the first candidate of a
        // tie wins, i.e. lowest feature index then lowest threshold.
        int best_feature = -1;
        double best_threshold = 0.0, best_decrease = 0.0;
        const double parent = gini(n, pos);

        std::vector<std::pair<double, int>> column(n);
        for (int f : features) {
            for (std::size_t i = 0; i < n; ++i)
                column[i] = {x.at(idx[i], f), y[idx[i]]};
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            std::size_t left_n = 0, left_pos = 0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                ++left_n;
                left_pos += column[i].second;
                if (column[i].first == column[i + 1].first) continue;
                const std::size_t right_n = n - left_n, right_pos = pos - left_pos;
                const double weighted =
                    (static_cast<double>(left_n) / n) * gini(left_n, left_pos) +
                    (static_cast<double>(right_n) / n) * gini(right_n, right_pos);
                const double decrease = parent - weighted;
                if (best_feature < 0 || decrease > best_decrease + 1e-12) {
                    best_decrease = decrease;
                    best_feature = f;
                    best_threshold = (column[i].first + column[i + 1].first) / 2.0;
                }
            }
        }
        if (best_feature < 0) return leaf(n, pos); // all candidate features constant

        std::vector<std::size_t> left_idx, right_idx;
        for (std::size_t i : idx)
            (x.at(i, best_feature) <= best_threshold ? left_idx : right_idx).push_back(i);
        idx.clear();
        idx.shrink_to_fit();

        const std::int32_t self = static_cast<std::int32_t>(model.nodes.size());
        DTModel::Node node;
        node.feature = best_feature;
        node.threshold = best_threshold;
        model.nodes.push_back(node);
        const std::int32_t left = build(left_idx, depth + 1);
        const std::int32_t right = build(right_idx, depth + 1);
        model.nodes[self].left = left;
        model.nodes[self].right = right;
        return self;
    }
};

const DTModel::Node& descend(const DTModel& m, const double* x) {
    std::int32_t i = 0;
    while (m.nodes[i].feature >= 0)
        i = x[m.nodes[i].feature] <= m.nodes[i].threshold ? m.nodes[i].left : m.nodes[i].right;
    return m.nodes[i];
}

} // namespace

DTModel train_dt(const Matrix& x, const std::vector<int>& y, const DTParams& params) {
    require_xy(x, y);
    TreeBuilder builder{x, y, params.max_depth, params.min_samples_split,
                        static_cast<int>(x.cols), nullptr, {}};
    std::vector<std::size_t> idx(x.rows);
    std::iota(idx.begin(), idx.end(), 0);
    builder.build(idx, 0);
    return std::move(builder.model);
}

int predict_dt(const DTModel& m, const double* x) { return descend(m, x).leaf_class; }
double score_dt(const DTModel& m, const double* x) { return descend(m, x).leaf_prob; }

RFModel train_rf(const Matrix& x, const std::vector<int>& y, const RFParams& params) {
    require_xy(x, y);
    if (params.n_trees < 1) throw DataError("random forest needs at least one tree");
    RFModel m;
    m.params = params;
    if (m.params.features_per_split <= 0)
        m.params.features_per_split =
            static_cast<int>(std::ceil(std::sqrt(static_cast<double>(x.cols))));

    for (int t = 0; t < params.n_trees; ++t) {
        SplitMix64 rng(params.seed + static_cast<std::uint64_t>(t));
        std::vector<std::size_t> idx;
        idx.reserve(x.rows);
        if (params.bootstrap) {
            for (std::size_t i = 0; i < x.rows; ++i) idx.push_back(rng.next_below(x.rows));
        } else {
            idx.resize(x.rows);
            std::iota(idx.begin(), idx.end(), 0);
        }
        TreeBuilder builder{x, y, params.max_depth, params.min_samples_split,
                            m.params.features_per_split, &rng, {}};
        builder.build(idx, 0);
        m.trees.push_back(std::move(builder.model));
    }
    return m;
}

double score_rf(const RFModel& m, const double* x) {
    std::size_t votes = 0;
    for (const DTModel& t : m.trees) votes += predict_dt(t, x);
    return static_cast<double>(votes) / static_cast<double>(m.trees.size());
}

int predict_rf(const RFModel& m, const double* x) { return score_rf(m, x) >= 0.5 ? 1 : 0; }

KNNModel train_knn(const Matrix& x, const std::vector<int>& y, int k) {
    require_xy(x, y);
    if (k < 1 || static_cast<std::size_t>(k) > x.rows)
        throw DataError("knn: k must be in [1, train size]");
    return {x, y, k};
}

double score_knn(const KNNModel& m, const double* x) {
    std::vector<std::pair<double, std::size_t>> dist(m.points.rows);
    for (std::size_t i = 0; i < m.points.rows; ++i) {
        double d2 = 0.0;
        const double* p = m.points.row(i);
        for (std::size_t c = 0; c < m.points.cols; ++c) {
            const double d = p[c] - x[c];
            d2 += d * d;
        }
        dist[i] = {d2, i}; // index breaks distance ties
    }
    std::sort(dist.begin(), dist.end());
    std::size_t pos = 0;
    for (int i = 0; i < m.k; ++i) pos += m.labels[dist[i].second];
    return static_cast<double>(pos) / static_cast<double>(m.k);
}

int predict_knn(const KNNModel& m, const double* x) { return score_knn(m, x) >= 0.5 ? 1 : 0; }

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + e^-z) without overflow
double softplus_neg(double z) { return std::max(-z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

} // namespace

double lr_loss(const Matrix& x, const std::vector<int>& y, const std::vector<double>& w,
               double bias, double l2) {
    double loss = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double* row = x.row(i);
        double z = bias;
        for (std::size_t c = 0; c < x.cols; ++c) z += w[c] * row[c];
        // BCE(y, sigmoid(z)) = (1-y) z + log(1 + e^-z)
        loss += (1 - y[i]) * z + softplus_neg(z);
    }
    loss /= static_cast<double>(x.rows);
    double penalty = 0.0;
    for (double v : w) penalty += v * v;
    return loss + 0.5 * l2 * penalty;
}

void lr_gradient(const Matrix& x, const std::vector<int>& y, const std::vector<double>& w,
                 double bias, double l2, std::vector<double>& grad_w, double& grad_b) {
    grad_w.assign(x.cols, 0.0);
    grad_b = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double* row = x.row(i);
        double z = bias;
        for (std::size_t c = 0; c < x.cols; ++c) z += w[c] * row[c];
        const double err = sigmoid(z) - y[i];
        for (std::size_t c = 0; c < x.cols; ++c) grad_w[c] += err * row[c];
        grad_b += err;
    }
    const double inv_n = 1.0 / static_cast<double>(x.rows);
    for (std::size_t c = 0; c < x.cols; ++c) grad_w[c] = grad_w[c] * inv_n + l2 * w[c];
    grad_b *= inv_n;
}

LRModel train_lr(const Matrix& x, const std::vector<int>& y, const LRParams& params,
                 std::vector<double>* epoch_loss) {
    require_xy(x, y);
    LRModel m;
    m.weights.assign(x.cols, 0.0);
    std::vector<double> grad;
    double grad_b = 0.0;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        lr_gradient(x, y, m.weights, m.bias, params.l2, grad, grad_b);
        for (std::size_t c = 0; c < x.cols; ++c) m.weights[c] -= params.learning_rate * grad[c];
        m.bias -= params.learning_rate * grad_b;
        const double loss = lr_loss(x, y, m.weights, m.bias, params.l2);
        if (!std::isfinite(loss)) throw DataError("logistic regression diverged");
        if (epoch_loss) epoch_loss->push_back(loss);
    }
    return m;
}

double score_lr(const LRModel& m, const double* x) {
    double z = m.bias;
    for (std::size_t c = 0; c < m.weights.size(); ++c) z += m.weights[c] * x[c];
    return sigmoid(z);
}

int predict_lr(const LRModel& m, const double* x) { return score_lr(m, x) >= 0.5 ? 1 : 0; }

// ── Split and metrics ───────────────────────────────────────────────────

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
bernoulli_split(std::size_t count, const SplitSpec& spec) {
    if (count < 2) throw DataError("split needs at least two records");
    if (!(spec.fraction > 0.0 && spec.fraction < 1.0))
        throw DataError("split fraction must be in (0, 1)");
    for (std::uint64_t seed = spec.seed;; ++seed) {
        SplitMix64 rng(seed);
        std::vector<std::size_t> train, test;
        for (std::size_t i = 0; i < count; ++i)
            (rng.next_double() < spec.fraction ? train : test).push_back(i);
        if (!train.empty() && !test.empty()) return {std::move(train), std::move(test)};
    }
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size()) throw DataError("accuracy: length mismatch");
    if (predicted.empty()) throw DataError("accuracy: empty input");
    std::size_t match = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) match += predicted[i] == truth[i];
    return static_cast<double>(match) / static_cast<double>(predicted.size());
}

double auc(const std::vector<double>& scores, const std::vector<int>& truth) {
    if (scores.size() != truth.size()) throw DataError("auc: length mismatch");
    const std::size_t n = scores.size();
    std::int64_t n_pos = 0;
    for (int v : truth) n_pos += v;
    const std::int64_t n_neg = static_cast<std::int64_t>(n) - n_pos;
    if (n_pos == 0 || n_neg == 0) throw DataError("auc: both classes must be present");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // midranks in half units (2*midrank is always integral), tie-aware
    std::int64_t pos_rank2 = 0; // sum over positives of 2*midrank
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const std::int64_t rank2 = static_cast<std::int64_t>(i + 1 + j); // (i+1 .. j) averaged, doubled
        for (std::size_t t = i; t < j; ++t)
            if (truth[order[t]] == 1) pos_rank2 += rank2;
        i = j;
    }

    const std::int64_t twice_u = pos_rank2 - n_pos * (n_pos + 1); // 2 * Mann-Whitney U
    const std::int64_t k2 = 2 * n_pos * n_neg;
    // computing the smaller side keeps auc(s) + auc(-s) == 1 exact
    if (twice_u <= k2 - twice_u)
        return static_cast<double>(twice_u) / static_cast<double>(k2);
    return 1.0 - static_cast<double>(k2 - twice_u) / static_cast<double>(k2);
}

// ── TrainedModel and evaluation ─────────────────────────────────────────

int TrainedModel::predict(const FeatureVector& raw) const {
    const FeatureVector v = apply_scaler(scaler, raw);
    return std::visit(
        [&](const auto& m) -> int {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DTModel>) return predict_dt(m, v.values.data());
            else if constexpr (std::is_same_v<T, RFModel>) return predict_rf(m, v.values.data());
            else if constexpr (std::is_same_v<T, KNNModel>) return predict_knn(m, v.values.data());
            else return predict_lr(m, v.values.data());
        },
        model);
}

double TrainedModel::score(const FeatureVector& raw) const {
    const FeatureVector v = apply_scaler(scaler, raw);
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DTModel>) return score_dt(m, v.values.data());
            else if constexpr (std::is_same_v<T, RFModel>) return score_rf(m, v.values.data());
            else if constexpr (std::is_same_v<T, KNNModel>) return score_knn(m, v.values.data());
            else return score_lr(m, v.values.data());
        },
        model);
}

} // namespace ltloracle
