#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ltloracle/errors.hpp"
#include "ltloracle/features.hpp"
#include "ltloracle/gen.hpp"
#include "ltloracle/learners.hpp"
#include "ltloracle/rng.hpp"
#include "test_util.hpp"

using namespace ltloracle;
using namespace testutil;

namespace {

Matrix matrix_1d(const std::vector<double>& xs) {
    Matrix m(xs.size(), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) m.at(i, 0) = xs[i];
    return m;
}

int feature_index(const std::string& name) {
    const auto& names = feature_names();
    return static_cast<int>(std::find(names.begin(), names.end(), name) - names.begin());
}

} // namespace

// ── features ────────────────────────────────────────────────────────────

TEST_CASE("extract counts directly observable quantities") {
    const KripkeStructure k = one_state({"p"}, 1);
    const FeatureVector v = extract(k, Formula::atom("p"));
    CHECK(v.values[feature_index("state_count")] == 1.0);
    CHECK(v.values[feature_index("edge_count")] == 1.0);
    CHECK(v.values[feature_index("edge_density")] == 1.0);
    CHECK(v.values[feature_index("formula_length")] == 1.0);
    CHECK(v.values[feature_index("formula_depth")] == 1.0);
    CHECK(v.values[feature_index("self_loop_count")] == 1.0);
    CHECK(v.values[feature_index("ap_freq_0")] == 1.0);

    const Formula f = parse_ltl("p U (X q)", {"p", "q"});
    const FeatureVector w = extract(two_cycle({"p", "q"}, 1, 2), f);
    CHECK(w.values[feature_index("count_until")] == 1.0);
    CHECK(w.values[feature_index("count_next")] == 1.0);
    CHECK(w.values[feature_index("count_atoms")] == 2.0);
    CHECK(w.values[feature_index("formula_length")] == 4.0);
    CHECK(w.values[feature_index("formula_depth")] == 3.0);
}

TEST_CASE("extract is invariant under state reindexing") {
    GenSpec spec = GenSpec::defaults();
    spec.state_min = 3;
    spec.state_max = 7;
    spec.ap_count = 2;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        spec.seed = seed;
        const KripkeStructure k = random_kripke(spec);
        const Formula f = random_formula(spec, k.alphabet);

        // reverse the state indices
        const auto n = static_cast<std::uint32_t>(k.state_count());
        KripkeStructure r = k;
        auto remap = [n](std::uint32_t s) { return n - 1 - s; };
        for (std::uint32_t s = 0; s < n; ++s) {
            r.labels[remap(s)] = k.labels[s];
            std::vector<std::uint32_t> row;
            for (std::uint32_t t : k.succ[s]) row.push_back(remap(t));
            std::sort(row.begin(), row.end());
            r.succ[remap(s)] = row;
        }
        r.initial.clear();
        for (std::uint32_t s : k.initial) r.initial.push_back(remap(s));
        std::sort(r.initial.begin(), r.initial.end());

        CHECK(extract(k, f).values == extract(r, f).values);
    }
}

TEST_CASE("scaler standardization") {
    FeatureVector a, b;
    a.values[0] = 0.0;
    b.values[0] = 2.0;
    a.values[1] = 5.0; // constant column
    b.values[1] = 5.0;
    const Scaler s = fit_scaler({a, b});
    // mean 1, population std 1 for column 0
    CHECK(apply_scaler(s, a).values[0] == -1.0);
    CHECK(apply_scaler(s, b).values[0] == 1.0);
    // constant column scales to zero (std replaced by 1)
    CHECK(apply_scaler(s, a).values[1] == 0.0);
    CHECK(apply_scaler(s, b).values[1] == 0.0);

    const Scaler single = fit_scaler({a});
    for (double v : apply_scaler(single, a).values) CHECK(v == 0.0);

    // applying a fitted scaler to its own fit set: mean ~ 0, std ~ 1
    GenSpec spec = GenSpec::defaults();
    std::vector<FeatureVector> sample;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        spec.seed = seed;
        sample.push_back(extract(random_kripke(spec), random_formula(spec, default_alphabet(2))));
    }
    const Scaler fitted = fit_scaler(sample);
    std::array<double, kFeatureDim> mean{}, var{};
    for (const auto& v : sample) {
        const FeatureVector z = apply_scaler(fitted, v);
        for (int i = 0; i < kFeatureDim; ++i) mean[i] += z.values[i];
    }
    for (int i = 0; i < kFeatureDim; ++i) mean[i] /= sample.size();
    for (const auto& v : sample) {
        const FeatureVector z = apply_scaler(fitted, v);
        for (int i = 0; i < kFeatureDim; ++i)
            var[i] += (z.values[i] - mean[i]) * (z.values[i] - mean[i]);
    }
    for (int i = 0; i < kFeatureDim; ++i) {
        CHECK(std::abs(mean[i]) < 1e-9);
        const double std_i = std::sqrt(var[i] / sample.size());
        if (std_i > 0.0) CHECK(std_i == doctest::Approx(1.0).epsilon(1e-9)); // non-constant only
    }
}

// ── split ───────────────────────────────────────────────────────────────

TEST_CASE("bernoulli split semantics") {
    const auto [train, test] = bernoulli_split(405, {0.88, 42});
    CHECK(train.size() + test.size() == 405);
    // Bernoulli at 0.88: expect train near 356 (paper-style variation)
    CHECK(train.size() > 320);
    CHECK(train.size() < 390);

    // deterministic
    const auto again = bernoulli_split(405, {0.88, 42});
    CHECK(train == again.first);
    CHECK(test == again.second);

    // different seeds give different partitions
    CHECK(bernoulli_split(405, {0.88, 43}).first != train);

    // redraw keeps both sides nonempty even at extreme fractions
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto [tr, te] = bernoulli_split(2, {0.999, seed});
        CHECK(tr.size() == 1);
        CHECK(te.size() == 1);
    }
    CHECK_THROWS_AS(bernoulli_split(1, {0.5, 0}), DataError);
}

// ── decision tree ───────────────────────────────────────────────────────

TEST_CASE("dt splits two points at the midpoint") {
    const Matrix x = matrix_1d({0.0, 1.0});
    const DTModel m = train_dt(x, {0, 1});
    REQUIRE(m.nodes.size() == 3);
    CHECK(m.nodes[0].feature == 0);
    CHECK(m.nodes[0].threshold == 0.5);
    const double x0 = 0.0, x1 = 1.0;
    CHECK(predict_dt(m, &x0) == 0);
    CHECK(predict_dt(m, &x1) == 1);
}

TEST_CASE("dt with uniform labels is a single leaf") {
    const Matrix x = matrix_1d({0.0, 1.0, 2.0});
    const DTModel m = train_dt(x, {1, 1, 1});
    REQUIRE(m.nodes.size() == 1);
    CHECK(m.nodes[0].feature == -1);
    CHECK(m.nodes[0].leaf_class == 1);
    CHECK(m.nodes[0].leaf_prob == 1.0);
}

TEST_CASE("dt separates xor with two levels") {
    Matrix x(4, 2);
    const double pts[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    const std::vector<int> y{0, 1, 1, 0};
    for (int i = 0; i < 4; ++i) {
        x.at(i, 0) = pts[i][0];
        x.at(i, 1) = pts[i][1];
    }
    const DTModel m = train_dt(x, y, {2, 2});
    for (int i = 0; i < 4; ++i) CHECK(predict_dt(m, pts[i]) == y[i]);
}

// ── random forest ───────────────────────────────────────────────────────

TEST_CASE("rf with one tree and bootstrap disabled equals dt") {
    GenSpec spec = GenSpec::defaults();
    std::vector<FeatureVector> sample;
    std::vector<int> y;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        spec.seed = seed;
        sample.push_back(extract(random_kripke(spec), random_formula(spec, default_alphabet(2))));
        y.push_back(static_cast<int>(seed % 2));
    }
    Matrix x(sample.size(), kFeatureDim);
    for (std::size_t r = 0; r < sample.size(); ++r)
        for (int c = 0; c < kFeatureDim; ++c) x.at(r, c) = sample[r].values[c];

    RFParams params;
    params.n_trees = 1;
    params.bootstrap = false;
    params.features_per_split = kFeatureDim;
    params.max_depth = 10;
    const RFModel rf = train_rf(x, y, params);
    const DTModel dt = train_dt(x, y, {10, 2});
    REQUIRE(rf.trees.size() == 1);
    REQUIRE(rf.trees[0].nodes.size() == dt.nodes.size());
    for (std::size_t i = 0; i < dt.nodes.size(); ++i) {
        CHECK(rf.trees[0].nodes[i].feature == dt.nodes[i].feature);
        CHECK(rf.trees[0].nodes[i].threshold == dt.nodes[i].threshold);
        CHECK(rf.trees[0].nodes[i].leaf_class == dt.nodes[i].leaf_class);
    }
}

TEST_CASE("rf is deterministic and separates margin blobs") {
    // 20 points: class 0 around (0,0), class 1 around (10,10)
    Matrix x(20, 2);
    std::vector<int> y;
    SplitMix64 rng(777);
    for (int i = 0; i < 20; ++i) {
        const int cls = i % 2;
        x.at(i, 0) = cls * 10.0 + rng.next_double();
        x.at(i, 1) = cls * 10.0 + rng.next_double();
        y.push_back(cls);
    }
    RFParams params;
    params.seed = 5;
    params.n_trees = 25;
    const RFModel a = train_rf(x, y, params);
    const RFModel b = train_rf(x, y, params);

    TrainedModel ta{"rf", a, {}, kFeatureSchemaVersion};
    TrainedModel tb{"rf", b, {}, kFeatureSchemaVersion};
    // scaler identity for comparison purposes
    ta.scaler.std.fill(1.0);
    tb.scaler.std.fill(1.0);
    CHECK(write_model(ta) == write_model(tb)); // serialized equality

    for (int i = 0; i < 20; ++i) CHECK(predict_rf(a, x.row(i)) == y[i]);
    const double far0[2] = {-1.0, 0.5}, far1[2] = {11.0, 10.5};
    CHECK(predict_rf(a, far0) == 0);
    CHECK(predict_rf(a, far1) == 1);
}

// ── knn ─────────────────────────────────────────────────────────────────

TEST_CASE("knn hand-enumerated cases") {
    const Matrix x = matrix_1d({0.0, 1.0, 2.0});
    const std::vector<int> y{0, 0, 1};

    const KNNModel one = train_knn(x, y, 1);
    const double q0 = 1.0;
    CHECK(predict_knn(one, &q0) == 0); // exact training point

    const KNNModel all = train_knn(x, y, 3);
    const double far = 100.0;
    CHECK(predict_knn(all, &far) == 0); // global majority regardless of query

    const double q = 0.9; // neighbors: all three, majority 0
    CHECK(predict_knn(all, &q) == 0);
    CHECK(score_knn(all, &q) == doctest::Approx(1.0 / 3.0));

    CHECK_THROWS_AS(train_knn(x, y, 0), DataError);
    CHECK_THROWS_AS(train_knn(x, y, 4), DataError);
}

TEST_CASE("knn prediction invariant under training-row permutation") {
    SplitMix64 rng(31337);
    Matrix x(12, 3);
    std::vector<int> y;
    for (std::size_t i = 0; i < 12; ++i) {
        for (std::size_t c = 0; c < 3; ++c) x.at(i, c) = rng.next_double() * 10;
        y.push_back(static_cast<int>(rng.next_below(2)));
    }
    Matrix rx(12, 3);
    std::vector<int> ry(12);
    for (std::size_t i = 0; i < 12; ++i) { // reversed row order
        for (std::size_t c = 0; c < 3; ++c) rx.at(11 - i, c) = x.at(i, c);
        ry[11 - i] = y[i];
    }
    const KNNModel a = train_knn(x, y, 3);
    const KNNModel b = train_knn(rx, ry, 3);
    for (int t = 0; t < 50; ++t) {
        double q[3] = {rng.next_double() * 10, rng.next_double() * 10, rng.next_double() * 10};
        // all pairwise distances distinct with probability 1
        CHECK(predict_knn(a, q) == predict_knn(b, q));
        CHECK(score_knn(a, q) == score_knn(b, q));
    }
}

// ── logistic regression ─────────────────────────────────────────────────

TEST_CASE("lr with zero epochs scores one half everywhere") {
    const Matrix x = matrix_1d({-3.0, 7.0});
    const LRModel m = train_lr(x, {0, 1}, {0.1, 0, 0.0});
    const double q = 123.0;
    CHECK(score_lr(m, &q) == 0.5);
}

TEST_CASE("lr training loss strictly decreases on separable data") {
    const Matrix x = matrix_1d({-2.0, -1.0, 1.0, 2.0});
    std::vector<double> losses;
    train_lr(x, {0, 0, 1, 1}, {0.1, 200, 0.0}, &losses);
    REQUIRE(losses.size() == 200);
    for (std::size_t i = 1; i < losses.size(); ++i) CHECK(losses[i] < losses[i - 1]);
}

TEST_CASE("lr analytic gradient matches central finite differences") {
    SplitMix64 rng(0xD1FF);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + rng.next_below(6), d = 2 + rng.next_below(4);
        Matrix x(n, d);
        std::vector<int> y;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < d; ++c) x.at(i, c) = rng.next_double() * 4 - 2;
            y.push_back(static_cast<int>(rng.next_below(2)));
        }
        std::vector<double> w(d);
        for (auto& v : w) v = rng.next_double() * 2 - 1;
        const double bias = rng.next_double() - 0.5;
        const double l2 = rng.next_double() * 0.1;

        std::vector<double> grad;
        double grad_b = 0.0;
        lr_gradient(x, y, w, bias, l2, grad, grad_b);

        const double eps = 1e-5;
        auto rel_err = [](double a, double b) {
            const double scale = std::max({std::abs(a), std::abs(b), 1e-8});
            return std::abs(a - b) / scale;
        };
        for (std::size_t c = 0; c < d; ++c) {
            std::vector<double> wp = w, wm = w;
            wp[c] += eps;
            wm[c] -= eps;
            const double fd = (lr_loss(x, y, wp, bias, l2) - lr_loss(x, y, wm, bias, l2)) / (2 * eps);
            worst = std::max(worst, rel_err(fd, grad[c]));
        }
        const double fd_b =
            (lr_loss(x, y, w, bias + eps, l2) - lr_loss(x, y, w, bias - eps, l2)) / (2 * eps);
        worst = std::max(worst, rel_err(fd_b, grad_b));
    }
    CHECK(worst < 1e-5);
}

// ── metrics ─────────────────────────────────────────────────────────────

TEST_CASE("accuracy") {
    CHECK(accuracy({1, 0, 1}, {1, 0, 1}) == 1.0);
    CHECK(accuracy({1, 0, 1}, {0, 1, 0}) == 0.0);
    // the 43-of-44 cell prints as 0.9773 at 4 decimals
    std::vector<int> predicted(44, 1), truth(44, 1);
    truth[7] = 0;
    const double acc = accuracy(predicted, truth);
    CHECK(std::round(acc * 10000.0) / 10000.0 == 0.9773);
    CHECK_THROWS_AS(accuracy({1}, {1, 0}), DataError);

    // constant predictor accuracy equals prevalence
    SplitMix64 rng(4);
    std::vector<int> labels;
    for (int i = 0; i < 97; ++i) labels.push_back(static_cast<int>(rng.next_below(2)));
    const std::vector<int> ones(labels.size(), 1);
    const double prevalence =
        static_cast<double>(std::count(labels.begin(), labels.end(), 1)) / labels.size();
    CHECK(accuracy(ones, labels) == prevalence);
}

TEST_CASE("auc oracle values") {
    CHECK(auc({0.1, 0.2, 0.8, 0.9}, {0, 0, 1, 1}) == 1.0);
    CHECK(auc({0.9, 0.8, 0.2, 0.1}, {0, 0, 1, 1}) == 0.0);
    CHECK(auc({0.5, 0.5, 0.5, 0.5}, {0, 1, 0, 1}) == 0.5);
    CHECK_THROWS_AS(auc({0.1, 0.2}, {1, 1}), DataError);

    // hand-computed with ties: scores (1,2,2,3), labels (0,1,0,1)
    // ranks: 1, 2.5, 2.5, 4 -> U = 6.5 - 3 = 3.5 -> auc = 3.5/4
    CHECK(auc({1, 2, 2, 3}, {0, 1, 0, 1}) == 3.5 / 4.0);
}

TEST_CASE("auc orientation identity holds exactly") {
    SplitMix64 rng(0xA0C);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng.next_below(40);
        std::vector<double> scores;
        std::vector<int> labels;
        bool has0 = false, has1 = false;
        for (std::size_t i = 0; i < n; ++i) {
            scores.push_back(static_cast<double>(rng.next_below(6)) / 4.0); // many ties
            const int y = static_cast<int>(rng.next_below(2));
            labels.push_back(y);
            (y ? has1 : has0) = true;
        }
        if (!has0 || !has1) continue;
        std::vector<double> negated;
        for (double s : scores) negated.push_back(-s);
        CHECK(auc(scores, labels) + auc(negated, labels) == 1.0); // exact
    }
}

// ── evaluate and persistence ────────────────────────────────────────────

TEST_CASE("evaluate 1-nn on its own training set") {
    GenSpec spec = GenSpec::defaults();
    std::vector<FeatureVector> sample;
    std::vector<int> y;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        spec.seed = seed;
        spec.formula_length = 5 + static_cast<int>(seed % 9);
        sample.push_back(extract(random_kripke(spec), random_formula(spec, default_alphabet(2))));
        y.push_back(static_cast<int>(seed % 2));
    }
    TrainedModel model;
    model.algorithm = "knn";
    model.scaler = fit_scaler(sample);
    std::vector<FeatureVector> scaled;
    for (const auto& v : sample) scaled.push_back(apply_scaler(model.scaler, v));
    Matrix x(scaled.size(), kFeatureDim);
    for (std::size_t r = 0; r < scaled.size(); ++r)
        for (int c = 0; c < kFeatureDim; ++c) x.at(r, c) = scaled[r].values[c];
    model.model = train_knn(x, y, 1);

    const EvalReport r = evaluate(model, sample, y, 0, {0.5, 0});
    CHECK(r.accuracy == 1.0); // every query matches itself
    CHECK(r.per_record_predict_seconds > 0.0);
    CHECK(r.per_record_predict_seconds < 1.0);
    CHECK(r.test_count == sample.size());

    const std::string text = write_eval_report(r);
    const EvalReport back = read_eval_report(text);
    CHECK(write_eval_report(back) == text); // lossless round trip
    CHECK(back.accuracy == r.accuracy);
    CHECK(back.per_record_predict_seconds == r.per_record_predict_seconds);
}

TEST_CASE("model persistence round trips for all four algorithms") {
    GenSpec spec = GenSpec::defaults();
    std::vector<FeatureVector> sample;
    std::vector<int> y;
    for (std::uint64_t seed = 0; seed < 24; ++seed) {
        spec.seed = 1000 + seed;
        sample.push_back(extract(random_kripke(spec), random_formula(spec, default_alphabet(2))));
        y.push_back(static_cast<int>(seed % 2));
    }
    Matrix x(sample.size(), kFeatureDim);
    for (std::size_t r = 0; r < sample.size(); ++r)
        for (int c = 0; c < kFeatureDim; ++c) x.at(r, c) = sample[r].values[c];
    const Scaler scaler = fit_scaler(sample);

    std::vector<TrainedModel> models;
    models.push_back({"dt", train_dt(x, y, {}), scaler, kFeatureSchemaVersion});
    RFParams rf;
    rf.n_trees = 7;
    rf.seed = 3;
    models.push_back({"rf", train_rf(x, y, rf), scaler, kFeatureSchemaVersion});
    models.push_back({"knn", train_knn(x, y, 3), scaler, kFeatureSchemaVersion});
    models.push_back({"lr", train_lr(x, y, {0.1, 50, 0.01}), scaler, kFeatureSchemaVersion});

    for (const auto& m : models) {
        const std::string text = write_model(m);
        const TrainedModel back = read_model(text);
        CHECK(write_model(back) == text);
        // behavioral equality on a fresh query
        spec.seed = 42424242;
        const FeatureVector q =
            extract(random_kripke(spec), random_formula(spec, default_alphabet(2)));
        CHECK(m.predict(q) == back.predict(q));
        CHECK(m.score(q) == back.score(q));
    }
}
