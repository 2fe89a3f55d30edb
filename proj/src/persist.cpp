// persist.cpp — evaluation and the versioned text formats for models and
// evaluation reports.

#include <algorithm>
#include <chrono>
#include <sstream>

#include "ltloracle/errors.hpp"
#include "ltloracle/learners.hpp"
#include "ltloracle/textio.hpp"

namespace ltloracle {

EvalReport evaluate(const TrainedModel& model, const std::vector<FeatureVector>& test_x,
                    const std::vector<int>& test_y, std::size_t train_count,
                    const SplitSpec& split) {
    if (test_x.empty()) throw DataError("evaluate: empty test set");
    if (test_x.size() != test_y.size()) throw DataError("evaluate: feature/label size mismatch");
    for (const auto& v : test_x)
        if (v.schema_version != model.schema_version)
            throw DataError("evaluate: feature schema mismatch");

    std::vector<int> predicted;
    predicted.reserve(test_x.size());
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& v : test_x) predicted.push_back(model.predict(v));
    const auto t1 = std::chrono::steady_clock::now();

    std::vector<double> scores;
    scores.reserve(test_x.size());
    for (const auto& v : test_x) scores.push_back(model.score(v));

    EvalReport r;
    r.train_count = train_count;
    r.test_count = test_x.size();
    r.accuracy = accuracy(predicted, test_y);
    // a single-class test side carries no ranking information
    const bool single_class =
        std::count(test_y.begin(), test_y.end(), 1) == 0 ||
        std::count(test_y.begin(), test_y.end(), 0) == 0;
    r.auc = single_class ? 0.5 : auc(scores, test_y);
    const double elapsed =
        std::max(std::chrono::duration<double>(t1 - t0).count(), 1e-9); // clock floor
    r.per_record_predict_seconds = elapsed / static_cast<double>(test_x.size());
    r.algorithm = model.algorithm;
    r.split = split;
    return r;
}

// ── Model text format ───────────────────────────────────────────────────

namespace {

void write_tree(std::ostringstream& os, const DTModel& t) {
    os << "nodes " << t.nodes.size() << '\n';
    for (const auto& n : t.nodes)
        os << "n " << n.feature << ' ' << fmt_double(n.threshold) << ' ' << n.left << ' '
           << n.right << ' ' << n.leaf_class << ' ' << fmt_double(n.leaf_prob) << '\n';
}

class LineReader {
public:
    explicit LineReader(const std::string& text) : is_(text) {}

    std::vector<std::string> next(const std::string& expect_head) {
        std::string line;
        while (std::getline(is_, line)) {
            auto words = split_ws(line);
            if (words.empty()) continue;
            if (words[0] != expect_head)
                throw DataError("model format: expected '" + expect_head + "', got '" + words[0] +
                                "'");
            return words;
        }
        throw DataError("model format: missing '" + expect_head + "' line");
    }

private:
    std::istringstream is_;
};

DTModel read_tree(LineReader& in) {
    auto head = in.next("nodes");
    if (head.size() != 2) throw DataError("model format: bad nodes line");
    const std::size_t count = parse_u64(head[1]);
    DTModel t;
    for (std::size_t i = 0; i < count; ++i) {
        auto w = in.next("n");
        if (w.size() != 7) throw DataError("model format: bad node line");
        DTModel::Node n;
        n.feature = static_cast<int>(std::stol(w[1]));
        n.threshold = parse_double(w[2]);
        n.left = static_cast<std::int32_t>(std::stol(w[3]));
        n.right = static_cast<std::int32_t>(std::stol(w[4]));
        n.leaf_class = static_cast<int>(std::stol(w[5]));
        n.leaf_prob = parse_double(w[6]);
        t.nodes.push_back(n);
    }
    return t;
}

} // namespace

std::string write_model(const TrainedModel& m) {
    std::ostringstream os;
    os << "ltl-oracle model v1\n";
    os << "algorithm " << m.algorithm << '\n';
    os << "schema " << m.schema_version << '\n';
    os << "scaler-mean";
    for (double v : m.scaler.mean) os << ' ' << fmt_double(v);
    os << '\n';
    os << "scaler-std";
    for (double v : m.scaler.std) os << ' ' << fmt_double(v);
    os << '\n';

    if (const auto* dt = std::get_if<DTModel>(&m.model)) {
        write_tree(os, *dt);
    } else if (const auto* rf = std::get_if<RFModel>(&m.model)) {
        os << "forest " << rf->trees.size() << " max_depth " << rf->params.max_depth
           << " min_samples_split " << rf->params.min_samples_split << " features_per_split "
           << rf->params.features_per_split << " seed " << rf->params.seed << " bootstrap "
           << (rf->params.bootstrap ? 1 : 0) << '\n';
        for (const auto& t : rf->trees) write_tree(os, t);
    } else if (const auto* knn = std::get_if<KNNModel>(&m.model)) {
        os << "knn " << knn->k << " rows " << knn->points.rows << " cols " << knn->points.cols
           << '\n';
        os << "labels";
        for (int v : knn->labels) os << ' ' << v;
        os << '\n';
        for (std::size_t r = 0; r < knn->points.rows; ++r) {
            os << "row";
            for (std::size_t c = 0; c < knn->points.cols; ++c)
                os << ' ' << fmt_double(knn->points.at(r, c));
            os << '\n';
        }
    } else {
        const auto& lr = std::get<LRModel>(m.model);
        os << "lr " << lr.weights.size() << '\n';
        os << "weights";
        for (double v : lr.weights) os << ' ' << fmt_double(v);
        os << '\n';
        os << "bias " << fmt_double(lr.bias) << '\n';
    }
    os << "end model\n";
    return os.str();
}

TrainedModel read_model(const std::string& text) {
    LineReader in(text);
    {
        auto head = in.next("ltl-oracle");
        if (head.size() != 3 || head[1] != "model" || head[2] != "v1")
            throw DataError("model format: bad header");
    }
    TrainedModel m;
    m.algorithm = in.next("algorithm").at(1);
    m.schema_version = static_cast<int>(parse_u64(in.next("schema").at(1)));
    {
        auto w = in.next("scaler-mean");
        if (w.size() != kFeatureDim + 1) throw DataError("model format: bad scaler-mean");
        for (int i = 0; i < kFeatureDim; ++i) m.scaler.mean[i] = parse_double(w[i + 1]);
        w = in.next("scaler-std");
        if (w.size() != kFeatureDim + 1) throw DataError("model format: bad scaler-std");
        for (int i = 0; i < kFeatureDim; ++i) m.scaler.std[i] = parse_double(w[i + 1]);
    }

    if (m.algorithm == "dt") {
        m.model = read_tree(in);
    } else if (m.algorithm == "rf") {
        auto w = in.next("forest");
        if (w.size() != 12) throw DataError("model format: bad forest line");
        RFModel rf;
        const std::size_t trees = parse_u64(w[1]);
        rf.params.n_trees = static_cast<int>(trees);
        rf.params.max_depth = static_cast<int>(parse_u64(w[3]));
        rf.params.min_samples_split = static_cast<int>(parse_u64(w[5]));
        rf.params.features_per_split = static_cast<int>(parse_u64(w[7]));
        rf.params.seed = parse_u64(w[9]);
        rf.params.bootstrap = w[11] == "1";
        for (std::size_t i = 0; i < trees; ++i) rf.trees.push_back(read_tree(in));
        m.model = std::move(rf);
    } else if (m.algorithm == "knn") {
        auto w = in.next("knn");
        if (w.size() != 6) throw DataError("model format: bad knn line");
        KNNModel knn;
        knn.k = static_cast<int>(parse_u64(w[1]));
        knn.points = Matrix(parse_u64(w[3]), parse_u64(w[5]));
        auto labels = in.next("labels");
        if (labels.size() != knn.points.rows + 1) throw DataError("model format: bad labels");
        for (std::size_t i = 0; i < knn.points.rows; ++i)
            knn.labels.push_back(static_cast<int>(std::stol(labels[i + 1])));
        for (std::size_t r = 0; r < knn.points.rows; ++r) {
            auto row = in.next("row");
            if (row.size() != knn.points.cols + 1) throw DataError("model format: bad row");
            for (std::size_t c = 0; c < knn.points.cols; ++c)
                knn.points.at(r, c) = parse_double(row[c + 1]);
        }
        m.model = std::move(knn);
    } else if (m.algorithm == "lr") {
        auto w = in.next("lr");
        const std::size_t dim = parse_u64(w.at(1));
        LRModel lr;
        auto weights = in.next("weights");
        if (weights.size() != dim + 1) throw DataError("model format: bad weights");
        for (std::size_t i = 0; i < dim; ++i) lr.weights.push_back(parse_double(weights[i + 1]));
        lr.bias = parse_double(in.next("bias").at(1));
        m.model = std::move(lr);
    } else {
        throw DataError("model format: unknown algorithm '" + m.algorithm + "'");
    }
    in.next("end");
    return m;
}

// ── Evaluation report text format ───────────────────────────────────────

std::string write_eval_report(const EvalReport& r) {
    std::ostringstream os;
    os << "ltl-oracle eval-report v1\n";
    os << "algorithm " << r.algorithm << '\n';
    os << "train_count " << r.train_count << '\n';
    os << "test_count " << r.test_count << '\n';
    os << "accuracy " << fmt_double(r.accuracy) << '\n';
    os << "auc " << fmt_double(r.auc) << '\n';
    os << "per_record_predict_seconds " << fmt_double(r.per_record_predict_seconds) << '\n';
    os << "fraction " << fmt_double(r.split.fraction) << '\n';
    os << "seed " << r.split.seed << '\n';
    return os.str();
}

EvalReport read_eval_report(const std::string& text) {
    LineReader in(text);
    {
        auto head = in.next("ltl-oracle");
        if (head.size() != 3 || head[1] != "eval-report" || head[2] != "v1")
            throw DataError("eval-report format: bad header");
    }
    EvalReport r;
    r.algorithm = in.next("algorithm").at(1);
    r.train_count = parse_u64(in.next("train_count").at(1));
    r.test_count = parse_u64(in.next("test_count").at(1));
    r.accuracy = parse_double(in.next("accuracy").at(1));
    r.auc = parse_double(in.next("auc").at(1));
    r.per_record_predict_seconds = parse_double(in.next("per_record_predict_seconds").at(1));
    r.split.fraction = parse_double(in.next("fraction").at(1));
    r.split.seed = parse_u64(in.next("seed").at(1));
    return r;
}

} // namespace ltloracle
