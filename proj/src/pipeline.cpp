#include "ltloracle/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <thread>

#include "ltloracle/errors.hpp"
#include "ltloracle/smv.hpp"
#include "ltloracle/textio.hpp"

namespace ltloracle {

Dataset cmd_generate(const Config& config) {
    config.validate();
    Dataset d;
    d.alphabet = default_alphabet(config.ap_count);
    d.instances.reserve(config.count);
    for (int i = 0; i < config.count; ++i) {
        const std::uint64_t seed = config.master_seed + static_cast<std::uint64_t>(i);
        const GenSpec spec = config.gen_spec(seed);
        LabeledInstance inst;
        inst.seed = seed;
        inst.kripke = random_kripke(spec);
        inst.formula = random_formula(spec, d.alphabet);
        d.instances.push_back(std::move(inst));
    }
    return d;
}

namespace {

struct LabelOutcome {
    bool ok = false;
    Outcome verdict = Outcome::Holds;
    std::optional<Lasso> counterexample;
    double seconds = 0.0;
    std::string tag;
    std::string error;
};

LabelOutcome label_one(const LabeledInstance& inst, const Config& config,
                       const std::string& nusmv) {
    const bool fits_builtin =
        static_cast<int>(inst.formula.length()) <= config.builtin_max_formula_length;
    std::string backend = config.labeler;
    if (backend == "auto") backend = fits_builtin || nusmv.empty() ? "builtin" : "external";

    LabelOutcome out;
    try {
        if (backend == "builtin") {
            CheckOptions opts;
            opts.automaton_state_cap = config.automaton_state_cap;
            opts.product_state_cap = config.product_state_cap;
            const auto t0 = std::chrono::steady_clock::now();
            Verdict v = check(inst.kripke, inst.formula, opts);
            const auto t1 = std::chrono::steady_clock::now();
            out.seconds = std::max(std::chrono::duration<double>(t1 - t0).count(), 1e-9);
            out.verdict = v.outcome;
            out.counterexample = std::move(v.counterexample);
            out.tag = "builtin";
        } else {
            if (nusmv.empty()) throw SpawnError("external labeler needs nusmv_path or LTLORACLE_NUSMV");
            ExternalOptions opts;
            opts.timeout_seconds = config.external_timeout;
            opts.keep_temps = config.keep_temps;
            const ExternalResult r = external_check(inst.kripke, inst.formula, nusmv, opts);
            out.seconds = std::max(r.elapsed_seconds, 1e-9);
            out.verdict = r.outcome;
            out.tag = "external";
        }
        out.ok = true;
    } catch (const Error& e) {
        out.error = e.what();
    }
    return out;
}

} // namespace

LabelSummary cmd_label(Dataset& dataset, const Config& config, std::ostream& log) {
    config.validate();
    if (dataset.instances.empty()) throw DataError("label: empty dataset");
    const std::string nusmv = !config.nusmv_path.empty()
                                  ? config.nusmv_path
                                  : nusmv_from_env().value_or("");

    std::vector<LabelOutcome> results(dataset.instances.size());
    std::atomic<std::size_t> next{0};
    const int workers =
        std::max(1, std::min<int>(config.workers, static_cast<int>(dataset.instances.size())));
    auto work = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= dataset.instances.size()) return;
            results[i] = label_one(dataset.instances[i], config, nusmv);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    LabelSummary summary;
    std::vector<LabeledInstance> kept;
    kept.reserve(dataset.instances.size());
    for (std::size_t i = 0; i < dataset.instances.size(); ++i) {
        LabelOutcome& r = results[i];
        if (!r.ok) {
            ++summary.failed;
            log << "instance " << i << " failed: " << r.error << '\n';
            continue;
        }
        LabeledInstance inst = std::move(dataset.instances[i]);
        inst.verdict = r.verdict;
        inst.counterexample = std::move(r.counterexample);
        inst.label_seconds = config.timing_mode == "none" ? 0.0 : r.seconds;
        inst.labeler_tag = r.tag;
        summary.holds += r.verdict == Outcome::Holds;
        ++summary.labeled;
        kept.push_back(std::move(inst));
    }
    dataset.instances = std::move(kept);
    if (summary.labeled == 0) throw DataError("label: all instances failed");
    log << "labeled " << summary.labeled << " instances (" << summary.failed
        << " failed), holds: " << summary.holds << "/" << summary.labeled << '\n';
    return summary;
}

namespace {

struct Featurized {
    std::vector<FeatureVector> x;
    std::vector<int> y;
};

Featurized featurize(const Dataset& dataset) {
    Featurized f;
    for (const auto& inst : dataset.instances) {
        if (!inst.verdict) continue;
        f.x.push_back(extract(inst.kripke, inst.formula));
        f.y.push_back(*inst.verdict == Outcome::Holds ? 1 : 0);
    }
    return f;
}

Matrix to_matrix(const std::vector<FeatureVector>& v) {
    Matrix m(v.size(), kFeatureDim);
    for (std::size_t r = 0; r < v.size(); ++r)
        for (int c = 0; c < kFeatureDim; ++c) m.at(r, c) = v[r].values[c];
    return m;
}

} // namespace

TrainEvalResult cmd_train_eval(const Dataset& dataset, const std::string& algorithm,
                               const SplitSpec& split, const Config& config) {
    const Featurized data = featurize(dataset);
    if (data.x.size() < 10) throw DataError("train-eval: need at least 10 labeled records");
    {
        const auto positives = static_cast<std::size_t>(
            std::count(data.y.begin(), data.y.end(), 1));
        if (positives == 0 || positives == data.y.size())
            throw DataError("train-eval: dataset is single-class; regenerate with another seed "
                            "or adjust the generation parameters");
    }

    const auto [train_idx, test_idx] = bernoulli_split(data.x.size(), split);

    std::vector<FeatureVector> train_raw, test_raw;
    std::vector<int> train_y, test_y;
    for (std::size_t i : train_idx) {
        train_raw.push_back(data.x[i]);
        train_y.push_back(data.y[i]);
    }
    for (std::size_t i : test_idx) {
        test_raw.push_back(data.x[i]);
        test_y.push_back(data.y[i]);
    }

    TrainedModel model;
    model.algorithm = algorithm;
    model.scaler = fit_scaler(train_raw); // train side only
    std::vector<FeatureVector> train_scaled;
    train_scaled.reserve(train_raw.size());
    for (const auto& v : train_raw) train_scaled.push_back(apply_scaler(model.scaler, v));
    const Matrix x = to_matrix(train_scaled);

    if (algorithm == "dt") {
        model.model = train_dt(x, train_y, {config.dt_max_depth, config.dt_min_samples_split});
    } else if (algorithm == "rf") {
        RFParams params;
        params.n_trees = config.rf_trees;
        params.max_depth = config.rf_max_depth;
        params.min_samples_split = config.dt_min_samples_split;
        params.features_per_split = config.rf_features_per_split;
        params.seed = split.seed; // forest seeded from the split seed
        model.model = train_rf(x, train_y, params);
    } else if (algorithm == "knn") {
        const int k = std::min<int>(config.knn_k, static_cast<int>(train_y.size()));
        model.model = train_knn(x, train_y, k);
    } else if (algorithm == "lr") {
        model.model = train_lr(x, train_y, {config.lr_rate, config.lr_epochs, config.lr_l2});
    } else {
        throw UsageError("unknown algorithm '" + algorithm + "'");
    }

    EvalReport report = evaluate(model, test_raw, test_y, train_idx.size(), split);
    if (config.timing_mode == "none") report.per_record_predict_seconds = 0.0;
    return {std::move(report), std::move(model)};
}

BenchReport cmd_bench(const Dataset& dataset, const EvalReport& report,
                      int formula_length_class) {
    double total = 0.0;
    std::size_t labeled = 0;
    for (const auto& inst : dataset.instances) {
        if (!inst.verdict) continue;
        if (inst.label_seconds <= 0.0)
            throw DataError("bench: dataset lacks labeling times (timing_mode=none?)");
        total += inst.label_seconds;
        ++labeled;
    }
    if (labeled == 0) throw DataError("bench: no labeled instances");
    if (report.per_record_predict_seconds <= 0.0)
        throw DataError("bench: report lacks prediction timing");

    BenchReport b;
    b.t1_mean_seconds = total / static_cast<double>(labeled);
    b.t2_mean_seconds = report.per_record_predict_seconds;
    b.ratio_t2_over_t1 = b.t2_mean_seconds / b.t1_mean_seconds;
    b.ratio_t1_over_t2 = std::llround(b.t1_mean_seconds / b.t2_mean_seconds);
    b.algorithm = report.algorithm;
    b.formula_length_class = formula_length_class;
    return b;
}

std::string write_bench_report(const BenchReport& r) {
    std::ostringstream os;
    os << "ltl-oracle bench v1\n";
    os << "algorithm " << r.algorithm << '\n';
    os << "formula_length_class " << r.formula_length_class << '\n';
    os << "t1_mean_seconds " << fmt_double(r.t1_mean_seconds) << '\n';
    os << "t2_mean_seconds " << fmt_double(r.t2_mean_seconds) << '\n';
    os << "ratio_t2_over_t1 " << fmt_double(r.ratio_t2_over_t1) << '\n';
    os << "ratio_t1_over_t2 " << r.ratio_t1_over_t2 << '\n';
    return os.str();
}

SweepResult cmd_sweep(const Dataset& dataset, const std::string& algorithm,
                      const std::vector<double>& fractions,
                      const std::vector<std::uint64_t>& seeds, const Config& config) {
    if (fractions.empty() || seeds.empty()) throw UsageError("sweep: empty grid");

    std::ostringstream csv;
    csv << "algorithm,fraction,seed,train_count,test_count,accuracy,auc,"
           "per_record_predict_seconds\n";

    bool have_best = false;
    EvalReport best;
    for (double fraction : fractions)
        for (std::uint64_t seed : seeds) {
            const SplitSpec split{fraction, seed};
            const EvalReport r = cmd_train_eval(dataset, algorithm, split, config).report;
            csv << algorithm << ',' << fmt_double(fraction) << ',' << seed << ','
                << r.train_count << ',' << r.test_count << ',' << fmt_double(r.accuracy) << ','
                << fmt_double(r.auc) << ',' << fmt_double(r.per_record_predict_seconds) << '\n';
            const bool better =
                !have_best || r.accuracy > best.accuracy ||
                (r.accuracy == best.accuracy &&
                 (r.auc > best.auc ||
                  (r.auc == best.auc &&
                   (r.split.seed < best.split.seed ||
                    (r.split.seed == best.split.seed && r.split.fraction < best.split.fraction)))));
            if (better) {
                best = r;
                have_best = true;
            }
        }
    return {best, csv.str()};
}

namespace {

std::string format_summary(const std::vector<EvalReport>& reports) {
    // Row order follows the experiment tables: counts, per-record time,
    // accuracy, AUC, seed, fraction.
    const char* row_names[] = {
        "Training record #", "Testing record #", "Running time per record (in second)",
        "Prediction Accuracy", "AUC", "Seed #", "Fraction",
    };
    std::ostringstream os;
    auto cell = [](const std::string& s) {
        std::string out = s;
        out.resize(std::max<std::size_t>(out.size(), 12), ' ');
        return out;
    };
    os << std::string(38, ' ');
    for (const auto& r : reports) {
        std::string name = r.algorithm;
        for (auto& ch : name) ch = static_cast<char>(::toupper(ch));
        os << cell(name);
    }
    os << '\n';
    char buf[64];
    for (int row = 0; row < 7; ++row) {
        std::string label = row_names[row];
        label.resize(38, ' ');
        os << label;
        for (const auto& r : reports) {
            std::string value;
            switch (row) {
                case 0: value = std::to_string(r.train_count); break;
                case 1: value = std::to_string(r.test_count); break;
                case 2:
                    std::snprintf(buf, sizeof buf, "%.6f", r.per_record_predict_seconds);
                    value = buf;
                    break;
                case 3:
                    std::snprintf(buf, sizeof buf, "%.4f", r.accuracy);
                    value = buf;
                    break;
                case 4:
                    std::snprintf(buf, sizeof buf, "%.4f", r.auc);
                    value = buf;
                    break;
                case 5: value = std::to_string(r.split.seed); break;
                case 6:
                    std::snprintf(buf, sizeof buf, "%.2f", r.split.fraction);
                    value = buf;
                    break;
            }
            os << cell(value);
        }
        os << '\n';
    }
    return os.str();
}

} // namespace

E2eResult cmd_e2e(const Config& config, std::ostream& log, bool write_files) {
    config.validate();
    namespace fs = std::filesystem;

    E2eResult result;
    Config cfg = config;
    for (int attempt = 0;; ++attempt) {
        log << "generating " << cfg.count << " instances (master seed " << cfg.master_seed
            << ")\n";
        result.dataset = cmd_generate(cfg);
        cmd_label(result.dataset, cfg, log);

        const std::size_t labeled = result.dataset.labeled_count();
        const std::size_t holds = result.dataset.holds_count();
        const double prevalence =
            static_cast<double>(std::max(holds, labeled - holds)) / static_cast<double>(labeled);
        if (holds == 0 || holds == labeled)
            throw DataError("e2e: labeled dataset is single-class (holds " +
                            std::to_string(holds) + "/" + std::to_string(labeled) +
                            "); rerun with a different master_seed or adjust generation "
                            "parameters (state range, formula_length, operator weights)");
        if (prevalence <= cfg.balance_max) break;
        log << "warning: class balance " << fmt_double(prevalence) << " exceeds balance_max "
            << fmt_double(cfg.balance_max) << '\n';
        if (!cfg.regen_on_imbalance || attempt >= cfg.regen_attempts) break;
        cfg.master_seed += 1;
        log << "regenerating with master_seed " << cfg.master_seed << '\n';
    }

    const std::vector<std::string> algorithms{"rf", "knn", "dt", "lr"};
    std::vector<SweepResult> sweeps;
    for (const auto& algo : algorithms) {
        log << "sweep " << algo << " over " << cfg.sweep_fractions.size() << "x"
            << cfg.sweep_seeds.size() << " grid\n";
        sweeps.push_back(
            cmd_sweep(result.dataset, algo, cfg.sweep_fractions, cfg.sweep_seeds, cfg));
        result.best.push_back(sweeps.back().best);
        if (cfg.timing_mode == "measured")
            result.bench.push_back(
                cmd_bench(result.dataset, sweeps.back().best, cfg.formula_length));
    }

    result.summary = format_summary(result.best);

    if (write_files) {
        fs::create_directories(cfg.out_dir);
        const fs::path dir(cfg.out_dir);
        save_dataset((dir / "dataset.txt").string(), result.dataset);
        spit_file((dir / "features.csv").string(), write_feature_csv(result.dataset));
        for (std::size_t i = 0; i < algorithms.size(); ++i) {
            spit_file((dir / ("best_" + algorithms[i] + ".report")).string(),
                      write_eval_report(result.best[i]));
            spit_file((dir / ("grid_" + algorithms[i] + ".csv")).string(), sweeps[i].grid_csv);
        }
        for (const auto& bench : result.bench)
            spit_file((dir / ("bench_" + bench.algorithm + ".txt")).string(),
                      write_bench_report(bench));
        spit_file((dir / "summary.txt").string(), result.summary);
    }
    log << result.summary;
    return result;
}

} // namespace ltloracle
