// ltl-oracle CLI: generate | label | features | train-eval | bench | sweep | e2e
//
// Configuration precedence: built-in defaults < --config file < --set
// overrides < dedicated flags.  Exit codes: 0 success, otherwise the error
// category (1 usage, 2 io, 3 data, 4 resource, 5 external).

#include <CLI11.hpp>
#include <iostream>

#include "ltloracle/dataset.hpp"
#include "ltloracle/errors.hpp"
#include "ltloracle/pipeline.hpp"
#include "ltloracle/textio.hpp"

using namespace ltloracle;

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
    bool show_config = false;
};

Config resolve(const CommonArgs& args, const std::vector<std::pair<std::string, std::string>>& flag_sets) {
    Config cfg;
    if (!args.config_path.empty()) cfg = load_config_file(args.config_path, cfg);
    for (const auto& kv : args.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    for (const auto& [key, value] : flag_sets) cfg.set(key, value);
    cfg.validate();
    return cfg;
}

// collects "flag given -> config key=value" pairs
class FlagSet {
public:
    std::vector<std::pair<std::string, std::string>> pairs;

    void add(CLI::App* cmd, const std::string& flag, const std::string& key,
             const std::string& help) {
        auto holder = std::make_shared<std::string>();
        cmd->add_option_function<std::string>(
               flag, [this, key, holder](const std::string& v) { pairs.emplace_back(key, v); },
               help)
            ->expected(1);
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ltl-oracle: predict LTL model-checking verdicts with classical classifiers"};
    app.require_subcommand(0, 1);

    CommonArgs common;
    app.add_option("--config", common.config_path, "config file (key = value per line)");
    app.add_option("--set", common.sets, "override a config key (key=value, repeatable)");
    app.add_flag("--show-config", common.show_config,
                 "print the resolved configuration and exit");

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "write unlabeled (K, f) instances");
    std::string gen_out;
    gen_cmd->add_option("--out", gen_out, "output dataset file")->required();
    FlagSet gen_flags;
    gen_flags.add(gen_cmd, "--count", "count", "number of instances");
    gen_flags.add(gen_cmd, "--master-seed", "master_seed", "master seed");
    gen_flags.add(gen_cmd, "--formula-length", "formula_length", "AST node count per formula");
    gen_flags.add(gen_cmd, "--state-min", "state_min", "minimum state count");
    gen_flags.add(gen_cmd, "--state-max", "state_max", "maximum state count");
    gen_flags.add(gen_cmd, "--ap-count", "ap_count", "alphabet size");
    gen_flags.add(gen_cmd, "--edge-density", "edge_density", "edge probability (0,1]");

    // label
    auto* label_cmd = app.add_subcommand("label", "model-check every instance");
    std::string label_in, label_out;
    label_cmd->add_option("--in", label_in, "input dataset")->required();
    label_cmd->add_option("--out", label_out, "output labeled dataset")->required();
    FlagSet label_flags;
    label_flags.add(label_cmd, "--backend", "labeler", "builtin | external | auto");
    label_flags.add(label_cmd, "--workers", "workers", "parallel labeling workers");
    label_flags.add(label_cmd, "--nusmv", "nusmv_path", "external checker binary");
    label_flags.add(label_cmd, "--timeout", "external_timeout", "external timeout seconds");
    label_flags.add(label_cmd, "--timing", "timing_mode", "measured | none");
    label_flags.add(label_cmd, "--keep-temps", "keep_temps", "keep temp SMV files (true/false)");

    // features
    auto* feat_cmd = app.add_subcommand("features", "export the feature CSV");
    std::string feat_in, feat_out;
    feat_cmd->add_option("--in", feat_in, "labeled dataset")->required();
    feat_cmd->add_option("--out", feat_out, "output CSV")->required();

    // train-eval
    auto* te_cmd = app.add_subcommand("train-eval", "train one model and evaluate it");
    std::string te_in, te_out, te_model_out;
    te_cmd->add_option("--in", te_in, "labeled dataset")->required();
    te_cmd->add_option("--out", te_out, "output evaluation report")->required();
    te_cmd->add_option("--model-out", te_model_out, "also persist the trained model");
    FlagSet te_flags;
    te_flags.add(te_cmd, "--algorithm", "algorithm", "rf | knn | dt | lr");
    te_flags.add(te_cmd, "--fraction", "fraction", "train inclusion probability");
    te_flags.add(te_cmd, "--seed", "split_seed", "split seed");
    te_flags.add(te_cmd, "--timing", "timing_mode", "measured | none");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "compare checking time vs prediction time");
    std::string bench_in, bench_report, bench_out;
    bench_cmd->add_option("--in", bench_in, "labeled dataset (with timing)")->required();
    bench_cmd->add_option("--report", bench_report, "evaluation report file")->required();
    bench_cmd->add_option("--out", bench_out, "output bench report")->required();

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "grid over fractions and seeds");
    std::string sweep_in, sweep_best, sweep_grid;
    sweep_cmd->add_option("--in", sweep_in, "labeled dataset")->required();
    sweep_cmd->add_option("--out-best", sweep_best, "best cell report")->required();
    sweep_cmd->add_option("--out-grid", sweep_grid, "full grid CSV")->required();
    FlagSet sweep_flags;
    sweep_flags.add(sweep_cmd, "--algorithm", "algorithm", "rf | knn | dt | lr");
    sweep_flags.add(sweep_cmd, "--fractions", "sweep_fractions", "comma list, e.g. 0.86,0.88");
    sweep_flags.add(sweep_cmd, "--seeds", "sweep_seeds", "comma list, e.g. 1,2,3");
    sweep_flags.add(sweep_cmd, "--timing", "timing_mode", "measured | none");

    // e2e
    auto* e2e_cmd = app.add_subcommand("e2e", "generate, label, sweep all four algorithms");
    FlagSet e2e_flags;
    e2e_flags.add(e2e_cmd, "--out-dir", "out_dir", "artifact directory");
    e2e_flags.add(e2e_cmd, "--master-seed", "master_seed", "master seed");
    e2e_flags.add(e2e_cmd, "--timing", "timing_mode", "measured | none");

    CLI11_PARSE(app, argc, argv);

    try {
        if (common.show_config) {
            FlagSet* active = nullptr;
            if (*gen_cmd) active = &gen_flags;
            else if (*label_cmd) active = &label_flags;
            else if (*te_cmd) active = &te_flags;
            else if (*sweep_cmd) active = &sweep_flags;
            else if (*e2e_cmd) active = &e2e_flags;
            const std::vector<std::pair<std::string, std::string>> none;
            std::cout << show_config(resolve(common, active ? active->pairs : none));
            return 0;
        }

        if (*gen_cmd) {
            const Config cfg = resolve(common, gen_flags.pairs);
            const Dataset d = cmd_generate(cfg);
            save_dataset(gen_out, d);
            std::cout << "wrote " << d.instances.size() << " instances to " << gen_out << '\n';
        } else if (*label_cmd) {
            const Config cfg = resolve(common, label_flags.pairs);
            Dataset d = load_dataset(label_in);
            const LabelSummary s = cmd_label(d, cfg, std::cout);
            save_dataset(label_out, d);
            std::cout << "wrote " << s.labeled << " labeled instances to " << label_out << '\n';
        } else if (*feat_cmd) {
            const Dataset d = load_dataset(feat_in);
            spit_file(feat_out, write_feature_csv(d));
            std::cout << "wrote feature CSV to " << feat_out << '\n';
        } else if (*te_cmd) {
            const Config cfg = resolve(common, te_flags.pairs);
            const Dataset d = load_dataset(te_in);
            const SplitSpec split{cfg.fraction, cfg.split_seed};
            const TrainEvalResult r = cmd_train_eval(d, cfg.algorithm, split, cfg);
            spit_file(te_out, write_eval_report(r.report));
            if (!te_model_out.empty()) spit_file(te_model_out, write_model(r.model));
            std::cout << "algorithm " << r.report.algorithm << ": accuracy "
                      << fmt_double(r.report.accuracy) << ", auc " << fmt_double(r.report.auc)
                      << '\n';
        } else if (*bench_cmd) {
            const Config cfg = resolve(common, {});
            const Dataset d = load_dataset(bench_in);
            const EvalReport report = read_eval_report(slurp_file(bench_report));
            const BenchReport b = cmd_bench(d, report, cfg.formula_length);
            spit_file(bench_out, write_bench_report(b));
            std::cout << "t1/t2 = " << b.ratio_t1_over_t2 << '\n';
        } else if (*sweep_cmd) {
            const Config cfg = resolve(common, sweep_flags.pairs);
            const Dataset d = load_dataset(sweep_in);
            const SweepResult r =
                cmd_sweep(d, cfg.algorithm, cfg.sweep_fractions, cfg.sweep_seeds, cfg);
            spit_file(sweep_best, write_eval_report(r.best));
            spit_file(sweep_grid, r.grid_csv);
            std::cout << "best cell: seed " << r.best.split.seed << ", fraction "
                      << fmt_double(r.best.split.fraction) << ", accuracy "
                      << fmt_double(r.best.accuracy) << '\n';
        } else if (*e2e_cmd) {
            const Config cfg = resolve(common, e2e_flags.pairs);
            cmd_e2e(cfg, std::cout);
        } else {
            std::cout << app.help();
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
