// ============================================================================
// pipeline.hpp — experiment orchestration behind the CLI subcommands
// ============================================================================
//
// generate -> label -> featurize -> train/evaluate -> bench -> sweep -> e2e.
// All functions are deterministic given (config, seeds); wall-clock timing
// fields are the one exception and can be disabled with timing_mode=none
// (labelseconds and per-record prediction time then serialize as 0, which
// makes reruns byte-identical; bench requires measured timing).
// ============================================================================

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ltloracle/config.hpp"
#include "ltloracle/dataset.hpp"
#include "ltloracle/learners.hpp"

namespace ltloracle {

/// count unlabeled (K, f) instances; instance i uses seed master_seed + i.
Dataset cmd_generate(const Config& config);

struct LabelSummary {
    std::size_t labeled = 0;
    std::size_t failed = 0; // timeout/resource failures, excluded from output
    std::size_t holds = 0;
};

/// Label every instance (worker pool, results ordered by index).  Failed
/// instances are dropped from the returned dataset and counted in the
/// summary.  Throws DataError when every instance fails.
LabelSummary cmd_label(Dataset& dataset, const Config& config, std::ostream& log);

struct TrainEvalResult {
    EvalReport report;
    TrainedModel model;
};

/// featurize -> split -> fit scaler on train -> train -> evaluate.
TrainEvalResult cmd_train_eval(const Dataset& dataset, const std::string& algorithm,
                               const SplitSpec& split, const Config& config);

struct BenchReport {
    double t1_mean_seconds = 0.0;       // mean labeling time per instance
    double t2_mean_seconds = 0.0;       // per-record prediction time
    double ratio_t2_over_t1 = 0.0;
    long long ratio_t1_over_t2 = 0;     // rounded to nearest integer
    std::string algorithm;
    int formula_length_class = 0;
};

/// t1 from the dataset's labeling times, t2 from the report.
/// Throws DataError when timing fields are missing (timing_mode=none).
BenchReport cmd_bench(const Dataset& dataset, const EvalReport& report,
                      int formula_length_class);

std::string write_bench_report(const BenchReport& r);

struct SweepResult {
    EvalReport best;
    std::string grid_csv; // full grid for audit
};

/// Grid of fraction x seed; best cell by accuracy, then AUC, then smallest
/// seed, then smallest fraction.
SweepResult cmd_sweep(const Dataset& dataset, const std::string& algorithm,
                      const std::vector<double>& fractions,
                      const std::vector<std::uint64_t>& seeds, const Config& config);

struct E2eResult {
    Dataset dataset;
    std::vector<EvalReport> best;        // rf, knn, dt, lr
    std::vector<BenchReport> bench;      // empty when timing_mode=none
    std::string summary;                 // Table-1-shaped text
};

/// Full experiment; writes artifacts under config.out_dir when write_files.
E2eResult cmd_e2e(const Config& config, std::ostream& log, bool write_files = true);

} // namespace ltloracle
