// config.hpp — flat key=value configuration shared by all CLI commands.
//
// Every key has a default; a config file overrides defaults and CLI flags
// override the file.  `--show-config` prints the resolved set, one
// `key = value` line each, in the fixed order below.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltloracle/gen.hpp"

namespace ltloracle {

struct Config {
    // generation
    std::uint64_t master_seed = 1;
    int count = 200;
    int state_min = 4;
    int state_max = 8;
    int ap_count = 2;
    double edge_density = 0.3;
    int formula_length = 15;
    std::array<double, kOpCount> op_weights = GenSpec::defaults().operator_weights;

    // labeling
    std::string labeler = "builtin"; // builtin | external | auto
    int workers = 1;
    std::string nusmv_path;           // empty: take LTLORACLE_NUSMV
    double external_timeout = 60.0;
    int builtin_max_formula_length = 50; // auto-routing threshold
    std::uint64_t automaton_state_cap = 2'000'000;
    std::uint64_t product_state_cap = 2'000'000;
    std::string timing_mode = "measured"; // measured | none
    bool keep_temps = false;

    // training
    std::string algorithm = "rf"; // rf | knn | dt | lr
    double fraction = 0.88;
    std::uint64_t split_seed = 1;
    int rf_trees = 100;
    int rf_max_depth = 10;
    int rf_features_per_split = 0; // 0 = ceil(sqrt(d))
    int dt_max_depth = 10;
    int dt_min_samples_split = 2;
    int knn_k = 5;
    double lr_rate = 0.1;
    int lr_epochs = 500;
    double lr_l2 = 0.0;

    // sweep / e2e
    std::vector<double> sweep_fractions{0.88};
    std::vector<std::uint64_t> sweep_seeds{1, 2, 3, 4, 5};
    double balance_max = 0.9; // warn when one class exceeds this fraction
    bool regen_on_imbalance = true;
    int regen_attempts = 5;
    std::string out_dir = "out";

    GenSpec gen_spec(std::uint64_t instance_seed) const;
    void validate() const; // throws UsageError

    /// Apply one `key = value` (or `key=value`) assignment.
    void set(const std::string& key, const std::string& value);
};

/// Parse a config file: blank lines and #-comments ignored, one assignment
/// per line.
Config load_config_text(const std::string& text, Config base = {});
Config load_config_file(const std::string& path, Config base = {});

/// Resolved configuration, one line per key.
std::string show_config(const Config& c);

} // namespace ltloracle
