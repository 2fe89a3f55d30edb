#include "ltloracle/config.hpp"

#include <fstream>
#include <sstream>

#include "ltloracle/errors.hpp"
#include "ltloracle/textio.hpp"

namespace ltloracle {

GenSpec Config::gen_spec(std::uint64_t instance_seed) const {
    GenSpec s;
    s.seed = instance_seed;
    s.state_min = state_min;
    s.state_max = state_max;
    s.ap_count = ap_count;
    s.edge_density = edge_density;
    s.formula_length = formula_length;
    s.operator_weights = op_weights;
    return s;
}

void Config::validate() const {
    gen_spec(0).validate();
    if (count < 1) throw UsageError("config: count must be >= 1");
    if (labeler != "builtin" && labeler != "external" && labeler != "auto")
        throw UsageError("config: labeler must be builtin, external or auto");
    if (workers < 1) throw UsageError("config: workers must be >= 1");
    if (timing_mode != "measured" && timing_mode != "none")
        throw UsageError("config: timing_mode must be measured or none");
    if (algorithm != "rf" && algorithm != "knn" && algorithm != "dt" && algorithm != "lr")
        throw UsageError("config: algorithm must be rf, knn, dt or lr");
    if (!(fraction > 0.0 && fraction < 1.0))
        throw UsageError("config: fraction must be in (0, 1)");
    for (double fr : sweep_fractions)
        if (!(fr > 0.0 && fr < 1.0)) throw UsageError("config: sweep fraction out of (0, 1)");
    if (sweep_fractions.empty() || sweep_seeds.empty())
        throw UsageError("config: sweep grids must be nonempty");
    if (!(balance_max > 0.5 && balance_max <= 1.0))
        throw UsageError("config: balance_max must be in (0.5, 1]");
    if (knn_k < 1) throw UsageError("config: knn_k must be >= 1");
    if (rf_trees < 1 || lr_epochs < 0 || dt_max_depth < 1 || rf_max_depth < 1)
        throw UsageError("config: learner parameter out of range");
}

namespace {

const char* kWeightKeys[kOpCount] = {
    "weight_atom",   "weight_true",    "weight_false",    "weight_not",
    "weight_and",    "weight_or",      "weight_implies",  "weight_next",
    "weight_finally", "weight_globally", "weight_until",  "weight_release",
};

std::vector<double> parse_double_list(const std::string& value) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(value);
    while (std::getline(is, item, ','))
        if (!item.empty()) out.push_back(parse_double(item));
    return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& value) {
    std::vector<std::uint64_t> out;
    std::string item;
    std::istringstream is(value);
    while (std::getline(is, item, ','))
        if (!item.empty()) out.push_back(parse_u64(item));
    return out;
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw UsageError("config: bad boolean '" + v + "'");
}

} // namespace

void Config::set(const std::string& key, const std::string& value) {
    if (key == "master_seed") master_seed = parse_u64(value);
    else if (key == "count") count = static_cast<int>(parse_u64(value));
    else if (key == "state_min") state_min = static_cast<int>(parse_u64(value));
    else if (key == "state_max") state_max = static_cast<int>(parse_u64(value));
    else if (key == "ap_count") ap_count = static_cast<int>(parse_u64(value));
    else if (key == "edge_density") edge_density = parse_double(value);
    else if (key == "formula_length") formula_length = static_cast<int>(parse_u64(value));
    else if (key == "labeler") labeler = value;
    else if (key == "workers") workers = static_cast<int>(parse_u64(value));
    else if (key == "nusmv_path") nusmv_path = value;
    else if (key == "external_timeout") external_timeout = parse_double(value);
    else if (key == "builtin_max_formula_length")
        builtin_max_formula_length = static_cast<int>(parse_u64(value));
    else if (key == "automaton_state_cap") automaton_state_cap = parse_u64(value);
    else if (key == "product_state_cap") product_state_cap = parse_u64(value);
    else if (key == "timing_mode") timing_mode = value;
    else if (key == "keep_temps") keep_temps = parse_bool(value);
    else if (key == "algorithm") algorithm = value;
    else if (key == "fraction") fraction = parse_double(value);
    else if (key == "split_seed") split_seed = parse_u64(value);
    else if (key == "rf_trees") rf_trees = static_cast<int>(parse_u64(value));
    else if (key == "rf_max_depth") rf_max_depth = static_cast<int>(parse_u64(value));
    else if (key == "rf_features_per_split")
        rf_features_per_split = static_cast<int>(parse_u64(value));
    else if (key == "dt_max_depth") dt_max_depth = static_cast<int>(parse_u64(value));
    else if (key == "dt_min_samples_split")
        dt_min_samples_split = static_cast<int>(parse_u64(value));
    else if (key == "knn_k") knn_k = static_cast<int>(parse_u64(value));
    else if (key == "lr_rate") lr_rate = parse_double(value);
    else if (key == "lr_epochs") lr_epochs = static_cast<int>(parse_u64(value));
    else if (key == "lr_l2") lr_l2 = parse_double(value);
    else if (key == "sweep_fractions") sweep_fractions = parse_double_list(value);
    else if (key == "sweep_seeds") sweep_seeds = parse_u64_list(value);
    else if (key == "balance_max") balance_max = parse_double(value);
    else if (key == "regen_on_imbalance") regen_on_imbalance = parse_bool(value);
    else if (key == "regen_attempts") regen_attempts = static_cast<int>(parse_u64(value));
    else if (key == "out_dir") out_dir = value;
    else {
        for (int i = 0; i < kOpCount; ++i)
            if (key == kWeightKeys[i]) {
                op_weights[i] = parse_double(value);
                return;
            }
        throw UsageError("config: unknown key '" + key + "'");
    }
}

Config load_config_text(const std::string& text, Config base) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        line = line.substr(begin, end - begin + 1);

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t");
            return s.substr(b, e - b + 1);
        };
        base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

Config load_config_file(const std::string& path, Config base) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return load_config_text(os.str(), std::move(base));
}

std::string show_config(const Config& c) {
    std::ostringstream os;
    auto emit = [&](const char* key, const std::string& value) {
        os << key << " = " << value << '\n';
    };
    emit("master_seed", std::to_string(c.master_seed));
    emit("count", std::to_string(c.count));
    emit("state_min", std::to_string(c.state_min));
    emit("state_max", std::to_string(c.state_max));
    emit("ap_count", std::to_string(c.ap_count));
    emit("edge_density", fmt_double(c.edge_density));
    emit("formula_length", std::to_string(c.formula_length));
    for (int i = 0; i < kOpCount; ++i) emit(kWeightKeys[i], fmt_double(c.op_weights[i]));
    emit("labeler", c.labeler);
    emit("workers", std::to_string(c.workers));
    emit("nusmv_path", c.nusmv_path);
    emit("external_timeout", fmt_double(c.external_timeout));
    emit("builtin_max_formula_length", std::to_string(c.builtin_max_formula_length));
    emit("automaton_state_cap", std::to_string(c.automaton_state_cap));
    emit("product_state_cap", std::to_string(c.product_state_cap));
    emit("timing_mode", c.timing_mode);
    emit("keep_temps", c.keep_temps ? "true" : "false");
    emit("algorithm", c.algorithm);
    emit("fraction", fmt_double(c.fraction));
    emit("split_seed", std::to_string(c.split_seed));
    emit("rf_trees", std::to_string(c.rf_trees));
    emit("rf_max_depth", std::to_string(c.rf_max_depth));
    emit("rf_features_per_split", std::to_string(c.rf_features_per_split));
    emit("dt_max_depth", std::to_string(c.dt_max_depth));
    emit("dt_min_samples_split", std::to_string(c.dt_min_samples_split));
    emit("knn_k", std::to_string(c.knn_k));
    emit("lr_rate", fmt_double(c.lr_rate));
    emit("lr_epochs", std::to_string(c.lr_epochs));
    emit("lr_l2", fmt_double(c.lr_l2));
    {
        std::string fr;
        for (double f : c.sweep_fractions) fr += (fr.empty() ? "" : ",") + fmt_double(f);
        emit("sweep_fractions", fr);
        std::string sd;
        for (auto s : c.sweep_seeds) sd += (sd.empty() ? "" : ",") + std::to_string(s);
        emit("sweep_seeds", sd);
    }
    emit("balance_max", fmt_double(c.balance_max));
    emit("regen_on_imbalance", c.regen_on_imbalance ? "true" : "false");
    emit("regen_attempts", std::to_string(c.regen_attempts));
    emit("out_dir", c.out_dir);
    return os.str();
}

} // namespace ltloracle
