// ============================================================================
// dataset.hpp — persistent instance files
// ============================================================================
//
// A dataset is a header (version, count, alphabet) followed by one block per
// instance: the Kripke structure in its text format, the formula in
// canonical LTL text, the verdict ("true" / "false" / "none"), the labeling
// wall time, the labeler tag, and an optional counterexample lasso.
// Writing is deterministic; parse(write(x)) == x.
// ============================================================================

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ltloracle/checker.hpp"
#include "ltloracle/formula.hpp"
#include "ltloracle/kripke.hpp"

namespace ltloracle {

struct LabeledInstance {
    KripkeStructure kripke;
    Formula formula;
    std::optional<Outcome> verdict;  // nullopt until labeled
    double label_seconds = 0.0;
    std::string labeler_tag = "none"; // none | builtin | external
    std::optional<Lasso> counterexample;
    std::uint64_t seed = 0; // generation seed, for provenance
};

struct Dataset {
    std::vector<std::string> alphabet;
    std::vector<LabeledInstance> instances;

    std::size_t labeled_count() const;
    std::size_t holds_count() const;
};

std::string write_dataset(const Dataset& d);
Dataset read_dataset(const std::string& text);

/// Feature CSV: header row of schema names plus final column `label`
/// (1 = Holds).  Only labeled instances are emitted.
std::string write_feature_csv(const Dataset& d);

// file helpers
std::string slurp_file(const std::string& path);
void spit_file(const std::string& path, const std::string& content);
Dataset load_dataset(const std::string& path);
void save_dataset(const std::string& path, const Dataset& d);

} // namespace ltloracle
