// ============================================================================
// features.hpp — fixed-width numeric encoding of (K, f) pairs
// ============================================================================
//
// Schema v1, 24 features.  All values are graph/AST statistics, so the
// vector is invariant under state reindexing, and its width is independent
// of formula length.
//
//   idx  name
//    0   state_count
//    1   edge_count
//    2   edge_density            edges / states^2
//    3   initial_count
//    4   out_degree_mean
//    5   out_degree_min
//    6   out_degree_max
//    7   ap_freq_0               fraction of states labeled alphabet[0]
//    8   ap_freq_1               ... padded with 0 / truncated at 4 APs
//    9   ap_freq_2
//   10   ap_freq_3
//   11   self_loop_count
//   12   formula_length          AST node count
//   13   formula_depth
//   14   count_not
//   15   count_and
//   16   count_or
//   17   count_implies
//   18   count_next
//   19   count_finally
//   20   count_globally
//   21   count_until
//   22   count_release
//   23   count_atoms             atom + true/false leaf occurrences
//
// Any reordering requires a schemaVersion bump.
// ============================================================================

#pragma once

#include <array>
#include <string>
#include <vector>

#include "ltloracle/formula.hpp"
#include "ltloracle/kripke.hpp"

namespace ltloracle {

inline constexpr int kFeatureDim = 24;
inline constexpr int kFeatureSchemaVersion = 1;
inline constexpr int kFeatureApCap = 4;

struct FeatureVector {
    std::array<double, kFeatureDim> values{};
    int schema_version = kFeatureSchemaVersion;
};

/// Schema names in vector order.
const std::array<std::string, kFeatureDim>& feature_names();

/// Deterministic, total; see the schema table above.
FeatureVector extract(const KripkeStructure& k, const Formula& f);

/// Per-feature standardization fitted on a sample.
struct Scaler {
    std::array<double, kFeatureDim> mean{};
    std::array<double, kFeatureDim> std{}; // population std; 0 replaced by 1
};

/// Population statistics over >= 1 vectors.
Scaler fit_scaler(const std::vector<FeatureVector>& vectors);

FeatureVector apply_scaler(const Scaler& scaler, const FeatureVector& v);

} // namespace ltloracle
