// ============================================================================
// smv.hpp — NuSMV bridge
// ============================================================================
//
// emit_smv renders a (K, f) pair as a single-module SMV model: a scalar
// state variable ranging over {s0..sN-1}, nondeterministic init/next
// assignments, one DEFINE per atomic proposition, and an LTLSPEC whose
// operator spelling follows NuSMV (R becomes V, true/false become
// TRUE/FALSE).  Output is byte-stable and pinned by golden files.
//
// external_check writes the model to a temp file, invokes
//   <binary> <file.smv>
// captures stdout+stderr, measures wall time, and parses the verdict line.
// The binary path may come from the LTLORACLE_NUSMV environment variable.
// ============================================================================

#pragma once

#include <optional>
#include <string>

#include "ltloracle/checker.hpp"
#include "ltloracle/formula.hpp"
#include "ltloracle/kripke.hpp"

namespace ltloracle {

/// Complete SMV module text for checking f on k.
std::string emit_smv(const KripkeStructure& k, const Formula& f);

/// Scan NuSMV output for "-- specification ... is true/false".
/// Throws UnrecognizedOutputError when neither line is present.
Outcome parse_nusmv_output(const std::string& text);

struct ExternalResult {
    Outcome outcome;
    double elapsed_seconds;
};

struct ExternalOptions {
    double timeout_seconds = 60.0;
    bool keep_temps = false;
    std::string temp_dir; // empty: system temp
};

/// Run an external NuSMV binary on the pair.  Throws SpawnError,
/// TimeoutError or UnrecognizedOutputError.
ExternalResult external_check(const KripkeStructure& k, const Formula& f,
                              const std::string& binary_path, const ExternalOptions& opts = {});

/// LTLORACLE_NUSMV when set, otherwise nullopt.
std::optional<std::string> nusmv_from_env();

} // namespace ltloracle
