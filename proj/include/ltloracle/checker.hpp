// ============================================================================
// checker.hpp — ground-truth labeling: does K satisfy f?
// ============================================================================
//
// check():           automata-theoretic route.  Translate !f to a generalized
//                    Büchi automaton (buchi.hpp), degeneralize by counting,
//                    build the product with K and run a nested depth-first
//                    search for an accepting lasso.
//
// check_reference(): independent oracle.  Declarative closure tableau over
//                    !f (atoms = maximal locally consistent subsets of the
//                    subformula closure), product with K, acceptance decided
//                    by SCC analysis honoring eventuality obligations.
//
// Both are deterministic: identical inputs give identical verdicts and
// identical counterexamples.  A Violated verdict always carries a Lasso that
// verify_counterexample accepts.
// ============================================================================

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ltloracle/buchi.hpp"
#include "ltloracle/formula.hpp"
#include "ltloracle/kripke.hpp"

namespace ltloracle {

/// Ultimately periodic run of K: stem then loop repeated forever.
/// stem may be empty; loop may not.  Consecutive entries (including the
/// stem->loop seam and the loop closure) must be edges of K, and the first
/// state must be initial.
struct Lasso {
    std::vector<std::uint32_t> stem;
    std::vector<std::uint32_t> loop;
};

enum class Outcome : std::uint8_t { Holds, Violated };

struct Verdict {
    Outcome outcome;
    std::optional<Lasso> counterexample; // present iff Violated

    bool holds() const noexcept { return outcome == Outcome::Holds; }
};

struct CheckOptions {
    std::size_t automaton_state_cap = 2'000'000;
    std::size_t product_state_cap = 2'000'000;
    /// check_reference enumerates 2^m candidate atoms for a closure of m
    /// distinct subformulas; above this it raises ResourceLimitError.
    std::size_t reference_closure_cap = 22;
};

/// Holds iff every infinite path of k from an initial state satisfies f.
Verdict check(const KripkeStructure& k, const Formula& f, const CheckOptions& opts = {});

/// Same contract as check, structurally different algorithm.
Verdict check_reference(const KripkeStructure& k, const Formula& f, const CheckOptions& opts = {});

/// Product-and-search step of check() with the translation factored out:
/// neg_automaton must be a degeneralized automaton for !f.  Exposed so
/// sweeps over many structures can translate a formula once.
Verdict check_against(const KripkeStructure& k, const BuchiAutomaton& neg_automaton,
                      const CheckOptions& opts = {});

/// Truth of f on the infinite word stem . loop^omega of alphabet letters
/// (bitmasks over `alphabet`).  Exact; loop must be nonempty.
bool eval_lasso(const std::vector<std::uint64_t>& stem, const std::vector<std::uint64_t>& loop,
                const Formula& f, const std::vector<std::string>& alphabet);

/// True iff lasso is a run of k whose word falsifies f.
/// Throws MalformedLassoError when the lasso is not structurally a run of k.
bool verify_counterexample(const KripkeStructure& k, const Formula& f, const Lasso& lasso);

/// While the stem ends with the same state the loop ends with, fold that
/// entry into a rotated loop.  The generated infinite run is unchanged;
/// both checkers apply this so a pure loop is reported with an empty stem.
void fold_lasso_stem(Lasso& lasso);

/// Does the automaton accept the ultimately periodic word?  Decided by
/// product search (no formula involved); used to cross-validate the
/// translation against eval_lasso.
bool automaton_accepts(const BuchiAutomaton& automaton, const std::vector<std::uint64_t>& stem,
                       const std::vector<std::uint64_t>& loop, const CheckOptions& opts = {});

} // namespace ltloracle
