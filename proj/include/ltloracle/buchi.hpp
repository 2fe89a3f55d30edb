// ============================================================================
// buchi.hpp — generalized Büchi automata and the LTL tableau translation
// ============================================================================
//
// ltl_to_buchi implements the on-the-fly tableau construction of Gerth,
// Peled, Vardi and Wolper (CAV'95) extended with native Finally/Globally
// expansion rules:
//
//   h U k   ->  ({h}, X(h U k))  |  ({k})
//   h R k   ->  ({k}, X(h R k))  |  ({h, k})
//   F k     ->  ({},  X(F k))    |  ({k})
//   G k     ->  ({k}, X(G k))
//
// The result is a transition-guarded generalized Büchi automaton: a guard
// is a conjunction of literals, stored as two bitmasks over the alphabet.
// One acceptance set is produced per Until/Finally subformula; an automaton
// with zero acceptance sets accepts every run.
//
// State 0 is always the unique initial state; it has no incoming edge.
// ============================================================================

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltloracle/formula.hpp"

namespace ltloracle {

/// Conjunction of literals over the alphabet.  A letter (bitmask of true
/// atoms) satisfies the guard when it covers must_true and avoids must_false.
struct Guard {
    std::uint64_t must_true = 0;
    std::uint64_t must_false = 0;

    bool sat(std::uint64_t letter) const noexcept {
        return (letter & must_true) == must_true && (letter & must_false) == 0;
    }
    bool operator==(const Guard&) const = default;
};

struct BuchiEdge {
    Guard guard;
    std::uint32_t target;
};

struct BuchiAutomaton {
    std::vector<std::string> alphabet;
    std::vector<std::vector<BuchiEdge>> edges; // per source state
    std::vector<std::uint32_t> initial;        // sorted
    std::vector<std::vector<std::uint32_t>> acceptance_sets; // sorted state subsets

    std::size_t state_count() const noexcept { return edges.size(); }
};

struct TranslateOptions {
    std::size_t state_cap = 2'000'000;
};

/// Tableau translation.  f_nnf must be in negation normal form (as produced
/// by to_nnf); the automaton accepts exactly the infinite words over
/// 2^alphabet that satisfy f_nnf.  Throws ResourceLimitError past state_cap.
BuchiAutomaton ltl_to_buchi(const Formula& f_nnf, const std::vector<std::string>& alphabet,
                            const TranslateOptions& opts = {});

/// Counting construction: collapse generalized acceptance onto one set
/// (stored as acceptance_sets[0]).  An input with zero sets yields a single
/// all-state set.
BuchiAutomaton degeneralize(const BuchiAutomaton& gba);

} // namespace ltloracle
