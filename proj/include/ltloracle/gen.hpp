// ============================================================================
// gen.hpp — seeded generation of formulas and Kripke structures
// ============================================================================
//
// Both generators are pure functions of GenSpec: the same spec always yields
// the same object, byte for byte after serialization.  Independent SplitMix64
// streams are forked from the seed (tag 1 for formulas, tag 2 for Kripke
// structures) so the two halves of an instance never share draws.
//
// random_formula produces exactly spec.formula_length AST nodes: at every
// step the candidate node kinds are restricted to those whose minimal
// subtree still fits the remaining budget (leaf: budget 1, unary: budget
// >= 2, binary: budget >= 3); binary budgets are split uniformly.  When no
// weighted kind fits the budget, the feasible kinds are used with equal
// weight, so generation never fails for formula_length >= 1.
//
// random_kripke draws each ordered edge independently with probability
// edge_density, then repairs totality by giving every successor-less state
// one uniformly chosen successor.
// ============================================================================

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ltloracle/formula.hpp"
#include "ltloracle/kripke.hpp"

namespace ltloracle {

struct GenSpec {
    std::uint64_t seed = 0;
    int state_min = 1;
    int state_max = 1;
    int ap_count = 1;
    double edge_density = 0.5;      // in (0, 1]
    int formula_length = 1;         // exact AST node count
    std::array<double, kOpCount> operator_weights{}; // indexed by Op

    double weight(Op op) const noexcept { return operator_weights[static_cast<int>(op)]; }
    void set_weight(Op op, double w) noexcept { operator_weights[static_cast<int>(op)] = w; }

    /// Declared default distribution (the paper does not specify one).
    static GenSpec defaults();

    /// Throws UsageError when an invariant is broken.
    void validate() const;
};

/// Alphabet used by the generators: p q r t u v w y, then p8, p9, ...
std::vector<std::string> default_alphabet(int ap_count);

/// Formula with exactly spec.formula_length nodes, atoms drawn from alphabet.
Formula random_formula(const GenSpec& spec, const std::vector<std::string>& alphabet);

/// Kripke structure satisfying every KripkeStructure invariant.
KripkeStructure random_kripke(const GenSpec& spec);

} // namespace ltloracle
