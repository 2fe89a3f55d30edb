// ============================================================================
// formula.hpp — LTL abstract syntax tree
// ============================================================================
//
// A Formula is an immutable shared tree.  Node kinds:
//
//   Atom(name)  True  False                       (arity 0)
//   Not  Next (X)  Finally (F)  Globally (G)      (arity 1)
//   And  Or  Implies  Until (U)  Release (R)      (arity 2)
//
// Copying a Formula copies a shared_ptr; subtrees are freely shared between
// formulas and between threads.  Node count and depth are stored at
// construction, so length() and depth() are O(1).
//
// Canonical text form (format_ltl): leaves print bare ("p", "true"),
// every operator application is parenthesized ("(G p)", "(p U q)").
// parse_ltl of the canonical form reproduces the tree exactly.
// ============================================================================

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ltloracle {

enum class Op : std::uint8_t {
    Atom,
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Next,
    Finally,
    Globally,
    Until,
    Release,
};

inline constexpr int kOpCount = 12;

/// 0, 1 or 2.
int op_arity(Op op) noexcept;

/// Stable lowercase name ("atom", "until", ...), used in GenSpec weights
/// and feature schema names.
const char* op_name(Op op) noexcept;

class Formula {
public:
    Formula() = default; // empty handle; only valid() formulas may be used

    // ── Construction ────────────────────────────────────────────────────
    static Formula atom(std::string name);
    static Formula top();    // true
    static Formula bottom(); // false
    static Formula neg(Formula a);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula implies(Formula a, Formula b);
    static Formula next(Formula a);
    static Formula eventually(Formula a);
    static Formula always(Formula a);
    static Formula until(Formula a, Formula b);
    static Formula release(Formula a, Formula b);

    /// Generic constructor; children count must match op_arity(op).
    static Formula make(Op op, std::vector<Formula> children, std::string atom_name = "");

    // ── Accessors ───────────────────────────────────────────────────────
    bool valid() const noexcept { return node_ != nullptr; }
    Op op() const noexcept { return node_->op; }
    int arity() const noexcept { return op_arity(node_->op); }
    const std::string& atom_name() const noexcept { return node_->name; }
    Formula child(int i) const noexcept { return Formula(node_->kids[i]); }

    /// Total AST node count (operators + atom/constant occurrences).
    std::size_t length() const noexcept { return node_->length; }
    /// Longest root-to-leaf path; a leaf has depth 1.
    int depth() const noexcept { return node_->depth; }

    // Structural comparison.  Total order: op, then atom name, then children.
    static int compare(const Formula& a, const Formula& b) noexcept;
    bool operator==(const Formula& o) const noexcept { return compare(*this, o) == 0; }
    bool operator!=(const Formula& o) const noexcept { return !(*this == o); }
    bool operator<(const Formula& o) const noexcept { return compare(*this, o) < 0; }

    /// All distinct atom names in the formula, sorted.
    std::vector<std::string> atoms() const;

private:
    struct Node {
        Op op;
        std::string name; // Atom only
        std::shared_ptr<const Node> kids[2];
        std::uint32_t length;
        std::uint16_t depth;
    };

    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

// ── Operations ──────────────────────────────────────────────────────────

/// Canonical fully parenthesized text.
std::string format_ltl(const Formula& f);

/// Parse LTL text over a declared alphabet.
///
/// Grammar (precedence high to low, binary operators right-associative):
///
///   unary    :=  '!' | 'X' | 'F' | 'G'
///   primary  :=  ident | 'true' | 'false' | '(' formula ')'
///   ident    :=  [a-z][a-z0-9_]*        (except the keywords true/false)
///   level1   :=  unary* primary
///   level2   :=  level1 (('U' | 'R') level2)?
///   level3   :=  level2 ('&' level3)?
///   level4   :=  level3 ('|' level4)?
///   formula  :=  level4 ('->' formula)?
///
/// Throws SyntaxError (with position) or UnknownAtomError.
Formula parse_ltl(const std::string& text, const std::vector<std::string>& alphabet);

/// AST node count; same as f.length().
std::size_t formula_length(const Formula& f);

/// Negation normal form: Implies eliminated, Not pushed onto atoms.
Formula to_nnf(const Formula& f);

} // namespace ltloracle
