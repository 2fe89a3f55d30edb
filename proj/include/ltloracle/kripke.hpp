// ============================================================================
// kripke.hpp — finite transition systems with atomic-proposition labels
// ============================================================================
//
// States are indices 0..state_count()-1.  The transition relation must be
// total (every state has at least one successor); initial must be nonempty.
// Labels are stored as bitmasks over the ordered alphabet, which is limited
// to 64 propositions (a documented format constant, far above anything the
// generators produce).
//
// Text format (line oriented):
//
//   states N
//   init i1 i2 ...
//   ap p q ...
//   s <id> labels <names...> succ <ids...>     (one line per state)
// ============================================================================

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ltloracle {

inline constexpr int kMaxAlphabet = 64;

struct KripkeStructure {
    std::vector<std::string> alphabet;        // ordered, unique, nonempty names
    std::vector<std::uint32_t> initial;       // sorted, nonempty
    std::vector<std::vector<std::uint32_t>> succ; // sorted adjacency per state
    std::vector<std::uint64_t> labels;        // bitmask over alphabet per state

    std::size_t state_count() const noexcept { return succ.size(); }
    std::size_t edge_count() const noexcept;
    bool has_edge(std::uint32_t from, std::uint32_t to) const noexcept;
    bool is_initial(std::uint32_t s) const noexcept;

    int ap_index(const std::string& name) const noexcept; // -1 when absent
    bool state_has_ap(std::uint32_t s, int ap) const noexcept {
        return (labels[s] >> ap) & 1u;
    }
};

struct KripkeViolation {
    enum class Kind {
        NonTotalState,
        EmptyInitial,
        BadInitialIndex,
        BadEdgeEndpoint,
        DuplicateAtom,
        EmptyAtomName,
        LabelOutOfRange,
    };
    Kind kind;
    int state; // -1 when not state-specific
    std::string message;
};

/// Reports every invariant breach; empty result means valid.
std::vector<KripkeViolation> validate_kripke(const KripkeStructure& k);

/// Serialize in the documented text format (deterministic bytes).
std::string write_kripke(const KripkeStructure& k);
void write_kripke(std::ostream& os, const KripkeStructure& k);

/// Parse the text format.  Throws DataError on malformed input.
KripkeStructure read_kripke(std::istream& is);
KripkeStructure parse_kripke(const std::string& text);

} // namespace ltloracle
