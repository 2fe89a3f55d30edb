#include "ltloracle/gen.hpp"

#include <algorithm>

#include "ltloracle/errors.hpp"
#include "ltloracle/rng.hpp"

namespace ltloracle {

namespace {

constexpr std::uint64_t kFormulaStream = 1;
constexpr std::uint64_t kKripkeStream = 2;

} // namespace

GenSpec GenSpec::defaults() {
    GenSpec s;
    s.state_min = 4;
    s.state_max = 8;
    s.ap_count = 2;
    s.edge_density = 0.3;
    s.formula_length = 15;
    s.set_weight(Op::Atom, 1.0);
    s.set_weight(Op::True, 0.05);
    s.set_weight(Op::False, 0.05);
    s.set_weight(Op::Not, 0.6);
    s.set_weight(Op::And, 0.9);
    s.set_weight(Op::Or, 0.9);
    s.set_weight(Op::Implies, 0.4);
    s.set_weight(Op::Next, 0.8);
    s.set_weight(Op::Finally, 1.0);
    s.set_weight(Op::Globally, 1.0);
    s.set_weight(Op::Until, 0.8);
    s.set_weight(Op::Release, 0.4);
    return s;
}

void GenSpec::validate() const {
    if (state_min < 1) throw UsageError("gen spec: state_min must be >= 1");
    if (state_max < state_min) throw UsageError("gen spec: state_max must be >= state_min");
    if (ap_count < 1) throw UsageError("gen spec: ap_count must be >= 1");
    if (ap_count > kMaxAlphabet) throw UsageError("gen spec: ap_count must be <= 64");
    if (!(edge_density > 0.0 && edge_density <= 1.0))
        throw UsageError("gen spec: edge_density must be in (0, 1]");
    if (formula_length < 1) throw UsageError("gen spec: formula_length must be >= 1");
    bool any = false;
    for (double w : operator_weights) {
        if (w < 0.0) throw UsageError("gen spec: operator weights must be nonnegative");
        if (w > 0.0) any = true;
    }
    if (!any) throw UsageError("gen spec: at least one operator weight must be positive");
}

std::vector<std::string> default_alphabet(int ap_count) {
    static const char* kShort[] = {"p", "q", "r", "t", "u", "v", "w", "y"};
    std::vector<std::string> names;
    names.reserve(ap_count);
    for (int i = 0; i < ap_count; ++i) {
        if (i < 8)
            names.emplace_back(kShort[i]);
        else
            names.push_back("p" + std::to_string(i));
    }
    return names;
}

namespace {

bool budget_fits(Op op, int budget) {
    switch (op_arity(op)) {
        case 0: return budget == 1;
        case 1: return budget >= 2;
        default: return budget >= 3;
    }
}

Op pick_kind(const GenSpec& spec, int budget, SplitMix64& rng) {
    double total = 0.0;
    for (int i = 0; i < kOpCount; ++i)
        if (budget_fits(static_cast<Op>(i), budget)) total += spec.operator_weights[i];

    // All weighted kinds infeasible for this budget: fall back to the
    // feasible kinds with equal weight so the exact target stays reachable.
    const bool fallback = total <= 0.0;

    double r;
    if (fallback) {
        int feasible = 0;
        for (int i = 0; i < kOpCount; ++i)
            if (budget_fits(static_cast<Op>(i), budget)) ++feasible;
        r = rng.next_double() * feasible;
        for (int i = 0; i < kOpCount; ++i) {
            if (!budget_fits(static_cast<Op>(i), budget)) continue;
            r -= 1.0;
            if (r < 0.0) return static_cast<Op>(i);
        }
    } else {
        r = rng.next_double() * total;
        for (int i = 0; i < kOpCount; ++i) {
            if (!budget_fits(static_cast<Op>(i), budget)) continue;
            r -= spec.operator_weights[i];
            if (r < 0.0 && spec.operator_weights[i] > 0.0) return static_cast<Op>(i);
        }
    }
    // Numeric edge: return the last feasible kind.
    for (int i = kOpCount - 1; i >= 0; --i)
        if (budget_fits(static_cast<Op>(i), budget)) return static_cast<Op>(i);
    throw Error(Error::Category::Data, "impossible formula length");
}

Formula gen_formula(const GenSpec& spec, const std::vector<std::string>& alphabet, int budget,
                    SplitMix64& rng) {
    const Op op = pick_kind(spec, budget, rng);
    switch (op_arity(op)) {
        case 0:
            if (op == Op::Atom)
                return Formula::atom(alphabet[rng.next_below(alphabet.size())]);
            return op == Op::True ? Formula::top() : Formula::bottom();
        case 1: {
            Formula c = gen_formula(spec, alphabet, budget - 1, rng);
            return Formula::make(op, {std::move(c)});
        }
        default: {
            // children share budget-1 nodes; left gets 1..budget-2
            const int left = 1 + static_cast<int>(rng.next_below(budget - 2));
            Formula a = gen_formula(spec, alphabet, left, rng);
            Formula b = gen_formula(spec, alphabet, budget - 1 - left, rng);
            return Formula::make(op, {std::move(a), std::move(b)});
        }
    }
}

} // namespace

Formula random_formula(const GenSpec& spec, const std::vector<std::string>& alphabet) {
    spec.validate();
    if (alphabet.empty()) throw UsageError("random_formula: empty alphabet");
    SplitMix64 rng = SplitMix64(spec.seed).fork(kFormulaStream);
    return gen_formula(spec, alphabet, spec.formula_length, rng);
}

KripkeStructure random_kripke(const GenSpec& spec) {
    spec.validate();
    SplitMix64 rng = SplitMix64(spec.seed).fork(kKripkeStream);

    KripkeStructure k;
    k.alphabet = default_alphabet(spec.ap_count);
    const std::uint32_t n =
        static_cast<std::uint32_t>(rng.next_range(spec.state_min, spec.state_max));

    k.labels.assign(n, 0);
    for (std::uint32_t s = 0; s < n; ++s)
        for (int ap = 0; ap < spec.ap_count; ++ap)
            if (rng.next_bool(0.5)) k.labels[s] |= 1ULL << ap;

    k.succ.assign(n, {});
    for (std::uint32_t s = 0; s < n; ++s)
        for (std::uint32_t t = 0; t < n; ++t)
            if (rng.next_bool(spec.edge_density)) k.succ[s].push_back(t);

    // totality repair: one uniform successor for any dead-end state
    for (std::uint32_t s = 0; s < n; ++s)
        if (k.succ[s].empty())
            k.succ[s].push_back(static_cast<std::uint32_t>(rng.next_below(n)));

    for (std::uint32_t s = 0; s < n; ++s)
        if (rng.next_bool(0.5)) k.initial.push_back(s);
    if (k.initial.empty())
        k.initial.push_back(static_cast<std::uint32_t>(rng.next_below(n)));

    return k;
}

} // namespace ltloracle
