#include "ltloracle/checker.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "ltloracle/errors.hpp"

namespace ltloracle {

namespace {

// ── Product of a Kripke structure with a (degeneralized) automaton ──────
//
// Product state (s, q) steps to (s', q') when s -> s' is an edge of K and
// some automaton edge q -> q' has a guard satisfied by the labels of s
// (the automaton reads the letter of the state it is leaving behind).

struct Product {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> states; // (k state, ba state)
    std::vector<std::vector<std::uint32_t>> succ;
    std::vector<bool> accepting;
    std::vector<std::uint32_t> initial;
};

Product build_product(const KripkeStructure& k, const BuchiAutomaton& ba,
                      std::size_t state_cap) {
    Product p;
    std::map<std::uint64_t, std::uint32_t> index;
    auto key = [](std::uint32_t s, std::uint32_t q) {
        return (static_cast<std::uint64_t>(s) << 32) | q;
    };
    auto intern = [&](std::uint32_t s, std::uint32_t q) {
        auto it = index.find(key(s, q));
        if (it != index.end()) return it->second;
        if (p.states.size() >= state_cap)
            throw ResourceLimitError("product exceeded " + std::to_string(state_cap) + " states");
        const std::uint32_t id = static_cast<std::uint32_t>(p.states.size());
        index.emplace(key(s, q), id);
        p.states.emplace_back(s, q);
        return id;
    };

    std::vector<bool> ba_accepting(ba.state_count(), false);
    assert(ba.acceptance_sets.size() == 1);
    for (std::uint32_t q : ba.acceptance_sets[0]) ba_accepting[q] = true;

    for (std::uint32_t s0 : k.initial)
        for (std::uint32_t q0 : ba.initial) p.initial.push_back(intern(s0, q0));

    for (std::uint32_t id = 0; id < p.states.size(); ++id) {
        const auto [s, q] = p.states[id];
        const std::uint64_t letter = k.labels[s];
        std::vector<std::uint32_t> row;
        for (std::uint32_t t : k.succ[s])
            for (const BuchiEdge& e : ba.edges[q])
                if (e.guard.sat(letter)) row.push_back(intern(t, e.target));
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        p.succ.push_back(std::move(row));
        p.accepting.push_back(false); // filled below; keep sizes in sync
    }
    for (std::uint32_t id = 0; id < p.states.size(); ++id)
        p.accepting[id] = ba_accepting[p.states[id].second];
    return p;
}

// ── Nested depth-first search (Courcoubetis et al., with the cyan test of
// Holzmann/Peled/Yannakakis) ─────────────────────────────────────────────
//
// Blue DFS visits everything; in post-order, each accepting state seeds a
// red DFS that reports a cycle as soon as it reaches a state on the blue
// stack.  Red work is never repeated across seeds.

class Ndfs {
public:
    explicit Ndfs(const Product& p)
        : p_(p), color_(p.states.size(), White), red_(p.states.size(), RedNone) {}

    // Product-level lasso (stem + loop of product state ids), or nothing.
    std::optional<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> search() {
        for (std::uint32_t root : p_.initial) {
            if (color_[root] != White) continue;
            auto found = blue_from(root);
            if (found) return found;
        }
        return std::nullopt;
    }

private:
    enum Color : std::uint8_t { White, Cyan, Blue };
    enum Red : std::uint8_t { RedNone, Pink, RedDone };

    struct Frame {
        std::uint32_t state;
        std::uint32_t next_succ = 0;
    };

    std::optional<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>>
    blue_from(std::uint32_t root) {
        blue_stack_.clear();
        blue_stack_.push_back({root});
        color_[root] = Cyan;
        while (!blue_stack_.empty()) {
            Frame& f = blue_stack_.back();
            if (f.next_succ < p_.succ[f.state].size()) {
                const std::uint32_t t = p_.succ[f.state][f.next_succ++];
                if (color_[t] == White) {
                    color_[t] = Cyan;
                    blue_stack_.push_back({t});
                }
                continue;
            }
            const std::uint32_t s = f.state;
            if (p_.accepting[s]) {
                auto hit = red_from(s);
                if (hit) return reconstruct(*hit);
            }
            color_[s] = Blue;
            blue_stack_.pop_back();
        }
        return std::nullopt;
    }

    // Returns the cyan state closing a cycle, leaving red_stack_ in place
    // for reconstruction.
    std::optional<std::uint32_t> red_from(std::uint32_t seed) {
        red_stack_.clear();
        red_stack_.push_back({seed});
        while (!red_stack_.empty()) {
            Frame& f = red_stack_.back();
            if (f.next_succ < p_.succ[f.state].size()) {
                const std::uint32_t t = p_.succ[f.state][f.next_succ++];
                if (color_[t] == Cyan) return t;
                if (red_[t] == RedNone) {
                    red_[t] = Pink;
                    red_stack_.push_back({t});
                }
                continue;
            }
            red_[f.state] = RedDone;
            red_stack_.pop_back();
        }
        return std::nullopt;
    }

    std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
    reconstruct(std::uint32_t closing) const {
        std::size_t j = 0;
        while (blue_stack_[j].state != closing) ++j;
        std::vector<std::uint32_t> stem, loop;
        for (std::size_t i = 0; i < j; ++i) stem.push_back(blue_stack_[i].state);
        for (std::size_t i = j; i < blue_stack_.size(); ++i) loop.push_back(blue_stack_[i].state);
        for (std::size_t i = 1; i < red_stack_.size(); ++i) loop.push_back(red_stack_[i].state);
        return {std::move(stem), std::move(loop)};
    }

    const Product& p_;
    std::vector<std::uint8_t> color_;
    std::vector<std::uint8_t> red_;
    std::vector<Frame> blue_stack_;
    std::vector<Frame> red_stack_;
};

void require_valid(const KripkeStructure& k) {
    const auto violations = validate_kripke(k);
    if (!violations.empty())
        throw DataError("invalid Kripke structure: " + violations.front().message);
}

} // namespace

void fold_lasso_stem(Lasso& lasso) {
    while (!lasso.stem.empty() && lasso.stem.back() == lasso.loop.back()) {
        lasso.loop.insert(lasso.loop.begin(), lasso.loop.back());
        lasso.loop.pop_back();
        lasso.stem.pop_back();
    }
}

Verdict check_against(const KripkeStructure& k, const BuchiAutomaton& neg_automaton,
                      const CheckOptions& opts) {
    require_valid(k);
    const BuchiAutomaton* ba = &neg_automaton;
    BuchiAutomaton degen;
    if (neg_automaton.acceptance_sets.size() != 1) {
        degen = degeneralize(neg_automaton);
        ba = &degen;
    }
    const Product product = build_product(k, *ba, opts.product_state_cap);
    auto found = Ndfs(product).search();
    if (!found) return {Outcome::Holds, std::nullopt};

    Lasso lasso;
    for (std::uint32_t id : found->first) lasso.stem.push_back(product.states[id].first);
    for (std::uint32_t id : found->second) lasso.loop.push_back(product.states[id].first);
    fold_lasso_stem(lasso);
    return {Outcome::Violated, std::move(lasso)};
}

Verdict check(const KripkeStructure& k, const Formula& f, const CheckOptions& opts) {
    require_valid(k);
    const Formula negated = to_nnf(Formula::neg(f));
    const BuchiAutomaton gba =
        ltl_to_buchi(negated, k.alphabet, {opts.automaton_state_cap});
    return check_against(k, degeneralize(gba), opts);
}

// ── Lasso-word evaluation ───────────────────────────────────────────────
//
// Truth tables over positions 0..|stem|+|loop|-1 with wrap-around; U/F are
// least fixpoints (start false), R/G greatest (start true); chaotic
// backward sweeps until stable.

namespace {

struct LassoEval {
    std::vector<std::uint64_t> letters;
    std::size_t stem_len;

    std::size_t count() const { return letters.size(); }
    std::size_t next(std::size_t i) const { return i + 1 < count() ? i + 1 : stem_len; }

    std::map<Formula, std::vector<std::uint8_t>> rows;

    const std::vector<std::uint8_t>& row(const Formula& f, const std::vector<std::string>& alphabet) {
        auto it = rows.find(f);
        if (it != rows.end()) return it->second;
        const std::size_t n = count();
        std::vector<std::uint8_t> r(n, 0);
        switch (f.op()) {
            case Op::Atom: {
                int ap = -1;
                for (std::size_t i = 0; i < alphabet.size(); ++i)
                    if (alphabet[i] == f.atom_name()) ap = static_cast<int>(i);
                if (ap < 0) throw DataError("eval_lasso: atom '" + f.atom_name() + "' not in alphabet");
                for (std::size_t i = 0; i < n; ++i) r[i] = (letters[i] >> ap) & 1u;
                break;
            }
            case Op::True:
                std::fill(r.begin(), r.end(), 1);
                break;
            case Op::False:
                break;
            case Op::Not: {
                const auto& a = row(f.child(0), alphabet);
                for (std::size_t i = 0; i < n; ++i) r[i] = !a[i];
                break;
            }
            case Op::And:
            case Op::Or:
            case Op::Implies: {
                const auto& a = row(f.child(0), alphabet);
                const auto& b = row(f.child(1), alphabet);
                for (std::size_t i = 0; i < n; ++i)
                    r[i] = f.op() == Op::And  ? (a[i] && b[i])
                         : f.op() == Op::Or   ? (a[i] || b[i])
                                              : (!a[i] || b[i]);
                break;
            }
            case Op::Next: {
                const auto& a = row(f.child(0), alphabet);
                for (std::size_t i = 0; i < n; ++i) r[i] = a[next(i)];
                break;
            }
            case Op::Until:
            case Op::Finally: {
                const bool is_until = f.op() == Op::Until;
                const auto& h = row(f.child(0), alphabet);
                const auto& kk = is_until ? row(f.child(1), alphabet) : h;
                fixpoint(r, n, [&](std::size_t i, const std::vector<std::uint8_t>& cur) {
                    const bool hold = is_until ? static_cast<bool>(h[i]) : true;
                    return static_cast<std::uint8_t>(kk[i] || (hold && cur[next(i)]));
                });
                break;
            }
            case Op::Release:
            case Op::Globally: {
                const bool is_release = f.op() == Op::Release;
                const auto& h = row(f.child(0), alphabet);
                const auto& kk = is_release ? row(f.child(1), alphabet) : h;
                std::fill(r.begin(), r.end(), 1);
                fixpoint(r, n, [&](std::size_t i, const std::vector<std::uint8_t>& cur) {
                    const bool rel = is_release ? static_cast<bool>(h[i]) : false;
                    return static_cast<std::uint8_t>(kk[i] && (rel || cur[next(i)]));
                });
                break;
            }
        }
        return rows.emplace(f, std::move(r)).first->second;
    }

    template <typename Step>
    void fixpoint(std::vector<std::uint8_t>& r, std::size_t n, Step step) const {
        for (std::size_t sweep = 0; sweep <= n + 1; ++sweep) {
            bool changed = false;
            for (std::size_t i = n; i-- > 0;) {
                const std::uint8_t v = step(i, r);
                if (v != r[i]) {
                    r[i] = v;
                    changed = true;
                }
            }
            if (!changed) return;
        }
        assert(false && "lasso fixpoint did not converge");
    }
};

} // namespace

bool eval_lasso(const std::vector<std::uint64_t>& stem, const std::vector<std::uint64_t>& loop,
                const Formula& f, const std::vector<std::string>& alphabet) {
    if (loop.empty()) throw DataError("eval_lasso: empty loop");
    LassoEval ev;
    ev.letters = stem;
    ev.letters.insert(ev.letters.end(), loop.begin(), loop.end());
    ev.stem_len = stem.size();
    return ev.row(f, alphabet)[0] != 0;
}

bool verify_counterexample(const KripkeStructure& k, const Formula& f, const Lasso& lasso) {
    const std::uint32_t n = static_cast<std::uint32_t>(k.state_count());
    if (lasso.loop.empty()) throw MalformedLassoError("lasso has an empty loop");
    for (std::uint32_t s : lasso.stem)
        if (s >= n) throw MalformedLassoError("stem state " + std::to_string(s) + " out of range");
    for (std::uint32_t s : lasso.loop)
        if (s >= n) throw MalformedLassoError("loop state " + std::to_string(s) + " out of range");

    const std::uint32_t first = lasso.stem.empty() ? lasso.loop.front() : lasso.stem.front();
    if (!k.is_initial(first))
        throw MalformedLassoError("lasso does not start in an initial state");

    auto need_edge = [&](std::uint32_t a, std::uint32_t b) {
        if (!k.has_edge(a, b))
            throw MalformedLassoError("lasso uses non-edge " + std::to_string(a) + " -> " +
                                      std::to_string(b));
    };
    for (std::size_t i = 1; i < lasso.stem.size(); ++i) need_edge(lasso.stem[i - 1], lasso.stem[i]);
    if (!lasso.stem.empty()) need_edge(lasso.stem.back(), lasso.loop.front());
    for (std::size_t i = 1; i < lasso.loop.size(); ++i) need_edge(lasso.loop[i - 1], lasso.loop[i]);
    need_edge(lasso.loop.back(), lasso.loop.front());

    std::vector<std::uint64_t> stem_letters, loop_letters;
    for (std::uint32_t s : lasso.stem) stem_letters.push_back(k.labels[s]);
    for (std::uint32_t s : lasso.loop) loop_letters.push_back(k.labels[s]);
    return !eval_lasso(stem_letters, loop_letters, f, k.alphabet);
}

bool automaton_accepts(const BuchiAutomaton& automaton, const std::vector<std::uint64_t>& stem,
                       const std::vector<std::uint64_t>& loop, const CheckOptions& opts) {
    if (loop.empty()) throw DataError("automaton_accepts: empty loop");

    // The word as a single-path Kripke structure.
    KripkeStructure chain;
    chain.alphabet = automaton.alphabet;
    const std::size_t n = stem.size() + loop.size();
    chain.labels = stem;
    chain.labels.insert(chain.labels.end(), loop.begin(), loop.end());
    chain.succ.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        chain.succ[i] = {static_cast<std::uint32_t>(i + 1 < n ? i + 1 : stem.size())};
    chain.initial = {0};

    const BuchiAutomaton degen = degeneralize(automaton);
    const Product product = build_product(chain, degen, opts.product_state_cap);
    return Ndfs(product).search().has_value();
}

} // namespace ltloracle
