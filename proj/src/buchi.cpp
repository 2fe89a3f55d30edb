#include "ltloracle/buchi.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "ltloracle/errors.hpp"

namespace ltloracle {

namespace {

// Subformulas of the (NNF) input are interned to small integers so tableau
// nodes can hold cheap sorted id sets.
struct Closure {
    std::vector<Formula> formulas;           // id -> formula
    std::map<Formula, std::uint32_t> ids;    // formula -> id
    std::vector<int> ap;                     // id -> alphabet index for atoms, else -1

    std::uint32_t intern(const Formula& f, const std::vector<std::string>& alphabet) {
        auto it = ids.find(f);
        if (it != ids.end()) return it->second;
        for (int i = 0; i < f.arity(); ++i) intern(f.child(i), alphabet);
        const std::uint32_t id = static_cast<std::uint32_t>(formulas.size());
        formulas.push_back(f);
        ids.emplace(f, id);
        int api = -1;
        if (f.op() == Op::Atom) {
            for (std::size_t i = 0; i < alphabet.size(); ++i)
                if (alphabet[i] == f.atom_name()) api = static_cast<int>(i);
            if (api < 0) throw DataError("formula atom '" + f.atom_name() + "' not in alphabet");
        }
        ap.push_back(api);
        return id;
    }

    std::uint32_t id_of(const Formula& f) const { return ids.at(f); }
    const Formula& at(std::uint32_t id) const { return formulas[id]; }
};

using IdSet = std::vector<std::uint32_t>; // sorted, unique

bool contains(const IdSet& s, std::uint32_t id) {
    return std::binary_search(s.begin(), s.end(), id);
}

void insert(IdSet& s, std::uint32_t id) {
    auto it = std::lower_bound(s.begin(), s.end(), id);
    if (it == s.end() || *it != id) s.insert(it, id);
}

void erase(IdSet& s, std::uint32_t id) {
    auto it = std::lower_bound(s.begin(), s.end(), id);
    if (it != s.end() && *it == id) s.erase(it);
}

struct Tableau {
    const Closure& closure;
    const std::vector<std::string>& alphabet;
    std::size_t state_cap;

    // completed node storage; key (old, next) identifies a node
    std::map<std::pair<IdSet, IdSet>, std::uint32_t> lookup;
    std::vector<IdSet> node_old;
    std::vector<IdSet> node_next;
    std::vector<std::set<std::int64_t>> node_incoming; // -1 encodes the initial edge
    std::deque<std::uint32_t> worklist;               // nodes whose successor is pending

    struct Pending {
        std::set<std::int64_t> incoming;
        IdSet todo; // "New" in GPVW terms
        IdSet old;
        IdSet next;
    };

    explicit Tableau(const Closure& c, const std::vector<std::string>& alpha, std::size_t cap)
        : closure(c), alphabet(alpha), state_cap(cap) {}

    bool literal_clash(const IdSet& old, std::uint32_t lit) const {
        const Formula& f = closure.at(lit);
        if (f.op() == Op::Atom) {
            for (std::uint32_t o : old) {
                const Formula& g = closure.at(o);
                if (g.op() == Op::Not && g.child(0) == f) return true;
            }
        } else { // Not(Atom)
            const std::uint32_t pos = closure.id_of(f.child(0));
            if (contains(old, pos)) return true;
        }
        return false;
    }

    // Process one pending node to completion (possibly splitting), then
    // merge or store it.  Recursion depth is bounded by the total size of
    // the formulas still in todo.
    void expand(Pending n) {
        if (n.todo.empty()) {
            finish(std::move(n));
            return;
        }
        const std::uint32_t id = n.todo.front(); // smallest id: deterministic
        erase(n.todo, id);
        const Formula& f = closure.at(id);

        switch (f.op()) {
            case Op::False:
                return; // inconsistent branch
            case Op::True:
                insert(n.old, id);
                expand(std::move(n));
                return;
            case Op::Atom:
            case Op::Not: // NNF: negation sits directly on an atom
                if (f.op() == Op::Not && f.child(0).op() != Op::Atom)
                    throw DataError("ltl_to_buchi requires negation normal form input");
                if (literal_clash(n.old, id)) return;
                insert(n.old, id);
                expand(std::move(n));
                return;
            case Op::And: {
                insert(n.old, id);
                add_todo(n, f.child(0));
                add_todo(n, f.child(1));
                expand(std::move(n));
                return;
            }
            case Op::Or: {
                insert(n.old, id);
                Pending b = n;
                add_todo(n, f.child(0));
                add_todo(b, f.child(1));
                expand(std::move(n));
                expand(std::move(b));
                return;
            }
            case Op::Next: {
                insert(n.old, id);
                insert(n.next, closure.id_of(f.child(0)));
                expand(std::move(n));
                return;
            }
            case Op::Until: {
                insert(n.old, id);
                Pending b = n;
                add_todo(n, f.child(0)); // continue: h, X(h U k)
                insert(n.next, id);
                add_todo(b, f.child(1)); // fulfil: k
                expand(std::move(n));
                expand(std::move(b));
                return;
            }
            case Op::Release: {
                insert(n.old, id);
                Pending b = n;
                add_todo(n, f.child(1)); // continue: k, X(h R k)
                insert(n.next, id);
                add_todo(b, f.child(0)); // release now: h, k
                add_todo(b, f.child(1));
                expand(std::move(n));
                expand(std::move(b));
                return;
            }
            case Op::Finally: {
                insert(n.old, id);
                Pending b = n;
                insert(n.next, id);      // continue: X(F k)
                add_todo(b, f.child(0)); // fulfil: k
                expand(std::move(n));
                expand(std::move(b));
                return;
            }
            case Op::Globally: {
                insert(n.old, id);
                add_todo(n, f.child(0));
                insert(n.next, id);
                expand(std::move(n));
                return;
            }
            case Op::Implies:
                throw DataError("ltl_to_buchi requires negation normal form input");
        }
    }

    void add_todo(Pending& n, const Formula& f) {
        const std::uint32_t id = closure.id_of(f);
        if (!contains(n.old, id)) insert(n.todo, id);
    }

    void finish(Pending n) {
        const auto key = std::make_pair(n.old, n.next);
        auto it = lookup.find(key);
        if (it != lookup.end()) {
            node_incoming[it->second].insert(n.incoming.begin(), n.incoming.end());
            return;
        }
        if (node_old.size() >= state_cap)
            throw ResourceLimitError("ltl_to_buchi: tableau exceeded " +
                                     std::to_string(state_cap) + " states");
        const std::uint32_t id = static_cast<std::uint32_t>(node_old.size());
        node_old.push_back(n.old);
        node_next.push_back(n.next);
        node_incoming.push_back(std::move(n.incoming));
        lookup.emplace(key, id);
        worklist.push_back(id);
    }

    void run(const Formula& root) {
        Pending start;
        start.incoming.insert(-1);
        insert(start.todo, closure.id_of(root));
        expand(std::move(start));
        while (!worklist.empty()) {
            const std::uint32_t id = worklist.front();
            worklist.pop_front();
            Pending succ;
            succ.incoming.insert(id);
            succ.todo = node_next[id];
            expand(std::move(succ));
        }
    }
};

Guard guard_of(const Closure& closure, const IdSet& old) {
    Guard g;
    for (std::uint32_t id : old) {
        const Formula& f = closure.at(id);
        if (f.op() == Op::Atom)
            g.must_true |= 1ULL << closure.ap[id];
        else if (f.op() == Op::Not)
            g.must_false |= 1ULL << closure.ap[closure.id_of(f.child(0))];
    }
    return g;
}

} // namespace

BuchiAutomaton ltl_to_buchi(const Formula& f_nnf, const std::vector<std::string>& alphabet,
                            const TranslateOptions& opts) {
    BuchiAutomaton a;
    a.alphabet = alphabet;

    // Constant inputs collapse to canonical automata.
    if (f_nnf.op() == Op::True) {
        a.edges.resize(1);
        a.edges[0].push_back({Guard{}, 0});
        a.initial = {0};
        return a;
    }
    if (f_nnf.op() == Op::False) {
        a.edges.resize(1); // no edges, no run
        a.initial = {0};
        return a;
    }

    Closure closure;
    closure.intern(f_nnf, alphabet);

    Tableau tab(closure, alphabet, opts.state_cap);
    tab.run(f_nnf);

    const std::size_t n = tab.node_old.size();
    a.edges.resize(n + 1); // state 0 is the synthetic initial state
    a.initial = {0};
    for (std::uint32_t node = 0; node < n; ++node) {
        const Guard g = guard_of(closure, tab.node_old[node]);
        for (std::int64_t from : tab.node_incoming[node]) {
            const std::uint32_t src = from < 0 ? 0 : static_cast<std::uint32_t>(from) + 1;
            a.edges[src].push_back({g, node + 1});
        }
    }
    for (auto& row : a.edges)
        std::sort(row.begin(), row.end(), [](const BuchiEdge& x, const BuchiEdge& y) {
            if (x.target != y.target) return x.target < y.target;
            if (x.guard.must_true != y.guard.must_true) return x.guard.must_true < y.guard.must_true;
            return x.guard.must_false < y.guard.must_false;
        });

    // One acceptance set per eventuality: states where the promise is absent
    // or already fulfilled.
    for (std::uint32_t id = 0; id < closure.formulas.size(); ++id) {
        const Formula& f = closure.at(id);
        if (f.op() != Op::Until && f.op() != Op::Finally) continue;
        const std::uint32_t k = closure.id_of(f.child(f.op() == Op::Until ? 1 : 0));
        std::vector<std::uint32_t> set;
        for (std::uint32_t node = 0; node < n; ++node)
            if (!contains(tab.node_old[node], id) || contains(tab.node_old[node], k))
                set.push_back(node + 1);
        a.acceptance_sets.push_back(std::move(set));
    }
    return a;
}

BuchiAutomaton degeneralize(const BuchiAutomaton& gba) {
    const std::size_t k = std::max<std::size_t>(gba.acceptance_sets.size(), 1);

    std::vector<std::vector<bool>> in_set(k, std::vector<bool>(gba.state_count(), true));
    for (std::size_t i = 0; i < gba.acceptance_sets.size(); ++i) {
        std::fill(in_set[i].begin(), in_set[i].end(), false);
        for (std::uint32_t q : gba.acceptance_sets[i]) in_set[i][q] = true;
    }

    // Reachable part of Q x {0..k-1}; counter advances when the source state
    // belongs to the awaited set.  Accepting: layer 0 states in set 0.
    BuchiAutomaton out;
    out.alphabet = gba.alphabet;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> states;
    auto intern = [&](std::uint32_t q, std::uint32_t layer) {
        auto it = index.find({q, layer});
        if (it != index.end()) return it->second;
        const std::uint32_t id = static_cast<std::uint32_t>(states.size());
        index.emplace(std::make_pair(q, layer), id);
        states.emplace_back(q, layer);
        return id;
    };

    for (std::uint32_t q0 : gba.initial) out.initial.push_back(intern(q0, 0));
    for (std::uint32_t id = 0; id < states.size(); ++id) {
        const auto [q, layer] = states[id];
        const std::uint32_t next_layer =
            in_set[layer][q] ? static_cast<std::uint32_t>((layer + 1) % k) : layer;
        std::vector<BuchiEdge> row;
        row.reserve(gba.edges[q].size());
        for (const BuchiEdge& e : gba.edges[q]) row.push_back({e.guard, intern(e.target, next_layer)});
        out.edges.push_back(std::move(row));
    }

    std::vector<std::uint32_t> acc;
    for (std::uint32_t id = 0; id < states.size(); ++id)
        if (states[id].second == 0 && in_set[0][states[id].first]) acc.push_back(id);
    out.acceptance_sets.push_back(std::move(acc));
    std::sort(out.initial.begin(), out.initial.end());
    return out;
}

} // namespace ltloracle
