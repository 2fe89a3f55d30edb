// reference.cpp — the declarative closure-tableau route of check_reference.
//
// Unlike the GPVW translation behind check(), this checker never converts
// to NNF and builds no automaton on the fly.  It enumerates the maximal
// locally consistent subsets ("atoms") of the subformula closure of !f,
// takes their product with K under the two-sided temporal transition
// constraints, and decides satisfiability of !f on K by searching for a
// reachable nontrivial SCC that fulfils every eventuality it mentions.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <queue>
#include <vector>

#include "ltloracle/checker.hpp"
#include "ltloracle/errors.hpp"

namespace ltloracle {

namespace {

struct RefClosure {
    std::vector<Formula> formulas; // children precede parents
    std::map<Formula, std::uint32_t> ids;
    std::vector<std::array<std::int32_t, 2>> child; // -1 when absent
    std::vector<int> ap;                            // alphabet index for atoms, else -1

    std::uint32_t intern(const Formula& f, const std::vector<std::string>& alphabet) {
        auto it = ids.find(f);
        if (it != ids.end()) return it->second;
        std::array<std::int32_t, 2> kids{-1, -1};
        for (int i = 0; i < f.arity(); ++i)
            kids[i] = static_cast<std::int32_t>(intern(f.child(i), alphabet));
        const std::uint32_t id = static_cast<std::uint32_t>(formulas.size());
        formulas.push_back(f);
        ids.emplace(f, id);
        child.push_back(kids);
        int api = -1;
        if (f.op() == Op::Atom) {
            for (std::size_t i = 0; i < alphabet.size(); ++i)
                if (alphabet[i] == f.atom_name()) api = static_cast<int>(i);
            if (api < 0) throw DataError("formula atom '" + f.atom_name() + "' not in alphabet");
        }
        ap.push_back(api);
        return id;
    }

    std::size_t size() const { return formulas.size(); }
};

using AtomMask = std::uint32_t;

inline bool has(AtomMask a, std::uint32_t id) { return (a >> id) & 1u; }

bool locally_consistent(const RefClosure& c, AtomMask a) {
    for (std::uint32_t i = 0; i < c.size(); ++i) {
        const Formula& f = c.formulas[i];
        const auto& kid = c.child[i];
        switch (f.op()) {
            case Op::True:
                if (!has(a, i)) return false;
                break;
            case Op::False:
                if (has(a, i)) return false;
                break;
            case Op::Not:
                if (has(a, i) == has(a, kid[0])) return false;
                break;
            case Op::And:
                if (has(a, i) != (has(a, kid[0]) && has(a, kid[1]))) return false;
                break;
            case Op::Or:
                if (has(a, i) != (has(a, kid[0]) || has(a, kid[1]))) return false;
                break;
            case Op::Implies:
                if (has(a, i) != (!has(a, kid[0]) || has(a, kid[1]))) return false;
                break;
            case Op::Until:
                if (has(a, kid[1]) && !has(a, i)) return false;
                if (has(a, i) && !has(a, kid[1]) && !has(a, kid[0])) return false;
                break;
            case Op::Release:
                if (has(a, i) && !has(a, kid[1])) return false;
                if (has(a, kid[0]) && has(a, kid[1]) && !has(a, i)) return false;
                break;
            case Op::Finally:
                if (has(a, kid[0]) && !has(a, i)) return false;
                break;
            case Op::Globally:
                if (has(a, i) && !has(a, kid[0])) return false;
                break;
            case Op::Atom:
            case Op::Next:
                break;
        }
    }
    return true;
}

// Two-sided one-step constraints between consecutive atoms.
bool step_allowed(const RefClosure& c, AtomMask a, AtomMask b) {
    for (std::uint32_t i = 0; i < c.size(); ++i) {
        const auto& kid = c.child[i];
        switch (c.formulas[i].op()) {
            case Op::Next:
                if (has(a, i) != has(b, kid[0])) return false;
                break;
            case Op::Until:
                if (has(a, i) != (has(a, kid[1]) || (has(a, kid[0]) && has(b, i)))) return false;
                break;
            case Op::Release:
                if (has(a, i) != (has(a, kid[1]) && (has(a, kid[0]) || has(b, i)))) return false;
                break;
            case Op::Finally:
                if (has(a, i) != (has(a, kid[0]) || has(b, i))) return false;
                break;
            case Op::Globally:
                if (has(a, i) != (has(a, kid[0]) && has(b, i))) return false;
                break;
            default:
                break;
        }
    }
    return true;
}

struct RefProduct {
    // node = (kripke state, atom index); discovered breadth-first
    std::vector<std::pair<std::uint32_t, std::uint32_t>> nodes;
    std::vector<std::vector<std::uint32_t>> succ;
    std::vector<std::uint32_t> initial;
    std::vector<std::int32_t> bfs_parent; // stem reconstruction
};

// Iterative Tarjan; SCC ids are assigned in deterministic order.
struct SccResult {
    std::vector<std::uint32_t> comp; // node -> scc id
    std::uint32_t count = 0;
};

SccResult tarjan(const std::vector<std::vector<std::uint32_t>>& succ) {
    const std::uint32_t n = static_cast<std::uint32_t>(succ.size());
    SccResult r;
    r.comp.assign(n, 0);
    std::vector<std::int32_t> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::int32_t next_index = 0;

    struct Frame {
        std::uint32_t v;
        std::uint32_t succ_pos = 0;
    };
    std::vector<Frame> frames;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        frames.push_back({root});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.succ_pos < succ[f.v].size()) {
                const std::uint32_t w = succ[f.v][f.succ_pos++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const std::uint32_t v = f.v;
            frames.pop_back();
            if (!frames.empty())
                low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            if (low[v] == index[v]) {
                while (true) {
                    const std::uint32_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    r.comp[w] = r.count;
                    if (w == v) break;
                }
                ++r.count;
            }
        }
    }
    return r;
}

// Shortest path u -> v (inclusive) using only nodes of the given SCC.
std::vector<std::uint32_t> path_in_scc(const RefProduct& p, const SccResult& scc,
                                       std::uint32_t comp, std::uint32_t u, std::uint32_t v) {
    if (u == v) return {u};
    std::vector<std::int32_t> parent(p.nodes.size(), -1);
    std::queue<std::uint32_t> q;
    q.push(u);
    parent[u] = static_cast<std::int32_t>(u);
    while (!q.empty()) {
        const std::uint32_t x = q.front();
        q.pop();
        for (std::uint32_t y : p.succ[x]) {
            if (scc.comp[y] != comp || parent[y] != -1) continue;
            parent[y] = static_cast<std::int32_t>(x);
            if (y == v) {
                std::vector<std::uint32_t> path{v};
                for (std::uint32_t cur = v; cur != u;) {
                    cur = static_cast<std::uint32_t>(parent[cur]);
                    path.push_back(cur);
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            q.push(y);
        }
    }
    throw Error(Error::Category::Data, "internal: SCC not strongly connected");
}

} // namespace

Verdict check_reference(const KripkeStructure& k, const Formula& f, const CheckOptions& opts) {
    {
        const auto violations = validate_kripke(k);
        if (!violations.empty())
            throw DataError("invalid Kripke structure: " + violations.front().message);
    }

    const Formula g = Formula::neg(f); // K violates f iff some path satisfies g

    RefClosure closure;
    const std::uint32_t g_id = closure.intern(g, k.alphabet);
    const std::size_t closure_cap = std::min<std::size_t>(opts.reference_closure_cap, 31);
    if (closure.size() > closure_cap)
        throw ResourceLimitError("check_reference: closure of " + std::to_string(closure.size()) +
                                 " exceeds cap " + std::to_string(closure_cap));

    // Maximal locally consistent subsets, ascending by bitmask.
    std::vector<AtomMask> atoms;
    const std::uint64_t limit = 1ULL << closure.size();
    for (std::uint64_t a = 0; a < limit; ++a)
        if (locally_consistent(closure, static_cast<AtomMask>(a)))
            atoms.push_back(static_cast<AtomMask>(a));
    if (atoms.size() * atoms.size() > (std::size_t{1} << 26))
        throw ResourceLimitError("check_reference: atom graph too large");

    // Atoms grouped by compatibility with each state's labels.
    const std::uint32_t n_states = static_cast<std::uint32_t>(k.state_count());
    std::vector<std::vector<std::uint32_t>> state_atoms(n_states);
    for (std::uint32_t s = 0; s < n_states; ++s)
        for (std::uint32_t ai = 0; ai < atoms.size(); ++ai) {
            bool ok = true;
            for (std::uint32_t i = 0; ok && i < closure.size(); ++i)
                if (closure.ap[i] >= 0 && has(atoms[ai], i) != k.state_has_ap(s, closure.ap[i]))
                    ok = false;
            if (ok) state_atoms[s].push_back(ai);
        }

    // step_allowed cache: -1 unknown, else 0/1
    std::vector<std::int8_t> allowed(atoms.size() * atoms.size(), -1);
    auto step_ok = [&](std::uint32_t a, std::uint32_t b) {
        std::int8_t& cell = allowed[a * atoms.size() + b];
        if (cell < 0) cell = step_allowed(closure, atoms[a], atoms[b]) ? 1 : 0;
        return cell == 1;
    };

    // Reachable product, breadth-first.
    RefProduct p;
    std::map<std::uint64_t, std::uint32_t> seen;
    auto intern_node = [&](std::uint32_t s, std::uint32_t ai, std::int32_t parent) {
        const std::uint64_t key = (static_cast<std::uint64_t>(s) << 32) | ai;
        auto it = seen.find(key);
        if (it != seen.end()) return it->second;
        if (p.nodes.size() >= opts.product_state_cap)
            throw ResourceLimitError("check_reference: product exceeded cap");
        const std::uint32_t id = static_cast<std::uint32_t>(p.nodes.size());
        seen.emplace(key, id);
        p.nodes.emplace_back(s, ai);
        p.bfs_parent.push_back(parent);
        return id;
    };

    for (std::uint32_t s : k.initial)
        for (std::uint32_t ai : state_atoms[s])
            if (has(atoms[ai], g_id)) p.initial.push_back(intern_node(s, ai, -1));

    for (std::uint32_t id = 0; id < p.nodes.size(); ++id) {
        const auto [s, ai] = p.nodes[id];
        std::vector<std::uint32_t> row;
        for (std::uint32_t t : k.succ[s])
            for (std::uint32_t bi : state_atoms[t])
                if (step_ok(ai, bi))
                    row.push_back(intern_node(t, bi, static_cast<std::int32_t>(id)));
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        p.succ.push_back(std::move(row));
    }

    if (p.nodes.empty()) return {Outcome::Holds, std::nullopt};

    // Eventualities.  Least-fixpoint operators promise their fulfilment
    // positively (h U k, F k present demand k); greatest-fixpoint operators
    // promise negatively: an atom where G k / h R k is false asserts that
    // !k eventually holds.
    struct Eventuality {
        std::uint32_t id;
        std::uint32_t fulfil;
        bool positive;
    };
    std::vector<Eventuality> eventualities;
    for (std::uint32_t i = 0; i < closure.size(); ++i) {
        switch (closure.formulas[i].op()) {
            case Op::Until:
                eventualities.push_back({i, static_cast<std::uint32_t>(closure.child[i][1]), true});
                break;
            case Op::Finally:
                eventualities.push_back({i, static_cast<std::uint32_t>(closure.child[i][0]), true});
                break;
            case Op::Release:
                eventualities.push_back({i, static_cast<std::uint32_t>(closure.child[i][1]), false});
                break;
            case Op::Globally:
                eventualities.push_back({i, static_cast<std::uint32_t>(closure.child[i][0]), false});
                break;
            default:
                break;
        }
    }

    const SccResult scc = tarjan(p.succ);

    std::vector<std::vector<std::uint32_t>> members(scc.count);
    for (std::uint32_t id = 0; id < p.nodes.size(); ++id) members[scc.comp[id]].push_back(id);

    // nontrivial = contains a cycle: two or more members, or a self-loop
    std::vector<bool> nontrivial(scc.count, false);
    for (std::uint32_t c = 0; c < scc.count; ++c)
        if (members[c].size() >= 2) nontrivial[c] = true;
    for (std::uint32_t id = 0; id < p.nodes.size(); ++id)
        if (!nontrivial[scc.comp[id]])
            for (std::uint32_t t : p.succ[id])
                if (t == id) nontrivial[scc.comp[id]] = true;

    // Deterministic scan: smallest product node id whose SCC qualifies.
    for (std::uint32_t entry = 0; entry < p.nodes.size(); ++entry) {
        const std::uint32_t c = scc.comp[entry];
        if (!nontrivial[c]) continue;

        bool fulfilled = true;
        std::vector<std::uint32_t> witnesses;
        for (const auto& ev : eventualities) {
            bool present = false, sat = false;
            std::uint32_t witness = 0;
            for (std::uint32_t id : members[c]) {
                const AtomMask a = atoms[p.nodes[id].second];
                if (has(a, ev.id) == ev.positive) present = true;
                if (!sat && has(a, ev.fulfil) == ev.positive) {
                    sat = true;
                    witness = id;
                }
            }
            if (present && !sat) {
                fulfilled = false;
                break;
            }
            if (present) witnesses.push_back(witness);
        }
        if (!fulfilled) continue;

        // Found: assemble stem (BFS parents) and a loop that tours every
        // witness before closing back at the entry node.
        std::vector<std::uint32_t> stem_nodes;
        for (std::int32_t cur = static_cast<std::int32_t>(entry); cur != -1;
             cur = p.bfs_parent[cur])
            stem_nodes.push_back(static_cast<std::uint32_t>(cur));
        std::reverse(stem_nodes.begin(), stem_nodes.end());
        stem_nodes.pop_back(); // entry starts the loop instead

        std::vector<std::uint32_t> walk{entry};
        std::uint32_t cur = entry;
        std::sort(witnesses.begin(), witnesses.end());
        witnesses.erase(std::unique(witnesses.begin(), witnesses.end()), witnesses.end());
        for (std::uint32_t w : witnesses) {
            if (w == cur) continue;
            auto seg = path_in_scc(p, scc, c, cur, w);
            walk.insert(walk.end(), seg.begin() + 1, seg.end());
            cur = w;
        }
        if (cur != entry) {
            auto seg = path_in_scc(p, scc, c, cur, entry);
            walk.insert(walk.end(), seg.begin() + 1, seg.end());
        }
        if (walk.size() == 1) {
            // no witnesses and entry==cur: take the cheapest real cycle
            std::uint32_t u = 0;
            bool found_u = false;
            for (std::uint32_t t : p.succ[entry])
                if (scc.comp[t] == c) {
                    u = t;
                    found_u = true;
                    break;
                }
            if (!found_u) continue; // cannot happen in a nontrivial SCC
            if (u == entry) {
                walk.push_back(entry);
            } else {
                auto seg = path_in_scc(p, scc, c, u, entry);
                walk.push_back(u);
                walk.insert(walk.end(), seg.begin() + 1, seg.end());
            }
        }
        walk.pop_back(); // drop the repeated entry; closure edge is implicit

        Lasso lasso;
        for (std::uint32_t id : stem_nodes) lasso.stem.push_back(p.nodes[id].first);
        for (std::uint32_t id : walk) lasso.loop.push_back(p.nodes[id].first);
        fold_lasso_stem(lasso);
        return {Outcome::Violated, std::move(lasso)};
    }
    return {Outcome::Holds, std::nullopt};
}

} // namespace ltloracle
