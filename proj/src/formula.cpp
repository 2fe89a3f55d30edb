#include "ltloracle/formula.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "ltloracle/errors.hpp"

namespace ltloracle {

int op_arity(Op op) noexcept {
    switch (op) {
        case Op::Atom:
        case Op::True:
        case Op::False:
            return 0;
        case Op::Not:
        case Op::Next:
        case Op::Finally:
        case Op::Globally:
            return 1;
        default:
            return 2;
    }
}

const char* op_name(Op op) noexcept {
    switch (op) {
        case Op::Atom: return "atom";
        case Op::True: return "true";
        case Op::False: return "false";
        case Op::Not: return "not";
        case Op::And: return "and";
        case Op::Or: return "or";
        case Op::Implies: return "implies";
        case Op::Next: return "next";
        case Op::Finally: return "finally";
        case Op::Globally: return "globally";
        case Op::Until: return "until";
        case Op::Release: return "release";
    }
    return "?";
}

Formula Formula::make(Op op, std::vector<Formula> children, std::string atom_name) {
    const int arity = op_arity(op);
    assert(static_cast<int>(children.size()) == arity);
    auto n = std::make_shared<Node>();
    n->op = op;
    n->name = std::move(atom_name);
    std::uint32_t len = 1;
    std::uint16_t depth = 1;
    for (int i = 0; i < arity; ++i) {
        assert(children[i].valid());
        len += children[i].node_->length;
        depth = std::max<std::uint16_t>(depth, children[i].node_->depth + 1);
        n->kids[i] = std::move(children[i].node_);
    }
    n->length = len;
    n->depth = depth;
    return Formula(std::move(n));
}

Formula Formula::atom(std::string name) { return make(Op::Atom, {}, std::move(name)); }
Formula Formula::top() { return make(Op::True, {}); }
Formula Formula::bottom() { return make(Op::False, {}); }
Formula Formula::neg(Formula a) { return make(Op::Not, {std::move(a)}); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, {std::move(a), std::move(b)}); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, {std::move(a), std::move(b)}); }
Formula Formula::implies(Formula a, Formula b) { return make(Op::Implies, {std::move(a), std::move(b)}); }
Formula Formula::next(Formula a) { return make(Op::Next, {std::move(a)}); }
Formula Formula::eventually(Formula a) { return make(Op::Finally, {std::move(a)}); }
Formula Formula::always(Formula a) { return make(Op::Globally, {std::move(a)}); }
Formula Formula::until(Formula a, Formula b) { return make(Op::Until, {std::move(a), std::move(b)}); }
Formula Formula::release(Formula a, Formula b) { return make(Op::Release, {std::move(a), std::move(b)}); }

int Formula::compare(const Formula& a, const Formula& b) noexcept {
    if (a.node_ == b.node_) return 0; // shared subtree
    if (a.node_->op != b.node_->op)
        return a.node_->op < b.node_->op ? -1 : 1;
    if (a.node_->op == Op::Atom) {
        const int c = a.node_->name.compare(b.node_->name);
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    const int arity = op_arity(a.node_->op);
    for (int i = 0; i < arity; ++i) {
        const int c = compare(Formula(a.node_->kids[i]), Formula(b.node_->kids[i]));
        if (c != 0) return c;
    }
    return 0;
}

std::vector<std::string> Formula::atoms() const {
    std::set<std::string> names;
    std::vector<const Node*> stack{node_.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (n->op == Op::Atom) names.insert(n->name);
        for (int i = 0; i < op_arity(n->op); ++i) stack.push_back(n->kids[i].get());
    }
    return {names.begin(), names.end()};
}

std::size_t formula_length(const Formula& f) { return f.length(); }

// ── Printing ────────────────────────────────────────────────────────────

namespace {

const char* op_token(Op op) {
    switch (op) {
        case Op::Not: return "!";
        case Op::And: return "&";
        case Op::Or: return "|";
        case Op::Implies: return "->";
        case Op::Next: return "X";
        case Op::Finally: return "F";
        case Op::Globally: return "G";
        case Op::Until: return "U";
        case Op::Release: return "R";
        default: return "?";
    }
}

void format_into(const Formula& f, std::string& out) {
    switch (f.op()) {
        case Op::Atom:
            out += f.atom_name();
            return;
        case Op::True:
            out += "true";
            return;
        case Op::False:
            out += "false";
            return;
        default:
            break;
    }
    out += '(';
    if (f.arity() == 1) {
        out += op_token(f.op());
        out += ' ';
        format_into(f.child(0), out);
    } else {
        format_into(f.child(0), out);
        out += ' ';
        out += op_token(f.op());
        out += ' ';
        format_into(f.child(1), out);
    }
    out += ')';
}

} // namespace

std::string format_ltl(const Formula& f) {
    std::string out;
    format_into(f, out);
    return out;
}

// ── Negation normal form ────────────────────────────────────────────────

namespace {

Formula nnf(const Formula& f, bool negated) {
    switch (f.op()) {
        case Op::Atom:
            return negated ? Formula::neg(f) : f;
        case Op::True:
            return negated ? Formula::bottom() : Formula::top();
        case Op::False:
            return negated ? Formula::top() : Formula::bottom();
        case Op::Not:
            return nnf(f.child(0), !negated);
        case Op::And:
            return negated ? Formula::disj(nnf(f.child(0), true), nnf(f.child(1), true))
                           : Formula::conj(nnf(f.child(0), false), nnf(f.child(1), false));
        case Op::Or:
            return negated ? Formula::conj(nnf(f.child(0), true), nnf(f.child(1), true))
                           : Formula::disj(nnf(f.child(0), false), nnf(f.child(1), false));
        case Op::Implies:
            // a -> b  ==  !a | b
            return negated ? Formula::conj(nnf(f.child(0), false), nnf(f.child(1), true))
                           : Formula::disj(nnf(f.child(0), true), nnf(f.child(1), false));
        case Op::Next:
            return Formula::next(nnf(f.child(0), negated));
        case Op::Finally:
            return negated ? Formula::always(nnf(f.child(0), true))
                           : Formula::eventually(nnf(f.child(0), false));
        case Op::Globally:
            return negated ? Formula::eventually(nnf(f.child(0), true))
                           : Formula::always(nnf(f.child(0), false));
        case Op::Until:
            return negated ? Formula::release(nnf(f.child(0), true), nnf(f.child(1), true))
                           : Formula::until(nnf(f.child(0), false), nnf(f.child(1), false));
        case Op::Release:
            return negated ? Formula::until(nnf(f.child(0), true), nnf(f.child(1), true))
                           : Formula::release(nnf(f.child(0), false), nnf(f.child(1), false));
    }
    return f; // unreachable
}

} // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

} // namespace ltloracle
