// parser.cpp — recursive-descent parser for the LTL text grammar.
//
// Tokens: identifiers [a-z][a-z0-9_]*, keywords true/false, unary ! X F G,
// binary U R & | ->, parentheses.  All binary operators are
// right-associative; precedence (high to low): unary, U/R, &, |, ->.

#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "ltloracle/errors.hpp"
#include "ltloracle/formula.hpp"

namespace ltloracle {

namespace {

enum class Tok : std::uint8_t {
    Ident, True, False,
    Not, NextOp, FinallyOp, GloballyOp,
    Until, Release, And, Or, Implies,
    LParen, RParen, End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
        const std::size_t start = i_;
        if (i_ >= text_.size()) return {Tok::End, "", start};

        const char c = text_[i_];
        switch (c) {
            case '(': ++i_; return {Tok::LParen, "(", start};
            case ')': ++i_; return {Tok::RParen, ")", start};
            case '!': ++i_; return {Tok::Not, "!", start};
            case '&': ++i_; return {Tok::And, "&", start};
            case '|': ++i_; return {Tok::Or, "|", start};
            case 'X': ++i_; return {Tok::NextOp, "X", start};
            case 'F': ++i_; return {Tok::FinallyOp, "F", start};
            case 'G': ++i_; return {Tok::GloballyOp, "G", start};
            case 'U': ++i_; return {Tok::Until, "U", start};
            case 'R': ++i_; return {Tok::Release, "R", start};
            case '-':
                if (i_ + 1 < text_.size() && text_[i_ + 1] == '>') {
                    i_ += 2;
                    return {Tok::Implies, "->", start};
                }
                throw SyntaxError(start, "expected '->'");
            default:
                break;
        }
        if (c >= 'a' && c <= 'z') {
            std::size_t j = i_ + 1;
            while (j < text_.size() &&
                   ((text_[j] >= 'a' && text_[j] <= 'z') ||
                    (text_[j] >= '0' && text_[j] <= '9') || text_[j] == '_'))
                ++j;
            std::string word = text_.substr(i_, j - i_);
            i_ = j;
            if (word == "true") return {Tok::True, word, start};
            if (word == "false") return {Tok::False, word, start};
            return {Tok::Ident, word, start};
        }
        throw SyntaxError(start, std::string("unexpected character '") + c + "'");
    }

private:
    const std::string& text_;
    std::size_t i_ = 0;
};

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& alphabet)
        : lexer_(text), alphabet_(alphabet.begin(), alphabet.end()) {
        advance();
    }

    Formula parse() {
        Formula f = parse_implies();
        if (cur_.kind != Tok::End)
            throw SyntaxError(cur_.pos, "unexpected trailing input '" + cur_.text + "'");
        return f;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    bool accept(Tok k) {
        if (cur_.kind != k) return false;
        advance();
        return true;
    }

    Formula parse_implies() {
        Formula lhs = parse_or();
        if (accept(Tok::Implies)) return Formula::implies(std::move(lhs), parse_implies());
        return lhs;
    }

    Formula parse_or() {
        Formula lhs = parse_and();
        if (accept(Tok::Or)) return Formula::disj(std::move(lhs), parse_or());
        return lhs;
    }

    Formula parse_and() {
        Formula lhs = parse_until();
        if (accept(Tok::And)) return Formula::conj(std::move(lhs), parse_and());
        return lhs;
    }

    Formula parse_until() {
        Formula lhs = parse_unary();
        if (accept(Tok::Until)) return Formula::until(std::move(lhs), parse_until());
        if (accept(Tok::Release)) return Formula::release(std::move(lhs), parse_until());
        return lhs;
    }

    Formula parse_unary() {
        if (accept(Tok::Not)) return Formula::neg(parse_unary());
        if (accept(Tok::NextOp)) return Formula::next(parse_unary());
        if (accept(Tok::FinallyOp)) return Formula::eventually(parse_unary());
        if (accept(Tok::GloballyOp)) return Formula::always(parse_unary());
        return parse_primary();
    }

    Formula parse_primary() {
        if (cur_.kind == Tok::True) {
            advance();
            return Formula::top();
        }
        if (cur_.kind == Tok::False) {
            advance();
            return Formula::bottom();
        }
        if (cur_.kind == Tok::Ident) {
            if (alphabet_.find(cur_.text) == alphabet_.end()) throw UnknownAtomError(cur_.text);
            Formula f = Formula::atom(cur_.text);
            advance();
            return f;
        }
        if (accept(Tok::LParen)) {
            Formula f = parse_implies();
            if (!accept(Tok::RParen)) throw SyntaxError(cur_.pos, "expected ')'");
            return f;
        }
        throw SyntaxError(cur_.pos, cur_.kind == Tok::End
                                        ? std::string("unexpected end of input")
                                        : "unexpected token '" + cur_.text + "'");
    }

    Lexer lexer_;
    Token cur_{};
    std::set<std::string> alphabet_;
};

} // namespace

Formula parse_ltl(const std::string& text, const std::vector<std::string>& alphabet) {
    if (text.empty()) throw SyntaxError(0, "empty formula text");
    return Parser(text, alphabet).parse();
}

} // namespace ltloracle
