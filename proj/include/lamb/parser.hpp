#pragma once

#include "lamb/formula.hpp"
#include "lamb/model.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace lamb {

struct ParseError : Error {
    ParseError(const std::string& msg, int line, int col)
        : Error("line " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line), column(col) {}
    explicit ParseError(const std::string& msg, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line(line), column(0) {}
    int line;
    int column;
};

namespace detail {

struct Token {
    enum Type { Ident, Num, Punct, End } type = End;
    std::string text;
    int line = 1;
    int col = 1;
};

// Shared lexer for formulas, updates and norm blocks.
class Lexer {
public:
    explicit Lexer(const std::string& text) {
        int line = 1, col = 1;
        std::size_t i = 0;
        auto push = [&](Token::Type t, std::string s, int l, int c) {
            tokens_.push_back({t, std::move(s), l, c});
        };
        while (i < text.size()) {
            char ch = text[i];
            if (ch == '\n') { ++line; col = 1; ++i; continue; }
            if (std::isspace(static_cast<unsigned char>(ch))) { ++col; ++i; continue; }
            int l = line, c = col;
            if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                std::size_t j = i;
                while (j < text.size() &&
                       (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
                push(Token::Ident, text.substr(i, j - i), l, c);
                col += static_cast<int>(j - i);
                i = j;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                std::size_t j = i;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                push(Token::Num, text.substr(i, j - i), l, c);
                col += static_cast<int>(j - i);
                i = j;
                continue;
            }
            auto two = text.substr(i, 2);
            if (two == "<<" || two == ">>" || two == "->" || two == ":=") {
                push(Token::Punct, two, l, c);
                i += 2;
                col += 2;
                continue;
            }
            if (std::string("()[]@#!&|,;-").find(ch) != std::string::npos) {
                push(Token::Punct, std::string(1, ch), l, c);
                ++i;
                ++col;
                continue;
            }
            throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
        }
        tokens_.push_back({Token::End, "", line, col});
    }

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t idx = pos_ + ahead;
        return idx < tokens_.size() ? tokens_[idx] : tokens_.back();
    }
    const Token& next() {
        const Token& t = peek();
        if (t.type != Token::End) ++pos_;
        return t;
    }
    bool atEnd() const { return peek().type == Token::End; }

    bool tryPunct(const std::string& p) {
        if (peek().type == Token::Punct && peek().text == p) { next(); return true; }
        return false;
    }
    void expectPunct(const std::string& p) {
        if (!tryPunct(p)) fail("expected '" + p + "'");
    }
    bool peekIdent(const std::string& kw) const {
        return peek().type == Token::Ident && peek().text == kw;
    }
    bool tryIdent(const std::string& kw) {
        if (peekIdent(kw)) { next(); return true; }
        return false;
    }
    std::string expectIdent(const std::string& what) {
        if (peek().type != Token::Ident) fail("expected " + what);
        return next().text;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string got = t.type == Token::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(msg + ", got " + got, t.line, t.col);
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

class FormulaParser {
public:
    explicit FormulaParser(Lexer& lex) : lex_(lex) {}

    Formula parsePhi() {
        const Token& t = lex_.peek();
        if (t.type == Token::Ident) {
            if (t.text == "true") { lex_.next(); return f_true(); }
            if (t.text == "false") { lex_.next(); return f_false(); }
            return f_prop(lex_.next().text);
        }
        if (t.type == Token::Punct) {
            if (t.text == "#") {
                lex_.next();
                return f_nom(lex_.expectIdent("nominal name after '#'"));
            }
            if (t.text == "@") {
                lex_.next();
                std::string nom = lex_.expectIdent("nominal name after '@'");
                return f_at(std::move(nom), parsePhi());
            }
            if (t.text == "!") {
                lex_.next();
                return f_not(parsePhi());
            }
            if (t.text == "(") {
                lex_.next();
                Formula lhs = parsePhi();
                if (lex_.tryPunct(")")) return lhs; // plain grouping
                if (lex_.tryPunct("&")) {
                    Formula rhs = parsePhi();
                    lex_.expectPunct(")");
                    return f_and(std::move(lhs), std::move(rhs));
                }
                if (lex_.tryPunct("|")) {
                    Formula rhs = parsePhi();
                    lex_.expectPunct(")");
                    return f_or(std::move(lhs), std::move(rhs));
                }
                if (lex_.tryPunct("->")) {
                    Formula rhs = parsePhi();
                    lex_.expectPunct(")");
                    return f_implies(std::move(lhs), std::move(rhs));
                }
                lex_.fail("expected ')', '&', '|' or '->'");
            }
            if (t.text == "<<") return parseCoalitionFormula();
            if (t.text == "[") {
                lex_.next();
                UpdateExpr u = parseUnion();
                lex_.expectPunct("]");
                return f_updated(std::move(u), parsePhi());
            }
        }
        lex_.fail("expected a formula");
    }

    UpdateExpr parseUnion() {
        UpdateExpr lhs = parseSeq();
        while (lex_.tryIdent("u")) {
            lhs = u_union(std::move(lhs), parseSeq());
        }
        return lhs;
    }

private:
    Formula parseCoalitionFormula() {
        lex_.expectPunct("<<");
        Coalition c;
        if (!lex_.tryPunct(">>")) {
            for (;;) {
                if (lex_.peek().type != Token::Num) lex_.fail("expected agent number");
                c.push_back(std::stoi(lex_.next().text));
                if (!lex_.tryPunct(",")) break;
            }
            lex_.expectPunct(">>");
        }
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end()) {
            lex_.fail("coalition lists an agent twice");
        }
        if (lex_.tryIdent("X")) return f_coal_x(std::move(c), parsePhi());
        if (lex_.tryIdent("F")) return f_coal_f(std::move(c), parsePhi());
        if (lex_.tryIdent("G")) return f_coal_g(std::move(c), parsePhi());
        lex_.expectPunct("(");
        Formula lhs = parsePhi();
        bool until = false;
        if (lex_.tryIdent("U")) {
            until = true;
        } else if (!lex_.tryIdent("R")) {
            lex_.fail("expected 'U' or 'R'");
        }
        Formula rhs = parsePhi();
        lex_.expectPunct(")");
        if (until) return f_coal_until(std::move(c), std::move(lhs), std::move(rhs));
        return f_coal_release(std::move(c), std::move(lhs), std::move(rhs));
    }

    UpdateExpr parseSeq() {
        UpdateExpr lhs = parseAtomicUpdate();
        while (lex_.tryPunct(";")) {
            lhs = u_seq(std::move(lhs), parseAtomicUpdate());
        }
        return lhs;
    }

    UpdateExpr parseAtomicUpdate() {
        if (lex_.tryPunct("(")) {
            UpdateExpr u = parseUnion();
            lex_.expectPunct(")");
            return u;
        }
        if (lex_.tryIdent("new")) {
            lex_.expectPunct("#");
            return u_add(lex_.expectIdent("nominal name after '#'"));
        }
        if (lex_.tryPunct("#")) {
            std::string from = lex_.expectIdent("nominal name after '#'");
            lex_.expectPunct("-");
            ActionProfile profile;
            for (;;) {
                profile.push_back(lex_.expectIdent("action name"));
                if (!lex_.tryPunct(",")) break;
            }
            lex_.expectPunct("->");
            lex_.expectPunct("#");
            std::string to = lex_.expectIdent("nominal name after '#'");
            return u_arrow(std::move(from), std::move(profile), std::move(to));
        }
        if (lex_.peek().type == Token::Ident) {
            std::string prop = lex_.next().text;
            lex_.expectPunct("@");
            std::string nom = lex_.expectIdent("nominal name after '@'");
            lex_.expectPunct(":=");
            return u_subst(std::move(prop), std::move(nom), parsePhi());
        }
        lex_.fail("expected an update");
    }

    Lexer& lex_;
};

} // namespace detail

inline Formula parse_formula(const std::string& text) {
    detail::Lexer lex(text);
    detail::FormulaParser p(lex);
    Formula f = p.parsePhi();
    if (!lex.atEnd()) lex.fail("trailing input after formula");
    return f;
}

inline UpdateExpr parse_update(const std::string& text) {
    detail::Lexer lex(text);
    detail::FormulaParser p(lex);
    UpdateExpr u = p.parseUnion();
    if (!lex.atEnd()) lex.fail("trailing input after update");
    return u;
}

// Parse result of a model document. File-level state labels are kept so
// callers (the CLI in particular) can resolve user-facing state references.
struct ParsedModel {
    Model model;
    std::optional<StateId> init;
    std::map<std::string, StateId> stateLabels;
};

inline ParsedModel parse_model(const std::string& text) {
    std::istringstream in(text);
    std::string rawLine;
    int lineNo = 0;

    int agents = -1;
    std::vector<std::string> actions;
    std::map<std::string, std::size_t> actionIndex;
    std::map<std::string, StateId> labels;
    std::vector<std::set<std::string>> stateNoms;
    std::vector<std::set<std::string>> stateProps;
    std::map<std::string, int> nominalOwner; // nominal -> declaring line
    struct TransLine { StateId from; std::size_t code; StateId to; };
    std::vector<TransLine> transLines;
    std::set<std::pair<StateId, std::size_t>> seenTrans;
    std::optional<StateId> init;
    int phase = 0; // 0 agents, 1 actions, 2 states, 3 trans, 4 init

    auto profileCodeOf = [&](const std::vector<std::string>& toks, std::size_t first) {
        std::size_t code = 0;
        for (int i = agents - 1; i >= 0; --i) {
            auto it = actionIndex.find(toks[first + static_cast<std::size_t>(i)]);
            if (it == actionIndex.end()) {
                throw ParseError("unknown action '" + toks[first + static_cast<std::size_t>(i)] + "'", lineNo);
            }
            code = code * actions.size() + it->second;
        }
        return code;
    };
    auto stateOf = [&](const std::string& label) {
        auto it = labels.find(label);
        if (it == labels.end()) throw ParseError("unknown state '" + label + "'", lineNo);
        return it->second;
    };

    while (std::getline(in, rawLine)) {
        ++lineNo;
        std::string line = rawLine.substr(0, rawLine.find('#'));
        std::istringstream ls(line);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (toks.empty()) continue;
        const std::string& key = toks[0];

        if (key == "agents") {
            if (phase != 0) throw ParseError("'agents' must be the first section", lineNo);
            if (toks.size() != 2) throw ParseError("usage: agents <n>", lineNo);
            try {
                agents = std::stoi(toks[1]);
            } catch (...) {
                throw ParseError("agent count must be a number", lineNo);
            }
            if (agents < 1) throw ParseError("agent count must be at least 1", lineNo);
            phase = 1;
        } else if (key == "actions") {
            if (phase != 1) throw ParseError("'actions' must follow 'agents'", lineNo);
            if (toks.size() < 2) throw ParseError("usage: actions <id>+", lineNo);
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (std::count(actions.begin(), actions.end(), toks[i])) {
                    throw ParseError("duplicate action '" + toks[i] + "'", lineNo);
                }
                actions.push_back(toks[i]);
            }
            std::sort(actions.begin(), actions.end());
            for (std::size_t i = 0; i < actions.size(); ++i) actionIndex[actions[i]] = i;
            phase = 2;
        } else if (key == "state") {
            if (phase != 2) throw ParseError("'state' lines must follow 'actions' and precede 'trans'", lineNo);
            if (toks.size() < 4 || toks[2] != "names") {
                throw ParseError("usage: state <id> names <nominal>+ [props <prop>*]", lineNo);
            }
            if (labels.count(toks[1])) throw ParseError("duplicate state '" + toks[1] + "'", lineNo);
            StateId id = static_cast<StateId>(labels.size());
            labels[toks[1]] = id;
            stateNoms.emplace_back();
            stateProps.emplace_back();
            std::size_t i = 3;
            bool sawName = false;
            for (; i < toks.size() && toks[i] != "props"; ++i) {
                auto owner = nominalOwner.find(toks[i]);
                if (owner != nominalOwner.end()) {
                    throw ParseError("nominal " + toks[i] + " already names the state declared on line " +
                                         std::to_string(owner->second),
                                     lineNo);
                }
                nominalOwner[toks[i]] = lineNo;
                stateNoms.back().insert(toks[i]);
                sawName = true;
            }
            if (!sawName) throw ParseError("state needs at least one nominal", lineNo);
            if (i < toks.size()) { // props
                for (++i; i < toks.size(); ++i) stateProps.back().insert(toks[i]);
            }
        } else if (key == "trans") {
            if (phase == 2) phase = 3;
            if (phase != 3) throw ParseError("'trans' lines must precede 'init'", lineNo);
            if (toks.size() != static_cast<std::size_t>(agents) + 4 ||
                toks[toks.size() - 2] != "->") {
                throw ParseError("usage: trans <state> <a1> ... <a" + std::to_string(agents) +
                                     "> -> <state>",
                                 lineNo);
            }
            StateId from = stateOf(toks[1]);
            std::size_t code = profileCodeOf(toks, 2);
            StateId to = stateOf(toks.back());
            if (!seenTrans.insert({from, code}).second) {
                throw ParseError("duplicate transition for state '" + toks[1] + "'", lineNo);
            }
            transLines.push_back({from, code, to});
        } else if (key == "init") {
            if (phase < 2 || phase > 3) throw ParseError("'init' must come last", lineNo);
            if (toks.size() != 2) throw ParseError("usage: init <state>", lineNo);
            init = stateOf(toks[1]);
            phase = 4;
        } else {
            throw ParseError("unknown directive '" + key + "'", lineNo);
        }
    }
    if (agents < 0) throw ParseError("missing 'agents' section");
    if (actions.empty()) throw ParseError("missing 'actions' section");
    if (labels.empty()) throw ParseError("model declares no states");

    ModelData d;
    d.agents = agents;
    d.actions = actions;
    d.states.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) d.states[i] = static_cast<StateId>(i);
    std::size_t profileCount = 1;
    for (int i = 0; i < agents; ++i) {
        profileCount *= actions.size();
        if (profileCount * labels.size() > 50'000'000) {
            throw ParseError("transition table would exceed 50M entries");
        }
    }
    d.transitions.assign(labels.size() * profileCount, -1);
    for (const auto& t : transLines) {
        d.transitions[static_cast<std::size_t>(t.from) * profileCount + t.code] = t.to;
    }
    for (const auto& [label, id] : labels) {
        for (const auto& n : stateNoms[static_cast<std::size_t>(id)]) d.nominals[n].insert(id);
        for (const auto& p : stateProps[static_cast<std::size_t>(id)]) d.props[p].insert(id);
    }

    Model model{std::move(d)};
    if (!model.valid()) {
        std::ostringstream msg;
        msg << "model is not a valid game model:";
        for (const auto& v : model.violations()) msg << "\n  " << v;
        throw ParseError(msg.str());
    }
    return ParsedModel{std::move(model), init, std::move(labels)};
}

} // namespace lamb
