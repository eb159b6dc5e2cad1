#pragma once

#include "lamb/formula.hpp"
#include "lamb/model.hpp"
#include "lamb/synthesis.hpp"
#include "lamb/translate.hpp"

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lamb {

enum class Quant { Forall, Exists };

// Closed prenex QBF; the matrix is a propositional formula over x<i> atoms.
struct Qbf {
    std::vector<std::pair<Quant, int>> prefix; // outermost first
    Formula matrix;
};

namespace detail {

inline void checkPropositional(const Formula& f) {
    switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::Prop:
        return;
    case FKind::Not:
        checkPropositional(f->lhs);
        return;
    case FKind::And:
        checkPropositional(f->lhs);
        checkPropositional(f->rhs);
        return;
    default:
        throw Error("QBF matrix must be propositional");
    }
}

inline bool evalPropositional(const Formula& f, const std::map<std::string, bool>& assignment) {
    switch (f->kind) {
    case FKind::True:
        return true;
    case FKind::False:
        return false;
    case FKind::Prop: {
        auto it = assignment.find(f->name);
        if (it == assignment.end()) throw Error("free variable " + f->name + " in QBF matrix");
        return it->second;
    }
    case FKind::Not:
        return !evalPropositional(f->lhs, assignment);
    case FKind::And:
        return evalPropositional(f->lhs, assignment) && evalPropositional(f->rhs, assignment);
    default:
        throw Error("QBF matrix must be propositional");
    }
}

inline void checkQbf(const Qbf& q) {
    checkPropositional(q.matrix);
    std::set<int> seen;
    for (const auto& [quant, var] : q.prefix) {
        if (var < 1) throw Error("QBF variables are positive indices");
        if (!seen.insert(var).second) {
            throw Error("variable x" + std::to_string(var) + " quantified twice");
        }
    }
    std::set<std::string> props;
    collect_props(q.matrix, props);
    for (const auto& p : props) {
        bool bound = false;
        for (const auto& [quant, var] : q.prefix) {
            if (p == "x" + std::to_string(var)) bound = true;
        }
        if (!bound) throw Error("free variable " + p + " in QBF");
    }
}

inline bool evalQbfRec(const Qbf& q, std::size_t depth, std::map<std::string, bool>& assignment) {
    if (depth == q.prefix.size()) return evalPropositional(q.matrix, assignment);
    const auto& [quant, var] = q.prefix[depth];
    std::string name = "x" + std::to_string(var);
    assignment[name] = false;
    bool whenFalse = evalQbfRec(q, depth + 1, assignment);
    assignment[name] = true;
    bool whenTrue = evalQbfRec(q, depth + 1, assignment);
    assignment.erase(name);
    return quant == Quant::Forall ? (whenFalse && whenTrue) : (whenFalse || whenTrue);
}

} // namespace detail

// Truth by full expansion of both branches of every quantifier.
inline bool eval_qbf(const Qbf& q) {
    detail::checkQbf(q);
    std::map<std::string, bool> assignment;
    return detail::evalQbfRec(q, 0, assignment);
}

// Arrow encoding: one agent with one action per variable, a hub state plus
// one p_i-labelled state per variable, and only self-loops. Setting x_k true
// redirects the hub's a_k-arrow to the x_k-state; the reader <<1>> X p_k then
// holds at the hub iff that arrow was redirected, since no other action can
// reach the p_k-state. Quantifiers become unions of the two redirect choices,
// outermost quantifier outermost in the formula.
inline std::pair<PointedModel, Formula> qbf_to_alamb_union(const Qbf& q) {
    detail::checkQbf(q);
    if (q.prefix.empty()) throw Error("QBF encoding needs at least one variable");

    ModelData d;
    d.agents = 1;
    for (const auto& [quant, var] : q.prefix) d.actions.push_back("a" + std::to_string(var));
    std::sort(d.actions.begin(), d.actions.end());
    d.states.push_back(0);
    d.nominals["xt"] = {0};
    StateId next = 1;
    for (const auto& [quant, var] : q.prefix) {
        d.states.push_back(next);
        d.nominals["x" + std::to_string(var)] = {next};
        d.props["p" + std::to_string(var)] = {next};
        ++next;
    }
    std::sort(d.states.begin(), d.states.end());
    std::size_t pc = d.actions.size(); // one agent
    d.transitions.assign(d.states.size() * pc, -1);
    for (std::size_t i = 0; i < d.states.size(); ++i) {
        for (std::size_t c = 0; c < pc; ++c) d.transitions[i * pc + c] = d.states[i];
    }
    Model model{std::move(d)};
    model.requireValid();

    Formula body = q.matrix;
    for (const auto& [quant, var] : q.prefix) {
        body = replace_prop(body, "x" + std::to_string(var),
                            f_coal_x({1}, f_prop("p" + std::to_string(var))));
    }
    for (std::size_t k = q.prefix.size(); k-- > 0;) {
        const auto& [quant, var] = q.prefix[k];
        std::string action = "a" + std::to_string(var);
        UpdateExpr setTrue = u_arrow("xt", {action}, "x" + std::to_string(var));
        UpdateExpr setFalse = u_arrow("xt", {action}, "xt");
        UpdateExpr choice = u_union(std::move(setTrue), std::move(setFalse));
        if (quant == Quant::Forall) {
            body = f_updated(std::move(choice), std::move(body));
        } else {
            body = f_not(f_updated(std::move(choice), f_not(std::move(body))));
        }
    }
    return {PointedModel{std::move(model), 0}, std::move(body)};
}

// Substitution encoding: a single self-looping state named alpha over one
// agent, every variable proposition initially true; quantifiers become unions
// of the substitutions x_k := true and x_k := false around the matrix read
// propositionally.
inline std::pair<PointedModel, Formula> qbf_to_slamb_union(const Qbf& q) {
    detail::checkQbf(q);

    ModelData d;
    d.agents = 1;
    d.actions = {"a"};
    d.states = {0};
    d.transitions = {0};
    d.nominals["alpha"] = {0};
    for (const auto& [quant, var] : q.prefix) d.props["x" + std::to_string(var)] = {0};
    Model model{std::move(d)};

    Formula body = q.matrix;
    for (std::size_t k = q.prefix.size(); k-- > 0;) {
        const auto& [quant, var] = q.prefix[k];
        std::string name = "x" + std::to_string(var);
        UpdateExpr choice = u_union(u_subst(name, "alpha", f_true()), u_subst(name, "alpha", f_false()));
        if (quant == Quant::Forall) {
            body = f_updated(std::move(choice), std::move(body));
        } else {
            body = f_not(f_updated(std::move(choice), f_not(std::move(body))));
        }
    }
    return {PointedModel{std::move(model), 0}, std::move(body)};
}

// QDIMACS-style input: optional 'c' comments, a 'p cnf <vars> <clauses>'
// header, 'a'/'e' quantifier lines and 0-terminated clause lines.
inline Qbf parse_qdimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int vars = -1;
    Qbf q;
    std::vector<std::vector<int>> clauses;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head == "c") continue;
        if (head == "p") {
            std::string kind;
            int nc = 0;
            if (!(ls >> kind >> vars >> nc) || kind != "cnf" || vars < 0) {
                throw Error("malformed QDIMACS header");
            }
            continue;
        }
        if (vars < 0) throw Error("QDIMACS input needs a 'p cnf' header first");
        if (head == "a" || head == "e") {
            int v = 0;
            while (ls >> v && v != 0) {
                if (v < 1 || v > vars) throw Error("quantified variable out of range");
                q.prefix.emplace_back(head == "a" ? Quant::Forall : Quant::Exists, v);
            }
            continue;
        }
        std::vector<int> clause;
        int lit = std::stoi(head);
        while (lit != 0) {
            if (lit < -vars || lit > vars) throw Error("literal out of range");
            clause.push_back(lit);
            if (!(ls >> lit)) throw Error("clause line must end with 0");
        }
        clauses.push_back(std::move(clause));
    }
    auto varAtom = [](int v) { return f_prop("x" + std::to_string(v)); };
    Formula matrix = f_true();
    bool first = true;
    for (const auto& clause : clauses) {
        Formula c = f_false();
        bool cFirst = true;
        for (int lit : clause) {
            Formula litF = lit > 0 ? varAtom(lit) : f_not(varAtom(-lit));
            c = cFirst ? litF : f_or(std::move(c), std::move(litF));
            cFirst = false;
        }
        matrix = first ? c : f_and(std::move(matrix), std::move(c));
        first = false;
    }
    q.matrix = std::move(matrix);
    detail::checkQbf(q);
    return q;
}

// SAT by assignment enumeration; desk-scale oracle for the synthesis tests.
inline bool brute_sat(const CnfInstance& cnf) {
    if (cnf.variables > 20) throw Error("brute_sat refuses instances with more than 20 variables");
    std::uint64_t combos = 1ULL << cnf.variables;
    for (std::uint64_t bits = 0; bits < combos; ++bits) {
        bool ok = true;
        for (const auto& clause : cnf.clauses) {
            bool clauseOk = false;
            for (int lit : clause) {
                int var = lit > 0 ? lit : -lit;
                bool val = (bits >> (var - 1)) & 1;
                if ((lit > 0) == val) {
                    clauseOk = true;
                    break;
                }
            }
            if (!clauseOk) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

} // namespace lamb
