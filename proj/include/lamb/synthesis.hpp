#pragma once

#include "lamb/checker.hpp"
#include "lamb/formula.hpp"
#include "lamb/model.hpp"
#include "lamb/updates.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace lamb {

struct SynthesisConfig {
    int bound = 0;                             // max total update size
    std::vector<UpdateExpr> alphabet;          // primitive candidates
    std::vector<std::string> freshNominalPool; // names available for added states
    bool pruneDuplicates = true;
};

// 3-CNF instance; literals are signed 1-based variable indices. Shorter
// clauses are padded by repeating a literal, which preserves satisfiability.
struct CnfInstance {
    int variables = 0;
    std::vector<std::array<int, 3>> clauses;

    void addClause(std::vector<int> literals) {
        if (literals.empty() || literals.size() > 3) {
            throw Error("clauses carry one to three literals");
        }
        while (literals.size() < 3) literals.push_back(literals.back());
        for (int lit : literals) {
            int var = lit > 0 ? lit : -lit;
            if (var < 1 || var > variables) {
                throw Error("literal " + std::to_string(lit) + " references no variable");
            }
        }
        clauses.push_back({literals[0], literals[1], literals[2]});
    }
};

// Primitive updates considered by the search: substitutions of true/false
// for every proposition of the goal or the model at every known or pooled
// nominal, arrow redirects over those nominals and all complete profiles,
// and one state addition per pooled name. The order is fixed so searches
// are reproducible.
inline std::vector<UpdateExpr> candidate_alphabet(const Model& m, const Formula& goal,
                                                  const std::vector<std::string>& pool) {
    m.requireValid();
    std::set<std::string> props;
    collect_props(goal, props);
    for (const auto& [name, sts] : m.data().props) props.insert(name);

    std::vector<std::string> nominals;
    for (const auto& [name, sts] : m.data().nominals) nominals.push_back(name);
    for (const auto& name : pool) {
        if (!m.data().nominals.count(name)) nominals.push_back(name);
    }

    std::vector<UpdateExpr> out;
    for (const auto& p : props) {
        for (const auto& n : nominals) {
            out.push_back(u_subst(p, n, f_true()));
            out.push_back(u_subst(p, n, f_false()));
        }
    }
    for (const auto& from : nominals) {
        for (std::size_t c = 0; c < m.profileCount(); ++c) {
            for (const auto& to : nominals) {
                out.push_back(u_arrow(from, m.profileAt(c), to));
            }
        }
    }
    for (const auto& name : pool) {
        out.push_back(u_add(name));
    }
    return out;
}

namespace detail {

struct SynthSearch {
    const Formula& goal;
    StateId point;
    const SynthesisConfig& cfg;
    Checker& checker;
    std::map<Fingerprint, int> bestRemaining; // duplicate-model pruning
    std::vector<UpdateExpr> sequence;

    bool dfs(const Model& m, int remaining) {
        if (checker.mc(m, point, goal)) return true;
        for (const UpdateExpr& u : cfg.alphabet) {
            if (u->size > remaining) continue;
            Model next = apply_update(m, point, u,
                                      [this](const Model& mm, StateId ss, const Formula& ff) {
                                          return checker.mc(mm, ss, ff);
                                      });
            int rem = remaining - u->size;
            if (cfg.pruneDuplicates) {
                auto it = bestRemaining.find(next.fingerprint());
                if (it != bestRemaining.end() && it->second >= rem) continue;
                bestRemaining[next.fingerprint()] = rem;
            }
            sequence.push_back(u);
            if (dfs(next, rem)) return true;
            sequence.pop_back();
        }
        return false;
    }
};

inline void checkAlphabet(const SynthesisConfig& cfg) {
    for (const UpdateExpr& u : cfg.alphabet) {
        switch (u->kind) {
        case UKind::Subst:
            if (u->payload->kind != FKind::True && u->payload->kind != FKind::False) {
                throw Error("alphabet substitutions must assign true or false");
            }
            break;
        case UKind::Arrow:
        case UKind::AddState:
            break;
        case UKind::Seq:
        case UKind::Union:
            throw Error("alphabet entries must be primitive updates");
        }
    }
}

} // namespace detail

// Bounded modification synthesis: the smallest-total-size sequence of
// alphabet updates (applied at s) making the goal true at s, or nothing.
// Iterative deepening over the total size gives the minimality guarantee;
// within one budget, revisiting a model with no more remaining budget than
// before cannot help, so such branches are cut.
inline std::optional<std::vector<UpdateExpr>> bounded_synthesis(const Model& m, StateId s,
                                                                const Formula& goal,
                                                                const SynthesisConfig& cfg) {
    m.requireValid();
    if (!m.hasState(s)) throw Error("unknown state id " + std::to_string(s));
    if (cfg.bound < 0) throw Error("synthesis bound must be non-negative");
    detail::checkAlphabet(cfg);
    Checker checker;
    for (int budget = 0; budget <= cfg.bound; ++budget) {
        detail::SynthSearch search{goal, s, cfg, checker, {}, {}};
        if (cfg.pruneDuplicates) search.bestRemaining[m.fingerprint()] = budget;
        if (search.dfs(m, budget)) return search.sequence;
    }
    return std::nullopt;
}

struct ThreeSatEncoding {
    PointedModel pointed;
    Formula goal;
    SynthesisConfig config;
};

// Single self-looping state named alpha over one agent, every variable
// proposition false; the formula is the CNF read propositionally and the
// alphabet offers exactly the substitutions x_i := true. The instance is
// satisfiable iff some update sequence of linear size makes the goal true.
inline ThreeSatEncoding encode_3sat(const CnfInstance& cnf) {
    ModelData d;
    d.agents = 1;
    d.actions = {"a"};
    d.states = {0};
    d.transitions = {0};
    d.nominals["alpha"] = {0};
    Model model{std::move(d)};

    auto varProp = [](int v) { return f_prop("x" + std::to_string(v)); };
    Formula goal = f_true();
    bool first = true;
    for (const auto& clause : cnf.clauses) {
        Formula c = f_false();
        bool cFirst = true;
        for (int lit : clause) {
            Formula litF = lit > 0 ? varProp(lit) : f_not(varProp(-lit));
            c = cFirst ? litF : f_or(std::move(c), std::move(litF));
            cFirst = false;
        }
        goal = first ? c : f_and(std::move(goal), std::move(c));
        first = false;
    }

    SynthesisConfig cfg;
    for (int v = 1; v <= cnf.variables; ++v) {
        cfg.alphabet.push_back(u_subst("x" + std::to_string(v), "alpha", f_true()));
    }
    cfg.bound = 3 * cnf.variables; // each substitution counts three symbols
    return ThreeSatEncoding{PointedModel{std::move(model), 0}, std::move(goal), std::move(cfg)};
}

} // namespace lamb
