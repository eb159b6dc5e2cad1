#pragma once

#include "lamb/lamb.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

// Seed-deterministic random instances for the property and agreement suites.
namespace gen {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) { // inclusive bounds
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline bool coin(Rng& rng) { return rng() & 1; }

struct ModelOptions {
    int maxStates = 4;
    int agents = 2;
    std::vector<std::string> actions = {"a", "b"};
    std::vector<std::string> props = {"p", "q"};
};

// Properly named random model: state i carries nominal n<i>, plus sometimes a
// second name, random total transitions and random valuations.
inline lamb::Model randomModel(Rng& rng, const ModelOptions& opt = {}) {
    int stateCount = pick(rng, 1, opt.maxStates);
    lamb::ModelData d;
    d.agents = opt.agents;
    d.actions = opt.actions;
    std::sort(d.actions.begin(), d.actions.end());
    for (int i = 0; i < stateCount; ++i) d.states.push_back(i);
    std::size_t pc = 1;
    for (int i = 0; i < opt.agents; ++i) pc *= d.actions.size();
    d.transitions.resize(static_cast<std::size_t>(stateCount) * pc);
    for (auto& t : d.transitions) t = pick(rng, 0, stateCount - 1);
    for (int i = 0; i < stateCount; ++i) {
        d.nominals["n" + std::to_string(i)].insert(i);
        for (const auto& p : opt.props) {
            if (coin(rng)) d.props[p].insert(i);
        }
    }
    if (coin(rng)) d.nominals["m0"].insert(pick(rng, 0, stateCount - 1));
    return lamb::Model{std::move(d)};
}

struct FormulaOptions {
    std::vector<std::string> props = {"p", "q"};
    // n9 and g1 typically name no state, exercising the empty-denotation paths.
    std::vector<std::string> nominals = {"n0", "n1", "n2", "n3", "n9"};
    std::vector<std::string> freshNominals = {"g1", "g2"};
    int agents = 2;
    std::vector<std::string> actions = {"a", "b"};
    bool updates = true;
    bool unions = true;
    bool arrows = true;
    bool addStates = true;
};

inline lamb::Coalition randomCoalition(Rng& rng, int agents) {
    lamb::Coalition c;
    for (int a = 1; a <= agents; ++a) {
        if (coin(rng)) c.push_back(a);
    }
    return c;
}

inline lamb::ActionProfile randomProfile(Rng& rng, const FormulaOptions& opt) {
    lamb::ActionProfile p;
    for (int i = 0; i < opt.agents; ++i) {
        p.push_back(opt.actions[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(opt.actions.size()) - 1))]);
    }
    return p;
}

inline std::string randomNominal(Rng& rng, const FormulaOptions& opt) {
    return opt.nominals[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(opt.nominals.size()) - 1))];
}

inline lamb::Formula randomFormula(Rng& rng, int depth, const FormulaOptions& opt = {});

inline std::string randomProp(Rng& rng, const FormulaOptions& opt) {
    return opt.props[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(opt.props.size()) - 1))];
}

inline lamb::UpdateExpr randomAtomicUpdate(Rng& rng, int depth, const FormulaOptions& opt) {
    std::vector<int> kinds = {0, 1};
    if (opt.arrows) kinds.push_back(2);
    if (opt.addStates) kinds.push_back(3);
    switch (kinds[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(kinds.size()) - 1))]) {
    case 0:
        return lamb::u_subst(randomProp(rng, opt), randomNominal(rng, opt),
                             coin(rng) ? lamb::f_true() : lamb::f_false());
    case 1:
        return lamb::u_subst(randomProp(rng, opt), randomNominal(rng, opt),
                             randomFormula(rng, depth > 0 ? depth - 1 : 0, opt));
    case 2:
        return lamb::u_arrow(randomNominal(rng, opt), randomProfile(rng, opt), randomNominal(rng, opt));
    default:
        return lamb::u_add(opt.freshNominals[static_cast<std::size_t>(
            pick(rng, 0, static_cast<int>(opt.freshNominals.size()) - 1))]);
    }
}

inline lamb::UpdateExpr randomUpdate(Rng& rng, int depth, const FormulaOptions& opt = {}) {
    if (depth > 0) {
        int c = pick(rng, 0, 5);
        if (c == 0) {
            return lamb::u_seq(randomUpdate(rng, depth - 1, opt), randomUpdate(rng, depth - 1, opt));
        }
        if (c == 1 && opt.unions) {
            return lamb::u_union(randomUpdate(rng, depth - 1, opt), randomUpdate(rng, depth - 1, opt));
        }
    }
    return randomAtomicUpdate(rng, depth, opt);
}

inline lamb::Formula randomFormula(Rng& rng, int depth, const FormulaOptions& opt) {
    if (depth <= 0) {
        switch (pick(rng, 0, 4)) {
        case 0: return lamb::f_true();
        case 1: return lamb::f_false();
        case 2: return lamb::f_nom(randomNominal(rng, opt));
        default:
            return lamb::f_prop(
                opt.props[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(opt.props.size()) - 1))]);
        }
    }
    int maxChoice = opt.updates ? 11 : 10;
    switch (pick(rng, 0, maxChoice)) {
    case 0:
        return randomFormula(rng, 0, opt);
    case 1:
        return lamb::f_not(randomFormula(rng, depth - 1, opt));
    case 2:
        return lamb::f_at(randomNominal(rng, opt), randomFormula(rng, depth - 1, opt));
    case 3:
        return lamb::f_and(randomFormula(rng, depth - 1, opt), randomFormula(rng, depth - 1, opt));
    case 4:
        return lamb::f_or(randomFormula(rng, depth - 1, opt), randomFormula(rng, depth - 1, opt));
    case 5:
        return lamb::f_implies(randomFormula(rng, depth - 1, opt), randomFormula(rng, depth - 1, opt));
    case 6:
        return lamb::f_coal_x(randomCoalition(rng, opt.agents), randomFormula(rng, depth - 1, opt));
    case 7:
        return lamb::f_coal_until(randomCoalition(rng, opt.agents), randomFormula(rng, depth - 1, opt),
                                  randomFormula(rng, depth - 1, opt));
    case 8:
        return lamb::f_coal_release(randomCoalition(rng, opt.agents), randomFormula(rng, depth - 1, opt),
                                    randomFormula(rng, depth - 1, opt));
    case 9:
        return lamb::f_coal_f(randomCoalition(rng, opt.agents), randomFormula(rng, depth - 1, opt));
    case 10:
        return lamb::f_coal_g(randomCoalition(rng, opt.agents), randomFormula(rng, depth - 1, opt));
    default:
        return lamb::f_updated(randomUpdate(rng, depth - 1, opt), randomFormula(rng, depth - 1, opt));
    }
}

// Substitution-only formulas for the elimination tests.
inline lamb::Formula randomSlambFormula(Rng& rng, int depth, FormulaOptions opt = {}) {
    opt.arrows = false;
    opt.addStates = false;
    opt.unions = false;
    return randomFormula(rng, depth, opt);
}

inline lamb::Qbf randomQbf(Rng& rng, int maxVars) {
    int n = pick(rng, 1, maxVars);
    lamb::Qbf q;
    for (int v = 1; v <= n; ++v) {
        q.prefix.emplace_back(coin(rng) ? lamb::Quant::Forall : lamb::Quant::Exists, v);
    }
    // Shuffle quantifier order while keeping each variable quantified once.
    for (int i = n - 1; i > 0; --i) {
        std::swap(q.prefix[static_cast<std::size_t>(i)], q.prefix[static_cast<std::size_t>(pick(rng, 0, i))]);
    }
    // Random propositional matrix over the quantified variables.
    std::vector<std::string> vars;
    for (int v = 1; v <= n; ++v) vars.push_back("x" + std::to_string(v));
    std::function<lamb::Formula(int)> go = [&](int depth) -> lamb::Formula {
        if (depth <= 0) {
            return lamb::f_prop(vars[static_cast<std::size_t>(pick(rng, 0, n - 1))]);
        }
        switch (pick(rng, 0, 4)) {
        case 0: return lamb::f_not(go(depth - 1));
        case 1: return lamb::f_and(go(depth - 1), go(depth - 1));
        case 2: return lamb::f_or(go(depth - 1), go(depth - 1));
        case 3: return lamb::f_implies(go(depth - 1), go(depth - 1));
        default: return go(0);
        }
    };
    q.matrix = go(3);
    return q;
}

inline lamb::CnfInstance randomCnf(Rng& rng, int vars, int clauses) {
    lamb::CnfInstance cnf;
    cnf.variables = vars;
    for (int i = 0; i < clauses; ++i) {
        std::vector<int> lits;
        for (int j = 0; j < 3; ++j) {
            int v = pick(rng, 1, vars);
            lits.push_back(coin(rng) ? v : -v);
        }
        cnf.addClause(lits);
    }
    return cnf;
}

} // namespace gen
