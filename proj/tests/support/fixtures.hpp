#pragma once

#include "lamb/lamb.hpp"

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace fixtures {

// Programmatic model construction, independent of the text parser.
class Builder {
public:
    Builder(int agents, std::vector<std::string> actions) {
        d_.agents = agents;
        std::sort(actions.begin(), actions.end());
        d_.actions = std::move(actions);
    }

    Builder& state(lamb::StateId id, std::initializer_list<std::string> nominals,
                   std::initializer_list<std::string> props = {}) {
        d_.states.push_back(id);
        for (const auto& n : nominals) d_.nominals[n].insert(id);
        for (const auto& p : props) d_.props[p].insert(id);
        return *this;
    }

    Builder& trans(lamb::StateId from, std::initializer_list<std::string> profile, lamb::StateId to) {
        std::size_t code = 0;
        std::vector<std::string> prof(profile);
        for (std::size_t i = prof.size(); i-- > 0;) {
            auto it = std::lower_bound(d_.actions.begin(), d_.actions.end(), prof[i]);
            code = code * d_.actions.size() + static_cast<std::size_t>(it - d_.actions.begin());
        }
        triples_.push_back({from, code, to});
        return *this;
    }

    lamb::Model build() {
        std::sort(d_.states.begin(), d_.states.end());
        std::size_t pc = 1;
        for (int i = 0; i < d_.agents; ++i) pc *= d_.actions.size();
        d_.transitions.assign(d_.states.size() * pc, -1);
        for (const auto& t : triples_) {
            auto it = std::lower_bound(d_.states.begin(), d_.states.end(), t.from);
            d_.transitions[static_cast<std::size_t>(it - d_.states.begin()) * pc + t.code] = t.to;
        }
        return lamb::Model{d_};
    }

    lamb::ModelData& data() { return d_; }

private:
    struct Triple {
        lamb::StateId from;
        std::size_t code;
        lamb::StateId to;
    };
    lamb::ModelData d_;
    std::vector<Triple> triples_;
};

// Two-agent synchronisation game: equal actions switch the state.
inline lamb::Model figM(lamb::StateId s = 0, lamb::StateId t = 1) {
    return Builder(2, {"a", "b"})
        .state(s, {"alpha"}, {"p"})
        .state(t, {"beta"})
        .trans(s, {"a", "a"}, t)
        .trans(s, {"a", "b"}, s)
        .trans(s, {"b", "a"}, s)
        .trans(s, {"b", "b"}, t)
        .trans(t, {"a", "a"}, s)
        .trans(t, {"a", "b"}, t)
        .trans(t, {"b", "a"}, t)
        .trans(t, {"b", "b"}, s)
        .build();
}

// The mirror: different actions switch the state.
inline lamb::Model figN(lamb::StateId s = 0, lamb::StateId t = 1) {
    return Builder(2, {"a", "b"})
        .state(s, {"alpha"}, {"p"})
        .state(t, {"beta"})
        .trans(s, {"a", "a"}, s)
        .trans(s, {"a", "b"}, t)
        .trans(s, {"b", "a"}, t)
        .trans(s, {"b", "b"}, s)
        .trans(t, {"a", "a"}, t)
        .trans(t, {"a", "b"}, s)
        .trans(t, {"b", "a"}, s)
        .trans(t, {"b", "b"}, t)
        .build();
}

inline lamb::Model figNprime() {
    lamb::ModelData d = figN().data();
    d.props["q"].insert(0);
    return lamb::Model{d};
}

// M with the aa-arrow out of s looped back onto s.
inline lamb::Model figMArrowAA() {
    lamb::ModelData d = figM().data();
    lamb::Model m{d};
    d.transitions[m.profileCode({"a", "a"})] = 0;
    return lamb::Model{d};
}

// M plus a fresh self-looping state named gamma with p and fine.
inline lamb::Model figMPi1() {
    return Builder(2, {"a", "b"})
        .state(0, {"alpha"}, {"p"})
        .state(1, {"beta"})
        .state(2, {"gamma"}, {"p", "fine"})
        .trans(0, {"a", "a"}, 1)
        .trans(0, {"a", "b"}, 0)
        .trans(0, {"b", "a"}, 0)
        .trans(0, {"b", "b"}, 1)
        .trans(1, {"a", "a"}, 0)
        .trans(1, {"a", "b"}, 1)
        .trans(1, {"b", "a"}, 1)
        .trans(1, {"b", "b"}, 0)
        .trans(2, {"a", "a"}, 2)
        .trans(2, {"a", "b"}, 2)
        .trans(2, {"b", "a"}, 2)
        .trans(2, {"b", "b"}, 2)
        .build();
}

// M_pi1 with the mixed profiles out of s redirected into gamma and gamma
// rejoining beta on the synchronised ones.
inline lamb::Model figMPi2() {
    return Builder(2, {"a", "b"})
        .state(0, {"alpha"}, {"p"})
        .state(1, {"beta"})
        .state(2, {"gamma"}, {"p", "fine"})
        .trans(0, {"a", "a"}, 1)
        .trans(0, {"a", "b"}, 2)
        .trans(0, {"b", "a"}, 2)
        .trans(0, {"b", "b"}, 1)
        .trans(1, {"a", "a"}, 0)
        .trans(1, {"a", "b"}, 1)
        .trans(1, {"b", "a"}, 1)
        .trans(1, {"b", "b"}, 0)
        .trans(2, {"a", "a"}, 1)
        .trans(2, {"a", "b"}, 2)
        .trans(2, {"b", "a"}, 2)
        .trans(2, {"b", "b"}, 1)
        .build();
}

// M after the sanctioning update: fined copies u and v catch the
// non-cooperative profiles.
inline lamb::Model figMSN() {
    return Builder(2, {"a", "b"})
        .state(0, {"alpha"}, {"p"})
        .state(1, {"beta"})
        .state(2, {"gamma"}, {"p", "fine"})
        .state(3, {"delta"}, {"fine"})
        .trans(0, {"a", "a"}, 1)
        .trans(0, {"a", "b"}, 2)
        .trans(0, {"b", "a"}, 2)
        .trans(0, {"b", "b"}, 1)
        .trans(1, {"a", "a"}, 0)
        .trans(1, {"a", "b"}, 3)
        .trans(1, {"b", "a"}, 3)
        .trans(1, {"b", "b"}, 0)
        .trans(2, {"a", "a"}, 1)
        .trans(2, {"a", "b"}, 2)
        .trans(2, {"b", "a"}, 2)
        .trans(2, {"b", "b"}, 1)
        .trans(3, {"a", "a"}, 0)
        .trans(3, {"a", "b"}, 3)
        .trans(3, {"b", "a"}, 3)
        .trans(3, {"b", "b"}, 0)
        .build();
}

// The displayed sanctioning update for M.
inline std::vector<lamb::UpdateExpr> snSequence() {
    return {
        lamb::u_add("gamma"),
        lamb::u_subst("p", "gamma", lamb::f_true()),
        lamb::u_subst("fine", "gamma", lamb::f_true()),
        lamb::u_arrow("alpha", {"a", "b"}, "gamma"),
        lamb::u_arrow("alpha", {"b", "a"}, "gamma"),
        lamb::u_arrow("gamma", {"a", "a"}, "beta"),
        lamb::u_arrow("gamma", {"b", "b"}, "beta"),
        lamb::u_add("delta"),
        lamb::u_subst("fine", "delta", lamb::f_true()),
        lamb::u_arrow("beta", {"a", "b"}, "delta"),
        lamb::u_arrow("beta", {"b", "a"}, "delta"),
        lamb::u_arrow("delta", {"a", "a"}, "alpha"),
        lamb::u_arrow("delta", {"b", "b"}, "alpha"),
    };
}

inline void flatten(const lamb::UpdateExpr& u, std::vector<lamb::UpdateExpr>& out) {
    if (u->kind == lamb::UKind::Seq) {
        flatten(u->lhs, out);
        flatten(u->rhs, out);
        return;
    }
    out.push_back(u);
}

// Applies a sequence of primitive updates at point s, resolving payloads with
// the fixpoint checker.
inline lamb::Model applyAll(const lamb::Model& m, lamb::StateId s,
                            const std::vector<lamb::UpdateExpr>& updates) {
    lamb::Checker checker;
    lamb::Model cur = m;
    for (const auto& u : updates) {
        cur = lamb::apply_update(cur, s, u,
                                 [&checker](const lamb::Model& mm, lamb::StateId ss,
                                            const lamb::Formula& ff) { return checker.mc(mm, ss, ff); });
    }
    return cur;
}

// Renames every state id through an injective map; the result is structurally
// equal to the input up to internal ids.
template <typename F>
inline lamb::Model remapIds(const lamb::Model& m, F&& f) {
    lamb::ModelData d;
    d.agents = m.agentCount();
    d.actions = m.actions();
    std::vector<std::pair<lamb::StateId, std::size_t>> order; // new id -> old position
    for (std::size_t i = 0; i < m.states().size(); ++i) {
        order.emplace_back(f(m.states()[i]), i);
    }
    std::sort(order.begin(), order.end());
    std::size_t pc = m.profileCount();
    d.transitions.resize(m.states().size() * pc);
    for (std::size_t k = 0; k < order.size(); ++k) {
        d.states.push_back(order[k].first);
        for (std::size_t c = 0; c < pc; ++c) {
            d.transitions[k * pc + c] = f(m.data().transitions[order[k].second * pc + c]);
        }
    }
    for (const auto& [name, sts] : m.data().props) {
        for (lamb::StateId s : sts) d.props[name].insert(f(s));
    }
    for (const auto& [name, sts] : m.data().nominals) {
        for (lamb::StateId s : sts) d.nominals[name].insert(f(s));
    }
    return lamb::Model{std::move(d)};
}

inline lamb::Model shiftIds(const lamb::Model& m, lamb::StateId offset) {
    return remapIds(m, [offset](lamb::StateId s) { return s + offset; });
}

inline lamb::Model reverseIds(const lamb::Model& m) {
    lamb::StateId maxId = m.states().back();
    return remapIds(m, [maxId](lamb::StateId s) { return maxId - s; });
}

} // namespace fixtures
