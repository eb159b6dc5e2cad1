#pragma once

#include "lamb/formula.hpp"
#include "lamb/model.hpp"

#include <functional>

namespace lamb {

// Resolves the substitution payload at the evaluation point. The checker and
// the brute-force oracle each pass their own semantics here, which keeps this
// module free of a dependency on either.
using EvalHook = std::function<bool(const Model&, StateId, const Formula&)>;

// Smallest unused non-negative state id; deterministic across runs.
inline StateId fresh_state_id(const Model& m) {
    StateId expect = 0;
    for (StateId s : m.states()) {
        if (s != expect) break;
        ++expect;
    }
    return expect;
}

// Applies one primitive update at evaluation point s. A nominal without a
// denotation makes the update a no-op, never an error. The input model is
// left untouched.
inline Model apply_update(const Model& m, StateId s, const UpdateExpr& u, const EvalHook& eval) {
    m.requireValid();
    if (!m.hasState(s)) throw Error("unknown evaluation state " + std::to_string(s));

    switch (u->kind) {
    case UKind::Subst: {
        auto target = m.nominalState(u->from);
        if (!target) return m;
        ModelData d = m.data();
        if (eval(m, s, u->payload)) {
            d.props[u->prop].insert(*target);
        } else {
            auto it = d.props.find(u->prop);
            if (it != d.props.end()) it->second.erase(*target);
        }
        return Model{std::move(d)};
    }
    case UKind::Arrow: {
        auto from = m.nominalState(u->from);
        auto to = m.nominalState(u->to);
        if (!from || !to) return m;
        std::size_t code = m.profileCode(u->profile);
        ModelData d = m.data();
        d.transitions[static_cast<std::size_t>(m.stateIndex(*from)) * m.profileCount() + code] = *to;
        return Model{std::move(d)};
    }
    case UKind::AddState: {
        if (m.nominalState(u->from)) return m;
        StateId fresh = fresh_state_id(m);
        ModelData d = m.data();
        auto pos = std::lower_bound(d.states.begin(), d.states.end(), fresh);
        std::size_t freshIdx = static_cast<std::size_t>(pos - d.states.begin());
        d.states.insert(pos, fresh);

        // Rebuild the transition table around the inserted row; the new state
        // self-loops on every complete profile and carries no propositions.
        std::size_t pc = m.profileCount();
        std::vector<StateId> trans(d.states.size() * pc);
        for (std::size_t i = 0; i < d.states.size(); ++i) {
            if (i == freshIdx) {
                for (std::size_t c = 0; c < pc; ++c) trans[i * pc + c] = fresh;
            } else {
                std::size_t oldIdx = i < freshIdx ? i : i - 1;
                for (std::size_t c = 0; c < pc; ++c) trans[i * pc + c] = m.data().transitions[oldIdx * pc + c];
            }
        }
        d.transitions = std::move(trans);
        d.nominals[u->from].insert(fresh);
        return Model{std::move(d)};
    }
    case UKind::Seq:
    case UKind::Union:
        throw Error("apply_update expects a primitive update");
    }
    throw Error("unreachable update kind");
}

} // namespace lamb
