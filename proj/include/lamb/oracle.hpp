#pragma once

#include "lamb/formula.hpp"
#include "lamb/model.hpp"
#include "lamb/printer.hpp"
#include "lamb/updates.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace lamb {

// A memoryless strategy for coalition C assigns one action to every
// (state, member) pair; encoded as one coalition-action-combo digit per
// state position.
struct MemorylessStrategy {
    Coalition coalition;
    std::vector<std::size_t> comboPerState;

    // Odometer step; false once every strategy has been visited.
    bool advance(std::size_t coalCombos) {
        std::size_t d = 0;
        while (d < comboPerState.size() && ++comboPerState[d] == coalCombos) {
            comboPerState[d] = 0;
            ++d;
        }
        return d < comboPerState.size();
    }
};

// Brute-force semantics, written directly from the satisfaction relation:
// coalition operators enumerate all |Act|^(|S|*|C|) memoryless strategies and
// quantify over all plays of each. Deliberately independent of the fixpoint
// engine; only the update construction is shared, with this oracle resolving
// substitution payloads.
class Oracle {
public:
    explicit Oracle(std::size_t maxStates = 6) : maxStates_(maxStates) {}

    bool check(const Model& m, StateId s, const Formula& f) {
        m.requireValid();
        if (m.states().size() > maxStates_) {
            throw Error("oracle refuses models with more than " + std::to_string(maxStates_) + " states");
        }
        if (!m.hasState(s)) throw Error("unknown state id " + std::to_string(s));
        return eval(m, modelId(m), s, f);
    }

    // Total strategies enumerated so far; property tests assert the exact
    // |Act|^(|S|*|C|) count on formulas that force full enumeration.
    std::uint64_t strategiesEnumerated() const { return strategyCounter_; }
    void resetCounters() { strategyCounter_ = 0; }

private:
    using Truths = std::vector<signed char>; // per state position, -1 unknown

    int modelId(const Model& m) {
        std::string key = print_model(m);
        auto [it, inserted] = modelIds_.try_emplace(std::move(key), static_cast<int>(modelIds_.size()));
        return it->second;
    }

    bool eval(const Model& m, int mid, StateId s, const Formula& f) {
        std::size_t idx = static_cast<std::size_t>(m.stateIndex(s));
        auto& slot = memo_[mid][f];
        if (slot.size() != m.states().size()) slot.assign(m.states().size(), -1);
        if (slot[idx] >= 0) return slot[idx] != 0;
        bool result = false;
        switch (f->kind) {
        case FKind::True: result = true; break;
        case FKind::False: result = false; break;
        case FKind::Prop: result = m.propTrue(f->name, s); break;
        case FKind::Nominal: {
            auto t = m.nominalState(f->name);
            result = t && *t == s;
            break;
        }
        case FKind::At: {
            auto t = m.nominalState(f->name);
            result = t && eval(m, mid, *t, f->lhs);
            break;
        }
        case FKind::Not: result = !eval(m, mid, s, f->lhs); break;
        case FKind::And: result = eval(m, mid, s, f->lhs) && eval(m, mid, s, f->rhs); break;
        case FKind::CoalX:
        case FKind::CoalUntil:
        case FKind::CoalRelease:
            result = evalCoalition(m, mid, s, f);
            break;
        case FKind::Updated: {
            const UpdateExpr& u = f->update;
            if (u->kind == UKind::Union) {
                result = eval(m, mid, s, f_updated(u->lhs, f->lhs)) &&
                         eval(m, mid, s, f_updated(u->rhs, f->lhs));
            } else {
                Model updated = apply_update(m, s, u, [this](const Model& mm, StateId ss, const Formula& ff) {
                    return eval(mm, modelId(mm), ss, ff);
                });
                result = eval(updated, modelId(updated), s, f->lhs);
            }
            break;
        }
        }
        memo_[mid][f][idx] = result ? 1 : 0;
        return result;
    }

    // Successor-state positions for each (state, coalition action combo),
    // over all completions by the anti-coalition.
    std::vector<std::vector<std::vector<std::size_t>>> successorTable(const Model& m, const Coalition& c) {
        const std::size_t n = static_cast<std::size_t>(m.agentCount());
        const std::size_t ac = m.actions().size();
        std::vector<std::size_t> coalAgents;
        for (AgentId a : c) coalAgents.push_back(static_cast<std::size_t>(a - 1));
        std::vector<std::size_t> advAgents;
        {
            std::vector<char> inC(n, 0);
            for (std::size_t a : coalAgents) inC[a] = 1;
            for (std::size_t a = 0; a < n; ++a) {
                if (!inC[a]) advAgents.push_back(a);
            }
        }
        std::size_t coalCombos = 1;
        for (std::size_t i = 0; i < coalAgents.size(); ++i) coalCombos *= ac;
        std::size_t advCombos = 1;
        for (std::size_t i = 0; i < advAgents.size(); ++i) advCombos *= ac;

        std::vector<std::vector<std::vector<std::size_t>>> table(m.states().size());
        std::vector<std::size_t> digits(n, 0);
        for (std::size_t i = 0; i < m.states().size(); ++i) {
            table[i].resize(coalCombos);
            for (std::size_t combo = 0; combo < coalCombos; ++combo) {
                std::size_t rest = combo;
                for (std::size_t a : coalAgents) {
                    digits[a] = rest % ac;
                    rest /= ac;
                }
                std::vector<char> seen(m.states().size(), 0);
                for (std::size_t adv = 0; adv < advCombos; ++adv) {
                    std::size_t r = adv;
                    for (std::size_t a : advAgents) {
                        digits[a] = r % ac;
                        r /= ac;
                    }
                    std::size_t code = 0;
                    for (std::size_t a = n; a-- > 0;) code = code * ac + digits[a];
                    std::size_t t = static_cast<std::size_t>(m.stateIndex(m.successor(m.states()[i], code)));
                    if (!seen[t]) {
                        seen[t] = 1;
                        table[i][combo].push_back(t);
                    }
                }
            }
        }
        return table;
    }

    bool evalCoalition(const Model& m, int mid, StateId s, const Formula& f) {
        detail::checkCoalition(m, f->coalition);
        const std::size_t stateCount = m.states().size();
        Truths lhs(stateCount), rhs(stateCount);
        for (std::size_t i = 0; i < stateCount; ++i) {
            lhs[i] = eval(m, mid, m.states()[i], f->lhs) ? 1 : 0;
            if (f->kind != FKind::CoalX) rhs[i] = eval(m, mid, m.states()[i], f->rhs) ? 1 : 0;
        }
        auto table = successorTable(m, f->coalition);
        const std::size_t coalCombos = table.empty() ? 1 : table[0].size();
        std::size_t start = static_cast<std::size_t>(m.stateIndex(s));

        MemorylessStrategy strategy{f->coalition, std::vector<std::size_t>(stateCount, 0)};
        for (;;) {
            ++strategyCounter_;
            const std::vector<std::size_t>& strat = strategy.comboPerState;
            bool works = false;
            switch (f->kind) {
            case FKind::CoalX: {
                works = true;
                for (std::size_t t : table[start][strat[start]]) {
                    if (!lhs[t]) { works = false; break; }
                }
                break;
            }
            case FKind::CoalUntil:
                works = !untilViolated(table, strat, start, lhs, rhs);
                break;
            case FKind::CoalRelease:
                works = !releaseViolated(table, strat, start, lhs, rhs);
                break;
            default:
                break;
            }
            if (works) return true;
            if (!strategy.advance(coalCombos)) return false;
        }
    }

    // Play prefixes are explored within the region of states that keep the
    // violation alive; a prefix revisiting a region state closes a lasso.
    // Every play is infinite (the transition function is total), and by
    // pigeonhole any play that stays in the region for |S|+1 steps revisits a
    // state, so a violating behaviour exists iff one shows up on a prefix of
    // length at most |S|+1 or on such a lasso. Fully explored region states
    // are marked done and skipped: a violation reachable through them would
    // already have been found, which caps the search at one successor scan
    // per state.

    // A play violates <<C>> psi U phi iff it never reaches a phi-state
    // through psi-states: walking inside psi-and-not-phi, reaching a state
    // satisfying neither is a violation, and so is closing a lasso (the play
    // can stay in the region forever without ever reaching phi).
    bool untilViolated(const std::vector<std::vector<std::vector<std::size_t>>>& table,
                       const std::vector<std::size_t>& strat, std::size_t start,
                       const Truths& psi, const Truths& phi) {
        if (phi[start]) return false;
        if (!psi[start]) return true;
        std::vector<signed char> color(table.size(), 0); // 0 white, 1 on path, 2 done
        return untilDfs(table, strat, start, psi, phi, color);
    }

    bool untilDfs(const std::vector<std::vector<std::vector<std::size_t>>>& table,
                  const std::vector<std::size_t>& strat, std::size_t u,
                  const Truths& psi, const Truths& phi, std::vector<signed char>& color) {
        color[u] = 1;
        for (std::size_t v : table[u][strat[u]]) {
            if (phi[v]) continue;          // this branch satisfied the until
            if (!psi[v]) return true;      // stuck: neither psi nor phi
            if (color[v] == 1) return true; // lasso inside the region
            if (color[v] == 2) continue;
            if (untilDfs(table, strat, v, psi, phi, color)) return true;
        }
        color[u] = 2;
        return false;
    }

    // A play violates <<C>> psi R phi iff phi fails at some position before
    // any psi was seen: walking inside not-psi-and-phi, reaching a state with
    // neither psi nor phi is a violation; a lasso keeps phi true forever and
    // is fine.
    bool releaseViolated(const std::vector<std::vector<std::vector<std::size_t>>>& table,
                         const std::vector<std::size_t>& strat, std::size_t start,
                         const Truths& psi, const Truths& phi) {
        if (psi[start]) return false;
        if (!phi[start]) return true;
        std::vector<signed char> visited(table.size(), 0);
        return releaseDfs(table, strat, start, psi, phi, visited);
    }

    bool releaseDfs(const std::vector<std::vector<std::vector<std::size_t>>>& table,
                    const std::vector<std::size_t>& strat, std::size_t u,
                    const Truths& psi, const Truths& phi, std::vector<signed char>& visited) {
        visited[u] = 1;
        for (std::size_t v : table[u][strat[u]]) {
            if (psi[v]) continue;          // released
            if (!phi[v]) return true;      // phi failed with no release yet
            if (visited[v]) continue;      // lasso with phi intact
            if (releaseDfs(table, strat, v, psi, phi, visited)) return true;
        }
        return false;
    }

    std::size_t maxStates_;
    std::uint64_t strategyCounter_ = 0;
    std::map<std::string, int> modelIds_;
    std::map<int, std::unordered_map<Formula, Truths, FormulaHash, FormulaEq>> memo_;
};

inline bool oracle_mc(const Model& m, StateId s, const Formula& f, std::size_t maxStates = 6) {
    Oracle o(maxStates);
    return o.check(m, s, f);
}

} // namespace lamb
