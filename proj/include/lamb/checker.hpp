#pragma once

#include "lamb/formula.hpp"
#include "lamb/model.hpp"
#include "lamb/updates.hpp"

#include <map>
#include <set>
#include <unordered_map>
#include <vector>

namespace lamb {

// Set of states of one specific model satisfying a formula.
struct LabelSet {
    Fingerprint modelFingerprint;
    std::set<StateId> states;
};

struct CheckStats {
    // max over all fixpoint runs of (change steps - |S|); nonpositive iff
    // every until/release loop stabilized within |S| steps.
    int maxStepsOverStates = -1;
    std::size_t cacheHits = 0;
    std::size_t cacheMisses = 0;
};

// Model-checking engine. Labelings are memoized per (model fingerprint,
// subformula); identical updated models therefore share their labelings,
// which is what keeps nested updates polynomial. Label sets are stored in
// nominal-canonical state order, so structurally equal models hit the same
// entries regardless of their internal ids. The cache lives in the instance:
// use one Checker per query scope, and separate instances for concurrent
// queries (inputs themselves are immutable and freely shared).
class Checker {
public:
    explicit Checker(bool useMemo = true) : memo_(useMemo) {}

    bool mc(const Model& m, StateId s, const Formula& f) {
        m.requireValid();
        if (!m.hasState(s)) throw Error("unknown state id " + std::to_string(s));
        checkCompatible(m, f);
        return mcInternal(m, s, f);
    }

    LabelSet label(const Model& m, const Formula& f) {
        m.requireValid();
        checkCompatible(m, f);
        const std::vector<char> bmp = fullLabel(m, f);
        LabelSet out{m.fingerprint(), {}};
        for (std::size_t i = 0; i < bmp.size(); ++i) {
            if (bmp[i]) out.states.insert(m.states()[i]);
        }
        return out;
    }

    // States from which coalition C can force the next state into Q.
    static std::set<StateId> pre(const Model& m, const Coalition& c, const std::set<StateId>& q) {
        m.requireValid();
        detail::checkCoalition(m, c);
        std::vector<char> qb(m.states().size(), 0);
        for (StateId s : q) qb[static_cast<std::size_t>(m.stateIndex(s))] = 1;
        std::vector<char> rb = preBitmap(m, c, qb);
        std::set<StateId> out;
        for (std::size_t i = 0; i < rb.size(); ++i) {
            if (rb[i]) out.insert(m.states()[i]);
        }
        return out;
    }

    const CheckStats& stats() const { return stats_; }

private:
    using Bitmap = std::vector<char>;

    struct PerModel {
        std::unordered_map<Formula, Bitmap, FormulaHash, FormulaEq> sets;           // canonical order
        std::unordered_map<Formula, std::vector<signed char>, FormulaHash, FormulaEq> points;
    };

    static Bitmap preBitmap(const Model& m, const Coalition& c, const Bitmap& q) {
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

        const std::vector<StateId>& states = m.states();
        const std::vector<StateId>& trans = m.data().transitions;
        const std::size_t pc = m.profileCount();
        Bitmap out(states.size(), 0);
        std::vector<std::size_t> digits(n, 0);
        for (std::size_t i = 0; i < states.size(); ++i) {
            bool can = false;
            for (std::size_t combo = 0; combo < coalCombos && !can; ++combo) {
                std::size_t rest = combo;
                for (std::size_t a : coalAgents) {
                    digits[a] = rest % ac;
                    rest /= ac;
                }
                bool forced = true;
                for (std::size_t adv = 0; adv < advCombos && forced; ++adv) {
                    std::size_t r = adv;
                    for (std::size_t a : advAgents) {
                        digits[a] = r % ac;
                        r /= ac;
                    }
                    std::size_t code = 0;
                    for (std::size_t a = n; a-- > 0;) code = code * ac + digits[a];
                    StateId t = trans[i * pc + code];
                    if (!q[static_cast<std::size_t>(m.stateIndex(t))]) forced = false;
                }
                can = forced;
            }
            out[i] = can ? 1 : 0;
        }
        return out;
    }

    bool mcInternal(const Model& m, StateId s, const Formula& f) {
        switch (f->kind) {
        case FKind::True:
            return true;
        case FKind::False:
            return false;
        case FKind::Prop:
            return m.propTrue(f->name, s);
        case FKind::Nominal: {
            auto t = m.nominalState(f->name);
            return t && *t == s;
        }
        case FKind::At: {
            // False when the nominal has no denotation.
            auto t = m.nominalState(f->name);
            return t && mcInternal(m, *t, f->lhs);
        }
        case FKind::Not:
            return !mcInternal(m, s, f->lhs);
        case FKind::And:
            return mcInternal(m, s, f->lhs) && mcInternal(m, s, f->rhs);
        case FKind::CoalX:
        case FKind::CoalUntil:
        case FKind::CoalRelease:
            return fullLabel(m, f)[static_cast<std::size_t>(m.stateIndex(s))] != 0;
        case FKind::Updated:
            return mcUpdated(m, s, f);
        }
        throw Error("unreachable formula kind");
    }

    bool mcUpdated(const Model& m, StateId s, const Formula& f) {
        const UpdateExpr& u = f->update;
        if (u->kind == UKind::Union) {
            return mcInternal(m, s, f_updated(u->lhs, f->lhs)) &&
                   mcInternal(m, s, f_updated(u->rhs, f->lhs));
        }
        if (u->kind == UKind::Seq) { // normally split at construction
            return mcInternal(m, s, f_updated(u, f->lhs));
        }
        std::size_t rawIdx = static_cast<std::size_t>(m.stateIndex(s));
        std::vector<signed char>* cache = nullptr;
        if (memo_) {
            PerModel& pm = cache_[m.fingerprint()];
            auto [it, inserted] = pm.points.try_emplace(f);
            if (inserted) it->second.assign(m.states().size(), -1);
            cache = &it->second;
            std::size_t canonIdx = static_cast<std::size_t>(m.canonicalIndexOf()[rawIdx]);
            if ((*cache)[canonIdx] >= 0) {
                ++stats_.cacheHits;
                return (*cache)[canonIdx] != 0;
            }
            ++stats_.cacheMisses;
        }
        Model updated = apply_update(m, s, u, [this](const Model& mm, StateId ss, const Formula& ff) {
            return mcInternal(mm, ss, ff);
        });
        bool result = mcInternal(updated, s, f->lhs);
        if (cache) {
            // apply_update may have grown the cache map; re-resolve the slot.
            std::size_t canonIdx = static_cast<std::size_t>(m.canonicalIndexOf()[rawIdx]);
            cache_[m.fingerprint()].points[f][canonIdx] = result ? 1 : 0;
        }
        return result;
    }

    Bitmap fullLabel(const Model& m, const Formula& f) {
        if (memo_) {
            auto modelIt = cache_.find(m.fingerprint());
            if (modelIt != cache_.end()) {
                auto it = modelIt->second.sets.find(f);
                if (it != modelIt->second.sets.end()) {
                    ++stats_.cacheHits;
                    return fromCanonical(m, it->second);
                }
            }
            ++stats_.cacheMisses;
        }
        Bitmap raw;
        switch (f->kind) {
        case FKind::CoalX:
            raw = preBitmap(m, f->coalition, fullLabel(m, f->lhs));
            break;
        case FKind::CoalUntil:
            raw = untilFixpoint(m, f->coalition, fullLabel(m, f->lhs), fullLabel(m, f->rhs));
            break;
        case FKind::CoalRelease:
            raw = releaseFixpoint(m, f->coalition, fullLabel(m, f->lhs), fullLabel(m, f->rhs));
            break;
        default: {
            // Update subformulas are evaluation-point-dependent, so anything
            // that is not a coalition operator is labeled state by state.
            raw.assign(m.states().size(), 0);
            for (std::size_t i = 0; i < m.states().size(); ++i) {
                raw[i] = mcInternal(m, m.states()[i], f) ? 1 : 0;
            }
            break;
        }
        }
        if (memo_) cache_[m.fingerprint()].sets[f] = toCanonical(m, raw);
        return raw;
    }

    // Least fixpoint X := goal ∪ (Pre(C,X) ∩ maintained).
    Bitmap untilFixpoint(const Model& m, const Coalition& c, const Bitmap& maintained, const Bitmap& goal) {
        Bitmap x(m.states().size(), 0);
        Bitmap y = goal;
        int steps = 0;
        while (y != x) {
            guardFixpoint(m, ++steps);
            x = y;
            Bitmap p = preBitmap(m, c, x);
            for (std::size_t i = 0; i < y.size(); ++i) {
                y[i] = goal[i] || (p[i] && maintained[i]) ? 1 : 0;
            }
        }
        noteFixpoint(m, steps);
        return x;
    }

    // Greatest fixpoint X := release ∪ (maintained ∩ Pre(C,X)). A release at
    // the current instant already discharges the obligation there (the
    // satisfaction clause asks for a release at some j <= i, i included), so
    // the release states join the fixpoint unconditionally.
    Bitmap releaseFixpoint(const Model& m, const Coalition& c, const Bitmap& release, const Bitmap& maintained) {
        Bitmap x(m.states().size(), 1);
        Bitmap y(m.states().size(), 0);
        int steps = 0;
        for (;;) {
            Bitmap p = preBitmap(m, c, x);
            for (std::size_t i = 0; i < y.size(); ++i) {
                y[i] = release[i] || (maintained[i] && p[i]) ? 1 : 0;
            }
            if (y == x) break;
            guardFixpoint(m, ++steps);
            x = y;
        }
        noteFixpoint(m, steps + 1);
        return x;
    }

    void guardFixpoint(const Model& m, int steps) {
        // Monotone fixpoints change the set at most |S| times; one extra pass
        // observes stability, anything beyond is a bug.
        if (steps > static_cast<int>(m.states().size()) + 1) {
            throw Error("internal error: fixpoint failed to stabilize");
        }
    }

    void noteFixpoint(const Model& m, int steps) {
        // The final pass only observes stability, so `steps - 1` changes happened.
        int changes = steps > 0 ? steps - 1 : 0;
        int over = changes - static_cast<int>(m.states().size());
        if (over > stats_.maxStepsOverStates) stats_.maxStepsOverStates = over;
    }

    Bitmap toCanonical(const Model& m, const Bitmap& raw) const {
        Bitmap out(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            out[static_cast<std::size_t>(m.canonicalIndexOf()[i])] = raw[i];
        }
        return out;
    }
    Bitmap fromCanonical(const Model& m, const Bitmap& canon) const {
        Bitmap out(canon.size());
        for (std::size_t i = 0; i < canon.size(); ++i) {
            out[i] = canon[static_cast<std::size_t>(m.canonicalIndexOf()[i])];
        }
        return out;
    }

    // Coalitions and arrow profiles must fit the model signature; nominals
    // and propositions are free to be absent.
    static void checkCompatible(const Model& m, const Formula& f) {
        switch (f->kind) {
        case FKind::True:
        case FKind::False:
        case FKind::Prop:
        case FKind::Nominal:
            return;
        case FKind::At:
        case FKind::Not:
            checkCompatible(m, f->lhs);
            return;
        case FKind::And:
            checkCompatible(m, f->lhs);
            checkCompatible(m, f->rhs);
            return;
        case FKind::CoalX:
            detail::checkCoalition(m, f->coalition);
            checkCompatible(m, f->lhs);
            return;
        case FKind::CoalUntil:
        case FKind::CoalRelease:
            detail::checkCoalition(m, f->coalition);
            checkCompatible(m, f->lhs);
            checkCompatible(m, f->rhs);
            return;
        case FKind::Updated:
            checkCompatible(m, f->update);
            checkCompatible(m, f->lhs);
            return;
        }
    }

    static void checkCompatible(const Model& m, const UpdateExpr& u) {
        switch (u->kind) {
        case UKind::Subst:
            checkCompatible(m, u->payload);
            return;
        case UKind::Arrow:
            if (static_cast<int>(u->profile.size()) != m.agentCount()) {
                throw Error("arrow update profile has " + std::to_string(u->profile.size()) +
                            " actions, model has " + std::to_string(m.agentCount()) + " agents");
            }
            for (const auto& a : u->profile) m.actionIndex(a);
            return;
        case UKind::AddState:
            return;
        case UKind::Seq:
        case UKind::Union:
            checkCompatible(m, u->lhs);
            checkCompatible(m, u->rhs);
            return;
        }
    }

    bool memo_;
    std::map<Fingerprint, PerModel> cache_;
    CheckStats stats_;
};

} // namespace lamb
