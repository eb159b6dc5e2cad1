#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lamb {

// Agents are numbered 1..n. A coalition is a sorted, duplicate-free subset.
using AgentId = int;
using Coalition = std::vector<AgentId>;

// States are opaque integer ids assigned by the container; external identity
// flows through nominals.
using StateId = int;

// A complete action profile assigns one action per agent, index = agent - 1.
using ActionProfile = std::vector<std::string>;

// A partial profile covers exactly the agents of some coalition.
using PartialProfile = std::map<AgentId, std::string>;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline Coalition make_coalition(std::initializer_list<AgentId> agents) {
    Coalition c(agents);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

// 128-bit structural fingerprint, used as a memoization key.
struct Fingerprint {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
    friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;
};

namespace detail {

class Fnv128 {
public:
    void feed(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            byte(static_cast<unsigned char>(v >> (8 * i)));
        }
    }
    void feed(const std::string& s) {
        feed(static_cast<std::uint64_t>(s.size()));
        for (unsigned char c : s) byte(c);
    }
    Fingerprint digest() const { return {hi_, lo_}; }

private:
    void byte(unsigned char c) {
        hi_ = (hi_ ^ c) * 0x100000001b3ULL;
        lo_ = (lo_ ^ c) * 0x00000100000001b3ULL + 0x9e3779b97f4a7c15ULL;
    }
    std::uint64_t hi_ = 0xcbf29ce484222325ULL;
    std::uint64_t lo_ = 0x84222325cbf29ce4ULL;
};

} // namespace detail

// Raw components of a named concurrent game model. Invariants expected by
// Model: actions and states sorted and duplicate-free, transitions indexed
// by state position * |Act|^n + profile code (-1 marks a missing entry),
// valuations canonical (no empty extension entries). Violations of the
// game-model invariants themselves are reported by validate(), not thrown.
struct ModelData {
    int agents = 0;
    std::vector<std::string> actions;
    std::vector<StateId> states;
    std::vector<StateId> transitions;
    std::map<std::string, std::set<StateId>> props;
    std::map<std::string, std::set<StateId>> nominals;
};

class Model {
public:
    explicit Model(ModelData data) : d_(std::move(data)) {
        canonicalize();
        check();
        if (valid()) {
            computeCanonicalOrder();
            computeFingerprint();
        }
    }

    int agentCount() const { return d_.agents; }
    const std::vector<std::string>& actions() const { return d_.actions; }
    const std::vector<StateId>& states() const { return d_.states; }
    const ModelData& data() const { return d_; }

    bool hasState(StateId s) const {
        return std::binary_search(d_.states.begin(), d_.states.end(), s);
    }

    // Position of s in the sorted state vector.
    int stateIndex(StateId s) const {
        auto it = std::lower_bound(d_.states.begin(), d_.states.end(), s);
        if (it == d_.states.end() || *it != s) {
            throw Error("unknown state id " + std::to_string(s));
        }
        return static_cast<int>(it - d_.states.begin());
    }

    std::size_t actionIndex(const std::string& a) const {
        auto it = std::lower_bound(d_.actions.begin(), d_.actions.end(), a);
        if (it == d_.actions.end() || *it != a) {
            throw Error("unknown action '" + a + "'");
        }
        return static_cast<std::size_t>(it - d_.actions.begin());
    }

    std::size_t profileCount() const { return profileCount_; }

    // Mixed-radix code of a complete profile, digit i = agent i+1's action.
    std::size_t profileCode(const ActionProfile& p) const {
        if (static_cast<int>(p.size()) != d_.agents) {
            throw Error("action profile has " + std::to_string(p.size()) +
                        " entries, model has " + std::to_string(d_.agents) + " agents");
        }
        std::size_t code = 0;
        for (int i = d_.agents - 1; i >= 0; --i) {
            code = code * d_.actions.size() + actionIndex(p[static_cast<std::size_t>(i)]);
        }
        return code;
    }

    ActionProfile profileAt(std::size_t code) const {
        ActionProfile p(static_cast<std::size_t>(d_.agents));
        for (int i = 0; i < d_.agents; ++i) {
            p[static_cast<std::size_t>(i)] = d_.actions[code % d_.actions.size()];
            code /= d_.actions.size();
        }
        return p;
    }

    StateId successor(StateId s, std::size_t profileCode) const {
        return d_.transitions[static_cast<std::size_t>(stateIndex(s)) * profileCount_ + profileCode];
    }

    StateId successor(StateId s, const ActionProfile& p) const {
        return successor(s, profileCode(p));
    }

    bool propTrue(const std::string& p, StateId s) const {
        auto it = d_.props.find(p);
        return it != d_.props.end() && it->second.count(s) > 0;
    }

    // Denotation of a nominal on a valid model; empty denotations are allowed.
    std::optional<StateId> nominalState(const std::string& n) const {
        auto it = d_.nominals.find(n);
        if (it == d_.nominals.end() || it->second.empty()) return std::nullopt;
        return *it->second.begin();
    }

    std::set<std::string> nominalsOf(StateId s) const {
        std::set<std::string> out;
        for (const auto& [name, sts] : d_.nominals) {
            if (sts.count(s)) out.insert(name);
        }
        return out;
    }

    std::set<std::string> propsOf(StateId s) const {
        std::set<std::string> out;
        for (const auto& [name, sts] : d_.props) {
            if (sts.count(s)) out.insert(name);
        }
        return out;
    }

    const std::vector<std::string>& violations() const { return violations_; }
    bool valid() const { return violations_.empty(); }

    void requireValid() const {
        if (!valid()) throw Error("invalid model: " + violations_.front());
    }

    // Fingerprint over the nominal-canonical form: equal-mod-ids models agree.
    const Fingerprint& fingerprint() const { return fingerprint_; }

    // canonicalOrder()[c] = state position of the c-th state in nominal order.
    const std::vector<int>& canonicalOrder() const { return canonOrder_; }
    const std::vector<int>& canonicalIndexOf() const { return canonIndex_; }

private:
    void canonicalize() {
        for (auto it = d_.props.begin(); it != d_.props.end();) {
            it = it->second.empty() ? d_.props.erase(it) : std::next(it);
        }
        for (auto it = d_.nominals.begin(); it != d_.nominals.end();) {
            it = it->second.empty() ? d_.nominals.erase(it) : std::next(it);
        }
        profileCount_ = 1;
        for (int i = 0; i < d_.agents; ++i) profileCount_ *= d_.actions.size();
    }

    void complain(const std::string& msg) { violations_.push_back(msg); }

    std::string stateLabel(StateId s) const {
        auto noms = nominalsOf(s);
        if (noms.empty()) return std::to_string(s);
        return *noms.begin();
    }

    void check() {
        if (d_.agents < 1) complain("model must have at least one agent");
        if (d_.actions.empty()) complain("action alphabet is empty");
        if (d_.states.empty()) complain("state set is empty");
        if (!std::is_sorted(d_.actions.begin(), d_.actions.end()) ||
            std::adjacent_find(d_.actions.begin(), d_.actions.end()) != d_.actions.end()) {
            complain("action alphabet is not sorted and duplicate-free");
        }
        if (!std::is_sorted(d_.states.begin(), d_.states.end()) ||
            std::adjacent_find(d_.states.begin(), d_.states.end()) != d_.states.end()) {
            complain("state ids are not sorted and duplicate-free");
        }
        if (!violations_.empty()) return;

        for (const auto& [name, sts] : d_.props) {
            for (StateId s : sts) {
                if (!hasState(s)) complain("proposition " + name + " marks unknown state " + std::to_string(s));
            }
        }
        for (const auto& [name, sts] : d_.nominals) {
            if (sts.size() > 1) {
                complain("nominal " + name + " denotes " + std::to_string(sts.size()) + " states");
            }
            for (StateId s : sts) {
                if (!hasState(s)) complain("nominal " + name + " names unknown state " + std::to_string(s));
            }
        }
        if (!violations_.empty()) return;

        // Proper naming: every state carries at least one nominal.
        for (StateId s : d_.states) {
            if (nominalsOf(s).empty()) {
                complain("state " + std::to_string(s) + " has no nominal");
            }
        }

        // Totality of the transition function.
        if (d_.transitions.size() != d_.states.size() * profileCount_) {
            complain("transition table has wrong size");
            return;
        }
        for (std::size_t i = 0; i < d_.states.size(); ++i) {
            for (std::size_t c = 0; c < profileCount_; ++c) {
                StateId t = d_.transitions[i * profileCount_ + c];
                if (t == -1) {
                    complain("missing transition " + stateLabel(d_.states[i]) + "/(" +
                             profileString(c) + ")");
                } else if (!hasState(t)) {
                    complain("transition from " + stateLabel(d_.states[i]) + " targets unknown state " +
                             std::to_string(t));
                }
            }
        }
    }

    std::string profileString(std::size_t code) const {
        std::string out;
        ActionProfile p = profileAt(code);
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) out += ',';
            out += p[i];
        }
        return out;
    }

    void computeCanonicalOrder() {
        // Nominal sets of distinct states are disjoint, so ordering states by
        // their sorted nominal set is total.
        std::vector<std::pair<std::set<std::string>, int>> keyed;
        keyed.reserve(d_.states.size());
        for (std::size_t i = 0; i < d_.states.size(); ++i) {
            keyed.emplace_back(nominalsOf(d_.states[i]), static_cast<int>(i));
        }
        std::sort(keyed.begin(), keyed.end());
        canonOrder_.resize(keyed.size());
        canonIndex_.resize(keyed.size());
        for (std::size_t c = 0; c < keyed.size(); ++c) {
            canonOrder_[c] = keyed[c].second;
            canonIndex_[static_cast<std::size_t>(keyed[c].second)] = static_cast<int>(c);
        }
    }

    void computeFingerprint() {
        detail::Fnv128 h;
        h.feed(static_cast<std::uint64_t>(d_.agents));
        h.feed(static_cast<std::uint64_t>(d_.actions.size()));
        for (const auto& a : d_.actions) h.feed(a);
        h.feed(static_cast<std::uint64_t>(d_.states.size()));
        for (int idx : canonOrder_) {
            StateId s = d_.states[static_cast<std::size_t>(idx)];
            auto noms = nominalsOf(s);
            h.feed(static_cast<std::uint64_t>(noms.size()));
            for (const auto& n : noms) h.feed(n);
            auto ps = propsOf(s);
            h.feed(static_cast<std::uint64_t>(ps.size()));
            for (const auto& p : ps) h.feed(p);
            for (std::size_t c = 0; c < profileCount_; ++c) {
                StateId t = d_.transitions[static_cast<std::size_t>(idx) * profileCount_ + c];
                h.feed(static_cast<std::uint64_t>(canonIndex_[static_cast<std::size_t>(stateIndex(t))]));
            }
        }
        fingerprint_ = h.digest();
    }

    ModelData d_;
    std::size_t profileCount_ = 0;
    std::vector<std::string> violations_;
    std::vector<int> canonOrder_;
    std::vector<int> canonIndex_;
    Fingerprint fingerprint_;
};

struct PointedModel {
    Model model;
    StateId point;
};

inline std::vector<std::string> validate(const Model& m) { return m.violations(); }

// |Agt| + |Act| + |S| + |S|*|Act|^|Agt| + sum over states of the number of
// propositions and nominals true there.
inline std::size_t model_size(const Model& m) {
    m.requireValid();
    std::size_t truths = 0;
    for (const auto& [name, sts] : m.data().props) truths += sts.size();
    for (const auto& [name, sts] : m.data().nominals) truths += sts.size();
    return static_cast<std::size_t>(m.agentCount()) + m.actions().size() + m.states().size() +
           m.states().size() * m.profileCount() + truths;
}

namespace detail {

inline void checkCoalition(const Model& m, const Coalition& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 1 || c[i] > m.agentCount()) {
            throw Error("agent " + std::to_string(c[i]) + " outside 1.." + std::to_string(m.agentCount()));
        }
        if (i > 0 && c[i] <= c[i - 1]) throw Error("coalition must be sorted and duplicate-free");
    }
}

} // namespace detail

// States reachable from s by complete profiles extending the given partial one.
inline std::set<StateId> outcome_set(const Model& m, StateId s, const PartialProfile& partial) {
    m.requireValid();
    int stateIdx = m.stateIndex(s);
    std::vector<std::size_t> fixedDigit(static_cast<std::size_t>(m.agentCount()),
                                        static_cast<std::size_t>(-1));
    for (const auto& [agent, action] : partial) {
        if (agent < 1 || agent > m.agentCount()) {
            throw Error("profile assigns agent " + std::to_string(agent) + " outside the model");
        }
        fixedDigit[static_cast<std::size_t>(agent - 1)] = m.actionIndex(action);
    }
    std::vector<int> freeAgents;
    for (int i = 0; i < m.agentCount(); ++i) {
        if (fixedDigit[static_cast<std::size_t>(i)] == static_cast<std::size_t>(-1)) freeAgents.push_back(i);
    }
    std::size_t actCount = m.actions().size();
    std::size_t completions = 1;
    for (std::size_t i = 0; i < freeAgents.size(); ++i) completions *= actCount;

    std::set<StateId> out;
    std::vector<std::size_t> digits(fixedDigit);
    for (std::size_t k = 0; k < completions; ++k) {
        std::size_t rest = k;
        for (int agent : freeAgents) {
            digits[static_cast<std::size_t>(agent)] = rest % actCount;
            rest /= actCount;
        }
        std::size_t code = 0;
        for (int i = m.agentCount() - 1; i >= 0; --i) {
            code = code * actCount + digits[static_cast<std::size_t>(i)];
        }
        out.insert(m.data().transitions[static_cast<std::size_t>(stateIdx) * m.profileCount() + code]);
    }
    return out;
}

// Tagged union of two models over the same signature. The renaming is applied
// to the right operand's nominals before the union; a clash is an error.
inline Model disjoint_union(const Model& a, const Model& b,
                            const std::map<std::string, std::string>& renaming = {}) {
    a.requireValid();
    b.requireValid();
    if (a.agentCount() != b.agentCount()) throw Error("disjoint union: agent counts differ");
    if (a.actions() != b.actions()) throw Error("disjoint union: action alphabets differ");

    std::map<std::string, std::set<StateId>> renamedNoms;
    for (const auto& [name, sts] : b.data().nominals) {
        auto it = renaming.find(name);
        const std::string& newName = it == renaming.end() ? name : it->second;
        if (!renamedNoms[newName].empty()) throw Error("disjoint union: renaming collapses nominal " + newName);
        renamedNoms[newName] = sts;
    }
    for (const auto& [name, sts] : renamedNoms) {
        if (a.data().nominals.count(name)) throw Error("disjoint union: nominal clash on " + name);
    }

    StateId base = a.states().back() + 1;
    auto remap = [&](StateId s) { return base + b.stateIndex(s); };

    ModelData d;
    d.agents = a.agentCount();
    d.actions = a.actions();
    d.states = a.states();
    for (std::size_t i = 0; i < b.states().size(); ++i) d.states.push_back(base + static_cast<StateId>(i));
    d.transitions = a.data().transitions;
    d.transitions.reserve(d.states.size() * a.profileCount());
    for (StateId s : b.states()) {
        for (std::size_t c = 0; c < b.profileCount(); ++c) {
            d.transitions.push_back(remap(b.successor(s, c)));
        }
    }
    d.props = a.data().props;
    for (const auto& [name, sts] : b.data().props) {
        for (StateId s : sts) d.props[name].insert(remap(s));
    }
    d.nominals = a.data().nominals;
    for (const auto& [name, sts] : renamedNoms) {
        for (StateId s : sts) d.nominals[name].insert(remap(s));
    }
    Model out{std::move(d)};
    out.requireValid();
    return out;
}

// Structural equality up to internal state ids: the bijection induced by
// shared nominals must be total and preserve transitions, propositions, and
// full nominal sets.
inline bool models_equal_mod_ids(const Model& a, const Model& b) {
    a.requireValid();
    b.requireValid();
    if (a.agentCount() != b.agentCount() || a.actions() != b.actions()) return false;
    if (a.states().size() != b.states().size()) return false;

    std::map<StateId, StateId> bij;
    for (StateId s : a.states()) {
        std::optional<StateId> target;
        for (const auto& n : a.nominalsOf(s)) {
            auto t = b.nominalState(n);
            if (!t) continue;
            if (target && *target != *t) return false;
            target = t;
        }
        if (!target) return false; // no shared nominal: bijection not total
        bij[s] = *target;
    }
    std::set<StateId> image;
    for (const auto& [s, t] : bij) image.insert(t);
    if (image.size() != b.states().size()) return false;

    for (StateId s : a.states()) {
        StateId t = bij[s];
        if (a.nominalsOf(s) != b.nominalsOf(t)) return false;
        if (a.propsOf(s) != b.propsOf(t)) return false;
        for (std::size_t c = 0; c < a.profileCount(); ++c) {
            if (bij[a.successor(s, c)] != b.successor(t, c)) return false;
        }
    }
    return true;
}

} // namespace lamb
