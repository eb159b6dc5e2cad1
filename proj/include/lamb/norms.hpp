#pragma once

#include "lamb/checker.hpp"
#include "lamb/formula.hpp"
#include "lamb/model.hpp"
#include "lamb/parser.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace lamb {

// Sanctioning norm (phi, A, S): performing a profile from A in a phi-state
// imposes the sanction atoms S.
struct SanctioningNorm {
    Formula condition;
    std::vector<ActionProfile> profiles;
    std::vector<std::string> sanctions;
};

// Regimenting norm (phi, A): profiles from A are voided in phi-states by
// looping them back to the origin, so agents never lose available actions.
struct RegimentingNorm {
    Formula condition;
    std::vector<ActionProfile> profiles;
};

namespace detail {

// _g1, _g2, ... skipping names the model already declares.
class FreshNominals {
public:
    explicit FreshNominals(const Model& m) : model_(m) {}

    std::string next() {
        for (int guard = 0; guard < 100000; ++guard) {
            std::string name = "_g" + std::to_string(counter_++);
            if (!model_.data().nominals.count(name)) return name;
        }
        throw Error("no free nominal available");
    }

private:
    const Model& model_;
    int counter_ = 1;
};

// Condition states sorted by their least nominal, so compilation output is
// reproducible.
inline std::vector<StateId> conditionStates(const Model& m, const Formula& condition) {
    Checker checker;
    LabelSet ls = checker.label(m, condition);
    std::vector<StateId> out(ls.states.begin(), ls.states.end());
    std::sort(out.begin(), out.end(), [&](StateId a, StateId b) {
        return *m.nominalsOf(a).begin() < *m.nominalsOf(b).begin();
    });
    return out;
}

inline std::vector<std::size_t> profileCodes(const Model& m, const std::vector<ActionProfile>& profiles) {
    std::vector<std::size_t> codes;
    for (const auto& p : profiles) codes.push_back(m.profileCode(p));
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return codes;
}

inline std::string leastNominal(const Model& m, StateId s) { return *m.nominalsOf(s).begin(); }

} // namespace detail

// Compiles a sanctioning norm into a primitive update sequence. Every
// condition state gets a fresh-named copy carrying the original propositions
// plus the sanctions; sanctioned profiles are redirected into the copy of
// their target when the target itself satisfies the condition, transitions
// out of a copy mirror the original state otherwise. All copies are created
// before any arrow refers to them.
inline std::vector<UpdateExpr> compile_sanctioning(const Model& m, const SanctioningNorm& norm) {
    m.requireValid();
    if (norm.profiles.empty()) throw Error("sanctioning norm needs at least one profile");
    if (norm.sanctions.empty()) throw Error("sanctioning norm needs at least one sanction");

    const std::vector<StateId> condition = detail::conditionStates(m, norm.condition);
    const std::set<StateId> conditionSet(condition.begin(), condition.end());
    const std::vector<std::size_t> sanctioned = detail::profileCodes(m, norm.profiles);
    auto isSanctioned = [&](std::size_t code) {
        return std::binary_search(sanctioned.begin(), sanctioned.end(), code);
    };
    auto inCondition = [&](StateId s) { return conditionSet.count(s) > 0; };

    detail::FreshNominals fresh(m);
    std::map<StateId, std::string> copyName;
    std::vector<UpdateExpr> out;
    for (StateId t : condition) {
        const std::string& name = copyName.emplace(t, fresh.next()).first->second;
        out.push_back(u_add(name));
        std::set<std::string> atoms = m.propsOf(t);
        atoms.insert(norm.sanctions.begin(), norm.sanctions.end());
        for (const auto& q : atoms) out.push_back(u_subst(q, name, f_true()));
    }
    for (StateId t : condition) {
        for (std::size_t code : sanctioned) {
            StateId target = m.successor(t, code);
            if (inCondition(target)) {
                out.push_back(u_arrow(detail::leastNominal(m, t), m.profileAt(code), copyName[target]));
            }
        }
    }
    for (StateId t : condition) {
        for (std::size_t code = 0; code < m.profileCount(); ++code) {
            StateId target = m.successor(t, code);
            if (isSanctioned(code)) {
                if (inCondition(target)) {
                    out.push_back(u_arrow(copyName[t], m.profileAt(code), copyName[target]));
                }
            } else {
                out.push_back(u_arrow(copyName[t], m.profileAt(code), detail::leastNominal(m, target)));
            }
        }
    }
    return out;
}

// Compiles a regimenting norm: sanctioned profiles out of condition states
// become self-loops.
inline std::vector<UpdateExpr> compile_regimenting(const Model& m, const RegimentingNorm& norm) {
    m.requireValid();
    if (norm.profiles.empty()) throw Error("regimenting norm needs at least one profile");

    const std::vector<StateId> condition = detail::conditionStates(m, norm.condition);
    const std::vector<std::size_t> codes = detail::profileCodes(m, norm.profiles);
    std::vector<UpdateExpr> out;
    for (StateId t : condition) {
        for (std::size_t code : codes) {
            std::string name = detail::leastNominal(m, t);
            out.push_back(u_arrow(name, m.profileAt(code), name));
        }
    }
    return out;
}

// Textual norm block:
//   sanction when <phi> on <profile>+ fine <prop>+
//   regiment when <phi> on <profile>+
// Profiles list actions comma-separated in agent order.
struct NormSpec {
    bool sanctioning = false;
    Formula condition;
    std::vector<ActionProfile> profiles;
    std::vector<std::string> sanctions;
};

inline NormSpec parse_norm(const std::string& text) {
    detail::Lexer lex(text);
    NormSpec spec;
    if (lex.tryIdent("sanction")) {
        spec.sanctioning = true;
    } else if (!lex.tryIdent("regiment")) {
        lex.fail("expected 'sanction' or 'regiment'");
    }
    if (!lex.tryIdent("when")) lex.fail("expected 'when'");
    detail::FormulaParser parser(lex);
    spec.condition = parser.parsePhi();
    if (!lex.tryIdent("on")) lex.fail("expected 'on'");
    while (lex.peek().type == detail::Token::Ident && !lex.peekIdent("fine")) {
        ActionProfile profile;
        profile.push_back(lex.next().text);
        while (lex.tryPunct(",")) profile.push_back(lex.expectIdent("action name"));
        spec.profiles.push_back(std::move(profile));
    }
    if (spec.profiles.empty()) lex.fail("expected at least one profile");
    if (spec.sanctioning) {
        if (!lex.tryIdent("fine")) lex.fail("expected 'fine'");
        while (lex.peek().type == detail::Token::Ident) spec.sanctions.push_back(lex.next().text);
        if (spec.sanctions.empty()) lex.fail("expected at least one sanction atom");
    }
    if (!lex.atEnd()) lex.fail("trailing input after norm");
    return spec;
}

inline std::vector<UpdateExpr> compile_norm(const Model& m, const NormSpec& spec) {
    if (spec.sanctioning) {
        return compile_sanctioning(m, SanctioningNorm{spec.condition, spec.profiles, spec.sanctions});
    }
    return compile_regimenting(m, RegimentingNorm{spec.condition, spec.profiles});
}

} // namespace lamb
