#pragma once

#include "lamb/formula.hpp"

#include <optional>

namespace lamb {

// Simultaneous single-pass replacement of a proposition by a formula; the
// inserted formula is never revisited. The input must be update-free.
inline Formula replace_prop(const Formula& f, const std::string& prop, const Formula& replacement) {
    switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::Nominal:
        return f;
    case FKind::Prop:
        return f->name == prop ? replacement : f;
    case FKind::At:
        return f_at(f->name, replace_prop(f->lhs, prop, replacement));
    case FKind::Not:
        return f_not(replace_prop(f->lhs, prop, replacement));
    case FKind::And:
        return f_and(replace_prop(f->lhs, prop, replacement), replace_prop(f->rhs, prop, replacement));
    case FKind::CoalX:
        return f_coal_x(f->coalition, replace_prop(f->lhs, prop, replacement));
    case FKind::CoalUntil:
        return f_coal_until(f->coalition, replace_prop(f->lhs, prop, replacement),
                            replace_prop(f->rhs, prop, replacement));
    case FKind::CoalRelease:
        return f_coal_release(f->coalition, replace_prop(f->lhs, prop, replacement),
                              replace_prop(f->rhs, prop, replacement));
    case FKind::Updated:
        throw Error("replace_prop expects an update-free formula");
    }
    throw Error("unreachable formula kind");
}

namespace detail {

inline bool updateFree(const Formula& f) {
    Fragment fr = classify_fragment(f);
    return fr == Fragment::ATL || fr == Fragment::HATL;
}

// One substitution modality whose body and payload are already update-free is
// rewritten into plain hybrid logic:
//   [p@a := psi] chi  becomes
//     (!@a true -> chi)
//   & (@a true -> ((psi <-> @a p) -> chi)
//                & (!(psi <-> @a p) -> chi[p / (a -> !p) & (!a -> p)]))
// The three conjuncts mirror the three cases of the substitution semantics:
// no a-state, a vacuous flip, and an actual flip of p at the a-state.
inline Formula rewriteSubst(const std::string& prop, const std::string& nominal, const Formula& payload,
                            const Formula& body) {
    Formula atTrue = f_at(nominal, f_true());
    Formula same = f_iff(payload, f_at(nominal, f_prop(prop)));
    Formula flipped = replace_prop(
        body, prop,
        f_and(f_implies(f_nom(nominal), f_not(f_prop(prop))),
              f_implies(f_not(f_nom(nominal)), f_prop(prop))));
    return f_and(f_implies(f_not(atTrue), body),
                 f_implies(atTrue, f_and(f_implies(same, body),
                                         f_implies(f_not(same), flipped))));
}

// Rewrites the leftmost innermost substitution redex, if any.
inline std::optional<Formula> rewriteInnermost(const Formula& f) {
    switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::Prop:
    case FKind::Nominal:
        return std::nullopt;
    case FKind::At:
        if (auto r = rewriteInnermost(f->lhs)) return f_at(f->name, *r);
        return std::nullopt;
    case FKind::Not:
        if (auto r = rewriteInnermost(f->lhs)) return f_not(*r);
        return std::nullopt;
    case FKind::And:
        if (auto r = rewriteInnermost(f->lhs)) return f_and(*r, f->rhs);
        if (auto r = rewriteInnermost(f->rhs)) return f_and(f->lhs, *r);
        return std::nullopt;
    case FKind::CoalX:
        if (auto r = rewriteInnermost(f->lhs)) return f_coal_x(f->coalition, *r);
        return std::nullopt;
    case FKind::CoalUntil:
        if (auto r = rewriteInnermost(f->lhs)) return f_coal_until(f->coalition, *r, f->rhs);
        if (auto r = rewriteInnermost(f->rhs)) return f_coal_until(f->coalition, f->lhs, *r);
        return std::nullopt;
    case FKind::CoalRelease:
        if (auto r = rewriteInnermost(f->lhs)) return f_coal_release(f->coalition, *r, f->rhs);
        if (auto r = rewriteInnermost(f->rhs)) return f_coal_release(f->coalition, f->lhs, *r);
        return std::nullopt;
    case FKind::Updated: {
        if (f->update->kind != UKind::Subst) {
            throw Error("substitution elimination applies to substitution updates only");
        }
        // The payload is written before the body, so it is searched first.
        if (auto r = rewriteInnermost(f->update->payload)) {
            return f_updated(u_subst(f->update->prop, f->update->from, *r), f->lhs);
        }
        if (auto r = rewriteInnermost(f->lhs)) {
            return f_updated(f->update, *r);
        }
        if (!updateFree(f->update->payload) || !updateFree(f->lhs)) {
            throw Error("internal error: unreduced update below an innermost redex");
        }
        return rewriteSubst(f->update->prop, f->update->from, f->update->payload, f->lhs);
    }
    }
    return std::nullopt;
}

} // namespace detail

// Eliminates substitution modalities inside-out, yielding an equivalent
// update-free formula. The output may be exponentially larger.
inline Formula slamb_to_hatl(const Formula& f) {
    Fragment fr = classify_fragment(f);
    if (fr != Fragment::ATL && fr != Fragment::HATL && fr != Fragment::SLAMB) {
        throw Error("substitution elimination is defined for substitution-only formulas, got " +
                    std::string(to_string(fr)));
    }
    Formula cur = f;
    while (auto r = detail::rewriteInnermost(cur)) cur = *r;
    return cur;
}

} // namespace lamb
