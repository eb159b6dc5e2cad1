#pragma once

#include "lamb/model.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace lamb {

// Core connectives after desugaring. Or, Implies, Iff, F and G are provided
// as builders that expand at construction time, so every consumer sees one
// canonical shape.
enum class FKind : std::uint8_t {
    True,
    False,
    Prop,
    Nominal,
    At,
    Not,
    And,
    CoalX,
    CoalUntil,   // <<C>> lhs U rhs, rhs is the goal
    CoalRelease, // <<C>> lhs R rhs, rhs is the maintained condition
    Updated,
};

enum class UKind : std::uint8_t { Subst, Arrow, AddState, Seq, Union };

struct FormulaNode;
struct UpdateNode;
using Formula = std::shared_ptr<const FormulaNode>;
using UpdateExpr = std::shared_ptr<const UpdateNode>;

struct UpdateNode {
    UKind kind;
    std::string prop;       // Subst
    std::string from;       // Subst/Arrow/AddState nominal
    std::string to;         // Arrow target nominal
    ActionProfile profile;  // Arrow
    Formula payload;        // Subst
    UpdateExpr lhs, rhs;    // Seq/Union
    std::size_t hash = 0;
    int size = 0;           // symbol count
};

struct FormulaNode {
    FKind kind;
    std::string name;       // Prop/Nominal/At
    Coalition coalition;
    Formula lhs, rhs;
    UpdateExpr update;
    std::size_t hash = 0;
    int size = 0;
};

namespace detail {

inline std::size_t hashMix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hashString(const std::string& s) { return std::hash<std::string>{}(s); }

} // namespace detail

inline bool struct_equal(const Formula& a, const Formula& b);

inline bool struct_equal(const UpdateExpr& a, const UpdateExpr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->kind != b->kind) return false;
    switch (a->kind) {
    case UKind::Subst:
        return a->prop == b->prop && a->from == b->from && struct_equal(a->payload, b->payload);
    case UKind::Arrow:
        return a->from == b->from && a->to == b->to && a->profile == b->profile;
    case UKind::AddState:
        return a->from == b->from;
    case UKind::Seq:
    case UKind::Union:
        return struct_equal(a->lhs, b->lhs) && struct_equal(a->rhs, b->rhs);
    }
    return false;
}

inline bool struct_equal(const Formula& a, const Formula& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->kind != b->kind) return false;
    switch (a->kind) {
    case FKind::True:
    case FKind::False:
        return true;
    case FKind::Prop:
    case FKind::Nominal:
        return a->name == b->name;
    case FKind::At:
        return a->name == b->name && struct_equal(a->lhs, b->lhs);
    case FKind::Not:
        return struct_equal(a->lhs, b->lhs);
    case FKind::And:
        return struct_equal(a->lhs, b->lhs) && struct_equal(a->rhs, b->rhs);
    case FKind::CoalX:
        return a->coalition == b->coalition && struct_equal(a->lhs, b->lhs);
    case FKind::CoalUntil:
    case FKind::CoalRelease:
        return a->coalition == b->coalition && struct_equal(a->lhs, b->lhs) &&
               struct_equal(a->rhs, b->rhs);
    case FKind::Updated:
        return struct_equal(a->update, b->update) && struct_equal(a->lhs, b->lhs);
    }
    return false;
}

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f ? f->hash : 0; }
};
struct FormulaEq {
    bool operator()(const Formula& a, const Formula& b) const { return struct_equal(a, b); }
};

// ---- update builders -------------------------------------------------------

inline UpdateExpr u_subst(std::string prop, std::string nominal, Formula payload);
inline UpdateExpr u_arrow(std::string from, ActionProfile profile, std::string to);
inline UpdateExpr u_add(std::string nominal);
inline UpdateExpr u_seq(UpdateExpr lhs, UpdateExpr rhs);
inline UpdateExpr u_union(UpdateExpr lhs, UpdateExpr rhs);

// ---- formula builders ------------------------------------------------------

inline Formula f_true() {
    static const Formula t = [] {
        auto n = std::make_shared<FormulaNode>();
        n->kind = FKind::True;
        n->hash = 0x1;
        n->size = 1;
        return n;
    }();
    return t;
}

inline Formula f_false() {
    static const Formula f = [] {
        auto n = std::make_shared<FormulaNode>();
        n->kind = FKind::False;
        n->hash = 0x2;
        n->size = 1;
        return n;
    }();
    return f;
}

inline Formula f_prop(std::string name) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FKind::Prop;
    n->name = std::move(name);
    n->hash = detail::hashMix(3, detail::hashString(n->name));
    n->size = 1;
    return n;
}

inline Formula f_nom(std::string name) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FKind::Nominal;
    n->name = std::move(name);
    n->hash = detail::hashMix(4, detail::hashString(n->name));
    n->size = 1;
    return n;
}

inline Formula f_at(std::string nominal, Formula phi) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FKind::At;
    n->name = std::move(nominal);
    n->lhs = std::move(phi);
    n->hash = detail::hashMix(detail::hashMix(5, detail::hashString(n->name)), n->lhs->hash);
    n->size = 2 + n->lhs->size;
    return n;
}

inline Formula f_not(Formula phi) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FKind::Not;
    n->lhs = std::move(phi);
    n->hash = detail::hashMix(6, n->lhs->hash);
    n->size = 1 + n->lhs->size;
    return n;
}

inline Formula f_and(Formula lhs, Formula rhs) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FKind::And;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    n->hash = detail::hashMix(detail::hashMix(7, n->lhs->hash), n->rhs->hash);
    n->size = 1 + n->lhs->size + n->rhs->size;
    return n;
}

inline Formula f_or(Formula lhs, Formula rhs) {
    return f_not(f_and(f_not(std::move(lhs)), f_not(std::move(rhs))));
}

inline Formula f_implies(Formula lhs, Formula rhs) {
    return f_not(f_and(std::move(lhs), f_not(std::move(rhs))));
}

inline Formula f_iff(Formula lhs, Formula rhs) {
    return f_and(f_implies(lhs, rhs), f_implies(rhs, lhs));
}

namespace detail {

inline std::size_t hashCoalition(std::size_t seed, const Coalition& c) {
    seed = hashMix(seed, c.size());
    for (AgentId a : c) seed = hashMix(seed, static_cast<std::size_t>(a));
    return seed;
}

} // namespace detail

inline Formula f_coal_x(Coalition c, Formula phi) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FKind::CoalX;
    n->coalition = std::move(c);
    n->lhs = std::move(phi);
    n->hash = detail::hashMix(detail::hashCoalition(8, n->coalition), n->lhs->hash);
    n->size = 1 + n->lhs->size;
    return n;
}

inline Formula f_coal_until(Coalition c, Formula maintained, Formula goal) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FKind::CoalUntil;
    n->coalition = std::move(c);
    n->lhs = std::move(maintained);
    n->rhs = std::move(goal);
    n->hash = detail::hashMix(detail::hashMix(detail::hashCoalition(9, n->coalition), n->lhs->hash),
                              n->rhs->hash);
    n->size = 1 + n->lhs->size + n->rhs->size;
    return n;
}

inline Formula f_coal_release(Coalition c, Formula release, Formula maintained) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FKind::CoalRelease;
    n->coalition = std::move(c);
    n->lhs = std::move(release);
    n->rhs = std::move(maintained);
    n->hash = detail::hashMix(detail::hashMix(detail::hashCoalition(10, n->coalition), n->lhs->hash),
                              n->rhs->hash);
    n->size = 1 + n->lhs->size + n->rhs->size;
    return n;
}

// <<C>> F phi  ==  <<C>> true U phi
inline Formula f_coal_f(Coalition c, Formula phi) {
    return f_coal_until(std::move(c), f_true(), std::move(phi));
}

// <<C>> G phi  ==  <<C>> false R phi
inline Formula f_coal_g(Coalition c, Formula phi) {
    return f_coal_release(std::move(c), f_false(), std::move(phi));
}

// [pi] phi. Sequential compositions split here: [pi ; rho] phi = [pi][rho] phi.
inline Formula f_updated(UpdateExpr update, Formula phi) {
    if (update->kind == UKind::Seq) {
        return f_updated(update->lhs, f_updated(update->rhs, std::move(phi)));
    }
    auto n = std::make_shared<FormulaNode>();
    n->kind = FKind::Updated;
    n->update = std::move(update);
    n->lhs = std::move(phi);
    n->hash = detail::hashMix(detail::hashMix(11, n->update->hash), n->lhs->hash);
    n->size = n->update->size + n->lhs->size;
    return n;
}

inline UpdateExpr u_subst(std::string prop, std::string nominal, Formula payload) {
    auto n = std::make_shared<UpdateNode>();
    n->kind = UKind::Subst;
    n->prop = std::move(prop);
    n->from = std::move(nominal);
    n->payload = std::move(payload);
    n->hash = detail::hashMix(
        detail::hashMix(detail::hashMix(21, detail::hashString(n->prop)), detail::hashString(n->from)),
        n->payload->hash);
    n->size = 2 + n->payload->size;
    return n;
}

inline UpdateExpr u_arrow(std::string from, ActionProfile profile, std::string to) {
    auto n = std::make_shared<UpdateNode>();
    n->kind = UKind::Arrow;
    n->from = std::move(from);
    n->to = std::move(to);
    n->profile = std::move(profile);
    std::size_t h = detail::hashMix(detail::hashMix(22, detail::hashString(n->from)),
                                    detail::hashString(n->to));
    for (const auto& a : n->profile) h = detail::hashMix(h, detail::hashString(a));
    n->hash = h;
    n->size = 3 + static_cast<int>(n->profile.size());
    return n;
}

inline UpdateExpr u_add(std::string nominal) {
    auto n = std::make_shared<UpdateNode>();
    n->kind = UKind::AddState;
    n->from = std::move(nominal);
    n->hash = detail::hashMix(23, detail::hashString(n->from));
    n->size = 2;
    return n;
}

inline UpdateExpr u_seq(UpdateExpr lhs, UpdateExpr rhs) {
    auto n = std::make_shared<UpdateNode>();
    n->kind = UKind::Seq;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    n->hash = detail::hashMix(detail::hashMix(24, n->lhs->hash), n->rhs->hash);
    n->size = n->lhs->size + n->rhs->size;
    return n;
}

inline UpdateExpr u_union(UpdateExpr lhs, UpdateExpr rhs) {
    auto n = std::make_shared<UpdateNode>();
    n->kind = UKind::Union;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    n->hash = detail::hashMix(detail::hashMix(25, n->lhs->hash), n->rhs->hash);
    n->size = 1 + n->lhs->size + n->rhs->size;
    return n;
}

// ---- fragment classification -----------------------------------------------

enum class Fragment { ATL, HATL, SLAMB, ALAMB, LAMB, LAMB_UNION };

inline const char* to_string(Fragment f) {
    switch (f) {
    case Fragment::ATL: return "ATL";
    case Fragment::HATL: return "HATL";
    case Fragment::SLAMB: return "SLAMB";
    case Fragment::ALAMB: return "ALAMB";
    case Fragment::LAMB: return "LAMB";
    case Fragment::LAMB_UNION: return "LAMB-union";
    }
    return "?";
}

namespace detail {

struct FragmentScan {
    bool hybrid = false;
    bool subst = false;
    bool arrow = false;
    bool addState = false;
    bool unions = false;

    void scan(const UpdateExpr& u) {
        switch (u->kind) {
        case UKind::Subst:
            subst = true;
            scan(u->payload);
            break;
        case UKind::Arrow:
            arrow = true;
            break;
        case UKind::AddState:
            addState = true;
            break;
        case UKind::Seq:
            scan(u->lhs);
            scan(u->rhs);
            break;
        case UKind::Union:
            unions = true;
            scan(u->lhs);
            scan(u->rhs);
            break;
        }
    }

    void scan(const Formula& f) {
        switch (f->kind) {
        case FKind::True:
        case FKind::False:
        case FKind::Prop:
            break;
        case FKind::Nominal:
            hybrid = true;
            break;
        case FKind::At:
            hybrid = true;
            scan(f->lhs);
            break;
        case FKind::Not:
        case FKind::CoalX:
            scan(f->lhs);
            break;
        case FKind::And:
        case FKind::CoalUntil:
        case FKind::CoalRelease:
            scan(f->lhs);
            scan(f->rhs);
            break;
        case FKind::Updated:
            scan(f->update);
            scan(f->lhs);
            break;
        }
    }
};

} // namespace detail

// Smallest fragment containing the formula.
inline Fragment classify_fragment(const Formula& f) {
    detail::FragmentScan s;
    s.scan(f);
    if (s.unions) return Fragment::LAMB_UNION;
    bool updates = s.subst || s.arrow || s.addState;
    if (!updates) return s.hybrid ? Fragment::HATL : Fragment::ATL;
    if (s.subst && !s.arrow && !s.addState) return Fragment::SLAMB;
    if (s.arrow && !s.subst && !s.addState) return Fragment::ALAMB;
    return Fragment::LAMB;
}

// Propositions occurring anywhere in the formula, update payloads included.
inline void collect_props(const Formula& f, std::set<std::string>& out);

inline void collect_props(const UpdateExpr& u, std::set<std::string>& out) {
    switch (u->kind) {
    case UKind::Subst:
        out.insert(u->prop);
        collect_props(u->payload, out);
        break;
    case UKind::Arrow:
    case UKind::AddState:
        break;
    case UKind::Seq:
    case UKind::Union:
        collect_props(u->lhs, out);
        collect_props(u->rhs, out);
        break;
    }
}

inline void collect_props(const Formula& f, std::set<std::string>& out) {
    switch (f->kind) {
    case FKind::Prop:
        out.insert(f->name);
        break;
    case FKind::True:
    case FKind::False:
    case FKind::Nominal:
        break;
    case FKind::At:
    case FKind::Not:
    case FKind::CoalX:
        collect_props(f->lhs, out);
        break;
    case FKind::And:
    case FKind::CoalUntil:
    case FKind::CoalRelease:
        collect_props(f->lhs, out);
        collect_props(f->rhs, out);
        break;
    case FKind::Updated:
        collect_props(f->update, out);
        collect_props(f->lhs, out);
        break;
    }
}

} // namespace lamb
