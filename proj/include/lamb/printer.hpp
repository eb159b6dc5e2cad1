#pragma once

#include "lamb/formula.hpp"
#include "lamb/model.hpp"

#include <sstream>
#include <string>

namespace lamb {

namespace detail {

inline void printFormula(std::ostream& os, const Formula& f);

// ; binds tighter than u; parentheses only where structure requires them.
inline void printUpdate(std::ostream& os, const UpdateExpr& u, int level) {
    switch (u->kind) {
    case UKind::Subst:
        os << u->prop << "@" << u->from << " := ";
        printFormula(os, u->payload);
        return;
    case UKind::Arrow: {
        os << "#" << u->from << " -";
        for (std::size_t i = 0; i < u->profile.size(); ++i) {
            if (i) os << ",";
            os << u->profile[i];
        }
        os << "-> #" << u->to;
        return;
    }
    case UKind::AddState:
        os << "new #" << u->from;
        return;
    case UKind::Seq:
        if (level > 1) os << "(";
        printUpdate(os, u->lhs, 1);
        os << " ; ";
        printUpdate(os, u->rhs, 2);
        if (level > 1) os << ")";
        return;
    case UKind::Union:
        if (level > 0) os << "(";
        printUpdate(os, u->lhs, 0);
        os << " u ";
        printUpdate(os, u->rhs, 1);
        if (level > 0) os << ")";
        return;
    }
}

inline void printFormula(std::ostream& os, const Formula& f) {
    switch (f->kind) {
    case FKind::True: os << "true"; return;
    case FKind::False: os << "false"; return;
    case FKind::Prop: os << f->name; return;
    case FKind::Nominal: os << "#" << f->name; return;
    case FKind::At:
        os << "@" << f->name << " ";
        printFormula(os, f->lhs);
        return;
    case FKind::Not:
        os << "!";
        printFormula(os, f->lhs);
        return;
    case FKind::And:
        os << "(";
        printFormula(os, f->lhs);
        os << " & ";
        printFormula(os, f->rhs);
        os << ")";
        return;
    case FKind::CoalX:
        os << "<<";
        for (std::size_t i = 0; i < f->coalition.size(); ++i) {
            if (i) os << ",";
            os << f->coalition[i];
        }
        os << ">> X ";
        printFormula(os, f->lhs);
        return;
    case FKind::CoalUntil:
    case FKind::CoalRelease:
        os << "<<";
        for (std::size_t i = 0; i < f->coalition.size(); ++i) {
            if (i) os << ",";
            os << f->coalition[i];
        }
        os << ">> (";
        printFormula(os, f->lhs);
        os << (f->kind == FKind::CoalUntil ? " U " : " R ");
        printFormula(os, f->rhs);
        os << ")";
        return;
    case FKind::Updated:
        os << "[";
        printUpdate(os, f->update, 0);
        os << "] ";
        printFormula(os, f->lhs);
        return;
    }
}

} // namespace detail

inline std::string print_formula(const Formula& f) {
    std::ostringstream os;
    detail::printFormula(os, f);
    return os.str();
}

inline std::string print_update(const UpdateExpr& u) {
    std::ostringstream os;
    detail::printUpdate(os, u, 0);
    return os.str();
}

// Canonical model document; states are written as s<id> in ascending order.
inline std::string print_model(const Model& m, std::optional<StateId> init = std::nullopt) {
    m.requireValid();
    std::ostringstream os;
    os << "agents " << m.agentCount() << "\n";
    os << "actions";
    for (const auto& a : m.actions()) os << " " << a;
    os << "\n";
    for (StateId s : m.states()) {
        os << "state s" << s << " names";
        for (const auto& n : m.nominalsOf(s)) os << " " << n;
        auto ps = m.propsOf(s);
        if (!ps.empty()) {
            os << " props";
            for (const auto& p : ps) os << " " << p;
        }
        os << "\n";
    }
    for (StateId s : m.states()) {
        for (std::size_t c = 0; c < m.profileCount(); ++c) {
            os << "trans s" << s;
            for (const auto& a : m.profileAt(c)) os << " " << a;
            os << " -> s" << m.successor(s, c) << "\n";
        }
    }
    if (init) os << "init s" << *init << "\n";
    return os.str();
}

} // namespace lamb
