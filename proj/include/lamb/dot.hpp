#pragma once

#include "lamb/model.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace lamb {

// Deterministic DOT rendering: one node per state labeled id:nominals{props},
// parallel edges with the same target merged into one comma-joined label.
inline std::string export_dot(const Model& m, const std::string& name = "cgm") {
    m.requireValid();
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    os << "  rankdir=LR;\n";
    for (StateId s : m.states()) {
        os << "  n" << s << " [label=\"" << s << ":";
        bool first = true;
        for (const auto& n : m.nominalsOf(s)) {
            if (!first) os << ",";
            os << n;
            first = false;
        }
        auto ps = m.propsOf(s);
        if (!ps.empty()) {
            os << "{";
            first = true;
            for (const auto& p : ps) {
                if (!first) os << ",";
                os << p;
                first = false;
            }
            os << "}";
        }
        os << "\"];\n";
    }
    for (StateId s : m.states()) {
        std::vector<std::pair<StateId, std::string>> grouped; // first-seen target order
        for (std::size_t c = 0; c < m.profileCount(); ++c) {
            StateId t = m.successor(s, c);
            std::string label;
            for (const auto& a : m.profileAt(c)) label += a;
            bool found = false;
            for (auto& [tgt, lbl] : grouped) {
                if (tgt == t) {
                    lbl += "," + label;
                    found = true;
                    break;
                }
            }
            if (!found) grouped.emplace_back(t, label);
        }
        for (const auto& [tgt, lbl] : grouped) {
            os << "  n" << s << " -> n" << tgt << " [label=\"" << lbl << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace lamb
