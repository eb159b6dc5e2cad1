// Command-line front end: model checking, labeling, update application,
// substitution elimination, bounded synthesis, norm compilation, QBF
// encodings and DOT export over model documents.

#include "lamb/lamb.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

std::string readFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw lamb::Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

lamb::ParsedModel loadModel(const std::string& path) { return lamb::parse_model(readFile(path)); }

// A state reference is a file-level label, '#nominal', or a numeric id;
// no reference means the document's init state.
lamb::StateId resolveState(const lamb::ParsedModel& parsed, const std::string& ref) {
    if (ref.empty()) {
        if (parsed.init) return *parsed.init;
        throw lamb::Error("no state given and the model document has no 'init' line");
    }
    if (ref[0] == '#') {
        auto s = parsed.model.nominalState(ref.substr(1));
        if (!s) throw lamb::Error("nominal " + ref.substr(1) + " names no state");
        return *s;
    }
    auto it = parsed.stateLabels.find(ref);
    if (it != parsed.stateLabels.end()) return it->second;
    try {
        std::size_t used = 0;
        int id = std::stoi(ref, &used);
        if (used == ref.size() && parsed.model.hasState(id)) return id;
    } catch (...) {
    }
    throw lamb::Error("unknown state reference '" + ref + "'");
}

void flattenUpdate(const lamb::UpdateExpr& u, std::vector<lamb::UpdateExpr>& out) {
    if (u->kind == lamb::UKind::Seq) {
        flattenUpdate(u->lhs, out);
        flattenUpdate(u->rhs, out);
        return;
    }
    if (u->kind == lamb::UKind::Union) {
        throw lamb::Error("'apply' needs a deterministic update; unions describe alternatives");
    }
    out.push_back(u);
}

std::string describeStates(const lamb::Model& m, const std::set<lamb::StateId>& states) {
    if (states.empty()) return "(none)";
    std::ostringstream os;
    bool first = true;
    for (lamb::StateId s : states) {
        if (!first) os << " ";
        os << "s" << s << ":" << *m.nominalsOf(s).begin();
        first = false;
    }
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"model checker and model-modification toolkit for hybrid ATL with dynamic updates"};
    app.require_subcommand(1);

    std::string modelPath, formulaText, updateText, stateRef, normPath, qbfPath, encoding = "arrow";
    std::string outModel, outFormula, poolList;
    int bound = 0;

    auto* check = app.add_subcommand("check", "decide whether the formula holds at a state");
    check->add_option("-m,--model", modelPath, "model document")->required();
    check->add_option("-f,--formula", formulaText, "formula")->required();
    check->add_option("-s,--state", stateRef, "state label, #nominal or id (default: init)");

    auto* label = app.add_subcommand("label", "print the states satisfying the formula");
    label->add_option("-m,--model", modelPath)->required();
    label->add_option("-f,--formula", formulaText)->required();

    auto* apply = app.add_subcommand("apply", "apply an update sequence and print the result");
    apply->add_option("-m,--model", modelPath)->required();
    apply->add_option("-u,--update", updateText, "update sequence")->required();
    apply->add_option("-s,--state", stateRef, "evaluation state for substitution payloads");

    auto* translate = app.add_subcommand("translate", "eliminate substitution modalities");
    translate->add_option("-f,--formula", formulaText)->required();

    auto* synth = app.add_subcommand("synth", "search for a bounded update sequence reaching the goal");
    synth->add_option("-m,--model", modelPath)->required();
    synth->add_option("-f,--formula", formulaText, "goal formula")->required();
    synth->add_option("-n,--bound", bound, "max total update size")->required();
    synth->add_option("-s,--state", stateRef);
    synth->add_option("--pool", poolList, "comma-separated fresh nominals for added states");

    auto* norm = app.add_subcommand("compile-norm", "compile a norm block into an update sequence");
    norm->add_option("-m,--model", modelPath)->required();
    norm->add_option("-N,--norm", normPath, "norm file")->required();

    auto* qbf = app.add_subcommand("qbf", "check a QDIMACS file through a game-model encoding");
    qbf->add_option("-q,--qbf", qbfPath, "QDIMACS file")->required();
    qbf->add_option("--encoding", encoding, "arrow|subst")->check(CLI::IsMember({"arrow", "subst"}));
    qbf->add_option("--out-model", outModel, "write the encoded model document here");
    qbf->add_option("--out-formula", outFormula, "write the encoded formula here");

    auto* dot = app.add_subcommand("dot", "print the model as a DOT graph");
    dot->add_option("-m,--model", modelPath)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            auto parsed = loadModel(modelPath);
            lamb::Formula f = lamb::parse_formula(formulaText);
            lamb::StateId s = resolveState(parsed, stateRef);
            bool verdict = lamb::Checker{}.mc(parsed.model, s, f);
            std::cout << (verdict ? "TRUE" : "FALSE") << "\n";
            return verdict ? kExitTrue : kExitFalse;
        }
        if (label->parsed()) {
            auto parsed = loadModel(modelPath);
            lamb::Formula f = lamb::parse_formula(formulaText);
            lamb::LabelSet ls = lamb::Checker{}.label(parsed.model, f);
            std::cout << describeStates(parsed.model, ls.states) << "\n";
            return kExitTrue;
        }
        if (apply->parsed()) {
            auto parsed = loadModel(modelPath);
            std::vector<lamb::UpdateExpr> steps;
            flattenUpdate(lamb::parse_update(updateText), steps);
            lamb::StateId s = resolveState(parsed, stateRef);
            lamb::Checker checker;
            lamb::Model current = parsed.model;
            for (const auto& u : steps) {
                current = lamb::apply_update(current, s, u,
                                             [&checker](const lamb::Model& mm, lamb::StateId ss,
                                                        const lamb::Formula& ff) {
                                                 return checker.mc(mm, ss, ff);
                                             });
            }
            std::cout << lamb::print_model(current, parsed.init);
            return kExitTrue;
        }
        if (translate->parsed()) {
            lamb::Formula f = lamb::parse_formula(formulaText);
            std::cout << lamb::print_formula(lamb::slamb_to_hatl(f)) << "\n";
            return kExitTrue;
        }
        if (synth->parsed()) {
            auto parsed = loadModel(modelPath);
            lamb::Formula goal = lamb::parse_formula(formulaText);
            lamb::StateId s = resolveState(parsed, stateRef);
            std::vector<std::string> pool;
            std::istringstream ps(poolList);
            for (std::string name; std::getline(ps, name, ',');) {
                if (!name.empty()) pool.push_back(name);
            }
            lamb::SynthesisConfig cfg;
            cfg.bound = bound;
            cfg.freshNominalPool = pool;
            cfg.alphabet = lamb::candidate_alphabet(parsed.model, goal, pool);
            auto witness = lamb::bounded_synthesis(parsed.model, s, goal, cfg);
            if (!witness) {
                std::cout << "NONE\n";
                return kExitFalse;
            }
            if (witness->empty()) {
                std::cout << "EMPTY\n"; // the goal already holds
                return kExitTrue;
            }
            for (std::size_t i = 0; i < witness->size(); ++i) {
                if (i) std::cout << " ; ";
                std::cout << lamb::print_update((*witness)[i]);
            }
            std::cout << "\n";
            return kExitTrue;
        }
        if (norm->parsed()) {
            auto parsed = loadModel(modelPath);
            lamb::NormSpec spec = lamb::parse_norm(readFile(normPath));
            auto updates = lamb::compile_norm(parsed.model, spec);
            for (std::size_t i = 0; i < updates.size(); ++i) {
                if (i) std::cout << " ; ";
                std::cout << lamb::print_update(updates[i]);
            }
            std::cout << "\n";
            return kExitTrue;
        }
        if (qbf->parsed()) {
            lamb::Qbf q = lamb::parse_qdimacs(readFile(qbfPath));
            auto [pointed, formula] =
                encoding == "arrow" ? lamb::qbf_to_alamb_union(q) : lamb::qbf_to_slamb_union(q);
            if (!outModel.empty()) {
                std::ofstream out(outModel);
                out << lamb::print_model(pointed.model, pointed.point);
            }
            if (!outFormula.empty()) {
                std::ofstream out(outFormula);
                out << lamb::print_formula(formula) << "\n";
            }
            bool verdict = lamb::Checker{}.mc(pointed.model, pointed.point, formula);
            std::cout << (verdict ? "TRUE" : "FALSE") << "\n";
            return verdict ? kExitTrue : kExitFalse;
        }
        if (dot->parsed()) {
            auto parsed = loadModel(modelPath);
            std::cout << lamb::export_dot(parsed.model);
            return kExitTrue;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
