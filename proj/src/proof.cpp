#include "mps/proof.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include <json.hpp>

#include "mps/errors.hpp"

namespace mps {

bool operator==(const ProofTree& a, const ProofTree& b) {
    if (a.state != b.state || a.polarity != b.polarity ||
        !structurally_equal(a.formula, b.formula) ||
        a.children.size() != b.children.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!(a.children[i] == b.children[i])) return false;
    }
    return true;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ExtCost aggregate_one(const CostModel& model, const Formula& phi, ExtCost c) {
    const ExtCost one[1] = {c};
    return phi.kind() == FormulaKind::Box ? model.aggregate_box(phi.agent(), one)
                                          : model.aggregate_conj(one);
}

ProofTree extract_node(const CostModel& model, const SearchNode& node, Polarity polarity) {
    ProofTree tree;
    tree.state = node.state;
    tree.formula = node.formula;
    tree.polarity = polarity;

    const Formula& phi = *node.formula;
    switch (phi.kind()) {
        case FormulaKind::Atom:
            if (node.kind != SearchNode::Kind::Terminal) {
                throw ContractViolation("extract reached an unresolved atom node");
            }
            return tree;
        case FormulaKind::Not:
            if (node.children.size() != 1) {
                throw ContractViolation("extract reached a negation without its child");
            }
            tree.children.push_back(extract_node(model, *node.children.front(), flip(polarity)));
            return tree;
        case FormulaKind::And:
        case FormulaKind::Box:
            break;
    }

    if (node.kind != SearchNode::Kind::Internal) {
        throw ContractViolation("extract reached an unexpanded node");
    }
    if (polarity == Polarity::Proof) {
        // Everything below a proved node is proved.
        for (const auto& child : node.children) {
            if (!child->proved()) {
                throw ContractViolation("proved node has an unproved child");
            }
            tree.children.push_back(extract_node(model, *child, polarity));
        }
        return tree;
    }

    // Disproved node: keep the lowest-indexed disproved child among those
    // minimizing the aggregated disproof number.
    for (const auto& child : node.children) {
        if (child->disproved() &&
            aggregate_one(model, phi, child->mdn) == node.mdn) {
            tree.children.push_back(extract_node(model, *child, polarity));
            return tree;
        }
    }
    throw ContractViolation(
        "no disproved child among the minimizers; the tree was not built by "
        "the standard selection policy");
}

}  // namespace

ProofTree extract(const CostModel& model, const SearchNode& root) {
    if (!root.solved()) {
        throw ContractViolation("extract requires a solved root");
    }
    return extract_node(model, root, root.proved() ? Polarity::Proof : Polarity::Disproof);
}

std::string CheckResult::describe() const {
    if (ok) return "ok";
    std::string where = "/";
    for (std::size_t i : path) {
        where += std::to_string(i);
        where += '/';
    }
    return "at node " + where + ": " + reason;
}

namespace {

struct Checker {
    const GameArena& arena;
    CheckResult result;

    bool fail(const std::vector<std::size_t>& path, std::string reason) {
        result.ok = false;
        result.reason = std::move(reason);
        result.path = path;
        return false;
    }

    bool check(const ProofTree& node, std::vector<std::size_t>& path) {
        const Formula& phi = *node.formula;
        const bool proving = node.polarity == Polarity::Proof;
        switch (phi.kind()) {
            case FormulaKind::Atom: {
                if (!node.children.empty()) {
                    return fail(path, "atom node has children");
                }
                const bool has = arena.state_satisfies(node.state, phi.atom_id());
                if (proving && !has) return fail(path, "atom not in labels");
                if (!proving && has) return fail(path, "atom in labels");
                return true;
            }
            case FormulaKind::Not: {
                if (node.children.size() != 1) {
                    return fail(path, "negation must have exactly one child");
                }
                return check_child(node, 0, node.state, phi.child(), flip(node.polarity),
                                   path);
            }
            case FormulaKind::And: {
                if (!proving) {
                    if (node.children.size() != 1) {
                        return fail(path, "conjunction disproof must have exactly one child");
                    }
                    const ProofTree& c = node.children.front();
                    if (!structurally_equal(c.formula, phi.left()) &&
                        !structurally_equal(c.formula, phi.right())) {
                        return fail(path, "child formula is not a conjunct");
                    }
                    return check_child(node, 0, node.state, c.formula, Polarity::Disproof,
                                       path);
                }
                if (structurally_equal(phi.left(), phi.right())) {
                    // One shared child stands for both conjuncts; two would
                    // duplicate a (state, formula) pair.
                    if (node.children.size() != 1) {
                        return fail(path,
                                    "conjunction of identical conjuncts must have exactly "
                                    "one child");
                    }
                    return check_child(node, 0, node.state, phi.left(), Polarity::Proof,
                                       path);
                }
                if (node.children.size() != 2) {
                    return fail(path, "conjunction proof must have exactly two children");
                }
                const bool direct =
                    structurally_equal(node.children[0].formula, phi.left()) &&
                    structurally_equal(node.children[1].formula, phi.right());
                const bool swapped =
                    structurally_equal(node.children[0].formula, phi.right()) &&
                    structurally_equal(node.children[1].formula, phi.left());
                if (!direct && !swapped) {
                    return fail(path, "children must cover both conjuncts");
                }
                for (std::size_t i = 0; i < 2; ++i) {
                    if (!check_child(node, i, node.state, node.children[i].formula,
                                     Polarity::Proof, path)) {
                        return false;
                    }
                }
                return true;
            }
            case FormulaKind::Box: {
                const auto succ = arena.successors(node.state, phi.agent());
                if (!proving) {
                    if (node.children.size() != 1) {
                        return fail(path, "box disproof must have exactly one child");
                    }
                    const ProofTree& c = node.children.front();
                    if (std::find(succ.begin(), succ.end(), c.state) == succ.end()) {
                        return fail(path, "child not a successor");
                    }
                    return check_child(node, 0, c.state, phi.child(), Polarity::Disproof,
                                       path);
                }
                // Exactly one proof child per successor, any order.
                for (std::size_t i = 0; i < node.children.size(); ++i) {
                    const ProofTree& c = node.children[i];
                    if (std::find(succ.begin(), succ.end(), c.state) == succ.end()) {
                        path.push_back(i);
                        return fail(path, "child not a successor");
                    }
                    for (std::size_t j = 0; j < i; ++j) {
                        if (node.children[j].state == c.state) {
                            path.push_back(i);
                            return fail(path, "duplicate children");
                        }
                    }
                }
                if (node.children.size() != succ.size()) {
                    return fail(path, "missing successor");
                }
                for (std::size_t i = 0; i < node.children.size(); ++i) {
                    if (!check_child(node, i, node.children[i].state, phi.child(),
                                     Polarity::Proof, path)) {
                        return false;
                    }
                }
                return true;
            }
        }
        return fail(path, "unknown formula kind");
    }

    bool check_child(const ProofTree& node, std::size_t index, const StateId& state,
                     const FormulaPtr& formula, Polarity polarity,
                     std::vector<std::size_t>& path) {
        const ProofTree& c = node.children[index];
        path.push_back(index);
        if (c.state != state || !structurally_equal(c.formula, formula)) {
            return fail(path, "child label mismatch");
        }
        if (c.polarity != polarity) {
            return fail(path, "child polarity mismatch");
        }
        if (!check(c, path)) return false;
        path.pop_back();
        return true;
    }
};

}  // namespace

CheckResult check_proof(const GameArena& arena, const ProofTree& tree) {
    Checker checker{arena, {}};
    std::vector<std::size_t> path;
    try {
        checker.check(tree, path);
    } catch (const InputError& e) {
        checker.fail(path, std::string("arena query failed: ") + e.what());
    }
    return checker.result;
}

ProofFormat parse_proof_format(std::string_view name) {
    if (name == "structured") return ProofFormat::Structured;
    if (name == "dot") return ProofFormat::Dot;
    throw InputError("unknown proof format '" + std::string(name) +
                     "' (expected structured or dot)");
}

namespace {

ordered_json proof_to_json(const ProofTree& tree) {
    ordered_json doc;
    doc["state"] = tree.state.key;
    doc["formula"] = to_string(tree.formula);
    doc["polarity"] = tree.polarity == Polarity::Proof ? "proof" : "disproof";
    doc["children"] = ordered_json::array();
    for (const ProofTree& c : tree.children) {
        doc["children"].push_back(proof_to_json(c));
    }
    return doc;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

void proof_to_dot(const ProofTree& tree, const CostModel& model, std::ostream& out,
                  int& counter) {
    const int id = counter++;
    const bool proving = tree.polarity == Polarity::Proof;
    out << "  n" << id << " [label=\"" << dot_escape(tree.state.key)
        << (proving ? " ⊨ " : " ⊭ ") << dot_escape(to_string(tree.formula))
        << "\\ncost=" << to_string(proof_cost(model, tree)) << "\" shape="
        << (proving ? "box" : "octagon") << "];\n";
    for (const ProofTree& c : tree.children) {
        const int child_id = counter;
        proof_to_dot(c, model, out, counter);
        out << "  n" << id << " -> n" << child_id << ";\n";
    }
}

ProofTree proof_from_json(const ordered_json& doc, const GameArena& arena) {
    if (!doc.is_object() || !doc.contains("state") || !doc.contains("formula") ||
        !doc.contains("polarity")) {
        throw InputError("proof nodes must carry 'state', 'formula' and 'polarity'");
    }
    ProofTree tree;
    tree.state = StateId{doc["state"].get<std::string>()};
    tree.formula = parse_formula(doc["formula"].get<std::string>(), arena);
    const std::string polarity = doc["polarity"].get<std::string>();
    if (polarity == "proof") {
        tree.polarity = Polarity::Proof;
    } else if (polarity == "disproof") {
        tree.polarity = Polarity::Disproof;
    } else {
        throw InputError("unknown polarity '" + polarity + "'");
    }
    if (doc.contains("children")) {
        for (const auto& c : doc["children"]) {
            tree.children.push_back(proof_from_json(c, arena));
        }
    }
    return tree;
}

}  // namespace

std::string serialize_proof(const ProofTree& tree, ProofFormat format,
                            const CostModel& model) {
    if (format == ProofFormat::Structured) {
        return proof_to_json(tree).dump(2) + "\n";
    }
    std::ostringstream out;
    out << "digraph proof {\n";
    int counter = 0;
    proof_to_dot(tree, model, out, counter);
    out << "}\n";
    return out.str();
}

ProofTree parse_proof(std::string_view text, const GameArena& arena) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("proof syntax error: ") + e.what());
    }
    return proof_from_json(doc, arena);
}

}  // namespace mps
