#include "mps/cost.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mps/errors.hpp"

namespace mps {

ExtCost ExtCost::finite(double v) {
    if (std::isnan(v) || v < 0.0 || v == std::numeric_limits<double>::infinity()) {
        throw InputError("cost values must be finite and nonnegative");
    }
    return ExtCost(v);
}

std::string to_string(ExtCost c) {
    if (!c.is_finite()) return "inf";
    double v = c.value();
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        return std::to_string(static_cast<long long>(v));
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

ExtCost max_of(std::span<const ExtCost> costs) {
    ExtCost m = ExtCost::finite(0.0);  // empty max
    for (ExtCost c : costs) m = std::max(m, c);
    return m;
}

ExtCost sum_of(std::span<const ExtCost> costs) {
    double s = 0.0;
    for (ExtCost c : costs) {
        if (!c.is_finite()) return ExtCost::infinity();
        s += c.value();
    }
    return ExtCost::finite(s);
}

ExtCost plus(double base, ExtCost c) {
    if (!c.is_finite()) return ExtCost::infinity();
    return ExtCost::finite(base + c.value());
}

class DepthModel final : public CostModel {
public:
    ExtCost atom_cost(const AtomId&) const override { return ExtCost::finite(0.0); }
    ExtCost aggregate_conj(std::span<const ExtCost> costs) const override {
        return max_of(costs);
    }
    ExtCost aggregate_box(const AgentId&, std::span<const ExtCost> costs) const override {
        return plus(1.0, max_of(costs));
    }
    std::string name() const override { return "depth"; }
};

class QueryCountModel final : public CostModel {
public:
    ExtCost atom_cost(const AtomId&) const override { return ExtCost::finite(1.0); }
    ExtCost aggregate_conj(std::span<const ExtCost> costs) const override {
        return sum_of(costs);
    }
    ExtCost aggregate_box(const AgentId&, std::span<const ExtCost> costs) const override {
        return sum_of(costs);
    }
    std::string name() const override { return "query_count"; }
};

class WeightedModel final : public CostModel {
public:
    WeightedModel(std::vector<std::pair<AtomId, double>> atom_costs,
                  std::vector<std::pair<AgentId, double>> box_costs) {
        for (auto& [atom, v] : atom_costs) {
            ExtCost::finite(v);  // validates
            atom_costs_.emplace(atom.name, v);
        }
        for (auto& [agent, v] : box_costs) {
            ExtCost::finite(v);
            box_costs_.emplace(agent.name, v);
        }
    }

    ExtCost atom_cost(const AtomId& p) const override {
        auto it = atom_costs_.find(p.name);
        return ExtCost::finite(it == atom_costs_.end() ? 1.0 : it->second);
    }
    ExtCost aggregate_conj(std::span<const ExtCost> costs) const override {
        return sum_of(costs);
    }
    ExtCost aggregate_box(const AgentId& a, std::span<const ExtCost> costs) const override {
        auto it = box_costs_.find(a.name);
        return plus(it == box_costs_.end() ? 1.0 : it->second, sum_of(costs));
    }
    std::string name() const override { return "weighted"; }

private:
    std::unordered_map<std::string, double> atom_costs_;
    std::unordered_map<std::string, double> box_costs_;
};

}  // namespace

CostModelPtr make_depth_model() { return std::make_shared<DepthModel>(); }

CostModelPtr make_query_count_model() { return std::make_shared<QueryCountModel>(); }

CostModelPtr make_weighted_model(std::vector<std::pair<AtomId, double>> atom_costs,
                                 std::vector<std::pair<AgentId, double>> box_costs) {
    return std::make_shared<WeightedModel>(std::move(atom_costs), std::move(box_costs));
}

CostModelPtr load_cost_config(std::string_view text, const GameArena& arena) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("cost config syntax error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("model") || !doc["model"].is_string()) {
        throw InputError("cost config must be an object with a 'model' field");
    }
    const std::string model = doc["model"].get<std::string>();
    if (model == "depth" || model == "query_count") {
        if (doc.contains("atom_costs") || doc.contains("box_costs")) {
            throw InputError("cost maps are only allowed for the weighted model");
        }
        return model == "depth" ? make_depth_model() : make_query_count_model();
    }
    if (model != "weighted") {
        throw InputError("unknown cost model '" + model + "'");
    }

    std::vector<std::pair<AtomId, double>> atom_costs;
    if (doc.contains("atom_costs")) {
        for (const auto& [name, value] : doc["atom_costs"].items()) {
            AtomId atom{name};
            if (!arena.has_atom(atom)) {
                throw InputError("cost config references undeclared atom '" + name + "'");
            }
            if (!value.is_number()) {
                throw InputError("cost of atom '" + name + "' must be a number");
            }
            atom_costs.emplace_back(std::move(atom), value.get<double>());
        }
    }
    std::vector<std::pair<AgentId, double>> box_costs;
    if (doc.contains("box_costs")) {
        for (const auto& [name, value] : doc["box_costs"].items()) {
            AgentId agent{name};
            if (!arena.has_agent(agent)) {
                throw InputError("cost config references undeclared agent '" + name + "'");
            }
            if (!value.is_number()) {
                throw InputError("cost of agent '" + name + "' must be a number");
            }
            box_costs.emplace_back(std::move(agent), value.get<double>());
        }
    }
    return make_weighted_model(std::move(atom_costs), std::move(box_costs));
}

CostModelPtr parse_cost_spec(std::string_view spec, const GameArena& arena) {
    if (spec == "depth") return make_depth_model();
    if (spec == "query_count") return make_query_count_model();
    if (spec == "weighted") return make_weighted_model({}, {});
    if (spec.rfind("weighted:", 0) == 0) {
        const std::string path(spec.substr(9));
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw InputError("cannot open cost config '" + path + "'");
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        return load_cost_config(buf.str(), arena);
    }
    throw InputError("unknown cost spec '" + std::string(spec) +
                     "' (expected depth, query_count, weighted or weighted:CONFIG)");
}

ExtCost heuristic_proof(const CostModel& model, const Formula& phi) {
    switch (phi.kind()) {
        case FormulaKind::Atom:
            return model.atom_cost(phi.atom_id());
        case FormulaKind::Not:
            return heuristic_disproof(model, *phi.child());
        case FormulaKind::And: {
            const ExtCost parts[2] = {heuristic_proof(model, *phi.left()),
                                      heuristic_proof(model, *phi.right())};
            return model.aggregate_conj(parts);
        }
        case FormulaKind::Box:
            return model.aggregate_box(phi.agent(), {});
    }
    throw ContractViolation("unreachable formula kind");
}

ExtCost heuristic_disproof(const CostModel& model, const Formula& phi) {
    switch (phi.kind()) {
        case FormulaKind::Atom:
            return model.atom_cost(phi.atom_id());
        case FormulaKind::Not:
            return heuristic_proof(model, *phi.child());
        case FormulaKind::And: {
            const ExtCost left[1] = {heuristic_disproof(model, *phi.left())};
            const ExtCost right[1] = {heuristic_disproof(model, *phi.right())};
            return std::min(model.aggregate_conj(left), model.aggregate_conj(right));
        }
        case FormulaKind::Box: {
            const ExtCost body[1] = {heuristic_disproof(model, *phi.child())};
            return model.aggregate_box(phi.agent(), body);
        }
    }
    throw ContractViolation("unreachable formula kind");
}

ExtCost proof_cost(const CostModel& model, const ProofTree& tree) {
    const Formula& phi = *tree.formula;
    switch (phi.kind()) {
        case FormulaKind::Atom:
            return model.atom_cost(phi.atom_id());
        case FormulaKind::Not:
            if (tree.children.size() != 1) {
                throw ContractViolation("negation node must have exactly one child");
            }
            return proof_cost(model, tree.children.front());
        case FormulaKind::And: {
            std::vector<ExtCost> parts;
            for (const ProofTree& c : tree.children) {
                parts.push_back(proof_cost(model, c));
            }
            // A proved conjunction of identical conjuncts is stored with one
            // shared child standing for both, so it contributes twice.
            if (tree.polarity == Polarity::Proof && parts.size() == 1 &&
                structurally_equal(phi.left(), phi.right())) {
                parts.push_back(parts.front());
            }
            return model.aggregate_conj(parts);
        }
        case FormulaKind::Box: {
            std::vector<ExtCost> parts;
            for (const ProofTree& c : tree.children) {
                parts.push_back(proof_cost(model, c));
            }
            return model.aggregate_box(phi.agent(), parts);
        }
    }
    throw ContractViolation("unreachable formula kind");
}

}  // namespace mps
