#include "mps/instances.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "mps/errors.hpp"
#include "mps/oracle.hpp"
#include "mps/proof.hpp"

namespace mps {

// splitmix64; self-contained so streams do not depend on the standard
// library's engine or distribution details.
std::uint64_t Rng::next() {
    state_ += UINT64_C(0x9e3779b97f4a7c15);
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * UINT64_C(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)) * UINT64_C(0x94d049bb133111eb);
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

int Rng::range(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

bool Rng::chance(double p) {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
}

ExplicitArena random_arena(Rng& rng, const InstanceBounds& bounds) {
    ExplicitArena arena;
    const int n_atoms = rng.range(1, bounds.max_atoms);
    const int n_agents = rng.range(1, bounds.max_agents);
    const int n_states = rng.range(1, bounds.max_states);

    for (int i = 0; i < n_atoms; ++i) arena.add_atom("p" + std::to_string(i));
    for (int i = 0; i < n_agents; ++i) arena.add_agent("a" + std::to_string(i));
    for (int i = 0; i < n_states; ++i) {
        std::vector<std::string> labels;
        for (int j = 0; j < n_atoms; ++j) {
            if (rng.chance(0.4)) labels.push_back("p" + std::to_string(j));
        }
        arena.add_state("q" + std::to_string(i), std::move(labels));
    }
    for (int i = 0; i < n_states; ++i) {
        for (int a = 0; a < n_agents; ++a) {
            const int degree = rng.range(0, bounds.max_density);
            for (int d = 0; d < degree; ++d) {
                arena.add_transition("q" + std::to_string(i), "a" + std::to_string(a),
                                     "q" + std::to_string(rng.range(0, n_states - 1)));
            }
        }
    }
    arena.validate();
    return arena;
}

FormulaPtr random_formula(Rng& rng, const GameArena& arena, int max_size) {
    const auto& atoms = arena.atoms();
    const auto& agents = arena.agents();
    if (max_size <= 1) {
        return Formula::atom(atoms[rng.below(atoms.size())]);
    }
    switch (rng.below(4)) {
        case 0:
            return Formula::atom(atoms[rng.below(atoms.size())]);
        case 1:
            return Formula::negation(random_formula(rng, arena, max_size - 1));
        case 2:
            return Formula::box(agents[rng.below(agents.size())],
                                random_formula(rng, arena, max_size - 1));
        default: {
            if (max_size < 3) {
                return Formula::atom(atoms[rng.below(atoms.size())]);
            }
            const int left_size = rng.range(1, max_size - 2);
            return Formula::conjunction(random_formula(rng, arena, left_size),
                                        random_formula(rng, arena, max_size - 1 - left_size));
        }
    }
}

namespace {

const double kWeightChoices[] = {0.0, 0.5, 1.0, 2.0, 3.0};

nlohmann::ordered_json random_cost_config(Rng& rng, const GameArena& arena) {
    nlohmann::ordered_json config;
    switch (rng.below(3)) {
        case 0:
            config["model"] = "depth";
            return config;
        case 1:
            config["model"] = "query_count";
            return config;
        default:
            break;
    }
    config["model"] = "weighted";
    nlohmann::ordered_json atom_costs = nlohmann::ordered_json::object();
    for (const AtomId& p : arena.atoms()) {
        if (rng.chance(0.7)) atom_costs[p.name] = kWeightChoices[rng.below(5)];
    }
    nlohmann::ordered_json box_costs = nlohmann::ordered_json::object();
    for (const AgentId& a : arena.agents()) {
        if (rng.chance(0.7)) box_costs[a.name] = kWeightChoices[rng.below(5)];
    }
    if (!atom_costs.empty()) config["atom_costs"] = std::move(atom_costs);
    if (!box_costs.empty()) config["box_costs"] = std::move(box_costs);
    return config;
}

}  // namespace

std::string Instance::describe() const {
    nlohmann::ordered_json doc;
    doc["arena"] = nlohmann::ordered_json::parse(serialize_arena(arena));
    doc["state"] = root.key;
    doc["formula"] = to_string(formula);
    doc["cost"] = nlohmann::ordered_json::parse(model_spec);
    return doc.dump(2);
}

Instance random_instance(Rng& rng, const InstanceBounds& bounds) {
    Instance instance;
    instance.arena = random_arena(rng, bounds);
    instance.root = instance.arena.states()[rng.below(instance.arena.states().size())];
    instance.formula = random_formula(rng, instance.arena, bounds.max_formula_size);
    const auto config = random_cost_config(rng, instance.arena);
    instance.model_spec = config.dump();
    instance.model = load_cost_config(instance.model_spec, instance.arena);
    return instance;
}

std::vector<StateId> RecordingArena::successors(const StateId& q, const AgentId& a) const {
    record(q);
    return inner_.successors(q, a);
}

std::vector<AtomId> RecordingArena::labels(const StateId& q) const {
    record(q);
    return inner_.labels(q);
}

void RecordingArena::record(const StateId& q) const { queried_.push_back(q); }

namespace {

// Labels are compared by state key and formula node identity; all formulas
// in one search alias subterms of the root formula, so pointer identity is
// exact here.
using LabelKey = std::pair<std::string, const Formula*>;

struct SnapshotState {
    std::map<const SearchNode*, std::pair<ExtCost, ExtCost>> previous;
    std::map<LabelKey, std::pair<ExtCost, ExtCost>> oracle_cache;
};

std::pair<ExtCost, ExtCost> oracle_bounds(const GameArena& arena, const CostModel& model,
                                          const SearchNode& node, SnapshotState& state) {
    const LabelKey key{node.state.key, node.formula.get()};
    auto it = state.oracle_cache.find(key);
    if (it != state.oracle_cache.end()) return it->second;
    const OracleResult r = min_cost(arena, node.state, *node.formula, model);
    const auto bounds = std::make_pair(r.min_proof_cost, r.min_disproof_cost);
    state.oracle_cache.emplace(key, bounds);
    return bounds;
}

// Does the current subtree contain a complete (dis)proof rooted here?
// Decided from the tree shape and fresh arena queries only.
bool contains_witness(const GameArena& arena, const SearchNode& node, Polarity polarity) {
    const Formula& phi = *node.formula;
    if (node.kind == SearchNode::Kind::Leaf) return false;
    switch (phi.kind()) {
        case FormulaKind::Atom: {
            const bool has = arena.state_satisfies(node.state, phi.atom_id());
            return polarity == Polarity::Proof ? has : !has;
        }
        case FormulaKind::Not:
            return contains_witness(arena, *node.children.front(), flip(polarity));
        case FormulaKind::And:
            if (polarity == Polarity::Proof) {
                for (const auto& c : node.children) {
                    if (!contains_witness(arena, *c, polarity)) return false;
                }
                return true;
            }
            for (const auto& c : node.children) {
                if (contains_witness(arena, *c, polarity)) return true;
            }
            return false;
        case FormulaKind::Box:
            // Children are exactly the successors once extended.
            if (polarity == Polarity::Proof) {
                for (const auto& c : node.children) {
                    if (!contains_witness(arena, *c, polarity)) return false;
                }
                return true;
            }
            for (const auto& c : node.children) {
                if (contains_witness(arena, *c, polarity)) return true;
            }
            return false;
    }
    return false;
}

void snapshot_check(const GameArena& arena, const CostModel& model, const SearchNode& root,
                    SnapshotState& state, std::vector<Violation>& violations) {
    // Walk the whole tree once per iteration.
    std::vector<const SearchNode*> stack{&root};
    while (!stack.empty()) {
        const SearchNode* n = stack.back();
        stack.pop_back();
        for (const auto& c : n->children) stack.push_back(c.get());

        const auto it = state.previous.find(n);
        if (it != state.previous.end()) {
            if (n->mpn < it->second.first || n->mdn < it->second.second) {
                violations.push_back({"monotonicity",
                                      "effort numbers decreased at (" + n->state.key + ", " +
                                          to_string(*n->formula) + ")"});
            }
        }
        state.previous[n] = {n->mpn, n->mdn};

        const auto [min_proof, min_disproof] = oracle_bounds(arena, model, *n, state);
        if (n->mpn > min_proof || n->mdn > min_disproof) {
            violations.push_back({"lower_bound",
                                  "effort number exceeds the oracle minimum at (" +
                                      n->state.key + ", " + to_string(*n->formula) + ")"});
        }

        const bool has_proof = contains_witness(arena, *n, Polarity::Proof);
        const bool has_disproof = contains_witness(arena, *n, Polarity::Disproof);
        if (has_proof != !n->mdn.is_finite() || has_disproof != !n->mpn.is_finite()) {
            violations.push_back({"solving",
                                  "solved flag disagrees with contained witness at (" +
                                      n->state.key + ", " + to_string(*n->formula) + ")"});
        }
    }
}

// Breadth-first distances from the root over all agents.
std::unordered_map<std::string, int> state_distances(const ExplicitArena& arena,
                                                     const StateId& root) {
    std::unordered_map<std::string, int> dist;
    std::deque<StateId> queue;
    dist[root.key] = 0;
    queue.push_back(root);
    while (!queue.empty()) {
        const StateId q = queue.front();
        queue.pop_front();
        for (const AgentId& a : arena.agents()) {
            for (const StateId& q2 : arena.successors(q, a)) {
                if (dist.emplace(q2.key, dist[q.key] + 1).second) {
                    queue.push_back(q2);
                }
            }
        }
    }
    return dist;
}

// First proved box node with at least one child, preorder.
ProofTree* find_proved_box(ProofTree& tree) {
    if (tree.formula->kind() == FormulaKind::Box && tree.polarity == Polarity::Proof &&
        !tree.children.empty()) {
        return &tree;
    }
    for (ProofTree& c : tree.children) {
        if (ProofTree* hit = find_proved_box(c)) return hit;
    }
    return nullptr;
}

ProofTree* find_atom(ProofTree& tree) {
    if (tree.formula->kind() == FormulaKind::Atom) return &tree;
    for (ProofTree& c : tree.children) {
        if (ProofTree* hit = find_atom(c)) return hit;
    }
    return nullptr;
}

}  // namespace

InstanceReport run_instance_checks(const Instance& instance, const CheckOptions& options) {
    InstanceReport report;
    auto violate = [&](const char* category, std::string message) {
        report.violations.push_back({category, std::move(message)});
    };

    const GameArena& arena = instance.arena;
    const CostModel& model = *instance.model;
    const Formula& phi = *instance.formula;

    RecordingArena recorder(arena);
    SolveOptions solve_options;
    solve_options.corrupt_selection = options.corrupt_selection;
    SnapshotState snapshots;
    if (options.snapshot_checks) {
        solve_options.on_iteration = [&](const SearchNode& root, const SolveStats&) {
            snapshot_check(arena, model, root, snapshots, report.violations);
        };
    }

    const SearchResult result =
        mps_solve(recorder, instance.root, instance.formula, model, solve_options);
    report.expansions = result.expansions;
    report.iterations = result.iterations;

    const bool naive = naive_model_check(arena, instance.root, phi);
    const bool proved = result.verdict == Verdict::Proved;
    if (proved != naive) {
        violate("verdict_mismatch", "engine said " + std::string(proved ? "proved" : "disproved") +
                                        ", direct semantics disagree");
    }

    const OracleResult oracle = min_cost(arena, instance.root, phi, model);
    if (oracle.holds != naive) {
        violate("holds_mismatch", "min_cost.holds disagrees with direct semantics");
    }
    const ExtCost oracle_min = proved ? oracle.min_proof_cost : oracle.min_disproof_cost;
    if (result.cost() != oracle_min) {
        violate("minimality", "engine cost " + to_string(result.cost()) +
                                  " differs from oracle minimum " + to_string(oracle_min));
    }

    // Extraction, validity, cost identity.
    try {
        ProofTree extracted = extract(model, *result.root);
        const CheckResult check = check_proof(arena, extracted);
        if (!check.ok) {
            violate("proof_invalid", "extracted witness rejected: " + check.describe());
        }
        const ExtCost k = proof_cost(model, extracted);
        if (k != result.cost()) {
            violate("cost_identity", "extracted witness costs " + to_string(k) +
                                         ", root effort number is " + to_string(result.cost()));
        }
        if (k != oracle_min) {
            violate("minimality", "extracted witness costs " + to_string(k) +
                                      ", oracle minimum is " + to_string(oracle_min));
        }

        if (options.mutation_checks) {
            {
                ProofTree mutated = extracted;
                if (ProofTree* target = find_proved_box(mutated)) {
                    target->children.pop_back();
                    if (check_proof(arena, mutated).ok) {
                        violate("proof_mutation", "dropping a box child went undetected");
                    }
                    report.mutation_applicable = true;
                }
            }
            {
                ProofTree mutated = extracted;
                if (ProofTree* target = find_atom(mutated)) {
                    target->polarity = flip(target->polarity);
                    if (check_proof(arena, mutated).ok) {
                        violate("proof_mutation", "flipping an atom went undetected");
                    }
                    report.mutation_applicable = true;
                }
            }
        }
    } catch (const ContractViolation& e) {
        violate("extraction", std::string("extraction failed: ") + e.what());
    }

    // Admissibility of the leaf heuristics against the oracle.
    if (heuristic_proof(model, phi) > oracle.min_proof_cost) {
        violate("admissibility", "I exceeds the minimal proof cost");
    }
    if (heuristic_disproof(model, phi) > oracle.min_disproof_cost) {
        violate("admissibility", "J exceeds the minimal disproof cost");
    }

    // Termination bound: iterations can never exceed the full tree.
    const std::uint64_t bound =
        full_exploration_size(arena, instance.root, phi, options.size_bound_cap);
    if (bound < options.size_bound_cap && result.iterations > bound) {
        violate("termination_bound", "iterations " + std::to_string(result.iterations) +
                                         " exceed the full tree size " + std::to_string(bound));
    }

    // The search must stay within modal depth of the root.
    const auto distances = state_distances(instance.arena, instance.root);
    const int depth = phi.modal_depth();
    for (const StateId& q : recorder.queried_states()) {
        const auto it = distances.find(q.key);
        if (it == distances.end() || it->second > depth) {
            violate("distance_bound",
                    "queried state " + q.key + " beyond modal depth " + std::to_string(depth));
            break;
        }
    }

    // Reproducibility: a second run must match exactly.
    {
        SolveOptions repeat;
        repeat.corrupt_selection = options.corrupt_selection;
        const SearchResult again =
            mps_solve(arena, instance.root, instance.formula, model, repeat);
        if (again.verdict != result.verdict || again.cost() != result.cost() ||
            again.expansions != result.expansions || again.iterations != result.iterations) {
            violate("determinism", "two identical solves disagreed");
        }
    }
    {
        const AgentId& a = arena.agents().front();
        if (arena.successors(instance.root, a) != arena.successors(instance.root, a)) {
            violate("determinism", "successor order is unstable");
        }
    }

    return report;
}

FuzzSummary run_fuzz(std::uint64_t seed, std::uint64_t cases, const InstanceBounds& bounds,
                     const CheckOptions& options) {
    FuzzSummary summary;
    Rng rng(seed);
    for (std::uint64_t i = 0; i < cases; ++i) {
        const Instance instance = random_instance(rng, bounds);
        const InstanceReport report = run_instance_checks(instance, options);
        ++summary.cases;
        if (!report.ok()) {
            ++summary.failures;
            if (!summary.first_failure_case.has_value()) {
                summary.first_failure_case = i;
                summary.first_violations = report.violations;
                summary.first_failure_instance = instance.describe();
            }
        }
    }
    return summary;
}

}  // namespace mps
