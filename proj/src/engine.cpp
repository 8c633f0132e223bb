#include "mps/engine.hpp"

#include <cassert>
#include <ostream>

#include "mps/errors.hpp"

namespace mps {

ExtCost SearchResult::cost() const {
    return verdict == Verdict::Proved ? root->mpn : root->mdn;
}

std::pair<ExtCost, ExtCost> init_leaf(const CostModel& model, const Formula& phi) {
    return {heuristic_proof(model, phi), heuristic_disproof(model, phi)};
}

std::pair<ExtCost, ExtCost> info_term(const CostModel& model, const GameArena& arena,
                                      const StateId& q, const AtomId& p) {
    const ExtCost k = model.atom_cost(p);
    if (arena.state_satisfies(q, p)) {
        return {k, ExtCost::infinity()};
    }
    return {ExtCost::infinity(), k};
}

namespace {

ExtCost conj_singleton(const CostModel& model, ExtCost c) {
    const ExtCost one[1] = {c};
    return model.aggregate_conj(one);
}

ExtCost box_singleton(const CostModel& model, const AgentId& a, ExtCost c) {
    const ExtCost one[1] = {c};
    return model.aggregate_box(a, one);
}

std::unique_ptr<SearchNode> make_child(const CostModel& model, SearchNode& parent,
                                       StateId state, FormulaPtr phi) {
    auto child = std::make_unique<SearchNode>();
    child->state = std::move(state);
    child->formula = std::move(phi);
    std::tie(child->mpn, child->mdn) = init_leaf(model, *child->formula);
    child->parent = &parent;
    return child;
}

}  // namespace

std::pair<ExtCost, ExtCost> update_node(const CostModel& model, const SearchNode& node) {
    assert(node.kind == SearchNode::Kind::Internal);
    const Formula& phi = *node.formula;
    switch (phi.kind()) {
        case FormulaKind::Not: {
            assert(node.children.size() == 1);
            const SearchNode& c = *node.children.front();
            return {c.mdn, c.mpn};
        }
        case FormulaKind::And: {
            // One proof value per conjunct; the shared-child representation
            // of identical conjuncts contributes twice.
            std::vector<ExtCost> proof_parts;
            for (const auto& c : node.children) proof_parts.push_back(c->mpn);
            if (node.children.size() == 1) {
                assert(structurally_equal(phi.left(), phi.right()));
                proof_parts.push_back(proof_parts.front());
            }
            ExtCost mpn = model.aggregate_conj(proof_parts);

            ExtCost mdn = ExtCost::infinity();
            for (const auto& c : node.children) {
                mdn = std::min(mdn, conj_singleton(model, c->mdn));
            }
            return {mpn, mdn};
        }
        case FormulaKind::Box: {
            std::vector<ExtCost> proof_parts;
            for (const auto& c : node.children) proof_parts.push_back(c->mpn);
            ExtCost mpn = model.aggregate_box(phi.agent(), proof_parts);

            // No children means no way to disprove: vacuously proved.
            ExtCost mdn = ExtCost::infinity();
            for (const auto& c : node.children) {
                mdn = std::min(mdn, box_singleton(model, phi.agent(), c->mdn));
            }
            return {mpn, mdn};
        }
        case FormulaKind::Atom:
            break;
    }
    throw ContractViolation("update_node only applies to internal nodes");
}

SearchNode* select_child(const CostModel& model, SearchNode& node, bool corrupt) {
    assert(node.kind == SearchNode::Kind::Internal);
    assert(!node.solved());
    assert(!node.children.empty());
    const Formula& phi = *node.formula;
    if (phi.kind() == FormulaKind::Not) {
        return node.children.front().get();
    }

    const bool is_box = phi.kind() == FormulaKind::Box;
    SearchNode* chosen = nullptr;
    ExtCost chosen_cost;
    for (const auto& child : node.children) {
        ExtCost c = is_box ? box_singleton(model, phi.agent(), child->mdn)
                           : conj_singleton(model, child->mdn);
        if (corrupt) {
            // Deliberately worst-first, restricted to unsolved children so
            // the descent still reaches an expandable leaf.
            if (child->solved()) continue;
            if (!chosen || c > chosen_cost) {
                chosen = child.get();
                chosen_cost = c;
            }
        } else if (!chosen || c < chosen_cost) {
            chosen = child.get();
            chosen_cost = c;
        }
    }
    assert(chosen != nullptr);
    assert(!chosen->solved());
    return chosen;
}

void extend(const GameArena& arena, const CostModel& model, SearchNode& leaf) {
    assert(leaf.kind == SearchNode::Kind::Leaf);
    assert(!leaf.solved());
    const Formula& phi = *leaf.formula;
    switch (phi.kind()) {
        case FormulaKind::Atom:
            std::tie(leaf.mpn, leaf.mdn) = info_term(model, arena, leaf.state, phi.atom_id());
            leaf.kind = SearchNode::Kind::Terminal;
            return;
        case FormulaKind::Not:
            leaf.children.push_back(make_child(model, leaf, leaf.state, phi.child()));
            break;
        case FormulaKind::And:
            leaf.children.push_back(make_child(model, leaf, leaf.state, phi.left()));
            if (!structurally_equal(phi.left(), phi.right())) {
                leaf.children.push_back(make_child(model, leaf, leaf.state, phi.right()));
            }
            break;
        case FormulaKind::Box:
            for (StateId& q : arena.successors(leaf.state, phi.agent())) {
                leaf.children.push_back(make_child(model, leaf, std::move(q), phi.child()));
            }
            break;
    }
    leaf.kind = SearchNode::Kind::Internal;
}

SearchNode* backpropagate(const CostModel& model, SearchNode* node, SearchNode* root) {
    if (node->kind == SearchNode::Kind::Terminal) {
        // A resolution always changes the numbers: both were finite before,
        // one is infinite now.
        if (node == root) return node;
        node = node->parent;
    }
    for (;;) {
        const auto [mpn, mdn] = update_node(model, *node);
        const bool changed = mpn != node->mpn || mdn != node->mdn;
        if (changed) {
            assert(mpn >= node->mpn && mdn >= node->mdn);
            node->mpn = mpn;
            node->mdn = mdn;
        }
        if (!changed || node == root) {
            return node;
        }
        node = node->parent;
    }
}

SearchResult mps_solve(const GameArena& arena, const StateId& q, FormulaPtr phi,
                       const CostModel& model, const SolveOptions& options) {
    auto root = std::make_unique<SearchNode>();
    root->state = q;
    root->formula = std::move(phi);
    std::tie(root->mpn, root->mdn) = init_leaf(model, *root->formula);

    SolveStats stats;
    SearchNode* current = root.get();
    while (!root->solved()) {
        ++stats.iterations;
        SearchNode* n = current;
        while (n->kind == SearchNode::Kind::Internal) {
            n = select_child(model, *n, options.corrupt_selection);
        }
        assert(n->kind == SearchNode::Kind::Leaf);
        extend(arena, model, *n);
        ++stats.expansions;
        current = backpropagate(model, n, root.get());
        if (options.trace) {
            *options.trace << "iter=" << stats.iterations << " leaf=(" << n->state.key
                           << ", " << to_string(*n->formula) << ") root_mpn="
                           << to_string(root->mpn) << " root_mdn=" << to_string(root->mdn)
                           << '\n';
        }
        if (options.on_iteration) {
            options.on_iteration(*root, stats);
        }
    }

    SearchResult result;
    result.verdict = root->proved() ? Verdict::Proved : Verdict::Disproved;
    result.expansions = stats.expansions;
    result.iterations = stats.iterations;
    result.root = std::move(root);
    return result;
}

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
    return (a >= cap || b >= cap || a + b >= cap) ? cap : a + b;
}

}  // namespace

std::uint64_t full_exploration_size(const GameArena& arena, const StateId& q,
                                    const Formula& phi, std::uint64_t cap) {
    switch (phi.kind()) {
        case FormulaKind::Atom:
            return 1;
        case FormulaKind::Not:
            return saturating_add(1, full_exploration_size(arena, q, *phi.child(), cap), cap);
        case FormulaKind::And: {
            std::uint64_t n = saturating_add(
                1, full_exploration_size(arena, q, *phi.left(), cap), cap);
            if (!structurally_equal(phi.left(), phi.right())) {
                n = saturating_add(n, full_exploration_size(arena, q, *phi.right(), cap), cap);
            }
            return n;
        }
        case FormulaKind::Box: {
            std::uint64_t n = 1;
            for (const StateId& q2 : arena.successors(q, phi.agent())) {
                n = saturating_add(n, full_exploration_size(arena, q2, *phi.child(), cap), cap);
                if (n >= cap) return cap;
            }
            return n;
        }
    }
    throw ContractViolation("unreachable formula kind");
}

}  // namespace mps
