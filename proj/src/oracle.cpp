#include "mps/oracle.hpp"

#include <cassert>

#include "mps/errors.hpp"

namespace mps {

bool naive_model_check(const GameArena& arena, const StateId& q, const Formula& phi) {
    switch (phi.kind()) {
        case FormulaKind::Atom:
            return arena.state_satisfies(q, phi.atom_id());
        case FormulaKind::Not:
            return !naive_model_check(arena, q, *phi.child());
        case FormulaKind::And:
            return naive_model_check(arena, q, *phi.left()) &&
                   naive_model_check(arena, q, *phi.right());
        case FormulaKind::Box:
            for (const StateId& q2 : arena.successors(q, phi.agent())) {
                if (!naive_model_check(arena, q2, *phi.child())) return false;
            }
            return true;
    }
    throw ContractViolation("unreachable formula kind");
}

namespace {

ExtCost aggregate_singleton(const CostModel& model, const Formula& phi, ExtCost c) {
    const ExtCost one[1] = {c};
    return phi.kind() == FormulaKind::Box ? model.aggregate_box(phi.agent(), one)
                                          : model.aggregate_conj(one);
}

}  // namespace

OracleResult min_cost(const GameArena& arena, const StateId& q, const Formula& phi,
                      const CostModel& model) {
    OracleResult result;
    switch (phi.kind()) {
        case FormulaKind::Atom: {
            const ExtCost k = model.atom_cost(phi.atom_id());
            if (arena.state_satisfies(q, phi.atom_id())) {
                result.min_proof_cost = k;
                result.min_disproof_cost = ExtCost::infinity();
            } else {
                result.min_proof_cost = ExtCost::infinity();
                result.min_disproof_cost = k;
            }
            break;
        }
        case FormulaKind::Not: {
            const OracleResult inner = min_cost(arena, q, *phi.child(), model);
            result.min_proof_cost = inner.min_disproof_cost;
            result.min_disproof_cost = inner.min_proof_cost;
            break;
        }
        case FormulaKind::And: {
            // Minimal subproofs compose into minimal proofs because the
            // aggregators are increasing; enumerate_proofs double-checks
            // this on small instances. One proof entry per conjunct, even
            // when the conjuncts coincide.
            const OracleResult left = min_cost(arena, q, *phi.left(), model);
            const OracleResult right = min_cost(arena, q, *phi.right(), model);
            const ExtCost parts[2] = {left.min_proof_cost, right.min_proof_cost};
            result.min_proof_cost = model.aggregate_conj(parts);
            result.min_disproof_cost =
                std::min(aggregate_singleton(model, phi, left.min_disproof_cost),
                         aggregate_singleton(model, phi, right.min_disproof_cost));
            break;
        }
        case FormulaKind::Box: {
            std::vector<ExtCost> proof_parts;
            ExtCost min_disproof = ExtCost::infinity();
            for (const StateId& q2 : arena.successors(q, phi.agent())) {
                const OracleResult inner = min_cost(arena, q2, *phi.child(), model);
                proof_parts.push_back(inner.min_proof_cost);
                min_disproof = std::min(
                    min_disproof, aggregate_singleton(model, phi, inner.min_disproof_cost));
            }
            result.min_proof_cost = model.aggregate_box(phi.agent(), proof_parts);
            result.min_disproof_cost = min_disproof;
            break;
        }
    }
    result.holds = result.min_proof_cost.is_finite();
    assert(result.holds != result.min_disproof_cost.is_finite());
    return result;
}

namespace {

struct EnumerationLimits {
    std::size_t max_nodes;
    std::size_t max_count;
};

void cap(std::vector<ProofTree>& trees, const EnumerationLimits& limits, bool& truncated) {
    if (trees.size() > limits.max_count) {
        trees.resize(limits.max_count);
        truncated = true;
    }
}

EnumerationResult enumerate_impl(const GameArena& arena, const StateId& q,
                                 const FormulaPtr& phi, const EnumerationLimits& limits) {
    EnumerationResult out;
    auto wrap = [&](Polarity polarity, const ProofTree& child) {
        ProofTree t;
        t.state = q;
        t.formula = phi;
        t.polarity = polarity;
        t.children.push_back(child);
        return t;
    };
    auto push = [&](std::vector<ProofTree>& into, ProofTree&& t) {
        if (t.node_count() > limits.max_nodes) {
            out.truncated = true;
            return;
        }
        if (into.size() >= limits.max_count) {
            out.truncated = true;
            return;
        }
        into.push_back(std::move(t));
    };

    switch (phi->kind()) {
        case FormulaKind::Atom: {
            ProofTree t;
            t.state = q;
            t.formula = phi;
            const bool has = arena.state_satisfies(q, phi->atom_id());
            t.polarity = has ? Polarity::Proof : Polarity::Disproof;
            push(has ? out.proofs : out.disproofs, std::move(t));
            return out;
        }
        case FormulaKind::Not: {
            EnumerationResult sub = enumerate_impl(arena, q, phi->child(), limits);
            out.truncated = sub.truncated;
            for (const ProofTree& d : sub.disproofs) {
                push(out.proofs, wrap(Polarity::Proof, d));
            }
            for (const ProofTree& p : sub.proofs) {
                push(out.disproofs, wrap(Polarity::Disproof, p));
            }
            return out;
        }
        case FormulaKind::And: {
            const bool identical = structurally_equal(phi->left(), phi->right());
            EnumerationResult left = enumerate_impl(arena, q, phi->left(), limits);
            out.truncated = left.truncated;
            if (identical) {
                // One shared child stands for both conjuncts; the right-hand
                // enumeration would yield the same trees again.
                for (const ProofTree& p : left.proofs) {
                    push(out.proofs, wrap(Polarity::Proof, p));
                }
                for (const ProofTree& d : left.disproofs) {
                    push(out.disproofs, wrap(Polarity::Disproof, d));
                }
                return out;
            }
            EnumerationResult right = enumerate_impl(arena, q, phi->right(), limits);
            out.truncated = out.truncated || right.truncated;
            for (const ProofTree& l : left.proofs) {
                for (const ProofTree& r : right.proofs) {
                    ProofTree t;
                    t.state = q;
                    t.formula = phi;
                    t.polarity = Polarity::Proof;
                    t.children = {l, r};
                    push(out.proofs, std::move(t));
                }
            }
            for (const ProofTree& d : left.disproofs) {
                push(out.disproofs, wrap(Polarity::Disproof, d));
            }
            for (const ProofTree& d : right.disproofs) {
                push(out.disproofs, wrap(Polarity::Disproof, d));
            }
            return out;
        }
        case FormulaKind::Box: {
            // Proofs pick one proof per successor (the empty product is the
            // vacuous proof); disproofs pick one disproof at one successor.
            std::vector<ProofTree> partial;
            {
                ProofTree t;
                t.state = q;
                t.formula = phi;
                t.polarity = Polarity::Proof;
                partial.push_back(std::move(t));
            }
            for (const StateId& q2 : arena.successors(q, phi->agent())) {
                EnumerationResult sub = enumerate_impl(arena, q2, phi->child(), limits);
                out.truncated = out.truncated || sub.truncated;
                for (const ProofTree& d : sub.disproofs) {
                    push(out.disproofs, wrap(Polarity::Disproof, d));
                }
                std::vector<ProofTree> next;
                for (const ProofTree& base : partial) {
                    for (const ProofTree& p : sub.proofs) {
                        ProofTree t = base;
                        t.children.push_back(p);
                        if (t.node_count() > limits.max_nodes ||
                            next.size() >= limits.max_count) {
                            out.truncated = true;
                            continue;
                        }
                        next.push_back(std::move(t));
                    }
                }
                partial = std::move(next);
                if (partial.empty()) break;  // some successor has no proofs
            }
            for (ProofTree& t : partial) {
                push(out.proofs, std::move(t));
            }
            cap(out.proofs, limits, out.truncated);
            return out;
        }
    }
    throw ContractViolation("unreachable formula kind");
}

}  // namespace

EnumerationResult enumerate_proofs(const GameArena& arena, const StateId& q,
                                   const FormulaPtr& phi, std::size_t max_nodes,
                                   std::size_t max_count) {
    return enumerate_impl(arena, q, phi, EnumerationLimits{max_nodes, max_count});
}

}  // namespace mps
