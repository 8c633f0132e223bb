#ifndef MPS_ORACLE_HPP
#define MPS_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "mps/arena.hpp"
#include "mps/cost.hpp"
#include "mps/formula.hpp"
#include "mps/proof_tree.hpp"

namespace mps {

/// Direct recursive semantics: does phi hold at q? Atoms consult the
/// labelling, negation complements, conjunction needs both, box needs the
/// body at every successor (vacuously true with none). Desk-scale ground
/// truth for the engine's verdicts.
bool naive_model_check(const GameArena& arena, const StateId& q, const Formula& phi);

struct OracleResult {
    bool holds = false;
    ExtCost min_proof_cost;     // infinite iff phi does not hold at q
    ExtCost min_disproof_cost;  // infinite iff phi holds at q
};

/// Exact minimal proof and disproof costs by exhaustive recursion. Because
/// the aggregators are increasing, a minimal (dis)proof is composed of
/// minimal sub-(dis)proofs, so the recursion mirrors the heuristic tables
/// with exact recursive values in place of lower bounds; enumerate_proofs
/// cross-checks this on small instances. Pure function of its inputs.
OracleResult min_cost(const GameArena& arena, const StateId& q, const Formula& phi,
                      const CostModel& model);

struct EnumerationResult {
    std::vector<ProofTree> proofs;
    std::vector<ProofTree> disproofs;
    /// True when some (dis)proof was skipped because it exceeded max_nodes
    /// or the count cap; min-cost comparisons are only meaningful when
    /// false.
    bool truncated = false;
};

/// Every structurally distinct proof and disproof of (q, phi) with at most
/// `max_nodes` nodes, up to `max_count` trees per polarity.
EnumerationResult enumerate_proofs(const GameArena& arena, const StateId& q,
                                   const FormulaPtr& phi, std::size_t max_nodes,
                                   std::size_t max_count = 200000);

}  // namespace mps

#endif
