#ifndef MPS_PROOF_HPP
#define MPS_PROOF_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mps/arena.hpp"
#include "mps/cost.hpp"
#include "mps/engine.hpp"
#include "mps/proof_tree.hpp"

namespace mps {

/// Extracts the contained minimal (dis)proof from a solved exploration
/// tree. Proved conjunction and box nodes keep all children; disproved ones
/// keep the lowest-indexed disproved child among those minimizing the
/// aggregated disproof number. Throws ContractViolation if the root is not
/// solved (or the tree was not built by the standard selection policy).
ProofTree extract(const CostModel& model, const SearchNode& root);

/// Verdict of check_proof: either ok, or the first violated clause with
/// the path of child indices leading to the offending node.
struct CheckResult {
    bool ok = true;
    std::string reason;
    std::vector<std::size_t> path;

    std::string describe() const;
    explicit operator bool() const { return ok; }
};

/// Validates a (dis)proof against the arena, independently of the engine:
/// only the tree shape, labels and fresh arena queries are consulted.
/// Atom proofs need the label present (disproofs: absent); a negation has
/// exactly one child of flipped polarity; a proved conjunction covers both
/// conjuncts (one shared child when they are syntactically identical); a
/// disproved conjunction has exactly one child disproving either conjunct;
/// a proved box has exactly one child per successor; a disproved box has
/// exactly one child at some successor.
CheckResult check_proof(const GameArena& arena, const ProofTree& tree);

enum class ProofFormat : std::uint8_t { Structured, Dot };

/// Throws InputError on any other spelling ("structured" | "dot").
ProofFormat parse_proof_format(std::string_view name);

/// Deterministic rendering. Structured output is a JSON document that
/// parse_proof reads back; DOT output labels each node with
/// "state |= formula" or "state |≠ formula" plus its subtree cost under
/// `model` (box-shaped nodes for proofs, octagons for disproofs).
std::string serialize_proof(const ProofTree& tree, ProofFormat format,
                            const CostModel& model);

/// Reads the structured format back; names resolve against `arena`.
ProofTree parse_proof(std::string_view text, const GameArena& arena);

}  // namespace mps

#endif
