#ifndef MPS_PROOF_TREE_HPP
#define MPS_PROOF_TREE_HPP

#include <cstdint>
#include <vector>

#include "mps/formula.hpp"
#include "mps/ids.hpp"

namespace mps {

enum class Polarity : std::uint8_t { Proof, Disproof };

inline Polarity flip(Polarity p) {
    return p == Polarity::Proof ? Polarity::Disproof : Polarity::Proof;
}

/// A complete proof or disproof: the witness shape that check_proof
/// validates against the arena. Negation children carry the opposite
/// polarity; all other connectives preserve it. Value type, immutable by
/// convention once built.
struct ProofTree {
    StateId state;
    FormulaPtr formula;
    Polarity polarity = Polarity::Proof;
    std::vector<ProofTree> children;

    std::size_t node_count() const {
        std::size_t n = 1;
        for (const ProofTree& c : children) n += c.node_count();
        return n;
    }
};

/// Structural equality, labels and polarity included.
bool operator==(const ProofTree& a, const ProofTree& b);
inline bool operator!=(const ProofTree& a, const ProofTree& b) { return !(a == b); }

}  // namespace mps

#endif
