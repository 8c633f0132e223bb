#ifndef MPS_ENGINE_HPP
#define MPS_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <utility>
#include <vector>

#include "mps/arena.hpp"
#include "mps/cost.hpp"
#include "mps/formula.hpp"

namespace mps {

/// A node of the exploration tree, labelled with a (state, formula) pair
/// and carrying the two effort numbers. A node is solved once either
/// number reaches infinity; exactly one of them is infinite then.
struct SearchNode {
    enum class Kind : std::uint8_t {
        Leaf,      // never extended
        Internal,  // extended, non-atomic label
        Terminal   // extended atom, resolved against the arena
    };

    StateId state;
    FormulaPtr formula;
    ExtCost mpn;  // minimal proof number
    ExtCost mdn;  // minimal disproof number
    Kind kind = Kind::Leaf;
    SearchNode* parent = nullptr;
    std::vector<std::unique_ptr<SearchNode>> children;

    bool solved() const { return !mpn.is_finite() || !mdn.is_finite(); }
    bool proved() const { return !mdn.is_finite(); }
    bool disproved() const { return !mpn.is_finite(); }
};

enum class Verdict : std::uint8_t { Proved, Disproved };

struct SolveStats {
    std::uint64_t iterations = 0;  // descent loops
    std::uint64_t expansions = 0;  // extend calls
};

/// Per-solve instrumentation. `on_iteration` runs after each
/// backpropagation with the whole tree visible; `trace` gets one line per
/// iteration. `corrupt_selection` deliberately picks the worst candidate
/// child instead of the best; it exists so tests can show that minimality
/// actually depends on the selection policy.
struct SolveOptions {
    std::ostream* trace = nullptr;
    std::function<void(const SearchNode& root, const SolveStats&)> on_iteration;
    bool corrupt_selection = false;
};

struct SearchResult {
    std::unique_ptr<SearchNode> root;  // solved
    Verdict verdict = Verdict::Proved;
    std::uint64_t expansions = 0;
    std::uint64_t iterations = 0;

    /// The finite effort number of the root: the cost of the contained
    /// (dis)proof.
    ExtCost cost() const;
};

/// Initial effort numbers for a fresh leaf: (I(phi), J(phi)), both finite.
std::pair<ExtCost, ExtCost> init_leaf(const CostModel& model, const Formula& phi);

/// Effort numbers for a resolved atom node: (k(p), inf) when the label
/// holds at q, (inf, k(p)) otherwise.
std::pair<ExtCost, ExtCost> info_term(const CostModel& model, const GameArena& arena,
                                      const StateId& q, const AtomId& p);

/// Recomputes an internal node's effort numbers from its current children.
/// Negation flips the child's pair. Conjunctions aggregate one proof value
/// per conjunct for the MPN (the shared-child case contributes twice) and
/// take the cheapest single-conjunct disproof for the MDN. Boxes aggregate
/// all children for the MPN (a box with no children is vacuously proved)
/// and take the cheapest single-child disproof for the MDN, infinity when
/// there are no candidates.
std::pair<ExtCost, ExtCost> update_node(const CostModel& model, const SearchNode& node);

/// Selection policy: the child through which a disproof currently looks
/// cheapest (negation: the single child). Ties break toward the lowest
/// child index. Requires an unsolved internal node; the returned child has
/// both effort numbers finite.
SearchNode* select_child(const CostModel& model, SearchNode& node,
                         bool corrupt = false);

/// Expands an unsolved leaf in place: atoms become terminal; a negation
/// gets one child; a conjunction gets a child per distinct conjunct (one
/// shared child when the conjuncts are syntactically identical); a box
/// gets one child per successor, in successor order.
void extend(const GameArena& arena, const CostModel& model, SearchNode& leaf);

/// Recomputes effort numbers from `node` upward, stopping at the deepest
/// node whose numbers did not change (or at the root). A freshly resolved
/// terminal always counts as changed: exactly one of its numbers became
/// infinite. Returns the stopping node; the next descent starts there.
SearchNode* backpropagate(const CostModel& model, SearchNode* node, SearchNode* root);

/// Runs the full best-first search for (q, phi): descend along the
/// selection policy to an unsolved leaf, extend it, backpropagate, until
/// the root is solved. Returns the solved tree with its verdict and
/// instrumentation counters.
SearchResult mps_solve(const GameArena& arena, const StateId& q, FormulaPtr phi,
                       const CostModel& model, const SolveOptions& options = {});

/// Node count of the fully expanded exploration tree of (q, phi); the
/// iteration count of any solve is bounded by it. Saturates at `cap`.
std::uint64_t full_exploration_size(const GameArena& arena, const StateId& q,
                                    const Formula& phi,
                                    std::uint64_t cap = UINT64_C(1) << 40);

}  // namespace mps

#endif
