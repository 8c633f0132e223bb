#ifndef MPS_COST_HPP
#define MPS_COST_HPP

#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "mps/formula.hpp"
#include "mps/ids.hpp"
#include "mps/proof_tree.hpp"

namespace mps {

/// Extended nonnegative cost: a finite value >= 0 or infinity. Totally
/// ordered, with infinity above every finite value. Builtin models only
/// produce values that are exact in binary floating point, so comparisons
/// in tests are exact.
class ExtCost {
public:
    constexpr ExtCost() : v_(0.0) {}

    static constexpr ExtCost infinity() {
        return ExtCost(std::numeric_limits<double>::infinity());
    }
    /// Throws InputError on negative or NaN input.
    static ExtCost finite(double v);

    bool is_finite() const { return v_ != std::numeric_limits<double>::infinity(); }
    double value() const { return v_; }

    friend constexpr bool operator==(ExtCost a, ExtCost b) { return a.v_ == b.v_; }
    friend constexpr bool operator!=(ExtCost a, ExtCost b) { return a.v_ != b.v_; }
    friend constexpr bool operator<(ExtCost a, ExtCost b) { return a.v_ < b.v_; }
    friend constexpr bool operator<=(ExtCost a, ExtCost b) { return a.v_ <= b.v_; }
    friend constexpr bool operator>(ExtCost a, ExtCost b) { return a.v_ > b.v_; }
    friend constexpr bool operator>=(ExtCost a, ExtCost b) { return a.v_ >= b.v_; }

private:
    explicit constexpr ExtCost(double v) : v_(v) {}
    double v_;
};

/// "inf" for infinity; integral values without a decimal point; otherwise
/// the shortest round-tripping decimal form.
std::string to_string(ExtCost c);

/// A cost model: base cost k on atoms plus the conjunction and box
/// aggregators. Aggregators receive multisets as ordered sequences but must
/// be order-insensitive, increasing (adding or raising elements never
/// lowers the result), infinity-absorbing, and finiteness-preserving.
/// Implementations must be pure; models are immutable and shareable.
class CostModel {
public:
    virtual ~CostModel() = default;

    virtual ExtCost atom_cost(const AtomId& p) const = 0;
    virtual ExtCost aggregate_conj(std::span<const ExtCost> costs) const = 0;
    virtual ExtCost aggregate_box(const AgentId& a, std::span<const ExtCost> costs) const = 0;

    virtual std::string name() const = 0;
};

using CostModelPtr = std::shared_ptr<const CostModel>;

/// Box nesting depth: k = 0, conj = max, box = 1 + max (empty max is 0).
CostModelPtr make_depth_model();

/// Number of atomic queries: k = 1, both aggregators sum (empty sum is 0).
CostModelPtr make_query_count_model();

/// Weighted interactions: conj = sum, box(a, X) = box_cost(a) + sum X, with
/// per-atom and per-agent constants from configuration; unlisted entries
/// default to 1. All values must be finite and nonnegative.
CostModelPtr make_weighted_model(std::vector<std::pair<AtomId, double>> atom_costs,
                                 std::vector<std::pair<AgentId, double>> box_costs);

/// Parses a cost-model configuration document:
///   { "model": "depth" | "query_count" | "weighted",
///     "atom_costs": {name: value}, "box_costs": {agent: value} }
/// The maps are only allowed for "weighted" and must reference declared
/// atoms/agents of `arena`.
CostModelPtr load_cost_config(std::string_view text, const GameArena& arena);

/// Parses a command-line cost spec: "depth", "query_count", "weighted", or
/// "weighted:PATH" where PATH is a config file as above.
CostModelPtr parse_cost_spec(std::string_view spec, const GameArena& arena);

/// Lower bound on the cost of any proof of phi (heuristic I). Finite for
/// every formula.
ExtCost heuristic_proof(const CostModel& model, const Formula& phi);

/// Lower bound on the cost of any disproof of phi (heuristic J). Finite for
/// every formula.
ExtCost heuristic_disproof(const CostModel& model, const Formula& phi);

/// Cost K of a complete proof or disproof. Atom nodes cost k(p); negation
/// passes its child through; conjunctions and boxes aggregate their
/// children. A proved conjunction of two syntactically identical conjuncts
/// is stored with one shared child, which contributes once per conjunct to
/// the aggregate.
ExtCost proof_cost(const CostModel& model, const ProofTree& tree);

}  // namespace mps

#endif
