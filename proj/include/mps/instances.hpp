#ifndef MPS_INSTANCES_HPP
#define MPS_INSTANCES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mps/arena.hpp"
#include "mps/cost.hpp"
#include "mps/engine.hpp"
#include "mps/formula.hpp"

namespace mps {

/// Deterministic generator. Reduction is by modulo so that streams do not
/// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : UINT64_C(0x9e3779b97f4a7c15)) {}

    std::uint64_t next();
    /// Uniform-ish value in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Uniform-ish value in [lo, hi].
    int range(int lo, int hi);
    bool chance(double p);

private:
    std::uint64_t state_;
};

struct InstanceBounds {
    int max_states = 6;
    int max_agents = 2;
    int max_atoms = 3;
    int max_density = 3;  // transitions per (state, agent)
    int max_formula_size = 8;
};

ExplicitArena random_arena(Rng& rng, const InstanceBounds& bounds);
FormulaPtr random_formula(Rng& rng, const GameArena& arena, int max_size);

/// A generated model-checking instance, self-contained for replay.
struct Instance {
    ExplicitArena arena;
    StateId root;
    FormulaPtr formula;
    CostModelPtr model;
    std::string model_spec;  // serialized cost config

    std::string describe() const;
};

Instance random_instance(Rng& rng, const InstanceBounds& bounds);

/// Pass-through arena that records which states were queried; used to
/// confirm the search never looks past the modal depth of the root formula.
class RecordingArena final : public GameArena {
public:
    explicit RecordingArena(const GameArena& inner) : inner_(inner) {}

    const std::vector<AtomId>& atoms() const override { return inner_.atoms(); }
    const std::vector<AgentId>& agents() const override { return inner_.agents(); }
    std::vector<StateId> successors(const StateId& q, const AgentId& a) const override;
    std::vector<AtomId> labels(const StateId& q) const override;

    const std::vector<StateId>& queried_states() const { return queried_; }

private:
    void record(const StateId& q) const;

    const GameArena& inner_;
    mutable std::vector<StateId> queried_;
};

/// Which checks to run on an instance beyond the core
/// verdict/minimality/validity battery.
struct CheckOptions {
    bool snapshot_checks = false;    // per-iteration monotonicity, lower bound,
                                     // solving characterization
    bool mutation_checks = true;     // corrupted proofs must be rejected
    bool corrupt_selection = false;  // negative control
    std::uint64_t size_bound_cap = UINT64_C(10) << 20;
};

struct Violation {
    std::string category;  // stable machine-checkable tag
    std::string message;
};

struct InstanceReport {
    std::vector<Violation> violations;
    std::uint64_t expansions = 0;
    std::uint64_t iterations = 0;
    bool mutation_applicable = false;

    bool ok() const { return violations.empty(); }
};

/// Runs one instance through the engine and validates every cross-module
/// property against the oracle. Violation categories: verdict_mismatch,
/// holds_mismatch, minimality, cost_identity, proof_invalid,
/// proof_mutation, admissibility, monotonicity, lower_bound, solving,
/// termination_bound, distance_bound, determinism, extraction.
InstanceReport run_instance_checks(const Instance& instance, const CheckOptions& options);

struct FuzzSummary {
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::vector<Violation> first_violations;  // of the first failing case
    std::string first_failure_instance;       // serialized for replay
    std::optional<std::uint64_t> first_failure_case;
};

/// Generates `cases` random instances from `seed` and runs the battery on
/// each.
FuzzSummary run_fuzz(std::uint64_t seed, std::uint64_t cases, const InstanceBounds& bounds,
                     const CheckOptions& options);

}  // namespace mps

#endif
