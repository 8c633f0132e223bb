#ifndef MPS_ARENA_HPP
#define MPS_ARENA_HPP

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mps/ids.hpp"

namespace mps {

/// A game arena: states labelled with atoms, transitions labelled with
/// agents. Successor sets are finite and duplicate-free; their order is
/// deterministic (declaration order for explicit arenas, emission order
/// for programmatic ones) so that searches are reproducible.
///
/// Implementations must be immutable after construction. Read-only queries
/// are expected to be safe from concurrent searches; an implementation that
/// cannot guarantee this must say so.
class GameArena {
public:
    virtual ~GameArena() = default;

    /// The atom universe, non-empty.
    virtual const std::vector<AtomId>& atoms() const = 0;

    /// The agent universe, non-empty and finite.
    virtual const std::vector<AgentId>& agents() const = 0;

    /// States reachable from `q` by one `a`-move, deduplicated, in a fixed
    /// order. Empty when the agent has no moves. Throws InputError for an
    /// unknown state or agent.
    virtual std::vector<StateId> successors(const StateId& q, const AgentId& a) const = 0;

    /// Labels of `q`, a subset of atoms(). Throws InputError for an unknown
    /// state.
    virtual std::vector<AtomId> labels(const StateId& q) const = 0;

    bool has_atom(const AtomId& p) const;
    bool has_agent(const AgentId& a) const;
    bool state_satisfies(const StateId& q, const AtomId& p) const;
};

/// An arena with explicitly enumerated states and transitions, as loaded
/// from an arena file or built in memory.
class ExplicitArena final : public GameArena {
public:
    ExplicitArena() = default;

    // Builder interface; declaration order fixes iteration/successor order.
    void add_atom(std::string name);
    void add_agent(std::string name);
    void add_state(std::string id, std::vector<std::string> label_names);
    void add_transition(const std::string& from, const std::string& agent,
                        const std::string& to);

    /// Checks the arena-level invariants (non-empty agents and atoms).
    /// Reference errors are raised eagerly by the builder calls.
    void validate() const;

    const std::vector<AtomId>& atoms() const override { return atoms_; }
    const std::vector<AgentId>& agents() const override { return agents_; }
    std::vector<StateId> successors(const StateId& q, const AgentId& a) const override;
    std::vector<AtomId> labels(const StateId& q) const override;

    const std::vector<StateId>& states() const { return states_; }
    bool has_state(const StateId& q) const;

private:
    struct StateData {
        std::vector<AtomId> labels;                             // declaration order
        std::vector<std::vector<StateId>> successors_by_agent;  // indexed like agents_
    };

    std::size_t state_index(const StateId& q) const;  // throws InputError
    std::size_t agent_index(const AgentId& a) const;  // throws InputError

    std::vector<AtomId> atoms_;
    std::vector<AgentId> agents_;
    std::vector<StateId> states_;
    std::vector<StateData> data_;
    std::unordered_map<std::string, std::size_t> atom_lookup_;
    std::unordered_map<std::string, std::size_t> agent_lookup_;
    std::unordered_map<std::string, std::size_t> state_lookup_;
};

/// Parses the JSON arena format:
///
///   { "atoms": [...], "agents": [...],
///     "states": [{"id": ..., "labels": [...]}, ...],
///     "transitions": [{"from": ..., "agent": ..., "to": ...}, ...] }
///
/// Declaration order is significant: it fixes successor order. Rejects
/// references to undeclared states, agents or atoms.
ExplicitArena load_arena(std::string_view text);

/// Reads the file and delegates to load_arena.
ExplicitArena load_arena_file(const std::string& path);

/// Canonical textual form; load_arena(serialize_arena(a)) reproduces `a`.
std::string serialize_arena(const ExplicitArena& arena);

}  // namespace mps

#endif
