#ifndef MPS_IDS_HPP
#define MPS_IDS_HPP

#include <compare>
#include <functional>
#include <string>
#include <utility>

namespace mps {

/// Name of a state label. Two AtomIds are equal iff their names are equal.
struct AtomId {
    std::string name;

    AtomId() = default;
    explicit AtomId(std::string n) : name(std::move(n)) {}

    auto operator<=>(const AtomId&) const = default;
};

/// Name of an agent (transition label).
struct AgentId {
    std::string name;

    AgentId() = default;
    explicit AgentId(std::string n) : name(std::move(n)) {}

    auto operator<=>(const AgentId&) const = default;
};

/// Canonical key of a game state. For explicit arenas this is the declared
/// state id; programmatic arenas use a serialized position. Equality of keys
/// is state identity, which is what search-node dedup compares.
struct StateId {
    std::string key;

    StateId() = default;
    explicit StateId(std::string k) : key(std::move(k)) {}

    auto operator<=>(const StateId&) const = default;
};

}  // namespace mps

template <>
struct std::hash<mps::AtomId> {
    std::size_t operator()(const mps::AtomId& a) const noexcept {
        return std::hash<std::string>{}(a.name);
    }
};

template <>
struct std::hash<mps::AgentId> {
    std::size_t operator()(const mps::AgentId& a) const noexcept {
        return std::hash<std::string>{}(a.name);
    }
};

template <>
struct std::hash<mps::StateId> {
    std::size_t operator()(const mps::StateId& s) const noexcept {
        return std::hash<std::string>{}(s.key);
    }
};

#endif
