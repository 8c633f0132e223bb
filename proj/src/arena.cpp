#include "mps/arena.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mps/errors.hpp"

namespace mps {

namespace {

using ordered_json = nlohmann::ordered_json;

// Translates a byte offset from the JSON parser into line/column.
std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

const ordered_json& require_field(const ordered_json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        throw InputError(std::string("arena document is missing field '") + key + "'");
    }
    return *it;
}

std::string require_string(const ordered_json& value, const char* what) {
    if (!value.is_string()) {
        throw InputError(std::string(what) + " must be a string");
    }
    return value.get<std::string>();
}

}  // namespace

bool GameArena::has_atom(const AtomId& p) const {
    const auto& all = atoms();
    return std::find(all.begin(), all.end(), p) != all.end();
}

bool GameArena::has_agent(const AgentId& a) const {
    const auto& all = agents();
    return std::find(all.begin(), all.end(), a) != all.end();
}

bool GameArena::state_satisfies(const StateId& q, const AtomId& p) const {
    const auto ls = labels(q);
    return std::find(ls.begin(), ls.end(), p) != ls.end();
}

void ExplicitArena::add_atom(std::string name) {
    if (atom_lookup_.count(name)) {
        throw InputError("duplicate atom '" + name + "'");
    }
    atom_lookup_.emplace(name, atoms_.size());
    atoms_.emplace_back(std::move(name));
}

void ExplicitArena::add_agent(std::string name) {
    if (agent_lookup_.count(name)) {
        throw InputError("duplicate agent '" + name + "'");
    }
    agent_lookup_.emplace(name, agents_.size());
    agents_.emplace_back(std::move(name));
    for (StateData& d : data_) {
        d.successors_by_agent.emplace_back();
    }
}

void ExplicitArena::add_state(std::string id, std::vector<std::string> label_names) {
    if (state_lookup_.count(id)) {
        throw InputError("duplicate state '" + id + "'");
    }
    StateData d;
    for (std::string& name : label_names) {
        auto it = atom_lookup_.find(name);
        if (it == atom_lookup_.end()) {
            throw InputError("state '" + id + "' references undeclared atom '" + name + "'");
        }
        AtomId atom = atoms_[it->second];
        if (std::find(d.labels.begin(), d.labels.end(), atom) == d.labels.end()) {
            d.labels.push_back(std::move(atom));
        }
    }
    d.successors_by_agent.resize(agents_.size());
    state_lookup_.emplace(id, states_.size());
    states_.emplace_back(std::move(id));
    data_.push_back(std::move(d));
}

void ExplicitArena::add_transition(const std::string& from, const std::string& agent,
                                   const std::string& to) {
    auto f = state_lookup_.find(from);
    if (f == state_lookup_.end()) {
        throw InputError("transition references undeclared state '" + from + "'");
    }
    auto t = state_lookup_.find(to);
    if (t == state_lookup_.end()) {
        throw InputError("transition references undeclared state '" + to + "'");
    }
    auto a = agent_lookup_.find(agent);
    if (a == agent_lookup_.end()) {
        throw InputError("transition references undeclared agent '" + agent + "'");
    }
    auto& succ = data_[f->second].successors_by_agent[a->second];
    const StateId& target = states_[t->second];
    if (std::find(succ.begin(), succ.end(), target) == succ.end()) {
        succ.push_back(target);
    }
}

void ExplicitArena::validate() const {
    if (agents_.empty()) {
        throw InputError("arena must declare at least one agent");
    }
    if (atoms_.empty()) {
        throw InputError("arena must declare at least one atom");
    }
}

std::size_t ExplicitArena::state_index(const StateId& q) const {
    auto it = state_lookup_.find(q.key);
    if (it == state_lookup_.end()) {
        throw InputError("unknown state '" + q.key + "'");
    }
    return it->second;
}

std::size_t ExplicitArena::agent_index(const AgentId& a) const {
    auto it = agent_lookup_.find(a.name);
    if (it == agent_lookup_.end()) {
        throw InputError("unknown agent '" + a.name + "'");
    }
    return it->second;
}

std::vector<StateId> ExplicitArena::successors(const StateId& q, const AgentId& a) const {
    return data_[state_index(q)].successors_by_agent[agent_index(a)];
}

std::vector<AtomId> ExplicitArena::labels(const StateId& q) const {
    return data_[state_index(q)].labels;
}

bool ExplicitArena::has_state(const StateId& q) const {
    return state_lookup_.count(q.key) != 0;
}

ExplicitArena load_arena(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(std::string("arena syntax error: ") + e.what(), line, col);
    }
    if (!doc.is_object()) {
        throw InputError("arena document must be an object");
    }

    ExplicitArena arena;
    for (const auto& atom : require_field(doc, "atoms")) {
        arena.add_atom(require_string(atom, "atom name"));
    }
    for (const auto& agent : require_field(doc, "agents")) {
        arena.add_agent(require_string(agent, "agent name"));
    }
    for (const auto& state : require_field(doc, "states")) {
        if (!state.is_object()) {
            throw InputError("state entries must be objects with 'id' and 'labels'");
        }
        std::vector<std::string> labels;
        if (auto it = state.find("labels"); it != state.end()) {
            for (const auto& l : *it) {
                labels.push_back(require_string(l, "state label"));
            }
        }
        arena.add_state(require_string(require_field(state, "id"), "state id"),
                        std::move(labels));
    }
    for (const auto& tr : require_field(doc, "transitions")) {
        if (!tr.is_object()) {
            throw InputError("transition entries must be objects with 'from', 'agent', 'to'");
        }
        arena.add_transition(require_string(require_field(tr, "from"), "transition 'from'"),
                             require_string(require_field(tr, "agent"), "transition 'agent'"),
                             require_string(require_field(tr, "to"), "transition 'to'"));
    }
    arena.validate();
    return arena;
}

ExplicitArena load_arena_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open arena file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_arena(buf.str());
}

std::string serialize_arena(const ExplicitArena& arena) {
    ordered_json doc;
    doc["atoms"] = ordered_json::array();
    for (const AtomId& p : arena.atoms()) doc["atoms"].push_back(p.name);
    doc["agents"] = ordered_json::array();
    for (const AgentId& a : arena.agents()) doc["agents"].push_back(a.name);

    doc["states"] = ordered_json::array();
    for (const StateId& q : arena.states()) {
        ordered_json s;
        s["id"] = q.key;
        s["labels"] = ordered_json::array();
        for (const AtomId& p : arena.labels(q)) s["labels"].push_back(p.name);
        doc["states"].push_back(std::move(s));
    }

    doc["transitions"] = ordered_json::array();
    for (const StateId& q : arena.states()) {
        for (const AgentId& a : arena.agents()) {
            for (const StateId& to : arena.successors(q, a)) {
                ordered_json t;
                t["from"] = q.key;
                t["agent"] = a.name;
                t["to"] = to.key;
                doc["transitions"].push_back(std::move(t));
            }
        }
    }
    return doc.dump(2) + "\n";
}

}  // namespace mps
