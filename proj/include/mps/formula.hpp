#ifndef MPS_FORMULA_HPP
#define MPS_FORMULA_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "mps/arena.hpp"
#include "mps/ids.hpp"

namespace mps {

enum class FormulaKind : std::uint8_t { Atom, Not, And, Box };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable modal formula over the four core constructors. Disjunction and
/// diamond exist only as surface syntax and are desugared by the parser:
///   x | y   becomes  !(!x & !y)
///   <a> x   becomes  ![a]!x
class Formula {
public:
    static FormulaPtr atom(AtomId p);
    static FormulaPtr negation(FormulaPtr inner);
    static FormulaPtr conjunction(FormulaPtr left, FormulaPtr right);
    static FormulaPtr box(AgentId agent, FormulaPtr inner);

    FormulaKind kind() const { return kind_; }

    const AtomId& atom_id() const { return atom_; }    // Atom only
    const AgentId& agent() const { return agent_; }    // Box only
    const FormulaPtr& child() const { return left_; }  // Not, Box
    const FormulaPtr& left() const { return left_; }   // And
    const FormulaPtr& right() const { return right_; } // And

    /// Number of AST nodes.
    int size() const { return size_; }
    /// Maximum box nesting.
    int modal_depth() const { return modal_depth_; }

private:
    Formula() = default;

    FormulaKind kind_ = FormulaKind::Atom;
    AtomId atom_;
    AgentId agent_;
    FormulaPtr left_;
    FormulaPtr right_;
    int size_ = 1;
    int modal_depth_ = 0;
};

/// Structural equality on the core AST. This is the formula identity used
/// by the exploration-tree dedup rules.
bool structurally_equal(const Formula& a, const Formula& b);
inline bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
    return structurally_equal(*a, *b);
}

int modal_depth(const Formula& phi);

/// Parses the surface grammar
///
///   formula := disj
///   disj    := conj ('|' conj)*
///   conj    := unary ('&' unary)*
///   unary   := '!' unary | '[' ident ']' unary | '<' ident '>' unary
///            | atom | '(' formula ')'
///   atom    := ident                       ident := [A-Za-z_][A-Za-z0-9_]*
///
/// into the desugared core AST. Atom and agent names must resolve against
/// `arena`; failures raise ParseError (syntax, with position) or InputError
/// (unknown name).
FormulaPtr parse_formula(std::string_view text, const GameArena& arena);

/// Canonical rendering; parse_formula(to_string(phi)) reproduces the AST.
std::string to_string(const Formula& phi);
inline std::string to_string(const FormulaPtr& phi) { return to_string(*phi); }

}  // namespace mps

#endif
