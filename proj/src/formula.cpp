#include "mps/formula.hpp"

#include <algorithm>
#include <cctype>

#include "mps/errors.hpp"

namespace mps {

FormulaPtr Formula::atom(AtomId p) {
    auto n = std::shared_ptr<Formula>(new Formula());
    n->kind_ = FormulaKind::Atom;
    n->atom_ = std::move(p);
    n->size_ = 1;
    n->modal_depth_ = 0;
    return n;
}

FormulaPtr Formula::negation(FormulaPtr inner) {
    auto n = std::shared_ptr<Formula>(new Formula());
    n->kind_ = FormulaKind::Not;
    n->size_ = 1 + inner->size_;
    n->modal_depth_ = inner->modal_depth_;
    n->left_ = std::move(inner);
    return n;
}

FormulaPtr Formula::conjunction(FormulaPtr left, FormulaPtr right) {
    auto n = std::shared_ptr<Formula>(new Formula());
    n->kind_ = FormulaKind::And;
    n->size_ = 1 + left->size_ + right->size_;
    n->modal_depth_ = std::max(left->modal_depth_, right->modal_depth_);
    n->left_ = std::move(left);
    n->right_ = std::move(right);
    return n;
}

FormulaPtr Formula::box(AgentId agent, FormulaPtr inner) {
    auto n = std::shared_ptr<Formula>(new Formula());
    n->kind_ = FormulaKind::Box;
    n->agent_ = std::move(agent);
    n->size_ = 1 + inner->size_;
    n->modal_depth_ = 1 + inner->modal_depth_;
    n->left_ = std::move(inner);
    return n;
}

bool structurally_equal(const Formula& a, const Formula& b) {
    if (&a == &b) return true;
    if (a.kind() != b.kind() || a.size() != b.size()) return false;
    switch (a.kind()) {
        case FormulaKind::Atom:
            return a.atom_id() == b.atom_id();
        case FormulaKind::Not:
            return structurally_equal(*a.child(), *b.child());
        case FormulaKind::And:
            return structurally_equal(*a.left(), *b.left()) &&
                   structurally_equal(*a.right(), *b.right());
        case FormulaKind::Box:
            return a.agent() == b.agent() && structurally_equal(*a.child(), *b.child());
    }
    return false;
}

int modal_depth(const Formula& phi) { return phi.modal_depth(); }

namespace {

class Parser {
public:
    Parser(std::string_view text, const GameArena& arena) : text_(text), arena_(arena) {}

    FormulaPtr parse() {
        FormulaPtr phi = parse_disj();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        return phi;
    }

private:
    // disj := conj ('|' conj)*   desugared as  x | y  ->  !(!x & !y)
    FormulaPtr parse_disj() {
        FormulaPtr lhs = parse_conj();
        while (eat('|')) {
            FormulaPtr rhs = parse_conj();
            lhs = Formula::negation(Formula::conjunction(Formula::negation(std::move(lhs)),
                                                         Formula::negation(std::move(rhs))));
        }
        return lhs;
    }

    FormulaPtr parse_conj() {
        FormulaPtr lhs = parse_unary();
        while (eat('&')) {
            lhs = Formula::conjunction(std::move(lhs), parse_unary());
        }
        return lhs;
    }

    FormulaPtr parse_unary() {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail("unexpected end of formula");
        }
        char c = text_[pos_];
        if (c == '!') {
            ++pos_;
            return Formula::negation(parse_unary());
        }
        if (c == '[') {
            ++pos_;
            AgentId agent = parse_agent();
            expect(']');
            return Formula::box(std::move(agent), parse_unary());
        }
        if (c == '<') {
            ++pos_;
            AgentId agent = parse_agent();
            expect('>');
            // <a> x  ->  ![a]!x
            return Formula::negation(
                Formula::box(std::move(agent), Formula::negation(parse_unary())));
        }
        if (c == '(') {
            ++pos_;
            FormulaPtr phi = parse_disj();
            expect(')');
            return phi;
        }
        if (is_ident_start(c)) {
            std::string name = parse_ident();
            AtomId atom{name};
            if (!arena_.has_atom(atom)) {
                throw InputError("unknown atom '" + name + "'");
            }
            return Formula::atom(std::move(atom));
        }
        fail("expected '!', '[', '<', '(' or an atom");
    }

    AgentId parse_agent() {
        skip_ws();
        if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) {
            fail("expected an agent name");
        }
        std::string name = parse_ident();
        AgentId agent{name};
        if (!arena_.has_agent(agent)) {
            throw InputError("unknown agent '" + name + "'");
        }
        return agent;
    }

    std::string parse_ident() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    static bool is_ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool is_ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("formula syntax error: " + msg, 1,
                         static_cast<int>(pos_) + 1);
    }

    std::string_view text_;
    const GameArena& arena_;
    std::size_t pos_ = 0;
};

// Parenthesization: '&' is the only binary operator left in the core AST
// and it is left-associative, so a right operand that is itself a
// conjunction needs parentheses, as does any conjunction under a unary
// operator.
void print(const Formula& phi, std::string& out, bool parenthesize_and) {
    const bool need_parens = parenthesize_and && phi.kind() == FormulaKind::And;
    if (need_parens) out += '(';
    switch (phi.kind()) {
        case FormulaKind::Atom:
            out += phi.atom_id().name;
            break;
        case FormulaKind::Not:
            out += '!';
            print(*phi.child(), out, true);
            break;
        case FormulaKind::Box:
            out += '[';
            out += phi.agent().name;
            out += ']';
            print(*phi.child(), out, true);
            break;
        case FormulaKind::And:
            print(*phi.left(), out, false);
            out += " & ";
            print(*phi.right(), out, true);
            break;
    }
    if (need_parens) out += ')';
}

}  // namespace

FormulaPtr parse_formula(std::string_view text, const GameArena& arena) {
    return Parser(text, arena).parse();
}

std::string to_string(const Formula& phi) {
    std::string out;
    print(phi, out, false);
    return out;
}

}  // namespace mps
