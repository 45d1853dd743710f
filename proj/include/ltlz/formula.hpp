#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ltlz {

enum class Op {
    Var, True, False, Not, And, Or, Implies, Until, Since,
    NextF, NextP, BoxF, BoxP, BoxAll, DiaF, DiaP, DiaAll
};

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
    Op op;
    std::string name;  // Var only
    Formula lhs, rhs;  // unary ops use lhs
};

Formula mk_var(std::string name);
Formula mk_true();
Formula mk_false();
Formula mk_un(Op op, Formula a);
Formula mk_bin(Op op, Formula a, Formula b);
inline Formula mk_not(Formula a) { return mk_un(Op::Not, std::move(a)); }
inline Formula mk_and(Formula a, Formula b) { return mk_bin(Op::And, std::move(a), std::move(b)); }
inline Formula mk_or(Formula a, Formula b) { return mk_bin(Op::Or, std::move(a), std::move(b)); }

bool is_unary(Op op);
bool is_binary(Op op);
bool equal(const Formula& a, const Formula& b);
int node_count(const Formula& f);

struct ParseError : std::runtime_error {
    int line, column;
    std::vector<std::string> expected;
    ParseError(int l, int c, std::vector<std::string> exp, const std::string& found);
};

Formula parse(std::string_view text);
std::string print(const Formula& f);

// ---- clausal data model ----

enum class LitOp : unsigned char { NextF, NextP, BoxF, BoxP, BoxAll };

// A positive temporal literal: a stack of operators over an atom or bottom.
struct Literal {
    std::vector<LitOp> ops;  // outermost first
    std::string atom;        // empty means bottom

    bool bottom() const { return atom.empty(); }
    auto operator<=>(const Literal&) const = default;
    bool operator==(const Literal&) const = default;
};

Literal lit_atom(std::string a);
Literal lit_bottom();
Literal lit_wrap(LitOp op, Literal l);

struct Clause {
    std::vector<Literal> neg, pos;

    void add_neg(const Literal& l);
    void add_pos(const Literal& l);
    size_t width() const { return neg.size() + pos.size(); }
    auto operator<=>(const Clause&) const = default;
    bool operator==(const Clause&) const = default;
};

struct ClausalForm {
    std::vector<Literal> initialPos, initialNeg;
    std::vector<Clause> initialClauses;  // non-boxed clauses, gadget extension
    std::vector<Clause> boxed;
};

enum class ClauseClass { core, krom, horn, boolean };
enum class OpSet { star, box, box_next };

struct Fragment {
    ClauseClass cls = ClauseClass::core;
    OpSet ops = OpSet::star;
    bool nonClausal = false;
};

// partial order: core below krom and horn, both below boolean
bool class_leq(ClauseClass a, ClauseClass b);
bool ops_leq(OpSet a, OpSet b);
ClauseClass clause_class(const Clause& c);
ClauseClass class_join(ClauseClass a, ClauseClass b);

std::string to_string(ClauseClass c);
std::string to_string(OpSet o);
std::string to_string(const Fragment& f);
std::optional<ClauseClass> class_from_string(std::string_view s);
std::optional<OpSet> ops_from_string(std::string_view s);

Formula literal_formula(const Literal& l);
Formula clause_formula(const Clause& c);
std::string print_literal(const Literal& l);
std::string print_clause(const Clause& c);

// Recognizes formulas already shaped as clausal forms.
std::optional<ClausalForm> from_formula(const Formula& f);
std::optional<Literal> literal_of(const Formula& f);
Formula to_formula(const ClausalForm& cf);

Fragment classify(const ClausalForm& cf);
int size(const ClausalForm& cf);
int literal_size(const Literal& l);
int clause_size(const Clause& c);

std::set<std::string> atoms_of(const ClausalForm& cf);
void collect_atoms(const Clause& c, std::set<std::string>& out);
std::set<std::string> atoms_of(const Formula& f);

}  // namespace ltlz
