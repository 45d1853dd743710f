#include "ltlz/formula.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace ltlz {

Formula mk_var(std::string name) { return std::make_shared<const Node>(Node{Op::Var, std::move(name), nullptr, nullptr}); }
Formula mk_true() { return std::make_shared<const Node>(Node{Op::True, "", nullptr, nullptr}); }
Formula mk_false() { return std::make_shared<const Node>(Node{Op::False, "", nullptr, nullptr}); }
Formula mk_un(Op op, Formula a) { return std::make_shared<const Node>(Node{op, "", std::move(a), nullptr}); }
Formula mk_bin(Op op, Formula a, Formula b) {
    return std::make_shared<const Node>(Node{op, "", std::move(a), std::move(b)});
}

bool is_unary(Op op) {
    switch (op) {
    case Op::Not: case Op::NextF: case Op::NextP: case Op::BoxF: case Op::BoxP:
    case Op::BoxAll: case Op::DiaF: case Op::DiaP: case Op::DiaAll:
        return true;
    default:
        return false;
    }
}

bool is_binary(Op op) {
    return op == Op::And || op == Op::Or || op == Op::Implies || op == Op::Until || op == Op::Since;
}

bool equal(const Formula& a, const Formula& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->op != b->op || a->name != b->name) return false;
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

int node_count(const Formula& f) {
    if (!f) return 0;
    return 1 + node_count(f->lhs) + node_count(f->rhs);
}

// ---------------- lexer / parser ----------------

ParseError::ParseError(int l, int c, std::vector<std::string> exp, const std::string& found)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "syntax error at " << l << ":" << c << ": found " << found << ", expected one of:";
          for (auto& e : exp) os << " " << e;
          return os.str();
      }()),
      line(l), column(c), expected(std::move(exp)) {}

namespace {

enum class Tok { Atom, True, False, Not, UnOp, And, Or, Implies, Until, Since, LParen, RParen, End, Bad };

struct Token {
    Tok kind;
    std::string text;
    Op op = Op::Var;
    int line = 1, col = 1;
};

const std::vector<std::string> kOperandStart = {"atom", "true", "false", "(", "!", "nextF", "nextP",
                                                "boxF", "boxP", "box*", "diaF", "diaP", "dia*"};

class Lexer {
public:
    explicit Lexer(std::string_view s) : src_(s) {}

    Token next() {
        skip();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) {
            t.kind = Tok::End;
            t.text = "end of input";
            return t;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t b = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                adv();
            std::string w(src_.substr(b, pos_ - b));
            if ((w == "box" || w == "dia") && pos_ < src_.size() && src_[pos_] == '*') {
                adv();
                w += '*';
            }
            t.text = w;
            static const std::pair<const char*, Op> unops[] = {
                {"nextF", Op::NextF}, {"nextP", Op::NextP}, {"boxF", Op::BoxF}, {"boxP", Op::BoxP},
                {"box*", Op::BoxAll}, {"diaF", Op::DiaF}, {"diaP", Op::DiaP}, {"dia*", Op::DiaAll}};
            for (auto& [name, op] : unops)
                if (w == name) {
                    t.kind = Tok::UnOp;
                    t.op = op;
                    return t;
                }
            if (w == "true") t.kind = Tok::True;
            else if (w == "false") t.kind = Tok::False;
            else if (w == "U") t.kind = Tok::Until;
            else if (w == "S") t.kind = Tok::Since;
            else if (std::islower(static_cast<unsigned char>(w[0])) || w[0] == '_') t.kind = Tok::Atom;
            else t.kind = Tok::Bad;
            return t;
        }
        adv();
        t.text = std::string(1, c);
        switch (c) {
        case '!': t.kind = Tok::Not; break;
        case '&': t.kind = Tok::And; break;
        case '|': t.kind = Tok::Or; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '-':
            if (pos_ < src_.size() && src_[pos_] == '>') {
                adv();
                t.kind = Tok::Implies;
                t.text = "->";
            } else {
                t.kind = Tok::Bad;
            }
            break;
        default: t.kind = Tok::Bad;
        }
        return t;
    }

private:
    void adv() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) adv();
            else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') adv();
            } else break;
        }
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view s) : lex_(s) { cur_ = lex_.next(); }

    Formula run() {
        Formula f = implies();
        if (cur_.kind != Tok::End) fail({"&", "|", "->", "U", "S", "end of input"});
        return f;
    }

private:
    [[noreturn]] void fail(std::vector<std::string> exp) {
        std::string found = cur_.kind == Tok::End ? cur_.text : "'" + cur_.text + "'";
        throw ParseError(cur_.line, cur_.col, std::move(exp), found);
    }
    void eat() { cur_ = lex_.next(); }

    Formula implies() {
        Formula a = disj();
        if (cur_.kind == Tok::Implies) {
            eat();
            return mk_bin(Op::Implies, a, implies());
        }
        return a;
    }
    Formula disj() {
        Formula a = conj();
        while (cur_.kind == Tok::Or) {
            eat();
            a = mk_bin(Op::Or, a, conj());
        }
        return a;
    }
    Formula conj() {
        Formula a = until();
        while (cur_.kind == Tok::And) {
            eat();
            a = mk_bin(Op::And, a, until());
        }
        return a;
    }
    Formula until() {
        Formula a = unary();
        while (cur_.kind == Tok::Until || cur_.kind == Tok::Since) {
            Op op = cur_.kind == Tok::Until ? Op::Until : Op::Since;
            eat();
            a = mk_bin(op, a, unary());
        }
        return a;
    }
    Formula unary() {
        if (cur_.kind == Tok::Not) {
            eat();
            return mk_un(Op::Not, unary());
        }
        if (cur_.kind == Tok::UnOp) {
            Op op = cur_.op;
            eat();
            return mk_un(op, unary());
        }
        return primary();
    }
    Formula primary() {
        switch (cur_.kind) {
        case Tok::Atom: {
            Formula f = mk_var(cur_.text);
            eat();
            return f;
        }
        case Tok::True: eat(); return mk_true();
        case Tok::False: eat(); return mk_false();
        case Tok::LParen: {
            eat();
            Formula f = implies();
            if (cur_.kind != Tok::RParen) fail({")", "&", "|", "->", "U", "S"});
            eat();
            return f;
        }
        default: fail(kOperandStart);
        }
    }

    Lexer lex_;
    Token cur_;
};

int prec(const Formula& f) {
    switch (f->op) {
    case Op::Implies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Until: case Op::Since: return 4;
    default: return 5;
    }
}

const char* op_text(Op op) {
    switch (op) {
    case Op::Not: return "!";
    case Op::NextF: return "nextF";
    case Op::NextP: return "nextP";
    case Op::BoxF: return "boxF";
    case Op::BoxP: return "boxP";
    case Op::BoxAll: return "box*";
    case Op::DiaF: return "diaF";
    case Op::DiaP: return "diaP";
    case Op::DiaAll: return "dia*";
    case Op::And: return " & ";
    case Op::Or: return " | ";
    case Op::Implies: return " -> ";
    case Op::Until: return " U ";
    case Op::Since: return " S ";
    default: return "?";
    }
}

void print_rec(const Formula& f, std::string& out) {
    switch (f->op) {
    case Op::Var: out += f->name; return;
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    default: break;
    }
    auto sub = [&](const Formula& g, bool paren) {
        if (paren) out += '(';
        print_rec(g, out);
        if (paren) out += ')';
    };
    if (is_unary(f->op)) {
        bool paren = prec(f->lhs) < 5;
        out += op_text(f->op);
        if (f->op != Op::Not && !paren) out += ' ';
        sub(f->lhs, paren);
        return;
    }
    int p = prec(f);
    if (f->op == Op::Implies) {
        sub(f->lhs, prec(f->lhs) <= p);
        out += op_text(f->op);
        sub(f->rhs, prec(f->rhs) < p);
    } else {
        sub(f->lhs, prec(f->lhs) < p);
        out += op_text(f->op);
        sub(f->rhs, prec(f->rhs) <= p);
    }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Formula& f) {
    std::string out;
    print_rec(f, out);
    return out;
}

// ---------------- clausal model ----------------

Literal lit_atom(std::string a) { return Literal{{}, std::move(a)}; }
Literal lit_bottom() { return Literal{}; }
Literal lit_wrap(LitOp op, Literal l) {
    l.ops.insert(l.ops.begin(), op);
    return l;
}

void Clause::add_neg(const Literal& l) {
    for (auto& x : neg)
        if (x == l) return;
    neg.push_back(l);
}
void Clause::add_pos(const Literal& l) {
    for (auto& x : pos)
        if (x == l) return;
    pos.push_back(l);
}

bool class_leq(ClauseClass a, ClauseClass b) {
    if (a == b || a == ClauseClass::core || b == ClauseClass::boolean) return true;
    return false;
}

bool ops_leq(OpSet a, OpSet b) { return static_cast<int>(a) <= static_cast<int>(b); }

ClauseClass clause_class(const Clause& c) {
    size_t n = c.neg.size(), m = c.pos.size();
    if (n + m <= 2 && m <= 1) return ClauseClass::core;
    if (n + m <= 2) return ClauseClass::krom;
    if (m <= 1) return ClauseClass::horn;
    return ClauseClass::boolean;
}

ClauseClass class_join(ClauseClass a, ClauseClass b) {
    if (class_leq(a, b)) return b;
    if (class_leq(b, a)) return a;
    return ClauseClass::boolean;
}

std::string to_string(ClauseClass c) {
    switch (c) {
    case ClauseClass::core: return "core";
    case ClauseClass::krom: return "krom";
    case ClauseClass::horn: return "horn";
    default: return "bool";
    }
}

std::string to_string(OpSet o) {
    switch (o) {
    case OpSet::star: return "star";
    case OpSet::box: return "box";
    default: return "box_next";
    }
}

std::string to_string(const Fragment& f) {
    return to_string(f.cls) + "/" + to_string(f.ops) + (f.nonClausal ? " (initial clauses)" : "");
}

std::optional<ClauseClass> class_from_string(std::string_view s) {
    if (s == "core") return ClauseClass::core;
    if (s == "krom") return ClauseClass::krom;
    if (s == "horn") return ClauseClass::horn;
    if (s == "bool") return ClauseClass::boolean;
    return std::nullopt;
}

std::optional<OpSet> ops_from_string(std::string_view s) {
    if (s == "star") return OpSet::star;
    if (s == "box") return OpSet::box;
    if (s == "box_next") return OpSet::box_next;
    return std::nullopt;
}

static Op to_op(LitOp o) {
    switch (o) {
    case LitOp::NextF: return Op::NextF;
    case LitOp::NextP: return Op::NextP;
    case LitOp::BoxF: return Op::BoxF;
    case LitOp::BoxP: return Op::BoxP;
    default: return Op::BoxAll;
    }
}

Formula literal_formula(const Literal& l) {
    Formula f = l.bottom() ? mk_false() : mk_var(l.atom);
    for (auto it = l.ops.rbegin(); it != l.ops.rend(); ++it) f = mk_un(to_op(*it), f);
    return f;
}

Formula clause_formula(const Clause& c) {
    Formula f;
    auto add = [&](Formula g) { f = f ? mk_or(f, g) : g; };
    for (auto& l : c.neg) add(mk_not(literal_formula(l)));
    for (auto& l : c.pos) add(literal_formula(l));
    return f ? f : mk_false();
}

std::string print_literal(const Literal& l) { return print(literal_formula(l)); }
std::string print_clause(const Clause& c) { return print(clause_formula(c)); }

namespace {

struct Signed {
    bool neg;
    Literal lit;
};

std::optional<Signed> signed_of(const Formula& f) {
    switch (f->op) {
    case Op::Var: return Signed{false, lit_atom(f->name)};
    case Op::False: return Signed{false, lit_bottom()};
    case Op::True: return Signed{true, lit_bottom()};
    case Op::Not: {
        auto s = signed_of(f->lhs);
        if (!s) return std::nullopt;
        s->neg = !s->neg;
        return s;
    }
    case Op::NextF: case Op::NextP: {
        // nextF !x is identified with !nextF x
        auto s = signed_of(f->lhs);
        if (!s) return std::nullopt;
        s->lit = lit_wrap(f->op == Op::NextF ? LitOp::NextF : LitOp::NextP, s->lit);
        return s;
    }
    case Op::BoxF: case Op::BoxP: case Op::BoxAll: {
        auto s = signed_of(f->lhs);
        if (!s || s->neg) return std::nullopt;
        LitOp o = f->op == Op::BoxF ? LitOp::BoxF : f->op == Op::BoxP ? LitOp::BoxP : LitOp::BoxAll;
        s->lit = lit_wrap(o, s->lit);
        return s;
    }
    default: return std::nullopt;
    }
}

void flatten(const Formula& f, Op op, std::vector<Formula>& out) {
    if (f->op == op) {
        flatten(f->lhs, op, out);
        flatten(f->rhs, op, out);
    } else {
        out.push_back(f);
    }
}

std::optional<Clause> clause_of(const Formula& f) {
    Clause c;
    auto add = [&](const Signed& s, bool flip) {
        if (s.neg != flip) c.add_neg(s.lit);
        else c.add_pos(s.lit);
    };
    std::vector<Formula> body, head;
    if (f->op == Op::Implies) {
        flatten(f->lhs, Op::And, body);
        flatten(f->rhs, Op::Or, head);
    } else {
        flatten(f, Op::Or, head);
    }
    for (auto& g : body) {
        auto s = signed_of(g);
        if (!s) return std::nullopt;
        add(*s, true);
    }
    for (auto& g : head) {
        if (g->op == Op::False && f->op == Op::Implies && head.size() == 1) continue;  // a & b -> false
        auto s = signed_of(g);
        if (!s) return std::nullopt;
        add(*s, false);
    }
    return c;
}

}  // namespace

std::optional<Literal> literal_of(const Formula& f) {
    auto s = signed_of(f);
    if (!s || s->neg) return std::nullopt;
    return s->lit;
}

std::optional<ClausalForm> from_formula(const Formula& f) {
    ClausalForm cf;
    std::vector<Formula> parts;
    flatten(f, Op::And, parts);
    for (auto& g : parts) {
        if (g->op == Op::True) continue;
        if (g->op == Op::BoxAll) {
            if (auto c = clause_of(g->lhs)) {
                cf.boxed.push_back(*c);
                continue;
            }
        }
        if (auto s = signed_of(g)) {
            (s->neg ? cf.initialNeg : cf.initialPos).push_back(s->lit);
            continue;
        }
        if (auto c = clause_of(g)) {
            cf.initialClauses.push_back(*c);
            continue;
        }
        return std::nullopt;
    }
    return cf;
}

Formula to_formula(const ClausalForm& cf) {
    Formula f;
    auto add = [&](Formula g) { f = f ? mk_and(f, g) : g; };
    for (auto& l : cf.initialPos) add(literal_formula(l));
    for (auto& l : cf.initialNeg) add(mk_not(literal_formula(l)));
    for (auto& c : cf.initialClauses) add(clause_formula(c));
    for (auto& c : cf.boxed) add(mk_un(Op::BoxAll, clause_formula(c)));
    return f ? f : mk_true();
}

Fragment classify(const ClausalForm& cf) {
    Fragment fr;
    auto scan = [&](const Literal& l) {
        for (auto o : l.ops) {
            if (o == LitOp::NextF || o == LitOp::NextP) fr.ops = OpSet::box_next;
            else if ((o == LitOp::BoxF || o == LitOp::BoxP) && fr.ops == OpSet::star) fr.ops = OpSet::box;
        }
    };
    auto scan_clause = [&](const Clause& c) {
        fr.cls = class_join(fr.cls, clause_class(c));
        for (auto& l : c.neg) scan(l);
        for (auto& l : c.pos) scan(l);
    };
    for (auto& l : cf.initialPos) scan(l);
    for (auto& l : cf.initialNeg) scan(l);
    for (auto& c : cf.initialClauses) scan_clause(c);
    for (auto& c : cf.boxed) scan_clause(c);
    fr.nonClausal = !cf.initialClauses.empty();
    return fr;
}

int literal_size(const Literal& l) { return static_cast<int>(l.ops.size()) + 1; }

int clause_size(const Clause& c) {
    int k = static_cast<int>(c.width());
    if (k == 0) return 1;
    int s = k - 1;
    for (auto& l : c.neg) s += literal_size(l) + 1;
    for (auto& l : c.pos) s += literal_size(l);
    return s;
}

int size(const ClausalForm& cf) {
    int s = 0;
    for (auto& l : cf.initialPos) s += literal_size(l);
    for (auto& l : cf.initialNeg) s += literal_size(l) + 1;
    for (auto& c : cf.initialClauses) s += clause_size(c);
    for (auto& c : cf.boxed) s += clause_size(c);
    return s < 1 ? 1 : s;
}

void collect_atoms(const Clause& c, std::set<std::string>& out) {
    for (auto& l : c.neg)
        if (!l.bottom()) out.insert(l.atom);
    for (auto& l : c.pos)
        if (!l.bottom()) out.insert(l.atom);
}

std::set<std::string> atoms_of(const ClausalForm& cf) {
    std::set<std::string> out;
    for (auto& l : cf.initialPos)
        if (!l.bottom()) out.insert(l.atom);
    for (auto& l : cf.initialNeg)
        if (!l.bottom()) out.insert(l.atom);
    for (auto& c : cf.initialClauses) collect_atoms(c, out);
    for (auto& c : cf.boxed) collect_atoms(c, out);
    return out;
}

std::set<std::string> atoms_of(const Formula& f) {
    std::set<std::string> out;
    std::function<void(const Formula&)> go = [&](const Formula& g) {
        if (!g) return;
        if (g->op == Op::Var) out.insert(g->name);
        go(g->lhs);
        go(g->rhs);
    };
    go(f);
    return out;
}

}  // namespace ltlz
