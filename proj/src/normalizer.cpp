#include "ltlz/normalizer.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltlz {

std::string NameSupply::next(const std::string& prefix) {
    int& c = counters_[prefix];
    std::string n;
    do {
        n = prefix + std::to_string(c++);
    } while (used_.count(n));
    used_.insert(n);
    return n;
}

std::string NameSupply::exact_or_next(const std::string& name) {
    if (!used_.count(name)) {
        used_.insert(name);
        return name;
    }
    return next(name);
}

// ---------------- clausal normal form ----------------

namespace {

enum Pol { kPos = 1, kNeg = 2, kBoth = 3 };

Pol flip(Pol p) { return p == kPos ? kNeg : p == kNeg ? kPos : kBoth; }

struct SLit {
    bool neg;
    Literal lit;
};

SLit negate(SLit s) {
    s.neg = !s.neg;
    return s;
}

void add_lit(Clause& c, const SLit& s) {
    if (s.neg) c.add_neg(s.lit);
    else c.add_pos(s.lit);
}

std::optional<SLit> exact_literal(const Formula& f) {
    // literal shapes recognized by the clausal reader
    if (f->op == Op::Not) {
        auto s = exact_literal(f->lhs);
        if (s) s->neg = !s->neg;
        return s;
    }
    if (auto l = literal_of(f)) return SLit{false, *l};
    if ((f->op == Op::NextF || f->op == Op::NextP)) {
        auto s = exact_literal(f->lhs);
        if (!s) return std::nullopt;
        s->lit = lit_wrap(f->op == Op::NextF ? LitOp::NextF : LitOp::NextP, s->lit);
        return s;
    }
    if (f->op == Op::True) return SLit{true, lit_bottom()};
    return std::nullopt;
}

class Renamer {
public:
    Renamer(ClausalForm& out, NameSupply& names) : out_(out), names_(names) {}

    SLit enc(const Formula& f, Pol pol) {
        if (auto s = exact_literal(f)) return *s;
        switch (f->op) {
        case Op::Not: return negate(enc(f->lhs, flip(pol)));
        case Op::NextF:
        case Op::NextP: {
            SLit c = enc(f->lhs, pol);
            c.lit = lit_wrap(f->op == Op::NextF ? LitOp::NextF : LitOp::NextP, c.lit);
            return c;
        }
        case Op::BoxF:
        case Op::BoxP:
        case Op::BoxAll: {
            Literal c = positive(enc(f->lhs, pol), pol);
            LitOp o = f->op == Op::BoxF ? LitOp::BoxF : f->op == Op::BoxP ? LitOp::BoxP : LitOp::BoxAll;
            return SLit{false, lit_wrap(o, c)};
        }
        case Op::DiaF:
        case Op::DiaP:
        case Op::DiaAll: {
            LitOp o = f->op == Op::DiaF ? LitOp::BoxF : f->op == Op::DiaP ? LitOp::BoxP : LitOp::BoxAll;
            Literal c = complement(enc(f->lhs, pol));
            flush_comp();
            return SLit{true, lit_wrap(o, c)};
        }
        case Op::And:
        case Op::Or:
        case Op::Implies: return boolean(f, pol);
        case Op::Until:
        case Op::Since: return temporal(f, pol);
        default: break;
        }
        throw std::logic_error("unexpected node in renaming");
    }

    void box(const Clause& c) { out_.boxed.push_back(c); }

private:
    std::string fresh() { return names_.next("_r"); }

    // positive literal standing for s in the directions that pol needs
    Literal positive(const SLit& s, Pol pol) {
        if (!s.neg) return s.lit;
        Literal y = lit_atom(fresh());
        if (pol & kPos) {  // y -> s
            Clause c;
            c.add_neg(y);
            add_lit(c, s);
            box(c);
        }
        if (pol & kNeg) {  // s -> y
            Clause c;
            c.add_pos(y);
            add_lit(c, negate(s));
            box(c);
        }
        return y;
    }

    // positive literal equivalent to the negation of s
    Literal complement(const SLit& s) {
        if (s.neg) return s.lit;
        Literal n = lit_atom(names_.next("_nq"));
        Clause a, b;
        a.add_neg(s.lit);
        a.add_neg(n);
        b.add_pos(s.lit);
        b.add_pos(n);
        comp_.push_back(a);
        comp_.push_back(b);
        return n;
    }

    void flush_comp() {
        for (auto& c : comp_) box(c);
        comp_.clear();
    }

    SLit boolean(const Formula& f, Pol pol) {
        Pol lp = f->op == Op::Implies ? flip(pol) : pol;
        SLit a = enc(f->lhs, lp);
        SLit b = enc(f->rhs, pol);
        if (f->op == Op::Implies) a = negate(a);  // a -> b  ==  !a | b
        Literal x = lit_atom(fresh());
        bool conj = f->op == Op::And;
        if (pol & kPos) {
            if (conj) {
                for (auto& s : {a, b}) {
                    Clause c;
                    c.add_neg(x);
                    add_lit(c, s);
                    box(c);
                }
            } else {
                Clause c;
                c.add_neg(x);
                add_lit(c, a);
                add_lit(c, b);
                box(c);
            }
        }
        if (pol & kNeg) {
            if (conj) {
                Clause c;
                c.add_pos(x);
                add_lit(c, negate(a));
                add_lit(c, negate(b));
                box(c);
            } else {
                for (auto& s : {a, b}) {
                    Clause c;
                    c.add_pos(x);
                    add_lit(c, negate(s));
                    box(c);
                }
            }
        }
        return SLit{false, x};
    }

    // x -> a U b by unfolding plus eventuality; a U b -> x by the least
    // fixpoint inequation. Since is the mirror image.
    SLit temporal(const Formula& f, Pol pol) {
        bool fut = f->op == Op::Until;
        LitOp nx = fut ? LitOp::NextF : LitOp::NextP;
        LitOp bx = fut ? LitOp::BoxF : LitOp::BoxP;
        SLit a = enc(f->lhs, pol);
        SLit b = enc(f->rhs, pol);
        Literal x = lit_atom(fresh());
        auto next = [&](SLit s) {
            s.lit = lit_wrap(nx, s.lit);
            return s;
        };
        SLit nxx{false, lit_wrap(nx, x)};
        if (pol & kPos) {
            Clause c1, c2, c3;
            c1.add_neg(x);
            add_lit(c1, next(b));
            add_lit(c1, next(a));
            c2.add_neg(x);
            add_lit(c2, next(b));
            add_lit(c2, nxx);
            c3.add_neg(x);
            c3.add_neg(lit_wrap(bx, complement(b)));
            box(c1);
            box(c2);
            box(c3);
            flush_comp();
        }
        if (pol & kNeg) {
            Clause c1, c2;
            c1.add_pos(x);
            add_lit(c1, negate(next(b)));
            c2.add_pos(x);
            add_lit(c2, negate(next(a)));
            add_lit(c2, negate(nxx));
            box(c1);
            box(c2);
        }
        return SLit{false, x};
    }

    ClausalForm& out_;
    NameSupply& names_;
    std::vector<Clause> comp_;
};

void flatten_and(const Formula& f, std::vector<Formula>& out) {
    if (f->op == Op::And) {
        flatten_and(f->lhs, out);
        flatten_and(f->rhs, out);
    } else {
        out.push_back(f);
    }
}

}  // namespace

ClausalForm to_clausal_nf(const Formula& f) {
    NameSupply names(atoms_of(f));
    if (auto cf = from_formula(f)) {
        if (cf->initialClauses.empty()) return *cf;
        ClausalForm out = *cf;
        out.initialClauses.clear();
        for (auto& c : cf->initialClauses) {
            Literal r = lit_atom(names.next("_r"));
            out.initialPos.push_back(r);
            Clause b = c;
            b.neg.insert(b.neg.begin(), r);
            out.boxed.push_back(b);
        }
        return out;
    }
    ClausalForm out;
    Renamer ren(out, names);
    std::vector<Formula> parts;
    flatten_and(f, parts);
    for (auto& g : parts) {
        if (auto one = from_formula(g); one && one->initialClauses.empty()) {
            for (auto& l : one->initialPos) out.initialPos.push_back(l);
            for (auto& l : one->initialNeg) out.initialNeg.push_back(l);
            for (auto& c : one->boxed) out.boxed.push_back(c);
            continue;
        }
        if (g->op == Op::BoxAll) {
            SLit s = ren.enc(g->lhs, kPos);
            Clause c;
            add_lit(c, s);
            ren.box(c);
            continue;
        }
        SLit s = ren.enc(g, kPos);
        (s.neg ? out.initialNeg : out.initialPos).push_back(s.lit);
    }
    // fresh definitions were appended while renaming; keep the initial
    // literals first for readability
    return out;
}

// ---------------- restricted form ----------------

namespace {

class Flattener {
public:
    Flattener(OpSet target, NameSupply& names, std::vector<Clause>& extra)
        : target_(target), names_(names), extra_(extra) {}

    // Flat literal equivalent to l (bottom stays bottom).
    Literal flat(const Literal& l) {
        if (l.bottom()) return l;
        if (target_ == OpSet::star) {
            if (l.ops.empty()) return l;
            return lit_wrap(LitOp::BoxAll, lit_atom(l.atom));  // box* box* p == box* p
        }
        Literal cur = lit_atom(l.atom);
        for (auto it = l.ops.rbegin(); it != l.ops.rend(); ++it) {
            switch (*it) {
            case LitOp::BoxAll:
                cur = apply(LitOp::BoxP, cur);
                cur = apply(LitOp::BoxF, cur);
                break;
            case LitOp::NextP: cur = past(cur); break;
            default: cur = apply(*it, cur);
            }
        }
        return cur;
    }

private:
    Literal atomize(const Literal& l) {
        if (l.ops.empty()) return l;
        auto it = abbrev_.find(l);
        if (it != abbrev_.end()) return lit_atom(it->second);
        std::string s = names_.next("_s");
        abbrev_[l] = s;
        Clause a, b;
        a.add_neg(lit_atom(s));
        a.add_pos(l);
        b.add_pos(lit_atom(s));
        b.add_neg(l);
        extra_.push_back(a);
        extra_.push_back(b);
        return lit_atom(s);
    }

    Literal apply(LitOp o, const Literal& cur) { return lit_wrap(o, atomize(cur)); }

    // nextP l becomes a fresh a with box*(nextF a -> l) and box*(l -> nextF a)
    Literal past(const Literal& cur) {
        Literal base = atomize(cur);
        auto it = prev_.find(base.atom);
        if (it != prev_.end()) return lit_atom(it->second);
        std::string a = names_.next("_s");
        prev_[base.atom] = a;
        Literal na = lit_wrap(LitOp::NextF, lit_atom(a));
        Clause c1, c2;
        c1.add_neg(na);
        c1.add_pos(base);
        c2.add_neg(base);
        c2.add_pos(na);
        extra_.push_back(c1);
        extra_.push_back(c2);
        return lit_atom(a);
    }

    OpSet target_;
    NameSupply& names_;
    std::vector<Clause>& extra_;
    std::map<Literal, std::string> abbrev_;
    std::map<std::string, std::string> prev_;
};

// flattened clause, or nullopt when it is trivially true
std::optional<Clause> flat_clause(const Clause& c, Flattener& fl) {
    Clause out;
    for (auto& l : c.neg) {
        Literal f = fl.flat(l);
        if (f.bottom()) return std::nullopt;  // !bottom is true
        out.add_neg(f);
    }
    for (auto& l : c.pos) {
        Literal f = fl.flat(l);
        if (f.bottom()) continue;
        out.add_pos(f);
    }
    for (auto& n : out.neg)
        for (auto& p : out.pos)
            if (n == p) return std::nullopt;
    return out;
}

}  // namespace

RestrictedForm to_restricted(const ClausalForm& cf, Fragment target) {
    Fragment fr = classify(cf);
    if (!class_leq(fr.cls, target.cls))
        throw std::invalid_argument("clause class " + to_string(fr.cls) + " exceeds target " + to_string(target.cls));
    if (!ops_leq(fr.ops, target.ops))
        throw std::invalid_argument("operators of " + to_string(fr.ops) + " not available in target " +
                                    to_string(target.ops));

    NameSupply names(atoms_of(cf));
    RestrictedForm rf;
    rf.opSet = target.ops;
    std::vector<Clause> raw = cf.boxed;
    if (!cf.initialPos.empty() || !cf.initialNeg.empty()) {
        std::string p = names.exact_or_next("_p");
        rf.psi.insert(p);
        for (auto& l : cf.initialPos) {
            Clause c;
            c.add_neg(lit_atom(p));
            c.add_pos(l);
            raw.push_back(c);
        }
        for (auto& l : cf.initialNeg) {
            Clause c;
            c.add_neg(lit_atom(p));
            c.add_neg(l);
            raw.push_back(c);
        }
    }

    std::vector<Clause> extra;
    Flattener fl(target.ops, names, extra);
    std::vector<Clause> out;
    auto push = [&](std::vector<Clause>& dst, const Clause& c) {
        if (std::find(dst.begin(), dst.end(), c) == dst.end()) dst.push_back(c);
    };
    for (auto& c : raw)
        if (auto f = flat_clause(c, fl)) push(out, *f);
    for (auto& c : cf.initialClauses) {
        if (auto f = flat_clause(c, fl)) push(rf.initial, *f);
    }
    for (size_t i = 0; i < extra.size(); ++i) push(out, extra[i]);

    rf.cls = ClauseClass::core;
    for (auto& c : out) {
        rf.cls = class_join(rf.cls, clause_class(c));
        rf.phiAll.push_back(c);
        if (c.pos.empty()) rf.phiNeg.push_back(c);
        else rf.phiPos.push_back(c);
    }
    for (auto& c : rf.initial) rf.cls = class_join(rf.cls, clause_class(c));
    return rf;
}

ClausalForm restricted_to_clausal(const RestrictedForm& rf) {
    ClausalForm cf;
    for (auto& p : rf.psi) cf.initialPos.push_back(lit_atom(p));
    cf.initialClauses = rf.initial;
    cf.boxed = rf.phiAll;
    return cf;
}

std::set<std::string> atoms_of(const RestrictedForm& rf) {
    std::set<std::string> out(rf.psi.begin(), rf.psi.end());
    for (auto& c : rf.phiAll) collect_atoms(c, out);
    for (auto& c : rf.initial) collect_atoms(c, out);
    return out;
}

int size(const RestrictedForm& rf) { return size(restricted_to_clausal(rf)); }

// ---------------- surrogates ----------------

AbstractedForm abstract(const RestrictedForm& rf) {
    AbstractedForm af;
    std::set<std::string> used = atoms_of(rf);
    auto sur = [&](const Literal& l) -> Literal {
        if (l.ops.empty() || l.ops[0] == LitOp::NextF || l.bottom()) return l;
        if (l.ops.size() != 1 || (l.ops[0] != LitOp::BoxF && l.ops[0] != LitOp::BoxP))
            throw std::invalid_argument("abstract: literal is not flat: " + print_literal(l));
        auto it = af.surrogateOf.find(l);
        if (it != af.surrogateOf.end()) return lit_atom(it->second);
        std::string n = (l.ops[0] == LitOp::BoxF ? "s_F" : "s_P") + l.atom;
        while (used.count(n)) n += "_";
        used.insert(n);
        af.surrogateOf[l] = n;
        af.literalOf[n] = l;
        return lit_atom(n);
    };
    for (auto& c : rf.phiAll) {
        Clause o;
        for (auto& l : c.neg) o.add_neg(sur(l));
        for (auto& l : c.pos) o.add_pos(sur(l));
        af.clauses.push_back(o);
    }
    return af;
}

std::vector<Clause> concretize(const AbstractedForm& af) {
    auto back = [&](const Literal& l) {
        if (l.ops.empty()) {
            auto it = af.literalOf.find(l.atom);
            if (it != af.literalOf.end()) return it->second;
        }
        return l;
    };
    std::vector<Clause> out;
    for (auto& c : af.clauses) {
        Clause o;
        for (auto& l : c.neg) o.add_neg(back(l));
        for (auto& l : c.pos) o.add_pos(back(l));
        out.push_back(o);
    }
    return out;
}

}  // namespace ltlz
