#include "ltlz/box.hpp"

#include <algorithm>
#include <stdexcept>

#include "ltlz/oracle.hpp"

namespace ltlz {

namespace {

std::string sym_of(const Literal& l) { return l.ops.empty() ? l.atom : print_literal(l); }

void check_box_only(const RestrictedForm& rf) {
    if (rf.opSet != OpSet::box) throw std::invalid_argument("box procedure needs a box-only restricted form");
    auto bad = [](const std::vector<Clause>& cs) {
        for (auto& c : cs)
            for (auto* side : {&c.neg, &c.pos})
                for (auto& l : *side)
                    if (l.ops.size() > 1 || (l.ops.size() == 1 && l.ops[0] != LitOp::BoxF && l.ops[0] != LitOp::BoxP))
                        return true;
        return false;
    };
    if (bad(rf.phiAll) || bad(rf.initial)) throw std::invalid_argument("box procedure: next or nested literal");
}

// instance of a clause at moment n; nullopt when it is trivially true
std::optional<std::vector<int>> instance(const SigmaSystem& sig, const Clause& c, int n) {
    std::vector<int> lits;
    for (auto& l : c.pos)
        if (!l.bottom()) lits.push_back(sig.var(sym_of(l), n));
    for (auto& l : c.neg) {
        if (l.bottom()) return std::nullopt;
        lits.push_back(-sig.var(sym_of(l), n));
    }
    return lits;
}

}  // namespace

SigmaSystem build_sigma(const RestrictedForm& rf, bool withNegative, bool symmetricEnds) {
    check_box_only(rf);
    SigmaSystem sig;
    sig.K = size(rf) + 4;
    int K = sig.K;
    auto atoms = atoms_of(rf);
    atoms.insert(rf.psi.begin(), rf.psi.end());
    sig.atoms.assign(atoms.begin(), atoms.end());
    std::set<Literal> boxed;
    for (auto* cs : {&rf.phiAll, &rf.initial})
        for (auto& c : *cs)
            for (auto* side : {&c.neg, &c.pos})
                for (auto& l : *side)
                    if (!l.ops.empty()) boxed.insert(l);
    sig.boxed.assign(boxed.begin(), boxed.end());

    auto& cs = sig.clauses;
    auto declare = [&](const std::string& s) {
        for (int n = -K; n <= K; ++n) sig.indexed[{s, n}] = cs.var(s + "@" + std::to_string(n));
    };
    for (auto& a : sig.atoms) declare(a);
    for (auto& l : sig.boxed) declare(sym_of(l));

    // H0 and initial clauses at moment 0
    for (auto& p : rf.psi) cs.add_clause({sig.var(p, 0)});
    for (auto& c : rf.initial)
        if (auto in = instance(sig, c, 0)) cs.add_clause(*in);
    // H1, optionally with the negative clauses
    for (auto& c : rf.phiAll) {
        if (c.pos.empty() && !withNegative) continue;
        for (int n = -K; n <= K; ++n)
            if (auto in = instance(sig, c, n)) cs.add_clause(*in);
    }
    for (auto& l : sig.boxed) {
        std::string b = sym_of(l), p = l.atom;
        bool fut = l.ops[0] == LitOp::BoxF;
        int dir = fut ? 1 : -1;
        for (int n = -K; n <= K; ++n) {
            bool forward = fut ? n < K : n > -K;   // toward the side the box looks at
            bool backward = fut ? n > -K : n < K;
            if (forward) {
                cs.add_clause({-sig.var(b, n), sig.var(b, n + dir)});  // H2
                cs.add_clause({-sig.var(b, n), sig.var(p, n + dir)});  // H3
            }
            if (backward) cs.add_clause({-sig.var(b, n), -sig.var(p, n), sig.var(b, n - dir)});  // H4
        }
        // ends: on the side the box looks toward the tail is constant, so the
        // box equals the atom there; on the other side only box -> atom holds
        int toward = fut ? K : -K;
        cs.add_clause({-sig.var(b, toward), sig.var(p, toward)});
        cs.add_clause({-sig.var(p, toward), sig.var(b, toward)});
        cs.add_clause({-sig.var(b, -toward), sig.var(p, -toward)});
        if (symmetricEnds) cs.add_clause({-sig.var(p, -toward), sig.var(b, -toward)});
    }
    return sig;
}

UPModel extract_box_model(const SigmaSystem& sig, const PropModel& m) {
    UPModel out;
    for (int n = -sig.K; n <= sig.K; ++n) {
        State st;
        for (auto& a : sig.atoms)
            if (m[sig.var(a, n)]) st.insert(a);
        out.core.push_back(std::move(st));
    }
    out.left = {out.core.front()};
    out.right = {out.core.back()};
    out.anchor = sig.K;
    return out;
}

namespace {

// Bounded search with room for the witnesses that constant tails cannot give:
// every tail period needs one type per false box surrogate on its side.
std::optional<UPModel> shape_search(const RestrictedForm& rf, const SigmaSystem& sig) {
    int nF = 0, nP = 0;
    for (auto& l : sig.boxed) (l.ops[0] == LitOp::BoxF ? nF : nP)++;
    ClausalForm cf = restricted_to_clausal(rf);
    Formula f = to_formula(cf);
    Shape sh{1 + nP, 2 * sig.K + 1, 1 + nF};
    Cdcl solver;
    ShapeEncoder enc(solver, sh);
    int top = enc.at(f, sig.K);
    solver.add_clause({top});
    if (!solver.solve()) return std::nullopt;
    UPModel m = enc.model(top);
    m.anchor = sig.K;
    if (!eval_clausal(m, cf)) throw std::logic_error("box: shape model fails evaluation");
    return m;
}

}  // namespace

BoxResult decide_box(const RestrictedForm& rf) {
    BoxResult res;
    ClausalForm cf = restricted_to_clausal(rf);
    SigmaSystem sig = build_sigma(rf, false);
    bool horn = sig.clauses.is_horn();
    std::vector<Clause> negs;
    for (auto& c : rf.phiAll)
        if (c.pos.empty()) negs.push_back(c);

    if (horn) {
        res.path = "horn";
        auto mm = horn_min_model(sig.clauses);
        bool sat = mm.has_value();
        if (sat) {
            for (auto& c : negs) {
                for (int n = -sig.K; n <= sig.K && sat; ++n) {
                    auto in = instance(sig, c, n);
                    if (!in) continue;
                    bool allTrue = std::all_of(in->begin(), in->end(), [&](int l) { return (*mm)[-l]; });
                    if (allTrue) {
                        sat = false;
                        res.violated = std::make_pair(c, n);
                    }
                }
                if (!sat) break;
            }
        }
        // the same question with the negative clauses inside the encoding
        SigmaSystem full = build_sigma(rf, true);
        bool sat2 = horn_min_model(full.clauses).has_value();
        if (sat != sat2) throw std::logic_error("box: two-phase check disagrees with the joint encoding");
        if (sat) {
            res.sat = true;
            res.model = extract_box_model(sig, *mm);
            if (!eval_clausal(*res.model, cf)) throw std::logic_error("box: canonical model fails evaluation");
        }
        return res;
    }

    SigmaSystem full = build_sigma(rf, true);
    if (auto m = cdcl_solve(full.clauses)) {
        UPModel um = extract_box_model(full, *m);
        if (eval_clausal(um, cf)) {
            res.path = "sigma";
            res.sat = true;
            res.model = um;
            return res;
        }
    }
    res.path = "shape";
    if (auto m = shape_search(rf, full)) {
        res.sat = true;
        res.model = *m;
    }
    return res;
}

}  // namespace ltlz
