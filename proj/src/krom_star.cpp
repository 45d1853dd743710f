#include "ltlz/krom_star.hpp"

#include <stdexcept>

namespace ltlz {

namespace {

void check_input(const RestrictedForm& rf) {
    if (rf.opSet != OpSet::star) throw std::invalid_argument("star2sat needs a box*-only formula");
    if (!class_leq(rf.cls, ClauseClass::krom)) throw std::invalid_argument("star2sat needs Krom clauses");
}

}  // namespace

StarEncoding reduce_krom_star(const RestrictedForm& rf) {
    check_input(rf);
    StarEncoding enc;
    auto atoms = atoms_of(rf);
    enc.atoms.assign(atoms.begin(), atoms.end());
    enc.N = static_cast<int>(enc.atoms.size());
    PropClauseSet& cs = enc.image;
    for (int m = 0; m <= enc.N; ++m)
        for (auto& a : enc.atoms) enc.timeVar[{a, m}] = cs.var(a + "@" + std::to_string(m));

    auto star = [&](const std::string& a) {
        auto it = enc.starVar.find(a);
        if (it != enc.starVar.end()) return it->second;
        int v = cs.var("box*" + a);
        enc.starVar[a] = v;
        return v;
    };
    auto lit = [&](const Literal& l, int m) {
        if (l.ops.empty()) return enc.timeVar.at({l.atom, m});
        return star(l.atom);
    };
    auto inst = [&](const Clause& c, int m) {
        std::vector<int> out;
        for (auto& l : c.neg) out.push_back(-lit(l, m));
        for (auto& l : c.pos) out.push_back(lit(l, m));
        cs.add_clause(out);
    };

    for (auto& p : rf.psi) cs.add_clause({enc.timeVar.at({p, 0})});
    for (auto& c : rf.phiAll)
        for (int m = 0; m <= enc.N; ++m) inst(c, m);
    for (auto& c : rf.initial) inst(c, 0);

    // box* p forces p at every copy; its failure is placed at moment i,
    // the atom's own 1-based index
    for (int i = 0; i < enc.N; ++i) {
        const std::string& a = enc.atoms[i];
        auto it = enc.starVar.find(a);
        if (it == enc.starVar.end()) continue;
        for (int m = 0; m <= enc.N; ++m) cs.add_clause({-it->second, enc.timeVar.at({a, m})});
        cs.add_clause({it->second, -enc.timeVar.at({a, i + 1})});
    }
    return enc;
}

StarResult decide_krom_star(const RestrictedForm& rf) {
    StarEncoding enc = reduce_krom_star(rf);
    StarResult res;
    auto sol = two_sat(enc.image);
    if (!sol) return res;
    res.sat = true;
    auto state = [&](int m) {
        State s;
        for (auto& a : enc.atoms)
            if ((*sol)[enc.timeVar.at({a, m})]) s.insert(a);
        return s;
    };
    for (int m = 0; m <= enc.N; ++m) res.model.core.push_back(state(m));
    State tail = state(enc.N);
    for (auto& [a, v] : enc.starVar)
        if ((*sol)[v]) tail.insert(a);
    res.model.left = {tail};
    res.model.right = {tail};
    res.model.anchor = 0;
    return res;
}

}  // namespace ltlz
