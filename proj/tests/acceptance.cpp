// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <map>
#include <iostream>
#include <sstream>

#include "ltlz/automata.hpp"
#include "ltlz/box.hpp"
#include "ltlz/core_box.hpp"
#include "ltlz/generators.hpp"
#include "ltlz/krom_next.hpp"
#include "ltlz/krom_star.hpp"
#include "ltlz/normalizer.hpp"
#include "ltlz/oracle.hpp"
#include "ltlz/solve.hpp"
#include "support.hpp"

using namespace ltlz;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

const char* kA = "p & box*(!p | boxF q) & box*(!q | r) & box*(!p | r)";
const char* kB = "r & box*(!r | boxF q) & box*(!boxF q | q) & box*(!boxP q | p)";

bool oracle_found(const Formula& f, int bound) {
    OracleOptions o;
    o.bound = bound;
    return oracle_decide(f, o).found;
}

bool oracle_found(const ClausalForm& cf, int bound) {
    OracleOptions o;
    o.bound = bound;
    return oracle_decide(cf, o).found;
}

std::string steps(const Trace& t) {
    std::string s;
    for (auto& st : t) s += (s.empty() ? "" : " ") + print_literal(st.lit) + "@" + std::to_string(st.n);
    return s;
}

Outcome worked_derivations() {
    Outcome o;
    auto target = [](const char* s) { return to_restricted(clausal_input(parse(s)), {ClauseClass::core, OpSet::box, false}); };
    CoreCalculus a(target(kA));
    Trace ta;
    bool za = a.zero_derives(*literal_of(parse("boxF r")), -1, &ta);
    std::string wantA = "p@0 boxF q@0 q@1 r@1 boxF r@0 boxF r@-1";
    CoreCalculus b(target(kB));
    Trace tb;
    bool fb = b.forall_derives(*literal_of(parse("p")), &tb);
    std::string wantB = "q@0 boxP q@1 p@1";
    o.pass = za && steps(ta) == wantA && fb && steps(tb) == wantB;
    o.detail = "A: " + trace_string(ta) + " | B: " + trace_string(tb);
    // the CLI trace path prints the same derivation inside an Unsat explanation
    SolveOptions so;
    so.trace = true;
    auto r = solve(parse(std::string(kA) + " & box*(!p | !boxF r)"), so);
    bool traced = false;
    for (auto& line : r.trace) traced = traced || line.find("(p,0) =>R1 (boxF q,0)") == 0;
    o.pass = o.pass && r.status == Status::unsat && traced;
    return o;
}

Outcome fig2() {
    std::vector<int> got;
    for (int k = 1; k <= 30; ++k)
        if (represents(k, 3)) got.push_back(k);
    std::vector<int> want{1, 6, 10, 15, 16, 21, 25, 30};
    std::ostringstream os;
    for (int k : got) os << k << " ";
    return {got == want, "codes " + os.str()};
}

Outcome core_vs_box() {
    std::mt19937 rng(1003);
    rnd::ClausalSpec spec;
    spec.core = true;
    spec.maxAtoms = 6;
    spec.maxClauses = 10;
    spec.ops = {"", "boxF", "boxP"};
    int bad = 0, sat = 0;
    std::string first;
    for (int i = 0; i < 500; ++i) {
        std::string s = rnd::random_clausal(rng, spec);
        RestrictedForm rf = to_restricted(clausal_input(parse(s)), {ClauseClass::core, OpSet::box, false});
        bool a = decide_core_box(rf).sat, b = decide_box(rf).sat;
        sat += b;
        if (a != b && bad++ == 0) first = s;
    }
    return {bad == 0, std::to_string(500 - bad) + "/500 agree, " + std::to_string(sat) + " sat" +
                          (first.empty() ? "" : ", first mismatch " + first)};
}

Outcome star_vs_oracle() {
    std::mt19937 rng(1004);
    rnd::ClausalSpec spec;
    spec.maxAtoms = 5;
    spec.maxClauses = 8;
    spec.ops = {"", "", "box*"};
    int bad = 0, sat = 0;
    std::string first;
    for (int i = 0; i < 500; ++i) {
        std::string s = rnd::random_clausal(rng, spec);
        ClausalForm cf = clausal_input(parse(s));
        RestrictedForm rf = to_restricted(cf, {ClauseClass::krom, OpSet::star, false});
        bool a = decide_krom_star(rf).sat;
        bool b = oracle_found(cf, static_cast<int>(atoms_of(cf).size()) + 2);
        sat += a;
        if (a != b && bad++ == 0) first = s;
    }
    return {bad == 0, std::to_string(500 - bad) + "/500 agree, " + std::to_string(sat) + " sat" +
                          (first.empty() ? "" : ", first mismatch " + first)};
}

Outcome witnesses() {
    std::mt19937 rng(1005);
    std::vector<std::vector<std::string>> opsets{
        {"", "box*"}, {"", "boxF", "boxP"}, {"", "nextF", "boxF", "boxP"}, {"", "nextF"}};
    std::map<std::string, int> perEngine;
    int sat = 0, bad = 0, tries = 0;
    std::string first;
    while (sat < 500 && tries < 20000) {
        ++tries;
        rnd::ClausalSpec spec;
        spec.ops = opsets[tries % opsets.size()];
        spec.maxWidth = 2 + tries % 2;
        spec.core = tries % 5 == 0;
        std::string s = rnd::random_clausal(rng, spec);
        Formula f = parse(s);
        SolveOptions so;
        so.witness = true;
        SolveOutcome r;
        try {
            r = solve(f, so);
        } catch (const std::logic_error& e) {
            if (bad++ == 0) first = s + ": " + e.what();
            continue;
        }
        if (r.status != Status::sat) continue;
        ++sat;
        ++perEngine[to_string(r.engine)];
        if (!r.witness || !eval_clausal(*r.witness, clausal_input(f))) {
            if (bad++ == 0) first = s;
        }
    }
    std::string d = std::to_string(sat) + " sat answers (";
    for (auto& [e, n] : perEngine) d += e + " " + std::to_string(n) + " ";
    d += "), " + std::to_string(bad) + " failures";
    if (!first.empty()) d += ", first " + first;
    return {bad == 0 && sat == 500, d};
}

Outcome next_vs_oracle() {
    std::mt19937 rng(1006);
    rnd::ClausalSpec spec;
    spec.maxAtoms = 5;
    spec.ops = {"", "nextF", "boxF", "boxP"};
    int bad = 0, sat = 0, beyond = 0;
    std::string first;
    for (int i = 0; i < 300; ++i) {
        std::string s = rnd::random_clausal(rng, spec);
        ClausalForm cf = clausal_input(parse(s));
        bool dec = decide_krom_next(to_restricted(cf, {ClauseClass::krom, OpSet::box_next, false})).sat;
        bool found = oracle_found(cf, 10);
        sat += dec;
        beyond += dec && !found;
        if (found && !dec && bad++ == 0) first = s;
    }
    return {bad == 0, std::to_string(300 - bad) + "/300 consistent, " + std::to_string(sat) + " sat, " +
                          std::to_string(beyond) + " sat without a model at bound 10" +
                          (first.empty() ? "" : ", first violation " + first)};
}

// L at 0 and not L' at k, under box* Phi
Formula refutation(const std::string& phi, const std::vector<std::string>& syms, int from, int to, int k) {
    auto lit = [&](int l) {
        Formula a = mk_var(syms[l / 2]);
        return (l & 1) ? mk_not(a) : a;
    };
    Formula tail = mk_not(lit(to));
    for (int i = 0; i < k; ++i) tail = mk_un(Op::NextF, tail);
    return mk_and(mk_and(lit(from), parse(phi)), tail);
}

Outcome automata_semantics() {
    std::mt19937 rng(1007);
    int checks = 0, bad = 0;
    std::string first;
    for (int i = 0; i < 100; ++i) {
        int atoms = 1 + static_cast<int>(rng() % 4), clauses = 1 + static_cast<int>(rng() % 6);
        std::string phi;
        for (int c = 0; c < clauses; ++c) {
            int w = 1 + static_cast<int>(rng() % 2);
            std::string cl;
            for (int j = 0; j < w; ++j) {
                std::string a = rnd::atom_name(static_cast<int>(rng() % atoms));
                if (rng() % 2) a = "nextF " + a;
                cl += (j ? " | " : "") + std::string(rng() % 2 ? "!" : "") + (a.size() > 1 ? "(" + a + ")" : a);
            }
            phi += (c ? " & " : "") + std::string("box*(") + cl + ")";
        }
        ClausalForm cf = *from_formula(parse(phi));
        std::vector<std::string> syms;
        for (int a = 0; a < atoms; ++a) syms.push_back(rnd::atom_name(a));
        KromClosure c = complete_closure(syms, cf.boxed);
        int lits = 2 * atoms;
        for (int from = 0; from < lits; ++from)
            for (int to = 0; to < lits; ++to) {
                UnaryNFA nfa = literal_automaton(c, from, to);
                for (int k = 0; k <= 6; ++k) {
                    // length 0 is the propositional closure; the automaton itself starts at 1
                    bool accepts = k == 0 ? consequences(c, from, 0, true).test(to) : nfa.accepts(k);
                    bool refuted = !oracle_found(refutation(phi, syms, from, to, k), 12);
                    ++checks;
                    if (accepts != refuted && bad++ == 0)
                        first = phi + " L=" + std::to_string(from) + " L'=" + std::to_string(to) + " k=" + std::to_string(k);
                }
            }
    }
    return {bad == 0, std::to_string(checks - bad) + "/" + std::to_string(checks) + " agree" +
                          (first.empty() ? "" : ", first mismatch " + first)};
}

Outcome chrobak_semantics() {
    std::mt19937 rng(1008);
    int bad = 0, boundFails = 0;
    long checks = 0;
    for (int i = 0; i < 100; ++i) {
        int n = 1 + static_cast<int>(rng() % 8);
        UnaryNFA a(n);
        int edges = static_cast<int>(rng() % (2 * n + 1));
        for (int e = 0; e < edges; ++e) a.add(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
        a.initial = static_cast<int>(rng() % n);
        a.accepting = static_cast<int>(rng() % n);
        ProgressionSet s = chrobak(a);
        long limit = static_cast<long>(n + 1) * (n + 1);
        for (long k = 1; k <= limit; ++k) {
            ++checks;
            bad += s.contains(k) != a.accepts(k);
        }
        boundFails += !s.within_a1_bounds();
    }
    return {bad == 0 && boundFails == 0, std::to_string(checks - bad) + "/" + std::to_string(checks) +
                                             " lengths agree, " + std::to_string(boundFails) +
                                             " automata outside the a, b <= N' bounds"};
}

Outcome reductions() {
    std::mt19937 rng(1009);
    int ok3 = 0, okc = 0, okh = 0;
    for (int i = 0; i < 50; ++i) {
        CNF3 f;
        f.numVars = 1 + static_cast<int>(rng() % 3);
        int m = 1 + static_cast<int>(rng() % 3);
        for (int c = 0; c < m; ++c) {
            std::vector<int> cl;
            int w = 1 + static_cast<int>(rng() % 3);
            for (int j = 0; j < w; ++j) {
                int v = 1 + static_cast<int>(rng() % f.numVars);
                cl.push_back(rng() % 2 ? v : -v);
            }
            f.clauses.push_back(cl);
        }
        auto rf = to_restricted(gen_3sat(f), {ClauseClass::krom, OpSet::box_next, false});
        ok3 += decide_krom_next(rf).sat == brute_force_sat(f);
    }
    auto box_sat = [](const ClausalForm& cf) {
        Fragment fr = classify(cf);
        return decide_box(to_restricted(cf, {fr.cls, OpSet::box, false})).sat;
    };
    for (int i = 0; i < 50; ++i) {
        Graph g;
        int n = 1 + static_cast<int>(rng() % 6);
        for (int v = 0; v < n; ++v) g.vertices.push_back("v" + std::to_string(v));
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() % 2) g.edges.push_back({u, v});
        okc += box_sat(gen_3col(g)) == brute_force_3col(g);
    }
    Graph k3{{"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}}};
    Graph k4{{"a", "b", "c", "d"}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    bool fixed = box_sat(gen_3col(k3)) && !box_sat(gen_3col(k4));
    for (int i = 0; i < 50; ++i) {
        CNF3 f;
        f.numVars = 1 + static_cast<int>(rng() % 4);
        int m = static_cast<int>(rng() % 5);
        auto var = [&] { return 1 + static_cast<int>(rng() % f.numVars); };
        for (int c = 0; c < m; ++c) {
            int kind = static_cast<int>(rng() % 3);
            if (kind == 0) f.clauses.push_back({rng() % 2 ? var() : -var()});
            else if (kind == 1) f.clauses.push_back({-var(), var()});
            else f.clauses.push_back({-var(), -var(), var()});
        }
        okh += box_sat(gen_horn_gadget(f)) == brute_force_sat(f);
    }
    return {ok3 == 50 && okc == 50 && okh == 50 && fixed,
            "3sat " + std::to_string(ok3) + "/50, 3col " + std::to_string(okc) + "/50 (K3 sat, K4 unsat: " +
                (fixed ? "yes" : "no") + "), horn " + std::to_string(okh) + "/50"};
}

Outcome normalizer() {
    std::mt19937 rng(1010);
    int n = 0, bad = 0, complete = 0;
    std::string first;
    while (n < 300) {
        Formula f = rnd::random_ast(rng, 1 + static_cast<int>(rng() % 4), 3);
        if (node_count(f) > 12) continue;
        ++n;
        ClausalForm cf = to_clausal_nf(f);
        bool direct = oracle_found(f, 8);
        OracleOptions o;
        o.bound = 8;
        auto viaNf = oracle_decide(cf, o);
        bool violation = false;
        // a model of the normal form is a model of the input
        if (viaNf.found && !eval_formula(viaNf.model, f, 0)) violation = true;
        if (viaNf.found != direct) violation = true;
        SolveOptions so;
        so.witness = true;
        SolveOutcome r = solve(to_formula(cf), so);
        if (r.complete) {
            ++complete;
            if (direct && r.status == Status::unsat) violation = true;
            if (r.status == Status::sat && !eval_formula(*r.witness, f, 0)) violation = true;
        }
        if (violation && bad++ == 0) first = print(f);
    }
    return {bad == 0, std::to_string(300 - bad) + "/300 consistent, " + std::to_string(complete) +
                          " through a complete engine" + (first.empty() ? "" : ", first violation " + first)};
}

Outcome horn_surrogates() {
    std::mt19937 rng(1011);
    rnd::ClausalSpec spec;
    spec.horn = true;
    spec.maxWidth = 3;
    spec.ops = {"", "boxF", "boxP"};
    int instances = 0, tries = 0;
    long checks = 0, bad = 0;
    while (instances < 200 && tries < 5000) {
        ++tries;
        ClausalForm cf = clausal_input(parse(rnd::random_clausal(rng, spec)));
        Fragment fr = classify(cf);
        if (fr.cls != ClauseClass::horn && fr.cls != ClauseClass::core) continue;
        RestrictedForm rf = to_restricted(cf, {ClauseClass::horn, OpSet::box, false});
        SigmaSystem s = build_sigma(rf);
        auto pm = horn_min_model(s.clauses);
        if (!pm) continue;
        ++instances;
        UPModel m = extract_box_model(s, *pm);
        for (auto& l : s.boxed)
            for (int k = -s.K + 1; k < s.K; ++k) {
                ++checks;
                bad += eval_literal(m, k, l) != static_cast<bool>((*pm)[s.var(print_literal(l), k)]);
            }
    }
    return {bad == 0 && instances == 200, std::to_string(instances) + " instances, " + std::to_string(checks - bad) +
                                              "/" + std::to_string(checks) + " surrogate values match"};
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"derivation traces for the two worked examples", worked_derivations},
        {"assignment codes 1..30 for three variables", fig2},
        {"core calculus agrees with the box encoding (500)", core_vs_box},
        {"star procedure agrees with the oracle (500)", star_vs_oracle},
        {"witness models evaluate true (500 sat answers)", witnesses},
        {"oracle models imply certificate search sat (300)", next_vs_oracle},
        {"literal automata match bounded entailment (100 clause sets)", automata_semantics},
        {"Chrobak progressions match simulation (100 automata)", chrobak_semantics},
        {"reduction round trips: 3sat, 3col, horn", reductions},
        {"clausal normal form is equisatisfiable (300)", normalizer},
        {"minimal model surrogates match evaluation (200)", horn_surrogates},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " -- "
                  << o.detail << " [" << sec << " s]" << std::endl;
    }
    return failed ? 1 : 0;
}
