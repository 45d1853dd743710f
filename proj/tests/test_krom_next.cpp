#include <gtest/gtest.h>

#include "ltlz/krom_next.hpp"
#include "ltlz/normalizer.hpp"
#include "ltlz/oracle.hpp"
#include "ltlz/solve.hpp"
#include "support.hpp"

using namespace ltlz;

namespace {

Clause clause(const char* text) {
    auto cf = from_formula(parse(std::string("box*(") + text + ")"));
    return cf->boxed.at(0);
}

RestrictedForm next_form(const std::string& s) {
    ClausalForm cf = clausal_input(parse(s));
    return to_restricted(cf, {ClauseClass::krom, OpSet::box_next, false});
}

LitBits bits(int n, std::initializer_list<int> lits) {
    LitBits b(2 * n);
    for (int l : lits) b.set(l);
    return b;
}

// symbol i: positive literal 2i, negative 2i + 1
constexpr int P = 0, NP = 1;

}  // namespace

TEST(Closure, NextResolution) {
    KromClosure c = complete_closure({"p", "q", "r"}, {clause("!p | nextF q"), clause("!q | r")});
    EXPECT_FALSE(c.inconsistent);
    EXPECT_TRUE(c.has(tcode(1, false), tcode(4, true)));  // !p | nextF r
    EXPECT_TRUE(c.has(tcode(3, true), tcode(4, true)));   // !nextF q | nextF r
}

TEST(Closure, Empty) {
    KromClosure c = complete_closure({"p"}, {});
    EXPECT_TRUE(c.list.empty());
    EXPECT_FALSE(c.inconsistent);
}

TEST(Closure, UnitCollapse) {
    KromClosure c = complete_closure({"p", "q"}, {clause("p | q"), clause("!q | p")});
    EXPECT_TRUE(c.has(tcode(0, false), tcode(0, false)));
    EXPECT_TRUE(complete_closure({"p"}, {clause("p"), clause("!p")}).inconsistent);
}

TEST(Consequences, Examples) {
    KromClosure self = complete_closure({"p"}, {clause("!p | nextF p")});
    EXPECT_TRUE(consequences(self, P, 5, true).test(P));
    KromClosure step = complete_closure({"p", "q"}, {clause("!p | nextF q")});
    EXPECT_TRUE(consequences(step, P, 1, true).test(2));
    EXPECT_FALSE(consequences(step, 2, 1, false).test(P));
    EXPECT_TRUE(consequences(step, 3, 1, false).test(NP));
    KromClosure zero = complete_closure({"p", "q"}, {clause("!p | q"), clause("!p | nextF p")});
    LitBits z = consequences(zero, P, 0, true);
    EXPECT_TRUE(z.test(P));
    EXPECT_TRUE(z.test(2));
    EXPECT_FALSE(z.test(NP));
}

TEST(GapOracle, ProgressionsMatchAutomata) {
    std::mt19937 rng(81);
    rnd::ClausalSpec spec;
    spec.maxAtoms = 3;
    spec.ops = {"", "nextF"};
    for (int i = 0; i < 60; ++i) {
        ClausalForm cf = clausal_input(parse(rnd::random_clausal(rng, spec)));
        auto atoms = atoms_of(cf);
        std::vector<std::string> syms(atoms.begin(), atoms.end());
        KromClosure c = complete_closure(syms, cf.boxed);
        if (c.inconsistent) continue;
        GapOracle g(c);
        int lits = 2 * static_cast<int>(syms.size());
        for (int a = 0; a < lits; ++a)
            for (int b = 0; b < lits; ++b) {
                ProgressionSet mine = g.prog(a, b);
                ProgressionSet ref = chrobak(literal_automaton(c, a, b));
                for (long k = 1; k <= 40; ++k) {
                    ASSERT_EQ(mine.contains(k), ref.contains(k)) << a << "->" << b << " k=" << k;
                    ASSERT_EQ(g.fwd(a, k).test(b), consequences(c, a, static_cast<int>(k), true).test(b));
                }
            }
    }
}

TEST(GapOracle, CheckExamples) {
    KromClosure c = complete_closure({"p"}, {clause("!p | nextF p")});
    GapOracle g(c);
    LitBits p = bits(1, {P}), np = bits(1, {NP});
    EXPECT_TRUE(g.check(p, p, p, 3));
    EXPECT_FALSE(g.check(p, np, p, 3));
    EXPECT_FALSE(g.check(p, p, np, 3));
    EXPECT_EQ(g.minimal_gap(p, p, p, 16), 1);
    EXPECT_EQ(g.minimal_gap(p, np, LitBits(2), 16), std::nullopt);
}

TEST(Certificate, HandBuilt) {
    RestrictedForm rf = next_form("p & box*(!p | nextF p)");
    auto r = decide_krom_next(rf);
    ASSERT_TRUE(r.sat);
    Certificate c;
    c.symbols = r.certificate->symbols;
    int n = static_cast<int>(c.symbols.size());
    c.types.assign(3, std::vector<bool>(n, true));
    c.gaps = {1, 1};
    c.l0 = 1;
    c.lP = 1;
    c.lF = 0;
    auto ok = verify_certificate(rf, c);
    EXPECT_TRUE(ok.ok) << ok.failed << " " << ok.detail;
    UPModel m = extract_model(rf, c);
    EXPECT_TRUE(eval_clausal(m, restricted_to_clausal(rf)));
    for (long k = -4; k <= 4; ++k) EXPECT_TRUE(state_at(m, k).count("p"));

    Certificate b3 = c;
    for (size_t j = 0; j < b3.symbols.size(); ++j)
        if (b3.symbols[j] != "p") b3.types[2][j] = false;
    EXPECT_EQ(verify_certificate(rf, b3).failed, "B3");

    Certificate b0 = c;
    b0.gaps[0] = 1LL << n;
    EXPECT_EQ(verify_certificate(rf, b0).failed, "B0");
}

TEST(DecideKromNext, Examples) {
    EXPECT_TRUE(decide_krom_next(next_form("p & box*(!p | nextF p)")).sat);
    EXPECT_FALSE(decide_krom_next(next_form("p & box*(!p | nextF p) & box*(!p | !boxF p)")).sat);
    EXPECT_FALSE(decide_krom_next(next_form("p & box*(!p)")).sat);
    EXPECT_TRUE(decide_krom_next(next_form("p & box*(!p | boxF q) & box*(!q | nextF r)")).sat);
    // q from moment 1 on forces r from 2 on
    EXPECT_FALSE(decide_krom_next(next_form("p & box*(!p | boxF q) & box*(!q | nextF r) & box*(!r | !q)")).sat);
}

TEST(DecideKromNext, SearchesAgree) {
    std::mt19937 rng(82);
    rnd::ClausalSpec spec;
    spec.ops = {"", "nextF", "boxF", "boxP"};
    KromNextOptions types, symbolic;
    types.search = KromSearch::types;
    symbolic.search = KromSearch::symbolic;
    for (int i = 0; i < 120; ++i) {
        std::string s = rnd::random_clausal(rng, spec);
        RestrictedForm rf = next_form(s);
        auto a = decide_krom_next(rf, types);
        auto b = decide_krom_next(rf, symbolic);
        EXPECT_EQ(a.sat, b.sat) << s;
        for (auto* r : {&a, &b}) {
            if (!r->sat) continue;
            EXPECT_TRUE(verify_certificate(rf, *r->certificate).ok) << s;
            EXPECT_TRUE(eval_clausal(*r->model, restricted_to_clausal(rf))) << s;
        }
        OracleOptions o;
        o.bound = 8;
        if (oracle_decide(parse(s), o).found) EXPECT_TRUE(a.sat) << s;
    }
}

TEST(DecideKromNext, BoxOnlyAgreesWithOracle) {
    std::mt19937 rng(83);
    rnd::ClausalSpec spec;
    spec.ops = {"", "boxF", "boxP"};
    for (int i = 0; i < 60; ++i) {
        std::string s = rnd::random_clausal(rng, spec);
        auto r = decide_krom_next(next_form(s));
        OracleOptions o;
        o.bound = 8;
        EXPECT_EQ(r.sat, oracle_decide(parse(s), o).found) << s;
    }
}

TEST(LitBits, Operations) {
    LitBits a(130), b(130);
    a.set(3);
    a.set(129);
    b.set(129);
    EXPECT_TRUE(a.intersects(b));
    EXPECT_TRUE(b.subset_of(a));
    EXPECT_FALSE(a.subset_of(b));
    EXPECT_EQ(a.first(), 3);
    EXPECT_EQ(a.count(), 2);
    LitBits n = a.negated();
    EXPECT_TRUE(n.test(2));
    EXPECT_TRUE(n.test(128));
    EXPECT_EQ(a.minus(b).count(), 1);
}
