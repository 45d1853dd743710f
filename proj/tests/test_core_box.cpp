#include <gtest/gtest.h>

#include "ltlz/box.hpp"
#include "ltlz/core_box.hpp"
#include "ltlz/normalizer.hpp"
#include "ltlz/solve.hpp"
#include "support.hpp"

using namespace ltlz;

namespace {

RestrictedForm core_form(const std::string& s) {
    return to_restricted(clausal_input(parse(s)), {ClauseClass::core, OpSet::box, false});
}

const char* kA = "p & box*(!p | boxF q) & box*(!q | r) & box*(!p | r)";
const char* kB = "r & box*(!r | boxF q) & box*(!boxF q | q) & box*(!boxP q | p)";

Literal L(const char* s) { return *literal_of(parse(s)); }

}  // namespace

TEST(CoreCalculus, LeadsTo) {
    CoreCalculus c(core_form("box*(!p | q) & box*(!q | r)"));
    EXPECT_TRUE(c.leads_to(L("p"), L("r")));
    EXPECT_FALSE(c.leads_to(L("r"), L("p")));
    EXPECT_TRUE(c.leads_to(L("p"), L("p")));
    CoreCalculus e(core_form("box*(!p | !q)"));
    EXPECT_TRUE(e.leads_to(L("q"), L("q")));
    EXPECT_FALSE(e.leads_to(L("p"), L("q")));
}

TEST(CoreCalculus, ZeroDerivationA) {
    CoreCalculus c(core_form(kA));
    Trace t;
    ASSERT_TRUE(c.zero_derives(L("boxF r"), -1, &t));
    ASSERT_FALSE(t.empty());
    EXPECT_EQ(print_literal(t.front().lit), "p");
    EXPECT_EQ(t.front().n, 0);
    EXPECT_EQ(print_literal(t.back().lit), "boxF r");
    EXPECT_EQ(t.back().n, -1);
    std::string s = trace_string(t);
    EXPECT_NE(s.find("(p,0) =>"), std::string::npos) << s;
    EXPECT_NE(s.find("(boxF r,-1)"), std::string::npos) << s;
}

TEST(CoreCalculus, ZeroDerivationB) {
    CoreCalculus c(core_form(kB));
    for (long n = -3; n <= 3; ++n) EXPECT_TRUE(c.zero_derives(L("q"), n)) << n;
    EXPECT_FALSE(c.zero_derives(L("p"), 0));
    Trace t;
    EXPECT_TRUE(c.forall_derives(L("p"), &t));
    EXPECT_FALSE(t.empty());
}

TEST(CoreCalculus, ForallNegative) {
    CoreCalculus a(core_form(kA));
    EXPECT_FALSE(a.forall_derives(L("q")));
    CoreCalculus e(core_form("box*(!p | q)"));
    for (auto& l : e.literals()) EXPECT_FALSE(e.forall_derives(l)) << print_literal(l);
}

TEST(DecideCoreBox, Examples) {
    auto r = decide_core_box(core_form(std::string(kA) + " & box*(!p | !boxF r)"));
    EXPECT_FALSE(r.sat);
    ASSERT_TRUE(r.violated);
    EXPECT_EQ(r.violated->second, 0);
    EXPECT_EQ(r.traces.size(), 2u);
    EXPECT_TRUE(decide_core_box(core_form(kA)).sat);
    EXPECT_FALSE(decide_core_box(core_form("p & box*(!p)")).sat);
}

TEST(DecideCoreBox, CompleteForCanonicalModel) {
    std::mt19937 rng(61);
    rnd::ClausalSpec spec;
    spec.core = true;
    spec.ops = {"", "boxF", "boxP"};
    for (int i = 0; i < 100; ++i) {
        RestrictedForm rf = core_form(rnd::random_clausal(rng, spec));
        auto box = decide_box(rf);
        if (!box.sat) continue;
        CoreCalculus c(rf);
        int K = size(rf) + 4;
        for (auto& l : c.literals())
            for (long n = -K + 1; n < K; ++n)
                if (eval_literal(*box.model, n, l))
                    EXPECT_TRUE(c.zero_derives(l, n) || c.forall_derives(l)) << print_literal(l) << " at " << n;
    }
}

TEST(DecideCoreBox, AgreesWithDecideBox) {
    std::mt19937 rng(62);
    rnd::ClausalSpec spec;
    spec.core = true;
    spec.maxAtoms = 6;
    spec.maxClauses = 10;
    spec.ops = {"", "boxF", "boxP"};
    for (int i = 0; i < 200; ++i) {
        std::string s = rnd::random_clausal(rng, spec);
        RestrictedForm rf = core_form(s);
        EXPECT_EQ(decide_core_box(rf).sat, decide_box(rf).sat) << s;
    }
}
