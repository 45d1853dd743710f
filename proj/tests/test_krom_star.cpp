#include <gtest/gtest.h>

#include <algorithm>

#include "ltlz/krom_star.hpp"
#include "ltlz/normalizer.hpp"
#include "ltlz/oracle.hpp"
#include "ltlz/solve.hpp"
#include "support.hpp"

using namespace ltlz;

namespace {

RestrictedForm star_form(const char* s) {
    return to_restricted(clausal_input(parse(s)), {ClauseClass::krom, OpSet::star, false});
}

bool has(const StarEncoding& e, std::vector<int> c) {
    std::sort(c.begin(), c.end());
    for (auto d : e.image.clauses) {
        std::sort(d.begin(), d.end());
        if (d == c) return true;
    }
    return false;
}

}  // namespace

TEST(KromStar, ImageOfImplicationToStar) {
    RestrictedForm rf;
    rf.psi = {"p"};
    Clause c;
    c.add_neg(lit_atom("p"));
    c.add_pos(lit_wrap(LitOp::BoxAll, lit_atom("q")));
    rf.phiAll = {c};
    rf.phiPos = {c};
    rf.opSet = OpSet::star;
    rf.cls = ClauseClass::core;
    StarEncoding e = reduce_krom_star(rf);
    ASSERT_EQ(e.N, 2);
    int s = e.starVar.at("q");
    auto t = [&](const char* a, int m) { return e.timeVar.at({a, m}); };
    EXPECT_TRUE(has(e, {t("p", 0)}));
    for (int m = 0; m <= 2; ++m) {
        EXPECT_TRUE(has(e, {-t("p", m), s})) << m;
        EXPECT_TRUE(has(e, {-s, t("q", m)})) << m;
    }
    EXPECT_TRUE(has(e, {s, -t("q", 2)}));
}

TEST(KromStar, EmptyInput) {
    RestrictedForm rf;
    StarEncoding e = reduce_krom_star(rf);
    EXPECT_TRUE(e.image.clauses.empty());
    EXPECT_TRUE(decide_krom_star(rf).sat);
}

TEST(KromStar, DirectContradiction) {
    RestrictedForm rf;
    rf.psi = {"p"};
    Clause c;
    c.add_neg(lit_atom("p"));
    rf.phiAll = rf.phiNeg = {c};
    EXPECT_FALSE(decide_krom_star(rf).sat);
}

TEST(KromStar, Examples) {
    auto r = decide_krom_star(star_form("p & box*(!p | box* q)"));
    ASSERT_TRUE(r.sat);
    for (long n = -5; n <= 5; ++n) EXPECT_TRUE(state_at(r.model, n).count("q")) << n;
    EXPECT_FALSE(decide_krom_star(star_form("p & box*(!p | q) & box*(!q)")).sat);
    EXPECT_FALSE(decide_krom_star(star_form("box*(p | q) & box*(!p) & box*(!q)")).sat);
}

TEST(KromStar, AgreesWithOracle) {
    std::mt19937 rng(41);
    rnd::ClausalSpec spec;
    spec.ops = {"", "", "box*"};
    for (int i = 0; i < 150; ++i) {
        std::string s = rnd::random_clausal(rng, spec);
        RestrictedForm rf = star_form(s.c_str());
        auto r = decide_krom_star(rf);
        OracleOptions o;
        o.bound = static_cast<int>(atoms_of(rf).size()) + 2;
        EXPECT_EQ(r.sat, oracle_decide(parse(s), o).found) << s;
        if (r.sat) EXPECT_TRUE(eval_clausal(r.model, restricted_to_clausal(rf))) << s;
    }
}
