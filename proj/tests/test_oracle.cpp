#include <gtest/gtest.h>

#include "ltlz/oracle.hpp"
#include "support.hpp"

using namespace ltlz;

TEST(Oracle, Examples) {
    OracleOptions o;
    o.bound = 4;
    auto r = oracle_decide(parse("p & box*(!p | nextF p)"), o);
    ASSERT_TRUE(r.found);
    EXPECT_TRUE(eval_formula(r.model, parse("p & box*(!p | nextF p)"), 0));
    EXPECT_TRUE(state_at(r.model, 7).count("p"));

    ClausalForm bot;
    bot.initialPos.push_back(lit_bottom());
    for (int b : {3, 6, 9}) {
        o.bound = b;
        auto x = oracle_decide(bot, o);
        EXPECT_FALSE(x.found);
        EXPECT_TRUE(x.provedUnsat);
    }
    auto u = oracle_decide(parse("box*(!p) & p"), o);
    EXPECT_FALSE(u.found);
    EXPECT_FALSE(u.provedUnsat);
}

TEST(Oracle, Shapes) {
    for (int b = 3; b <= 8; ++b)
        for (auto& s : oracle_shapes(b)) {
            EXPECT_EQ(s.left + s.core + s.right, b);
            EXPECT_GE(s.left, 1);
            EXPECT_GE(s.core, 1);
            EXPECT_GE(s.right, 1);
        }
}

TEST(Oracle, ModelsAreModels) {
    std::mt19937 rng(91);
    for (int i = 0; i < 200; ++i) {
        Formula f = rnd::random_ast(rng, 3, 2);
        OracleOptions o;
        o.bound = 6;
        auto r = oracle_decide(f, o);
        if (r.found) EXPECT_TRUE(eval_formula(r.model, f, 0)) << print(f);
    }
}

TEST(Oracle, FindsSmallModels) {
    // every random model of at most bound states is a witness the search must see
    std::mt19937 rng(92);
    for (int i = 0; i < 100; ++i) {
        UPModel m = rnd::random_model(rng, 2, 2);
        Formula f = rnd::random_ast(rng, 3, 2);
        if (!eval_formula(m, f, 0)) continue;
        OracleOptions o;
        o.bound = 6;
        EXPECT_TRUE(oracle_decide(f, o).found) << print(f) << "\n" << serialize_model(m);
    }
}

TEST(Oracle, Guard) {
    OracleOptions o;
    o.bound = 10;
    o.guard = 5;
    EXPECT_THROW(oracle_decide(parse("a & b & c & d"), o), std::invalid_argument);
}
