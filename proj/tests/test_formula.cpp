#include <gtest/gtest.h>

#include "ltlz/formula.hpp"
#include "ltlz/solve.hpp"
#include "support.hpp"

using namespace ltlz;

TEST(Parse, BoxedImplication) {
    Formula f = parse("p & box*(!p | boxF q)");
    Formula want = mk_and(mk_var("p"), mk_un(Op::BoxAll, mk_or(mk_not(mk_var("p")), mk_un(Op::BoxF, mk_var("q")))));
    EXPECT_TRUE(equal(f, want));
}

TEST(Parse, Until) { EXPECT_TRUE(equal(parse("p U q"), mk_bin(Op::Until, mk_var("p"), mk_var("q")))); }

TEST(Parse, DanglingOperator) {
    try {
        parse("p &&");
        FAIL() << "no error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 1);
        EXPECT_GE(e.column, 3);
        EXPECT_FALSE(e.expected.empty());
    }
}

TEST(Parse, Errors) {
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("p & (q"), ParseError);
    EXPECT_THROW(parse("p q"), ParseError);
    EXPECT_THROW(parse("boxF"), ParseError);
}

TEST(Print, Basic) {
    EXPECT_EQ(print(mk_and(mk_var("p"), mk_var("q"))), "p & q");
    EXPECT_EQ(print(mk_un(Op::BoxAll, mk_or(mk_not(mk_var("p")), mk_un(Op::BoxF, mk_var("q"))))), "box*(!p | boxF q)");
}

TEST(Print, RoundTripRandom) {
    std::mt19937 rng(11);
    for (int i = 0; i < 1000; ++i) {
        Formula f = rnd::random_ast(rng, 1 + i % 5);
        std::string s = print(f);
        EXPECT_TRUE(equal(parse(s), f)) << s;
        EXPECT_EQ(print(parse(s)), s);
    }
}

TEST(Classify, Examples) {
    auto fr = [](const char* s) { return to_string(classify(clausal_input(parse(s)))); };
    EXPECT_EQ(fr("p & box*(!p | boxF q) & box*(!q | r) & box*(!p | r)"), "core/box");
    EXPECT_EQ(fr("p & box*(!p | boxF q) & box*(!p | !q | r)"), "horn/box");
    EXPECT_EQ(fr("box*(p | q)"), "krom/star");
    EXPECT_EQ(fr("p & box*(!p | nextF p)"), "core/box_next");
    EXPECT_EQ(fr("box*(p | q | r)"), "bool/star");
}

TEST(Classify, Monotone) {
    std::mt19937 rng(5);
    rnd::ClausalSpec spec;
    spec.maxWidth = 3;
    spec.ops = {"", "", "boxF", "boxP", "nextF", "box*"};
    for (int i = 0; i < 300; ++i) {
        std::string a = rnd::random_clausal(rng, spec);
        std::string b = a + " & box*(" + rnd::random_clausal(rng, spec).substr(0, 1) + " | !c)";
        Fragment fa = classify(clausal_input(parse(a))), fb = classify(clausal_input(parse(b)));
        EXPECT_TRUE(class_leq(fa.cls, fb.cls)) << a << " / " << b;
        EXPECT_TRUE(ops_leq(fa.ops, fb.ops)) << a << " / " << b;
    }
}

TEST(Classify, PlainFormsAreClausal) {
    std::mt19937 rng(6);
    rnd::ClausalSpec spec;
    spec.ops = {"", "boxF", "nextF"};
    for (int i = 0; i < 100; ++i) {
        auto cf = from_formula(parse(rnd::random_clausal(rng, spec)));
        ASSERT_TRUE(cf);
        EXPECT_TRUE(cf->initialClauses.empty());
        EXPECT_FALSE(classify(*cf).nonClausal);
    }
}

TEST(Size, Examples) {
    EXPECT_EQ(size(clausal_input(parse("p"))), 1);
    EXPECT_EQ(size(clausal_input(parse("box*(!p | q)"))), 4);
}

TEST(Size, MonotoneUnderConjuncts) {
    std::mt19937 rng(7);
    rnd::ClausalSpec spec;
    spec.ops = {"", "boxF", "boxP"};
    for (int i = 0; i < 200; ++i) {
        std::string a = rnd::random_clausal(rng, spec);
        std::string b = a + " & box*(!a | boxF b)";
        EXPECT_LT(size(clausal_input(parse(a))), size(clausal_input(parse(b))));
    }
}

TEST(Clausal, FormulaRoundTrip) {
    std::mt19937 rng(8);
    rnd::ClausalSpec spec;
    spec.maxWidth = 3;
    spec.ops = {"", "boxF", "boxP", "nextF", "nextP", "box*"};
    for (int i = 0; i < 200; ++i) {
        auto cf = from_formula(parse(rnd::random_clausal(rng, spec)));
        ASSERT_TRUE(cf);
        auto back = from_formula(to_formula(*cf));
        ASSERT_TRUE(back);
        EXPECT_EQ(print(to_formula(*back)), print(to_formula(*cf)));
    }
}
