#include <gtest/gtest.h>

#include <sstream>

#include "ltlz/box.hpp"
#include "ltlz/generators.hpp"
#include "ltlz/krom_next.hpp"
#include "ltlz/normalizer.hpp"
#include "ltlz/solve.hpp"

using namespace ltlz;

namespace {

bool next_sat(const CNF3& f) {
    return decide_krom_next(to_restricted(gen_3sat(f), {ClauseClass::krom, OpSet::box_next, false})).sat;
}

bool box_sat(const ClausalForm& cf) {
    Fragment fr = classify(cf);
    return decide_box(to_restricted(cf, {fr.cls, OpSet::box, false})).sat;
}

Graph graph(int n, std::vector<std::pair<int, int>> edges) {
    Graph g;
    for (int i = 0; i < n; ++i) g.vertices.push_back("v" + std::to_string(i));
    g.edges = std::move(edges);
    return g;
}

}  // namespace

TEST(Represents, Examples) {
    EXPECT_EQ(represents(6, 3), (std::vector<int>{0, 0, 1}));
    EXPECT_EQ(represents(1, 3), (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(represents(2, 3), std::nullopt);
    std::vector<int> codes;
    for (int k = 1; k <= 30; ++k)
        if (represents(k, 3)) codes.push_back(k);
    EXPECT_EQ(codes, (std::vector<int>{1, 6, 10, 15, 16, 21, 25, 30}));
}

TEST(Progressions, Examples) {
    CNF3 f{3, {{1, -2, 3}}};
    auto ps = sat_progressions(f);
    ASSERT_FALSE(ps.empty());
    EXPECT_EQ(ps.back().a, 10);
    EXPECT_EQ(ps.back().b, 30);
    auto has = [&](long long a, long long b) {
        for (auto& p : ps)
            if (p.a == a && p.b == b) return true;
        return false;
    };
    EXPECT_TRUE(has(2, 5));
    EXPECT_TRUE(has(3, 5));
    EXPECT_TRUE(has(4, 5));
    EXPECT_TRUE(has(2, 3));
}

TEST(Progressions, ExcludeExactlyFalsifyingCodes) {
    CNF3 f{3, {{1, 2}, {-1, -3}, {2, -3}}};
    auto ps = sat_progressions(f);
    for (long long k = 1; k <= 120; ++k) {
        bool covered = false;
        for (auto& p : ps) covered = covered || (k >= p.a && (k - p.a) % p.b == 0);
        auto s = represents(k, 3);
        bool falsifies = !s;
        if (s)
            for (auto& c : f.clauses) {
                bool ok = false;
                for (int l : c) ok = ok || ((*s)[std::abs(l) - 1] == (l > 0));
                falsifies = falsifies || !ok;
            }
        EXPECT_EQ(covered, falsifies) << k;
    }
}

TEST(Gen3Sat, Examples) {
    EXPECT_TRUE(next_sat(CNF3{1, {{1, 1, 1}}}));
    EXPECT_FALSE(next_sat(CNF3{1, {{1}, {-1}}}));
    EXPECT_TRUE(next_sat(CNF3{2, {{1, 2}, {-1}}}));
    EXPECT_FALSE(next_sat(CNF3{2, {{1, 2}, {-1}, {-2}}}));
    Fragment fr = classify(gen_3sat(CNF3{2, {{1, -2}}}));
    EXPECT_EQ(fr.cls, ClauseClass::core);
    EXPECT_EQ(fr.ops, OpSet::box_next);
}

TEST(Gen3Col, Examples) {
    EXPECT_TRUE(box_sat(gen_3col(graph(3, {{0, 1}, {1, 2}, {0, 2}}))));
    EXPECT_FALSE(box_sat(gen_3col(graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}))));
    EXPECT_TRUE(box_sat(gen_3col(graph(2, {{0, 1}}))));
    EXPECT_EQ(classify(gen_3col(graph(2, {{0, 1}}))).cls, ClauseClass::krom);
}

TEST(GenHorn, Examples) {
    EXPECT_FALSE(box_sat(gen_horn_gadget(CNF3{3, {{1}, {2}, {-1, -2, 3}, {-3}}})));
    EXPECT_TRUE(box_sat(gen_horn_gadget(CNF3{3, {{1}, {-1, -2, 3}}})));
    EXPECT_TRUE(box_sat(gen_horn_gadget(CNF3{0, {}})));
    ClausalForm cf = gen_horn_gadget(CNF3{3, {{1}, {2}, {-1, -2, 3}}});
    EXPECT_TRUE(classify(cf).nonClausal);
    EXPECT_EQ(classify(cf).cls, ClauseClass::core);
    // printing keeps the initial clauses
    auto back = from_formula(to_formula(cf));
    ASSERT_TRUE(back);
    EXPECT_EQ(back->initialClauses.size(), cf.initialClauses.size());
    EXPECT_THROW(gen_horn_gadget(CNF3{2, {{1, 2}}}), std::invalid_argument);
}

TEST(Readers, Dimacs) {
    std::istringstream in("c comment\np cnf 3 2\n1 -2 0\n3 0\n");
    CNF3 f = read_cnf3(in);
    EXPECT_EQ(f.numVars, 3);
    EXPECT_EQ(f.clauses, (std::vector<std::vector<int>>{{1, -2}, {3}}));
    std::istringstream bad("p cnf 1 1\n1 2 0\n");
    EXPECT_THROW(read_cnf3(bad), std::invalid_argument);
}

TEST(Readers, EdgeList) {
    std::istringstream in("# triangle\na b\nb c\nc a\nb a\nd\n");
    Graph g = read_edge_list(in);
    EXPECT_EQ(g.vertices.size(), 4u);
    EXPECT_EQ(g.edges.size(), 3u);
    std::istringstream loop("a a\n");
    EXPECT_THROW(read_edge_list(loop), std::invalid_argument);
}

TEST(BruteForce, Examples) {
    EXPECT_TRUE(brute_force_sat(CNF3{2, {{1, 2}, {-1}}}));
    EXPECT_FALSE(brute_force_sat(CNF3{1, {{1}, {-1}}}));
    EXPECT_TRUE(brute_force_3col(graph(3, {{0, 1}, {1, 2}, {0, 2}})));
    EXPECT_FALSE(brute_force_3col(graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})));
}
