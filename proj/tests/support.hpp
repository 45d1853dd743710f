#pragma once

#include <random>
#include <string>
#include <vector>

#include "ltlz/formula.hpp"
#include "ltlz/models.hpp"

namespace ltlz::rnd {

// Shape of random clausal formulas: an initial atom conjoined with boxed
// clauses whose literals use the given operator prefixes ("" = plain atom).
struct ClausalSpec {
    int maxAtoms = 4;
    int maxClauses = 6;
    int maxWidth = 2;
    std::vector<std::string> ops{""};
    bool horn = false;  // at most one positive literal per clause
    bool core = false;  // binary, at most one positive literal
};

inline std::string atom_name(int i) { return std::string(1, static_cast<char>('a' + i)); }

inline std::string random_clausal(std::mt19937& rng, const ClausalSpec& s) {
    int atoms = 1 + static_cast<int>(rng() % s.maxAtoms);
    int clauses = 1 + static_cast<int>(rng() % s.maxClauses);
    std::string f = atom_name(static_cast<int>(rng() % atoms));
    for (int i = 0; i < clauses; ++i) {
        int width = 1 + static_cast<int>(rng() % s.maxWidth);
        if (s.core) width = std::min(width, 2);
        bool positiveUsed = false;
        std::string c;
        for (int j = 0; j < width; ++j) {
            std::string op = s.ops[rng() % s.ops.size()];
            std::string a = atom_name(static_cast<int>(rng() % atoms));
            std::string lit = op.empty() ? a : "(" + op + " " + a + ")";
            bool neg = rng() % 2;
            if ((s.horn || s.core) && !neg && positiveUsed) neg = true;
            // core clauses with two literals are (neg | pos) or (neg | neg)
            if (s.core && width == 2 && j == 0) neg = true;
            positiveUsed = positiveUsed || !neg;
            c += (j ? " | " : "") + std::string(neg ? "!" : "") + lit;
        }
        f += " & box*(" + c + ")";
    }
    return f;
}

inline Formula random_ast(std::mt19937& rng, int depth, int atoms = 3) {
    static const Op unary[] = {Op::Not, Op::NextF, Op::NextP, Op::BoxF, Op::BoxP, Op::BoxAll, Op::DiaF, Op::DiaP, Op::DiaAll};
    static const Op binary[] = {Op::And, Op::Or, Op::Implies, Op::Until, Op::Since};
    int pick = depth <= 0 ? 0 : static_cast<int>(rng() % 3);
    if (pick == 0) {
        int k = static_cast<int>(rng() % (atoms + 2));
        if (k == atoms) return mk_true();
        if (k == atoms + 1) return mk_false();
        return mk_var(atom_name(k));
    }
    if (pick == 1) return mk_un(unary[rng() % 9], random_ast(rng, depth - 1, atoms));
    return mk_bin(binary[rng() % 5], random_ast(rng, depth - 1, atoms), random_ast(rng, depth - 1, atoms));
}

inline UPModel random_model(std::mt19937& rng, int atoms, int maxLen = 3) {
    auto states = [&](int n) {
        std::vector<State> v;
        for (int i = 0; i < n; ++i) {
            State s;
            for (int a = 0; a < atoms; ++a)
                if (rng() % 2) s.insert(atom_name(a));
            v.push_back(s);
        }
        return v;
    };
    UPModel m;
    m.left = states(1 + static_cast<int>(rng() % maxLen));
    m.core = states(1 + static_cast<int>(rng() % maxLen));
    m.right = states(1 + static_cast<int>(rng() % maxLen));
    m.anchor = static_cast<long>(rng() % m.core.size());
    return m;
}

}  // namespace ltlz::rnd
