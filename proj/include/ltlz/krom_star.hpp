#pragma once

#include <map>
#include <optional>
#include <string>

#include "ltlz/models.hpp"
#include "ltlz/normalizer.hpp"
#include "ltlz/prop_sat.hpp"

namespace ltlz {

// Time-indexed propositional image of a box*-only Krom formula.
struct StarEncoding {
    int N = 0;
    std::vector<std::string> atoms;                      // 1-based index = position + 1
    std::map<std::pair<std::string, int>, int> timeVar;  // (atom, m) -> prop var, 0 <= m <= N
    std::map<std::string, int> starVar;                  // atom under box* -> prop var
    PropClauseSet image;
};

StarEncoding reduce_krom_star(const RestrictedForm& rf);

struct StarResult {
    bool sat = false;
    UPModel model;
};

StarResult decide_krom_star(const RestrictedForm& rf);

}  // namespace ltlz
