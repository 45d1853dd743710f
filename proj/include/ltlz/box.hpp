#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltlz/formula.hpp"
#include "ltlz/models.hpp"
#include "ltlz/normalizer.hpp"
#include "ltlz/prop_sat.hpp"

namespace ltlz {

// Time-indexed propositional encoding of a box-only restricted form over
// moments -K..K. Symbols are atom names and printed boxF/boxP literals.
struct SigmaSystem {
    int K = 0;
    std::vector<std::string> atoms;
    std::vector<Literal> boxed;  // boxF p / boxP p literals of the input
    std::map<std::pair<std::string, int>, int> indexed;
    PropClauseSet clauses;

    int var(const std::string& sym, int n) const { return indexed.at({sym, n}); }
};

// withNegative adds the instances of the negative clauses at every moment.
// symmetricEnds also adds atom -> box at the end the box looks away from;
// that direction is unsound (see tests) and is kept only for comparison.
SigmaSystem build_sigma(const RestrictedForm& rf, bool withNegative = false, bool symmetricEnds = false);
UPModel extract_box_model(const SigmaSystem& sig, const PropModel& m);

struct BoxResult {
    bool sat = false;
    std::optional<UPModel> model;
    std::string path;  // "horn", "sigma" or "shape"
    std::optional<std::pair<Clause, int>> violated;  // horn path only
};

BoxResult decide_box(const RestrictedForm& rf);

}  // namespace ltlz
