#pragma once

#include <set>
#include <string>
#include <vector>

#include "ltlz/formula.hpp"

namespace ltlz {

using State = std::set<std::string>;

// Bi-infinite ultimately periodic interpretation. Moment n lives at core
// position n + anchor; positions past the core repeat `right`, positions
// before it repeat `left` (position -1 is the last element of `left`).
struct UPModel {
    std::vector<State> left, core, right;
    long anchor = 0;

    bool operator==(const UPModel&) const = default;
};

// Validates shape; an empty core is only legal when both periods agree and
// is rewritten to core = right, anchor = 0.
UPModel normalize_model(UPModel m);

State state_at(const UPModel& m, long n);
bool eval_formula(const UPModel& m, const Formula& f, long n = 0);
bool eval_literal(const UPModel& m, long n, const Literal& l);
bool eval_clause(const UPModel& m, long n, const Clause& c);
bool eval_clausal(const UPModel& m, const ClausalForm& cf);

std::string serialize_model(const UPModel& m);
UPModel parse_model(const std::string& text);
std::string state_string(const State& s);

}  // namespace ltlz
