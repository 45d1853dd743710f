#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltlz/formula.hpp"
#include "ltlz/normalizer.hpp"

namespace ltlz {

struct TraceStep {
    Literal lit;
    long n = 0;
    std::string rule;  // rule that produced this step; empty for the first one
};
using Trace = std::vector<TraceStep>;

std::string trace_string(const Trace& t);

// Reachability over flat literals for a core/box restricted form. One
// instance answers all queries for that form.
class CoreCalculus {
public:
    explicit CoreCalculus(const RestrictedForm& rf);

    int reach_bound() const { return R_; }
    const std::vector<Literal>& literals() const { return lits_; }
    // reflexive-transitive closure of the positive binary clauses
    bool leads_to(const Literal& a, const Literal& b) const;

    bool zero_derives(const Literal& l, long n, Trace* trace = nullptr) const;
    bool forall_derives(const Literal& l, Trace* trace = nullptr) const;

private:
    int node(int li, long n, int flags) const { return ((li * (2 * R_ + 1)) + static_cast<int>(n + R_)) * 4 + flags; }
    int lit_of(int id) const { return id / 4 / (2 * R_ + 1); }
    long n_of(int id) const { return (id / 4) % (2 * R_ + 1) - R_; }
    int flags_of(int id) const { return id % 4; }
    int index(const Literal& l) const;
    void successors(int id, std::vector<std::pair<int, const char*>>& out) const;
    void stutter(bool left);
    Trace path_to(int id) const;
    Trace stutter_path(bool left, int id) const;

    int R_ = 0;
    std::vector<Literal> lits_;
    std::map<Literal, int> litIndex_;
    std::vector<std::vector<int>> imp_;  // single positive binary clauses
    std::vector<std::vector<char>> closure_;
    std::vector<int> boxF_, boxP_, base_;  // boxF_[atom lit] = index of boxF literal or -1
    std::vector<char> r4F_, r4P_;
    std::vector<int> units_;
    std::vector<int> parent_;
    std::vector<const char*> parentRule_;
    std::vector<char> reached_;
    // stutter searches: [0] left with boxF, [1] right with boxP
    std::vector<int> stParent_[2];
    std::vector<const char*> stRule_[2];
    std::vector<int> stEnd_[2];  // first end per literal reached with the right flag, -1 if none
    std::vector<int> forallSrc_, forallParent_;
    std::vector<const char*> forallRule_;
};

struct CoreBoxResult {
    bool sat = true;
    std::optional<std::pair<Clause, int>> violated;
    std::vector<Trace> traces;  // one per literal of the violated clause
};

CoreBoxResult decide_core_box(const RestrictedForm& rf);

}  // namespace ltlz
