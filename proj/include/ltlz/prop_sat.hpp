#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ltlz {

// Literals are DIMACS-style signed integers over variables 1..n.
struct PropClauseSet {
    std::vector<std::string> names;  // names[v-1]
    std::unordered_map<std::string, int> index;
    std::vector<std::vector<int>> clauses;
    bool hasEmpty = false;

    int var(const std::string& name);  // get or create
    int fresh(const std::string& hint);
    int num_vars() const { return static_cast<int>(names.size()); }
    // Sorts, deduplicates and drops tautologies; returns false if dropped.
    bool add_clause(std::vector<int> lits);
    bool is_horn() const;
    int max_width() const;
};

using PropModel = std::vector<bool>;  // indexed by variable, slot 0 unused

std::optional<PropModel> horn_min_model(const PropClauseSet& cs);
std::optional<PropModel> two_sat(const PropClauseSet& cs);
std::optional<PropModel> dpll(const PropClauseSet& cs);
std::optional<PropModel> cdcl_solve(const PropClauseSet& cs);

bool satisfies(const PropClauseSet& cs, const PropModel& m);

void write_dimacs(std::ostream& os, const PropClauseSet& cs);
PropClauseSet read_dimacs(std::istream& is);

// Conflict-driven solver with two watched literals, first-UIP learning,
// activity-ordered decisions and Luby restarts. Deterministic.
class Cdcl {
public:
    int new_var();
    int num_vars() const { return static_cast<int>(val_.size()); }
    void add_clause(std::vector<int> lits);  // DIMACS-style literals
    bool solve(const std::vector<int>& assumptions = {});
    bool value(int var) const { return val_[var - 1] == 1; }
    bool okay() const { return ok_; }
    long conflicts() const { return conflicts_; }

private:
    static int enc(int d) { return d > 0 ? 2 * (d - 1) : 2 * (-d - 1) + 1; }
    int lit_val(int l) const {
        int8_t v = val_[l >> 1];
        return v < 0 ? -1 : (v ^ (l & 1));
    }
    void enqueue(int l, int reason);
    int propagate();
    void analyze(int confl, std::vector<int>& learnt, int& btLevel);
    void backtrack(int level);
    int decision_level() const { return static_cast<int>(trailLim_.size()); }
    void bump(int v);
    void heap_up(int i);
    void heap_down(int i);
    void heap_insert(int v);
    int heap_pop();
    int attach(std::vector<int> c);

    bool ok_ = true;
    std::vector<std::vector<int>> cls_;
    std::vector<std::vector<int>> watches_;
    std::vector<int8_t> val_, phase_;
    std::vector<int> level_, reason_, trail_, trailLim_;
    std::vector<double> act_;
    std::vector<int> heap_, heapPos_;
    std::vector<char> seen_;
    double inc_ = 1.0;
    size_t qhead_ = 0;
    long conflicts_ = 0;
};

}  // namespace ltlz
