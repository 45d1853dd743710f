#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "ltlz/formula.hpp"
#include "ltlz/models.hpp"
#include "ltlz/prop_sat.hpp"

namespace ltlz {

struct Shape {
    int left = 1, core = 1, right = 1;
};

// Propositional encoding of "formula holds at position p" over all models
// of a fixed shape. Core positions are 0..core-1; negative positions walk
// back through the left period, positions >= core through the right one.
class ShapeEncoder {
public:
    ShapeEncoder(Cdcl& solver, Shape shape);

    int at(const Formula& f, long p);
    // some core position satisfies f
    int somewhere(const Formula& f);
    // reads the solver's current assignment; anchor = first core position
    // where `top` is true (0 if none)
    UPModel model(int top) const;
    const Shape& shape() const { return sh_; }

private:
    struct Vals {
        long mL = 0, mR = 0, lo = 0;
        std::vector<int> v;
    };

    int atom(const std::string& a, long p);
    int get(const Vals& x, long p) const;
    const Vals& vals(const Formula& f);
    Vals compute(const Formula& f);
    void alloc(Vals& r) const;
    int mk_and(std::vector<int> xs);
    int mk_or(std::vector<int> xs);
    int truth() const { return true_; }

    Cdcl& s_;
    Shape sh_;
    long L_, C_, R_;
    int true_;
    std::map<std::string, std::vector<int>> atomVars_;  // per shape slot
    std::unordered_map<std::string, Vals> memo_;
    std::map<std::vector<int>, int> andMemo_, orMemo_;
};

// Incremental bounded search: a fixed background formula plus per-query
// extras, sharing one solver per shape.
class BoundedOracle {
public:
    BoundedOracle(Formula background, int bound);
    // a model with background and query both true at the same moment
    std::optional<UPModel> find(const Formula& query);
    const std::vector<Shape>& shapes() const { return shapes_; }

private:
    struct Slot {
        std::unique_ptr<Cdcl> solver;
        std::unique_ptr<ShapeEncoder> enc;
        bool dead = false;
    };
    Formula bg_;
    std::vector<Shape> shapes_;
    std::vector<Slot> slots_;
};

// maximal shapes for a bound: left + core + right == bound, all periods >= 1
std::vector<Shape> oracle_shapes(int bound);

struct OracleOptions {
    int bound = 10;
    long guard = 2000;  // atoms * bound
};

struct OracleResult {
    bool found = false;
    bool provedUnsat = false;  // bottom or an empty clause is syntactically present
    UPModel model;
};

OracleResult oracle_decide(const ClausalForm& cf, const OracleOptions& opt);
OracleResult oracle_decide(const Formula& f, const OracleOptions& opt);

}  // namespace ltlz
