#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltlz/formula.hpp"

namespace ltlz {

// Clauses over variables 1..numVars, DIMACS-style signed literals.
struct CNF3 {
    int numVars = 0;
    std::vector<std::vector<int>> clauses;
};

struct Graph {
    std::vector<std::string> vertices;
    std::vector<std::pair<int, int>> edges;  // indices into vertices
};

struct Progression3 {
    long long a = 0, b = 1;
};

// first primes, enough for 8 variables
const std::vector<int>& small_primes();

// sigma[i] for variable i+1, or nullopt when k is not an assignment code
std::optional<std::vector<int>> represents(long long k, int m);

// residue-class progressions excluded by the reduction: non-codes first,
// then one per non-tautological clause (same order as f.clauses)
std::vector<Progression3> sat_progressions(const CNF3& f);

ClausalForm gen_3sat(const CNF3& f);
ClausalForm gen_3col(const Graph& g);
// f: units and clauses -p | -q | r (also -p | r, read as p & p -> r)
ClausalForm gen_horn_gadget(const CNF3& f);

CNF3 read_cnf3(std::istream& is);
Graph read_edge_list(std::istream& is);

bool brute_force_sat(const CNF3& f);
bool brute_force_3col(const Graph& g);

}  // namespace ltlz
