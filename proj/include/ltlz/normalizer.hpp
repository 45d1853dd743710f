#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ltlz/formula.hpp"

namespace ltlz {

// Psi & box*(Phi) with flat clauses. `initial` holds clauses that apply at
// moment 0 only (gadget inputs with initial clauses); it is empty otherwise.
struct RestrictedForm {
    std::set<std::string> psi;
    std::vector<Clause> phiPos, phiNeg, phiAll;
    std::vector<Clause> initial;
    OpSet opSet = OpSet::star;
    ClauseClass cls = ClauseClass::core;
};

struct AbstractedForm {
    std::vector<Clause> clauses;
    std::map<Literal, std::string> surrogateOf;
    std::map<std::string, Literal> literalOf;
};

ClausalForm to_clausal_nf(const Formula& f);
RestrictedForm to_restricted(const ClausalForm& cf, Fragment target);
AbstractedForm abstract(const RestrictedForm& rf);
std::vector<Clause> concretize(const AbstractedForm& af);

ClausalForm restricted_to_clausal(const RestrictedForm& rf);
std::set<std::string> atoms_of(const RestrictedForm& rf);
int size(const RestrictedForm& rf);

// Fresh name supply that avoids a set of reserved names.
class NameSupply {
public:
    explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}
    std::string next(const std::string& prefix);
    std::string exact_or_next(const std::string& name);
    void reserve(const std::string& n) { used_.insert(n); }

private:
    std::set<std::string> used_;
    std::map<std::string, int> counters_;
};

}  // namespace ltlz
