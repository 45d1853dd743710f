#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltlz/formula.hpp"
#include "ltlz/models.hpp"

namespace ltlz {

enum class Engine { automatic, star2sat, boxenc, corecalc, certsearch, oracle };
enum class Status { sat, unsat, unknown };

std::optional<Engine> engine_from_string(const std::string& s);
std::string to_string(Engine e);
std::string to_string(Status s);

struct SolveOptions {
    Engine engine = Engine::automatic;
    bool witness = false;
    bool certificate = false;
    bool trace = false;
    int oracleBound = 10;
};

struct SolveOutcome {
    Status status = Status::unknown;
    Engine engine = Engine::automatic;
    Fragment fragment;
    bool complete = true;
    std::optional<UPModel> witness;
    std::optional<std::string> certificate;
    std::vector<std::string> trace;
    double timeMs = 0;
};

// The requested engine cannot decide the input's fragment.
struct EngineMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fragment of the clausal normal form (the input itself when already clausal).
ClausalForm clausal_input(const Formula& f);
Engine auto_engine(const Fragment& fr);
SolveOutcome solve(const Formula& f, const SolveOptions& opt = {});

}  // namespace ltlz
