#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ltlz/formula.hpp"
#include "ltlz/generators.hpp"
#include "ltlz/models.hpp"
#include "ltlz/normalizer.hpp"
#include "ltlz/oracle.hpp"
#include "ltlz/prop_sat.hpp"
#include "ltlz/solve.hpp"

using namespace ltlz;
using json = nlohmann::json;

namespace {

constexpr int kSat = 0, kUnsat = 1, kUnknown = 2, kUsage = 64, kInput = 65;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Formula read_formula(const std::string& path) {
    std::string text = slurp(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

int exit_for(Status s) { return s == Status::sat ? kSat : s == Status::unsat ? kUnsat : kUnknown; }

Fragment parse_fragment(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) throw CLI::ValidationError("--target", "expected CLASS/OPS, e.g. krom/box_next");
    auto c = class_from_string(s.substr(0, slash));
    auto o = ops_from_string(s.substr(slash + 1));
    if (!c || !o) throw CLI::ValidationError("--target", "unknown fragment " + s);
    return {*c, *o, false};
}

// ---- bench ----

std::string random_literal(std::mt19937& rng, int atoms, const std::vector<std::string>& ops) {
    std::string a(1, static_cast<char>('a' + rng() % atoms));
    std::string op = ops[rng() % ops.size()];
    std::string l = op.empty() ? a : "(" + op + " " + a + ")";
    return (rng() % 2 ? "!" : "") + l;
}

Formula random_formula(std::mt19937& rng, const std::vector<std::string>& ops, bool binary) {
    int atoms = 1 + rng() % 4, clauses = 1 + rng() % 6;
    std::string f(1, static_cast<char>('a' + rng() % atoms));
    for (int i = 0; i < clauses; ++i) {
        int w = binary ? 1 + rng() % 2 : 1 + rng() % 3;
        f += " & box* (" + random_literal(rng, atoms, ops);
        for (int j = 1; j < w; ++j) f += " | " + random_literal(rng, atoms, ops);
        f += ")";
    }
    return parse(f);
}

CNF3 random_cnf(std::mt19937& rng, bool horn) {
    CNF3 f;
    f.numVars = 1 + rng() % 3;
    int n = 1 + rng() % 3;
    for (int i = 0; i < n; ++i) {
        std::vector<int> c;
        int v = 1 + static_cast<int>(rng() % f.numVars);
        if (horn) {
            int kind = rng() % 3;
            if (kind == 0) c = {rng() % 2 ? v : -v};
            else if (kind == 1) c = {-v, 1 + static_cast<int>(rng() % f.numVars)};
            else c = {-v, -(1 + static_cast<int>(rng() % f.numVars)), 1 + static_cast<int>(rng() % f.numVars)};
        } else {
            int w = 1 + rng() % 3;
            for (int j = 0; j < w; ++j) {
                int x = 1 + static_cast<int>(rng() % f.numVars);
                c.push_back(rng() % 2 ? x : -x);
            }
        }
        f.clauses.push_back(c);
    }
    return f;
}

Graph random_graph(std::mt19937& rng) {
    Graph g;
    int n = 1 + rng() % 6;
    for (int i = 0; i < n; ++i) g.vertices.push_back("v" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() % 2) g.edges.push_back({i, j});
    return g;
}

int run_bench(const std::string& suite, int count, unsigned seed, bool asJson) {
    std::mt19937 rng(seed);
    int sat = 0, unsat = 0, unknown = 0, wrong = 0;
    double total = 0, worst = 0;
    json rows = json::array();
    for (int i = 0; i < count; ++i) {
        Formula f;
        std::optional<bool> expect;
        if (suite == "3sat" || suite == "horn") {
            CNF3 cnf = random_cnf(rng, suite == "horn");
            if (suite == "3sat" && cnf.clauses.empty()) continue;
            f = to_formula(suite == "3sat" ? gen_3sat(cnf) : gen_horn_gadget(cnf));
            expect = brute_force_sat(cnf);
        } else if (suite == "3col") {
            Graph g = random_graph(rng);
            f = to_formula(gen_3col(g));
            expect = brute_force_3col(g);
        } else if (suite == "star") {
            f = random_formula(rng, {"", "box*"}, rng() % 2);
        } else if (suite == "box") {
            f = random_formula(rng, {"", "boxF", "boxP"}, rng() % 2);
        } else if (suite == "next") {
            f = random_formula(rng, {"", "nextF", "boxF", "boxP"}, true);
        } else {
            throw CLI::ValidationError("SUITE", "unknown suite " + suite + " (3sat, 3col, horn, star, box, next)");
        }
        SolveOutcome r = solve(f);
        if (!expect && r.status == Status::unsat) {
            // small random inputs: an oracle model would refute the answer
            OracleOptions o;
            o.bound = 8;
            if (oracle_decide(f, o).found) expect = true;
        }
        bool bad = expect && r.status != Status::unknown && (r.status == Status::sat) != *expect;
        wrong += bad;
        sat += r.status == Status::sat;
        unsat += r.status == Status::unsat;
        unknown += r.status == Status::unknown;
        total += r.timeMs;
        worst = std::max(worst, r.timeMs);
        if (asJson)
            rows.push_back({{"status", to_string(r.status)}, {"engine", to_string(r.engine)}, {"timeMs", r.timeMs},
                            {"agrees", !bad}});
        else if (bad)
            std::cout << "mismatch: " << print(f) << "\n";
    }
    if (asJson) {
        json out{{"suite", suite}, {"instances", rows}, {"sat", sat}, {"unsat", unsat}, {"unknown", unknown},
                 {"mismatches", wrong}, {"totalMs", total}, {"maxMs", worst}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "suite " << suite << ": " << sat + unsat + unknown << " instances, " << sat << " sat, " << unsat
                  << " unsat, " << unknown << " unknown, " << wrong << " mismatches, total " << total << " ms, max "
                  << worst << " ms\n";
    }
    return wrong ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Satisfiability for clausal temporal logic over the integers"};
    app.require_subcommand(1);

    std::string file, target, engine = "auto", suite, modelFile, kind;
    int bound = 10, count = 20;
    unsigned seed = 1;
    bool witness = false, certificate = false, trace = false, asJson = false;

    auto* cClassify = app.add_subcommand("classify", "Print the fragment of a formula");
    cClassify->add_option("FILE", file, "formula file, - for stdin")->required();

    auto* cNormalize = app.add_subcommand("normalize", "Print the clausal normal form");
    cNormalize->add_option("FILE", file)->required();
    cNormalize->add_option("--target", target, "fragment CLASS/OPS, e.g. core/box");

    auto* cSolve = app.add_subcommand("solve", "Decide satisfiability");
    cSolve->add_option("FILE", file)->required();
    cSolve->add_option("--engine", engine)
        ->check(CLI::IsMember({"auto", "star2sat", "boxenc", "corecalc", "certsearch", "oracle"}));
    cSolve->add_flag("--witness", witness, "print a model when Sat");
    cSolve->add_flag("--certificate", certificate, "print the type certificate (certsearch)");
    cSolve->add_flag("--trace", trace, "print the derivation behind Unsat (corecalc)");
    cSolve->add_flag("--json", asJson);
    cSolve->add_option("--bound", bound, "oracle bound");

    auto* cOracle = app.add_subcommand("oracle", "Bounded model search");
    cOracle->add_option("FILE", file)->required();
    cOracle->add_option("--bound", bound)->required()->check(CLI::Range(3, 64));

    auto* cGenerate = app.add_subcommand("generate", "Emit a reduction instance");
    cGenerate->add_option("KIND", kind)->required()->check(CLI::IsMember({"3sat", "3col", "horn"}));
    cGenerate->add_option("INPUT", file, "DIMACS CNF (3sat, horn) or edge list (3col)")->required();

    auto* cBench = app.add_subcommand("bench", "Run a generated suite: 3sat, 3col, horn, star, box, next");
    cBench->add_option("SUITE", suite)->required();
    cBench->add_option("--count", count);
    cBench->add_option("--seed", seed);
    cBench->add_flag("--json", asJson);

    auto* cCheck = app.add_subcommand("check", "Evaluate a model file against a formula");
    cCheck->add_option("FILE", file)->required();
    cCheck->add_option("MODEL", modelFile)->required();
    cCheck->group("");

    auto* cProp = app.add_subcommand("prop", "Solve a propositional DIMACS file");
    cProp->add_option("FILE", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    try {
        if (*cClassify) {
            ClausalForm cf = clausal_input(read_formula(file));
            Fragment fr = classify(cf);
            std::cout << to_string(fr) << "\n";
            return 0;
        }
        if (*cNormalize) {
            ClausalForm cf = clausal_input(read_formula(file));
            Fragment fr = target.empty() ? classify(cf) : parse_fragment(target);
            try {
                std::cout << print(to_formula(restricted_to_clausal(to_restricted(cf, fr)))) << "\n";
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << " (input is " << to_string(classify(cf)) << ")\n";
                return kUsage;
            }
            return 0;
        }
        if (*cSolve) {
            SolveOptions opt;
            opt.engine = *engine_from_string(engine);
            opt.witness = witness;
            opt.certificate = certificate;
            opt.trace = trace;
            opt.oracleBound = bound;
            Formula f = read_formula(file);
            SolveOutcome r;
            try {
                r = solve(f, opt);
            } catch (const EngineMismatch& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kUsage;
            }
            if (asJson) {
                json out{{"status", to_string(r.status)},
                         {"engine", to_string(r.engine)},
                         {"fragment", to_string(r.fragment)},
                         {"timeMs", r.timeMs},
                         {"complete", r.complete}};
                if (r.witness) out["witness"] = serialize_model(*r.witness);
                if (r.certificate) out["certificate"] = *r.certificate;
                if (!r.trace.empty()) out["trace"] = r.trace;
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << to_string(r.status) << "\n";
                if (!r.complete) std::cout << "c incomplete: bounded search with bound " << bound << "\n";
                if (r.witness) std::cout << serialize_model(*r.witness);
                if (r.certificate) std::cout << *r.certificate;
                for (auto& t : r.trace) std::cout << t << "\n";
            }
            return exit_for(r.status);
        }
        if (*cOracle) {
            OracleOptions o;
            o.bound = bound;
            auto r = oracle_decide(read_formula(file), o);
            if (r.found) {
                std::cout << "sat\n" << serialize_model(r.model);
                return kSat;
            }
            std::cout << (r.provedUnsat ? "unsat\n" : "unknown\n");
            return r.provedUnsat ? kUnsat : kUnknown;
        }
        if (*cGenerate) {
            std::istringstream in(slurp(file));
            ClausalForm cf;
            try {
                if (kind == "3col") cf = gen_3col(read_edge_list(in));
                else if (kind == "3sat") cf = gen_3sat(read_cnf3(in));
                else cf = gen_horn_gadget(read_cnf3(in));
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            std::cout << print(to_formula(cf)) << "\n";
            return 0;
        }
        if (*cBench) return run_bench(suite, count, seed, asJson);
        if (*cCheck) {
            Formula f = read_formula(file);
            UPModel m;
            try {
                m = parse_model(slurp(modelFile));
            } catch (const std::invalid_argument& e) {
                throw InputError(modelFile + ": " + e.what());
            }
            bool ok = false;
            if (auto cf = from_formula(f)) ok = eval_clausal(m, *cf);
            else ok = eval_formula(m, f, 0);
            std::cout << (ok ? "true" : "false") << "\n";
            return ok ? 0 : 1;
        }
        if (*cProp) {
            std::istringstream in(slurp(file));
            PropClauseSet cs;
            try {
                cs = read_dimacs(in);
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            auto m = cdcl_solve(cs);
            if (!m) {
                std::cout << "s UNSATISFIABLE\n";
                return kUnsat;
            }
            std::cout << "s SATISFIABLE\nv";
            for (int v = 1; v <= cs.num_vars(); ++v) std::cout << " " << ((*m)[v] ? v : -v);
            std::cout << " 0\n";
            return kSat;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
