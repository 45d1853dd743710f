#include "ltlz/solve.hpp"

#include <chrono>

#include "ltlz/box.hpp"
#include "ltlz/core_box.hpp"
#include "ltlz/krom_next.hpp"
#include "ltlz/krom_star.hpp"
#include "ltlz/normalizer.hpp"
#include "ltlz/oracle.hpp"

namespace ltlz {

std::optional<Engine> engine_from_string(const std::string& s) {
    if (s == "auto") return Engine::automatic;
    if (s == "star2sat") return Engine::star2sat;
    if (s == "boxenc") return Engine::boxenc;
    if (s == "corecalc") return Engine::corecalc;
    if (s == "certsearch") return Engine::certsearch;
    if (s == "oracle") return Engine::oracle;
    return std::nullopt;
}

std::string to_string(Engine e) {
    switch (e) {
    case Engine::automatic: return "auto";
    case Engine::star2sat: return "star2sat";
    case Engine::boxenc: return "boxenc";
    case Engine::corecalc: return "corecalc";
    case Engine::certsearch: return "certsearch";
    case Engine::oracle: return "oracle";
    }
    return "?";
}

std::string to_string(Status s) {
    switch (s) {
    case Status::sat: return "sat";
    case Status::unsat: return "unsat";
    case Status::unknown: return "unknown";
    }
    return "?";
}

ClausalForm clausal_input(const Formula& f) {
    if (auto cf = from_formula(f)) return *cf;
    return to_clausal_nf(f);
}

Engine auto_engine(const Fragment& fr) {
    bool binary = class_leq(fr.cls, ClauseClass::krom);
    switch (fr.ops) {
    case OpSet::star: return binary ? Engine::star2sat : Engine::boxenc;
    case OpSet::box: return fr.cls == ClauseClass::core && !fr.nonClausal ? Engine::corecalc : Engine::boxenc;
    case OpSet::box_next: return binary && !fr.nonClausal ? Engine::certsearch : Engine::oracle;
    }
    return Engine::oracle;
}

namespace {

void require(bool ok, Engine e, const Fragment& fr) {
    if (!ok) throw EngineMismatch("engine " + to_string(e) + " cannot decide fragment " + to_string(fr));
}

}  // namespace

SolveOutcome solve(const Formula& f, const SolveOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    SolveOutcome out;
    ClausalForm cf = clausal_input(f);
    Fragment fr = classify(cf);
    out.fragment = fr;
    Engine e = opt.engine == Engine::automatic ? auto_engine(fr) : opt.engine;
    out.engine = e;
    bool binary = class_leq(fr.cls, ClauseClass::krom);

    switch (e) {
    case Engine::star2sat: {
        require(fr.ops == OpSet::star && binary, e, fr);
        auto r = decide_krom_star(to_restricted(cf, {fr.cls, OpSet::star, false}));
        out.status = r.sat ? Status::sat : Status::unsat;
        if (r.sat) out.witness = r.model;
        break;
    }
    case Engine::boxenc: {
        require(ops_leq(fr.ops, OpSet::box), e, fr);
        auto r = decide_box(to_restricted(cf, {fr.cls, OpSet::box, false}));
        out.status = r.sat ? Status::sat : Status::unsat;
        if (r.sat) out.witness = r.model;
        break;
    }
    case Engine::corecalc: {
        require(fr.cls == ClauseClass::core && ops_leq(fr.ops, OpSet::box) && !fr.nonClausal, e, fr);
        RestrictedForm rf = to_restricted(cf, {ClauseClass::core, OpSet::box, false});
        auto r = decide_core_box(rf);
        out.status = r.sat ? Status::sat : Status::unsat;
        if (!r.sat && opt.trace) {
            out.trace.push_back("violated: " + print_clause(r.violated->first) + " at " + std::to_string(r.violated->second));
            for (auto& t : r.traces) out.trace.push_back(trace_string(t));
        }
        // the calculus answers without a model; the canonical one comes from the encoding
        if (r.sat && opt.witness) {
            auto b = decide_box(rf);
            if (!b.sat) throw std::logic_error("solve: core calculus and box encoding disagree");
            out.witness = b.model;
        }
        break;
    }
    case Engine::certsearch: {
        require(binary && !fr.nonClausal, e, fr);
        auto r = decide_krom_next(to_restricted(cf, {fr.cls, OpSet::box_next, false}));
        out.status = r.sat ? Status::sat : Status::unsat;
        if (r.sat) {
            out.witness = r.model;
            out.certificate = certificate_string(*r.certificate);
        }
        break;
    }
    case Engine::oracle: {
        OracleOptions o;
        o.bound = opt.oracleBound;
        auto r = oracle_decide(cf, o);
        out.complete = false;
        if (r.found) {
            out.status = Status::sat;
            out.witness = r.model;
        } else {
            out.status = r.provedUnsat ? Status::unsat : Status::unknown;
        }
        break;
    }
    case Engine::automatic: break;
    }
    if (out.witness && !eval_clausal(*out.witness, cf)) throw std::logic_error("solve: witness fails evaluation");
    if (!opt.witness) out.witness.reset();
    if (!opt.certificate) out.certificate.reset();
    out.timeMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace ltlz
