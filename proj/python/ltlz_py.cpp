#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ltlz/formula.hpp"
#include "ltlz/generators.hpp"
#include "ltlz/models.hpp"
#include "ltlz/normalizer.hpp"
#include "ltlz/oracle.hpp"
#include "ltlz/solve.hpp"

namespace py = pybind11;
using namespace ltlz;

namespace {

Fragment fragment_of(const std::string& s) {
    auto slash = s.find('/');
    std::optional<ClauseClass> c;
    std::optional<OpSet> o;
    if (slash != std::string::npos) {
        c = class_from_string(s.substr(0, slash));
        o = ops_from_string(s.substr(slash + 1));
    }
    if (!c || !o) throw py::value_error("fragment must look like krom/box_next, got " + s);
    return {*c, *o, false};
}

py::dict solve_py(const std::string& text, const std::string& engine, bool witness, bool certificate, bool trace,
                  int bound) {
    auto e = engine_from_string(engine);
    if (!e) throw py::value_error("unknown engine " + engine);
    SolveOptions opt;
    opt.engine = *e;
    opt.witness = witness;
    opt.certificate = certificate;
    opt.trace = trace;
    opt.oracleBound = bound;
    SolveOutcome r = solve(parse(text), opt);
    py::dict d;
    d["status"] = to_string(r.status);
    d["engine"] = to_string(r.engine);
    d["fragment"] = to_string(r.fragment);
    d["complete"] = r.complete;
    d["timeMs"] = r.timeMs;
    if (r.witness) d["witness"] = serialize_model(*r.witness);
    if (r.certificate) d["certificate"] = *r.certificate;
    if (!r.trace.empty()) d["trace"] = r.trace;
    return d;
}

}  // namespace

PYBIND11_MODULE(_ltlz, m) {
    m.doc() = "clausal temporal logic over the integers";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<EngineMismatch>(m, "EngineMismatch", PyExc_ValueError);

    m.def("reprint", [](const std::string& text) { return print(parse(text)); },
          "parse a formula and print it back");
    m.def("classify", [](const std::string& text) { return to_string(classify(clausal_input(parse(text)))); });
    m.def(
        "normalize",
        [](const std::string& text, std::optional<std::string> target) {
            ClausalForm cf = clausal_input(parse(text));
            Fragment fr = target ? fragment_of(*target) : classify(cf);
            return print(to_formula(restricted_to_clausal(to_restricted(cf, fr))));
        },
        py::arg("text"), py::arg("target") = py::none());
    m.def("solve", &solve_py, py::arg("text"), py::arg("engine") = "auto", py::arg("witness") = false,
          py::arg("certificate") = false, py::arg("trace") = false, py::arg("bound") = 10);
    m.def(
        "oracle",
        [](const std::string& text, int bound) {
            OracleOptions o;
            o.bound = bound;
            auto r = oracle_decide(parse(text), o);
            py::dict d;
            d["found"] = r.found;
            d["proved_unsat"] = r.provedUnsat;
            if (r.found) d["model"] = serialize_model(r.model);
            return d;
        },
        py::arg("text"), py::arg("bound") = 10);
    m.def("check", [](const std::string& text, const std::string& model) {
        Formula f = parse(text);
        UPModel md = parse_model(model);
        if (auto cf = from_formula(f)) return eval_clausal(md, *cf);
        return eval_formula(md, f, 0);
    });
    m.def("generate", [](const std::string& kind, const std::string& input) {
        std::istringstream in(input);
        ClausalForm cf;
        if (kind == "3sat") cf = gen_3sat(read_cnf3(in));
        else if (kind == "horn") cf = gen_horn_gadget(read_cnf3(in));
        else if (kind == "3col") cf = gen_3col(read_edge_list(in));
        else throw py::value_error("kind must be 3sat, 3col or horn");
        return print(to_formula(cf));
    });
}
