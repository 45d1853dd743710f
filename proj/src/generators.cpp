#include "ltlz/generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ltlz {

const std::vector<int>& small_primes() {
    static const std::vector<int> p = {2, 3, 5, 7, 11, 13, 17, 19};
    return p;
}

std::optional<std::vector<int>> represents(long long k, int m) {
    if (m < 0 || m > static_cast<int>(small_primes().size())) throw std::invalid_argument("represents: at most 8 variables");
    if (k <= 0) throw std::invalid_argument("represents: k must be positive");
    std::vector<int> sigma;
    for (int i = 0; i < m; ++i) {
        int r = static_cast<int>(k % small_primes()[i]);
        if (r > 1) return std::nullopt;
        sigma.push_back(r);
    }
    return sigma;
}

namespace {

// distinct variables with their falsifying values; nullopt for tautologies
std::optional<std::map<int, int>> falsifier(const std::vector<int>& clause) {
    std::map<int, int> val;
    for (int l : clause) {
        int v = std::abs(l), f = l > 0 ? 0 : 1;
        auto it = val.find(v);
        if (it != val.end() && it->second != f) return std::nullopt;
        val[v] = f;
    }
    return val;
}

void check_cnf(const CNF3& f, int maxWidth) {
    if (f.numVars > static_cast<int>(small_primes().size())) throw std::invalid_argument("3SAT reduction supports at most 8 variables");
    for (auto& c : f.clauses) {
        if (static_cast<int>(c.size()) > maxWidth)
            throw std::invalid_argument("clause with more than " + std::to_string(maxWidth) + " literals");
        for (int l : c)
            if (l == 0 || std::abs(l) > f.numVars) throw std::invalid_argument("literal out of range");
    }
}

Literal next_f(Literal l) { return lit_wrap(LitOp::NextF, std::move(l)); }

Clause imp(const Literal& a, const Literal& b) {
    Clause c;
    c.add_neg(a);
    c.add_pos(b);
    return c;
}

}  // namespace

std::vector<Progression3> sat_progressions(const CNF3& f) {
    check_cnf(f, 3);
    std::vector<Progression3> out;
    for (int i = 0; i < f.numVars; ++i)
        for (int j = 2; j < small_primes()[i]; ++j) out.push_back({j, small_primes()[i]});
    for (auto& c : f.clauses) {
        auto fv = falsifier(c);
        if (!fv) continue;
        long long M = 1;
        for (auto& [v, val] : *fv) M *= small_primes()[v - 1];
        // smallest positive k with k = val (mod P_v) for every variable
        long long a = 0;
        for (long long k = 1; k <= M; ++k) {
            bool ok = true;
            for (auto& [v, val] : *fv) ok = ok && k % small_primes()[v - 1] == val;
            if (ok) {
                a = k;
                break;
            }
        }
        out.push_back({a, M});
    }
    return out;
}

ClausalForm gen_3sat(const CNF3& f) {
    if (f.clauses.empty()) throw std::invalid_argument("3SAT reduction needs at least one clause");
    ClausalForm cf;
    Literal d = lit_atom("d");
    int pid = 0;
    for (auto& pr : sat_progressions(f)) {
        auto u = [&](long long j) { return lit_atom("u_" + std::to_string(pid) + "_" + std::to_string(j)); };
        auto v = [&](long long j) { return lit_atom("v_" + std::to_string(pid) + "_" + std::to_string(j)); };
        cf.initialPos.push_back(u(0));
        for (long long j = 1; j <= pr.a; ++j) cf.boxed.push_back(imp(u(j - 1), next_f(u(j))));
        cf.boxed.push_back(imp(u(pr.a), v(0)));
        for (long long j = 1; j <= pr.b; ++j) cf.boxed.push_back(imp(v(j - 1), next_f(v(j))));
        cf.boxed.push_back(imp(v(pr.b), v(0)));
        cf.boxed.push_back(imp(v(0), d));
        ++pid;
    }
    Literal p = lit_atom("_anchor");
    cf.initialPos.push_back(p);
    cf.boxed.push_back(imp(next_f(p), p));
    cf.boxed.push_back(imp(p, d));
    Clause notAll;
    notAll.add_neg(lit_wrap(LitOp::BoxAll, d));
    cf.boxed.push_back(notAll);
    return cf;
}

ClausalForm gen_3col(const Graph& g) {
    ClausalForm cf;
    auto p = [](int i) { return lit_atom("p" + std::to_string(i)); };
    auto nv = [](size_t i) { return lit_atom("nv" + std::to_string(i)); };
    cf.initialPos.push_back(p(0));
    for (int i = 0; i < 4; ++i) cf.boxed.push_back(imp(p(i), lit_wrap(LitOp::BoxF, p(i + 1))));
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        Clause c;
        c.add_neg(p(0));
        c.add_neg(lit_wrap(LitOp::BoxF, nv(i)));
        cf.boxed.push_back(c);
    }
    for (size_t i = 0; i < g.vertices.size(); ++i) cf.boxed.push_back(imp(p(4), nv(i)));
    for (auto [a, b] : g.edges) {
        if (a == b) throw std::invalid_argument("graph has a self-loop");
        Clause c;
        c.add_pos(nv(a));
        c.add_pos(nv(b));
        cf.boxed.push_back(c);
    }
    return cf;
}

ClausalForm gen_horn_gadget(const CNF3& f) {
    ClausalForm cf;
    auto x = [](int v) { return lit_atom("x" + std::to_string(v)); };
    std::set<std::string> used;
    for (int v = 1; v <= f.numVars; ++v) used.insert("x" + std::to_string(v));
    int fresh = 0;
    for (auto& raw : f.clauses) {
        std::vector<int> c = raw;
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (int l : c)
            if (l == 0 || std::abs(l) > f.numVars) throw std::invalid_argument("literal out of range");
        if (c.size() == 1) {
            (c[0] > 0 ? cf.initialPos : cf.initialNeg).push_back(x(std::abs(c[0])));
            continue;
        }
        std::vector<int> neg, pos;
        for (int l : c) (l < 0 ? neg : pos).push_back(std::abs(l));
        if (pos.size() != 1 || neg.empty() || neg.size() > 2)
            throw std::invalid_argument("Horn gadget expects units and clauses p & q -> r");
        int pv = neg[0], qv = neg.size() == 2 ? neg[1] : neg[0], rv = pos[0];
        std::string cname;
        do cname = "c" + std::to_string(++fresh);
        while (used.count(cname));
        Literal ci = lit_atom(cname);
        cf.initialPos.push_back(ci);
        cf.boxed.push_back(imp(x(pv), lit_wrap(LitOp::BoxF, ci)));
        cf.boxed.push_back(imp(x(qv), lit_wrap(LitOp::BoxP, ci)));
        cf.initialClauses.push_back(imp(lit_wrap(LitOp::BoxAll, ci), x(rv)));
    }
    return cf;
}

CNF3 read_cnf3(std::istream& is) {
    CNF3 f;
    std::string line;
    std::vector<int> cur;
    int declared = -1, maxVar = 0;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first == "c" || first[0] == '%') continue;
        if (first == "p") {
            std::string fmt;
            int nc;
            if (!(ls >> fmt >> declared >> nc) || fmt != "cnf") throw std::invalid_argument("bad DIMACS header");
            continue;
        }
        std::istringstream all(line);
        long x;
        while (all >> x) {
            if (x == 0) {
                f.clauses.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(static_cast<int>(x));
                maxVar = std::max(maxVar, static_cast<int>(std::labs(x)));
            }
        }
        if (all.fail() && !all.eof()) throw std::invalid_argument("bad DIMACS clause line: " + line);
    }
    if (!cur.empty()) f.clauses.push_back(cur);
    if (declared >= 0 && maxVar > declared) throw std::invalid_argument("variable exceeds DIMACS header");
    f.numVars = std::max(declared, maxVar);
    return f;
}

Graph read_edge_list(std::istream& is) {
    Graph g;
    std::map<std::string, int> idx;
    auto vertex = [&](const std::string& s) {
        auto it = idx.find(s);
        if (it != idx.end()) return it->second;
        g.vertices.push_back(s);
        return idx[s] = static_cast<int>(g.vertices.size()) - 1;
    };
    std::set<std::pair<int, int>> seen;
    std::string line;
    while (std::getline(is, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() > 2) throw std::invalid_argument("edge list lines hold one or two vertices: " + line);
        int a = vertex(tok[0]);
        if (tok.size() == 1) continue;
        int b = vertex(tok[1]);
        if (a == b) throw std::invalid_argument("self-loop on vertex " + tok[0]);
        if (seen.insert(std::minmax(a, b)).second) g.edges.push_back({a, b});
    }
    return g;
}

bool brute_force_sat(const CNF3& f) {
    for (long mask = 0; mask < (1L << f.numVars); ++mask) {
        bool all = true;
        for (auto& c : f.clauses) {
            bool any = false;
            for (int l : c) any = any || (((mask >> (std::abs(l) - 1)) & 1) == (l > 0 ? 1 : 0));
            if (!any) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

bool brute_force_3col(const Graph& g) {
    size_t n = g.vertices.size();
    std::vector<int> col(n, 0);
    while (true) {
        bool ok = true;
        for (auto [a, b] : g.edges) ok = ok && col[a] != col[b];
        if (ok) return true;
        size_t i = 0;
        while (i < n && col[i] == 2) col[i++] = 0;
        if (i == n) return false;
        ++col[i];
    }
}

}  // namespace ltlz
