#include "ltlz/prop_sat.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ltlz {

int PropClauseSet::var(const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    names.push_back(name);
    int v = static_cast<int>(names.size());
    index.emplace(name, v);
    return v;
}

int PropClauseSet::fresh(const std::string& hint) {
    std::string n = hint;
    for (int i = 0; index.count(n); ++i) n = hint + "#" + std::to_string(i);
    return var(n);
}

bool PropClauseSet::add_clause(std::vector<int> lits) {
    std::sort(lits.begin(), lits.end(), [](int a, int b) {
        int x = std::abs(a), y = std::abs(b);
        return x != y ? x < y : a < b;
    });
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 1; i < lits.size(); ++i)
        if (lits[i] == -lits[i - 1]) return false;
    if (lits.empty()) hasEmpty = true;
    clauses.push_back(std::move(lits));
    return true;
}

bool PropClauseSet::is_horn() const {
    for (auto& c : clauses) {
        int pos = 0;
        for (int l : c) pos += l > 0;
        if (pos > 1) return false;
    }
    return true;
}

int PropClauseSet::max_width() const {
    size_t w = 0;
    for (auto& c : clauses) w = std::max(w, c.size());
    return static_cast<int>(w);
}

bool satisfies(const PropClauseSet& cs, const PropModel& m) {
    for (auto& c : cs.clauses) {
        bool ok = false;
        for (int l : c) {
            int v = std::abs(l);
            bool val = v < static_cast<int>(m.size()) && m[v];
            if ((l > 0) == val) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

// ---------- Horn: counter-based unit propagation ----------

std::optional<PropModel> horn_min_model(const PropClauseSet& cs) {
    if (!cs.is_horn()) throw std::invalid_argument("horn_min_model: clause with more than one positive literal");
    int n = cs.num_vars();
    PropModel m(n + 1, false);
    if (cs.hasEmpty) return std::nullopt;
    std::vector<int> remaining(cs.clauses.size()), head(cs.clauses.size(), 0);
    std::vector<std::vector<int>> negOcc(n + 1);
    std::vector<int> queue;
    for (size_t i = 0; i < cs.clauses.size(); ++i) {
        int cnt = 0;
        for (int l : cs.clauses[i]) {
            if (l > 0) head[i] = l;
            else {
                ++cnt;
                negOcc[-l].push_back(static_cast<int>(i));
            }
        }
        remaining[i] = cnt;
        if (cnt == 0) {
            if (!head[i]) return std::nullopt;
            if (!m[head[i]]) {
                m[head[i]] = true;
                queue.push_back(head[i]);
            }
        }
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        for (int ci : negOcc[queue[qi]]) {
            if (--remaining[ci] != 0) continue;
            int h = head[ci];
            if (!h) return std::nullopt;
            if (!m[h]) {
                m[h] = true;
                queue.push_back(h);
            }
        }
    }
    return m;
}

// ---------- 2SAT: Tarjan over the implication graph ----------
// node 2(v-1) is v, 2(v-1)+1 is !v. Components are numbered in the order
// Tarjan completes them (reverse topological), and v is set true when its
// component completes before that of !v.

std::optional<PropModel> two_sat(const PropClauseSet& cs) {
    if (cs.max_width() > 2) throw std::invalid_argument("two_sat: clause wider than 2");
    if (cs.hasEmpty) return std::nullopt;
    int n = cs.num_vars();
    auto node = [](int l) { return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1; };
    std::vector<std::vector<int>> g(2 * n);
    for (auto& c : cs.clauses) {
        if (c.size() == 1) {
            g[node(-c[0])].push_back(node(c[0]));
        } else {
            g[node(-c[0])].push_back(node(c[1]));
            g[node(-c[1])].push_back(node(c[0]));
        }
    }
    int N = 2 * n, counter = 0, comps = 0;
    std::vector<int> idx(N, -1), low(N, 0), comp(N, -1), stk;
    std::vector<char> on(N, 0);
    std::vector<std::pair<int, size_t>> call;
    for (int s = 0; s < N; ++s) {
        if (idx[s] >= 0) continue;
        call.push_back({s, 0});
        idx[s] = low[s] = counter++;
        stk.push_back(s);
        on[s] = 1;
        while (!call.empty()) {
            auto& [u, ei] = call.back();
            if (ei < g[u].size()) {
                int w = g[u][ei++];
                if (idx[w] < 0) {
                    idx[w] = low[w] = counter++;
                    stk.push_back(w);
                    on[w] = 1;
                    call.push_back({w, 0});
                } else if (on[w]) {
                    low[u] = std::min(low[u], idx[w]);
                }
                continue;
            }
            if (low[u] == idx[u]) {
                int w;
                do {
                    w = stk.back();
                    stk.pop_back();
                    on[w] = 0;
                    comp[w] = comps;
                } while (w != u);
                ++comps;
            }
            int done = u;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    PropModel m(n + 1, false);
    for (int v = 1; v <= n; ++v) {
        int a = comp[2 * (v - 1)], b = comp[2 * (v - 1) + 1];
        if (a == b) return std::nullopt;
        m[v] = a < b;
    }
    return m;
}

// ---------- DPLL: lowest index first, true branch first ----------

namespace {

struct Dpll {
    const PropClauseSet& cs;
    std::vector<int8_t> a;

    int value(int l) const {
        int8_t v = a[std::abs(l)];
        if (v < 0) return -1;
        return (l > 0) == (v == 1) ? 1 : 0;
    }

    bool propagate(std::vector<int>& trail) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& c : cs.clauses) {
                int unassigned = 0, last = 0;
                bool sat = false;
                for (int l : c) {
                    int v = value(l);
                    if (v == 1) {
                        sat = true;
                        break;
                    }
                    if (v < 0) {
                        ++unassigned;
                        last = l;
                    }
                }
                if (sat) continue;
                if (unassigned == 0) return false;
                if (unassigned == 1) {
                    a[std::abs(last)] = last > 0 ? 1 : 0;
                    trail.push_back(std::abs(last));
                    changed = true;
                }
            }
        }
        return true;
    }

    int pick() const {
        int best = 0;
        for (auto& c : cs.clauses) {
            bool sat = false;
            for (int l : c)
                if (value(l) == 1) {
                    sat = true;
                    break;
                }
            if (sat) continue;
            for (int l : c)
                if (value(l) < 0 && (best == 0 || std::abs(l) < best)) best = std::abs(l);
        }
        return best;
    }

    bool rec() {
        std::vector<int> trail;
        auto undo = [&] {
            for (int v : trail) a[v] = -1;
        };
        if (!propagate(trail)) {
            undo();
            return false;
        }
        int v = pick();
        if (v == 0) return true;
        for (int8_t b : {int8_t(1), int8_t(0)}) {
            a[v] = b;
            if (rec()) return true;
        }
        a[v] = -1;
        undo();
        return false;
    }
};

}  // namespace

std::optional<PropModel> dpll(const PropClauseSet& cs) {
    if (cs.hasEmpty) return std::nullopt;
    Dpll d{cs, std::vector<int8_t>(cs.num_vars() + 1, -1)};
    if (!d.rec()) return std::nullopt;
    PropModel m(cs.num_vars() + 1, false);
    for (int v = 1; v <= cs.num_vars(); ++v) m[v] = d.a[v] == 1;
    return m;
}

std::optional<PropModel> cdcl_solve(const PropClauseSet& cs) {
    if (cs.hasEmpty) return std::nullopt;
    Cdcl s;
    for (int v = 0; v < cs.num_vars(); ++v) s.new_var();
    for (auto& c : cs.clauses) s.add_clause(c);
    if (!s.solve()) return std::nullopt;
    PropModel m(cs.num_vars() + 1, false);
    for (int v = 1; v <= cs.num_vars(); ++v) m[v] = s.value(v);
    return m;
}

// ---------- DIMACS ----------

void write_dimacs(std::ostream& os, const PropClauseSet& cs) {
    for (int v = 1; v <= cs.num_vars(); ++v) os << "c var " << v << " " << cs.names[v - 1] << "\n";
    os << "p cnf " << cs.num_vars() << " " << cs.clauses.size() << "\n";
    for (auto& c : cs.clauses) {
        for (int l : c) os << l << " ";
        os << "0\n";
    }
}

PropClauseSet read_dimacs(std::istream& is) {
    PropClauseSet cs;
    std::string line;
    int declared = -1;
    std::vector<int> cur;
    auto ensure = [&](int v) {
        while (cs.num_vars() < v) cs.var("x" + std::to_string(cs.num_vars() + 1));
    };
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c") continue;
        if (first == "p") {
            std::string fmt;
            int nc;
            if (!(ls >> fmt >> declared >> nc) || fmt != "cnf") throw std::runtime_error("bad DIMACS header");
            ensure(declared);
            continue;
        }
        std::istringstream all(line);
        long x;
        while (all >> x) {
            if (x == 0) {
                cs.add_clause(cur);
                cur.clear();
            } else {
                ensure(static_cast<int>(std::labs(x)));
                cur.push_back(static_cast<int>(x));
            }
        }
        if (all.fail() && !all.eof()) throw std::runtime_error("bad DIMACS clause line: " + line);
    }
    if (!cur.empty()) cs.add_clause(cur);
    return cs;
}

// ---------- CDCL ----------

int Cdcl::new_var() {
    int v = static_cast<int>(val_.size());
    val_.push_back(-1);
    phase_.push_back(0);
    level_.push_back(0);
    reason_.push_back(-1);
    act_.push_back(0.0);
    seen_.push_back(0);
    heapPos_.push_back(-1);
    watches_.emplace_back();
    watches_.emplace_back();
    heap_insert(v);
    return v + 1;
}

void Cdcl::heap_up(int i) {
    int v = heap_[i];
    while (i > 0) {
        int p = (i - 1) / 2;
        int pv = heap_[p];
        if (act_[pv] > act_[v] || (act_[pv] == act_[v] && pv < v)) break;
        heap_[i] = pv;
        heapPos_[pv] = i;
        i = p;
    }
    heap_[i] = v;
    heapPos_[v] = i;
}

void Cdcl::heap_down(int i) {
    int v = heap_[i];
    int n = static_cast<int>(heap_.size());
    while (true) {
        int c = 2 * i + 1;
        if (c >= n) break;
        if (c + 1 < n) {
            int a = heap_[c], b = heap_[c + 1];
            if (act_[b] > act_[a] || (act_[b] == act_[a] && b < a)) ++c;
        }
        int cv = heap_[c];
        if (act_[v] > act_[cv] || (act_[v] == act_[cv] && v < cv)) break;
        heap_[i] = cv;
        heapPos_[cv] = i;
        i = c;
    }
    heap_[i] = v;
    heapPos_[v] = i;
}

void Cdcl::heap_insert(int v) {
    if (heapPos_[v] >= 0) return;
    heap_.push_back(v);
    heapPos_[v] = static_cast<int>(heap_.size()) - 1;
    heap_up(heapPos_[v]);
}

int Cdcl::heap_pop() {
    int v = heap_[0];
    int last = heap_.back();
    heap_.pop_back();
    heapPos_[v] = -1;
    if (!heap_.empty()) {
        heap_[0] = last;
        heapPos_[last] = 0;
        heap_down(0);
    }
    return v;
}

void Cdcl::bump(int v) {
    act_[v] += inc_;
    if (act_[v] > 1e100) {
        for (auto& a : act_) a *= 1e-100;
        inc_ *= 1e-100;
    }
    if (heapPos_[v] >= 0) heap_up(heapPos_[v]);
}

void Cdcl::enqueue(int l, int reason) {
    int v = l >> 1;
    val_[v] = static_cast<int8_t>(1 ^ (l & 1));
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(l);
}

int Cdcl::attach(std::vector<int> c) {
    int ci = static_cast<int>(cls_.size());
    watches_[c[0]].push_back(ci);
    watches_[c[1]].push_back(ci);
    cls_.push_back(std::move(c));
    return ci;
}

void Cdcl::add_clause(std::vector<int> dl) {
    if (!ok_) return;
    backtrack(0);
    std::vector<int> c;
    for (int d : dl) c.push_back(enc(d));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    std::vector<int> kept;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i + 1 < c.size() && (c[i] ^ 1) == c[i + 1]) return;  // tautology
        int v = lit_val(c[i]);
        if (v == 1) return;
        if (v == 0) continue;
        kept.push_back(c[i]);
    }
    if (kept.empty()) {
        ok_ = false;
        return;
    }
    if (kept.size() == 1) {
        enqueue(kept[0], -1);
        if (propagate() >= 0) ok_ = false;
        return;
    }
    attach(std::move(kept));
}

int Cdcl::propagate() {
    while (qhead_ < trail_.size()) {
        int p = trail_[qhead_++];
        int fl = p ^ 1;
        auto& ws = watches_[fl];
        size_t i = 0, j = 0;
        while (i < ws.size()) {
            int ci = ws[i++];
            auto& c = cls_[ci];
            if (c[0] == fl) std::swap(c[0], c[1]);
            if (lit_val(c[0]) == 1) {
                ws[j++] = ci;
                continue;
            }
            bool moved = false;
            for (size_t k = 2; k < c.size(); ++k) {
                if (lit_val(c[k]) != 0) {
                    std::swap(c[1], c[k]);
                    watches_[c[1]].push_back(ci);
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            ws[j++] = ci;
            if (lit_val(c[0]) == 0) {
                while (i < ws.size()) ws[j++] = ws[i++];
                ws.resize(j);
                qhead_ = trail_.size();
                return ci;
            }
            enqueue(c[0], ci);
        }
        ws.resize(j);
    }
    return -1;
}

void Cdcl::analyze(int confl, std::vector<int>& learnt, int& btLevel) {
    learnt.assign(1, -1);
    int pathC = 0, p = -1;
    size_t idx = trail_.size();
    do {
        auto& c = cls_[confl];
        for (size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
            int q = c[k];
            int v = q >> 1;
            if (seen_[v] || level_[v] == 0) continue;
            seen_[v] = 1;
            bump(v);
            if (level_[v] >= decision_level()) ++pathC;
            else learnt.push_back(q);
        }
        while (!seen_[trail_[--idx] >> 1]) {
        }
        p = trail_[idx];
        confl = reason_[p >> 1];
        seen_[p >> 1] = 0;
        --pathC;
        if (pathC > 0) {
            // the reason clause has p at position 0
            auto& rc = cls_[confl];
            if (rc[0] != p) {
                for (size_t k = 1; k < rc.size(); ++k)
                    if (rc[k] == p) {
                        std::swap(rc[0], rc[k]);
                        break;
                    }
            }
        }
    } while (pathC > 0);
    learnt[0] = p ^ 1;
    btLevel = 0;
    size_t maxi = 1;
    for (size_t k = 1; k < learnt.size(); ++k) {
        int lv = level_[learnt[k] >> 1];
        if (lv > btLevel) {
            btLevel = lv;
            maxi = k;
        }
    }
    if (learnt.size() > 1) std::swap(learnt[1], learnt[maxi]);
    for (size_t k = 1; k < learnt.size(); ++k) seen_[learnt[k] >> 1] = 0;
    inc_ *= 1.0 / 0.95;
}

void Cdcl::backtrack(int level) {
    if (decision_level() <= level) return;
    for (size_t i = trail_.size(); i > static_cast<size_t>(trailLim_[level]); --i) {
        int v = trail_[i - 1] >> 1;
        phase_[v] = val_[v];
        val_[v] = -1;
        reason_[v] = -1;
        heap_insert(v);
    }
    trail_.resize(trailLim_[level]);
    trailLim_.resize(level);
    qhead_ = trail_.size();
}

static double luby(double y, int x) {
    int size = 1, seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    double r = 1;
    for (int i = 0; i < seq; ++i) r *= y;
    return r;
}

bool Cdcl::solve(const std::vector<int>& assumptions) {
    if (!ok_) return false;
    backtrack(0);
    if (propagate() >= 0) {
        ok_ = false;
        return false;
    }
    std::vector<int> as;
    for (int d : assumptions) as.push_back(enc(d));
    int restarts = 0;
    long budget = static_cast<long>(100 * luby(2, restarts));
    long sinceRestart = 0;
    std::vector<int> learnt;
    while (true) {
        int confl = propagate();
        if (confl >= 0) {
            ++conflicts_;
            ++sinceRestart;
            if (decision_level() == 0) {
                ok_ = false;
                return false;
            }
            int bt;
            analyze(confl, learnt, bt);
            // never undo assumption levels below the learnt clause's level
            backtrack(bt);
            if (learnt.size() == 1) {
                enqueue(learnt[0], -1);
            } else {
                int ci = attach(learnt);
                enqueue(cls_[ci][0], ci);
            }
            continue;
        }
        if (sinceRestart >= budget) {
            sinceRestart = 0;
            budget = static_cast<long>(100 * luby(2, ++restarts));
            backtrack(0);
            continue;
        }
        int next = -1;
        while (decision_level() < static_cast<int>(as.size())) {
            int a = as[decision_level()];
            int v = lit_val(a);
            if (v == 1) {
                trailLim_.push_back(static_cast<int>(trail_.size()));
            } else if (v == 0) {
                backtrack(0);
                return false;
            } else {
                next = a;
                break;
            }
        }
        if (next < 0) {
            while (!heap_.empty() && val_[heap_[0]] >= 0) heap_pop();
            if (heap_.empty()) return true;
            int v = heap_pop();
            next = 2 * v + (phase_[v] == 1 ? 0 : 1);
        }
        trailLim_.push_back(static_cast<int>(trail_.size()));
        enqueue(next, -1);
    }
}

}  // namespace ltlz
