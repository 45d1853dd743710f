#include "ltlz/core_box.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ltlz/graph.hpp"

namespace ltlz {

namespace {

constexpr int kF = 1, kP = 2;

bool is_boxF(const Literal& l) { return l.ops.size() == 1 && l.ops[0] == LitOp::BoxF; }
bool is_boxP(const Literal& l) { return l.ops.size() == 1 && l.ops[0] == LitOp::BoxP; }

// clause with bottom literals resolved; nullopt if trivially true
std::optional<Clause> clean(const Clause& c) {
    Clause out;
    for (auto& l : c.neg) {
        if (l.bottom()) return std::nullopt;
        out.neg.push_back(l);
    }
    for (auto& l : c.pos)
        if (!l.bottom()) out.pos.push_back(l);
    return out;
}

}  // namespace

std::string trace_string(const Trace& t) {
    std::ostringstream os;
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) os << " =>" << t[i].rule << " ";
        os << "(" << print_literal(t[i].lit) << "," << t[i].n << ")";
    }
    return os.str();
}

CoreCalculus::CoreCalculus(const RestrictedForm& rf) {
    if (rf.opSet != OpSet::box) throw std::invalid_argument("core calculus needs a box-only restricted form");
    if (!class_leq(rf.cls, ClauseClass::core)) throw std::invalid_argument("core calculus needs core clauses");
    if (!rf.initial.empty()) throw std::invalid_argument("core calculus: initial clauses are not supported");
    R_ = std::max(1, 2 * size(rf));

    std::vector<Clause> clauses;
    for (auto& c : rf.phiAll)
        if (auto k = clean(c)) clauses.push_back(*k);

    // A trigger atom that only ever implies plain atoms is folded back into
    // the initial atoms, so derivations start where the input's did.
    std::set<std::string> psi = rf.psi;
    if (psi.size() == 1 && psi.begin()->rfind('_', 0) == 0) {
        const std::string t = *psi.begin();
        std::set<std::string> implied;
        bool foldable = true;
        for (auto& c : clauses) {
            bool mentions = false;
            for (auto* side : {&c.neg, &c.pos})
                for (auto& l : *side) mentions |= l.atom == t;
            if (!mentions) continue;
            if (c.neg.size() == 1 && c.pos.size() == 1 && c.neg[0] == lit_atom(t) && c.pos[0].ops.empty() &&
                c.pos[0].atom != t)
                implied.insert(c.pos[0].atom);
            else
                foldable = false;
        }
        if (foldable && !implied.empty()) {
            psi = implied;
            std::erase_if(clauses, [&](const Clause& c) { return !c.neg.empty() && c.neg[0] == lit_atom(t); });
        }
    }

    std::set<Literal> all;
    for (auto& p : psi) all.insert(lit_atom(p));
    for (auto& c : clauses)
        for (auto* side : {&c.neg, &c.pos})
            for (auto& l : *side) {
                if (!(l.ops.empty() || is_boxF(l) || is_boxP(l)))
                    throw std::invalid_argument("core calculus: literal is not flat: " + print_literal(l));
                all.insert(l);
                all.insert(lit_atom(l.atom));
            }
    // R5 may introduce box literals the input never mentions
    std::set<std::string> atoms;
    for (auto& l : all) atoms.insert(l.atom);
    for (auto& a : atoms) {
        all.insert(lit_wrap(LitOp::BoxF, lit_atom(a)));
        all.insert(lit_wrap(LitOp::BoxP, lit_atom(a)));
    }
    lits_.assign(all.begin(), all.end());
    int L = static_cast<int>(lits_.size());
    for (int i = 0; i < L; ++i) litIndex_[lits_[i]] = i;

    imp_.assign(L, {});
    for (auto& c : clauses) {
        if (c.pos.size() > 1) throw std::invalid_argument("core calculus: clause is not core: " + print_clause(c));
        if (c.pos.size() == 1 && c.neg.size() == 1) imp_[index(c.neg[0])].push_back(index(c.pos[0]));
        else if (c.pos.size() == 1 && c.neg.empty()) units_.push_back(index(c.pos[0]));
        else if (c.pos.size() == 1) throw std::invalid_argument("core calculus: clause is not core: " + print_clause(c));
    }
    for (auto& v : imp_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    closure_.assign(L, std::vector<char>(L, 0));
    for (int i = 0; i < L; ++i) {
        std::vector<int> q{i};
        closure_[i][i] = 1;
        for (size_t qi = 0; qi < q.size(); ++qi)
            for (int j : imp_[q[qi]])
                if (!closure_[i][j]) {
                    closure_[i][j] = 1;
                    q.push_back(j);
                }
    }

    boxF_.assign(L, -1);
    boxP_.assign(L, -1);
    base_.assign(L, -1);
    r4F_.assign(L, 0);
    r4P_.assign(L, 0);
    std::vector<int> psiIdx;
    for (auto& p : psi) psiIdx.push_back(index(lit_atom(p)));
    for (int i = 0; i < L; ++i) {
        if (lits_[i].ops.empty()) continue;
        int b = index(lit_atom(lits_[i].atom));
        base_[i] = b;
        (is_boxF(lits_[i]) ? boxF_ : boxP_)[b] = i;
        bool fromPsi = std::any_of(psiIdx.begin(), psiIdx.end(), [&](int p) { return closure_[p][b]; });
        (is_boxF(lits_[i]) ? r4F_ : r4P_)[i] = fromPsi;
    }

    // 0-derivations within the reach bound
    int N = L * (2 * R_ + 1) * 4;
    reached_.assign(N, 0);
    parent_.assign(N, -1);
    parentRule_.assign(N, "");
    std::vector<int> queue;
    for (int p : psiIdx) {
        int id = node(p, 0, 0);
        if (!reached_[id]) {
            reached_[id] = 1;
            queue.push_back(id);
        }
    }
    std::vector<std::pair<int, const char*>> succ;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        successors(queue[qi], succ);
        for (auto [v, rule] : succ)
            if (!reached_[v]) {
                reached_[v] = 1;
                parent_[v] = queue[qi];
                parentRule_[v] = rule;
                queue.push_back(v);
            }
    }
    stutter(true);
    stutter(false);

    // sources of universal truths: (C1'), (C2'), (C3') and unit clauses
    std::vector<long> minF(L, LONG_MAX), maxP(L, LONG_MIN);
    for (int id = 0; id < N; ++id) {
        if (!reached_[id]) continue;
        int li = lit_of(id);
        if (flags_of(id) & kF) minF[li] = std::min(minF[li], n_of(id));
        if (flags_of(id) & kP) maxP[li] = std::max(maxP[li], n_of(id));
    }
    forallSrc_.assign(L, 0);
    forallParent_.assign(L, -1);
    forallRule_.assign(L, "");
    std::vector<char> seen(L, 0);
    std::vector<int> fq;
    for (int i = 0; i < L; ++i) {
        bool c1 = minF[i] != LONG_MAX && maxP[i] != LONG_MIN && minF[i] <= maxP[i] + 1;
        if (c1 || stEnd_[0][i] >= 0 || stEnd_[1][i] >= 0) forallSrc_[i] = 1;
    }
    for (int u : units_) forallSrc_[u] = 1;
    for (int i = 0; i < L; ++i)
        if (forallSrc_[i]) {
            seen[i] = 1;
            fq.push_back(i);
        }
    for (size_t qi = 0; qi < fq.size(); ++qi) {
        int u = fq[qi];
        std::vector<std::pair<int, const char*>> next;
        for (int v : imp_[u]) next.push_back({v, "R1"});
        if (base_[u] >= 0) next.push_back({base_[u], "R3"});
        if (lits_[u].ops.empty()) {
            if (boxF_[u] >= 0) next.push_back({boxF_[u], "R5"});
            if (boxP_[u] >= 0) next.push_back({boxP_[u], "R5"});
        }
        for (auto [v, rule] : next)
            if (!seen[v]) {
                seen[v] = 1;
                forallParent_[v] = u;
                forallRule_[v] = rule;
                fq.push_back(v);
            }
    }
    for (int i = 0; i < L; ++i)
        if (!seen[i]) forallParent_[i] = -2;
}

int CoreCalculus::index(const Literal& l) const {
    auto it = litIndex_.find(l);
    return it == litIndex_.end() ? -1 : it->second;
}

bool CoreCalculus::leads_to(const Literal& a, const Literal& b) const {
    int i = index(a), j = index(b);
    if (i < 0 || j < 0) return a == b;
    return closure_[i][j] != 0;
}

void CoreCalculus::successors(int id, std::vector<std::pair<int, const char*>>& out) const {
    out.clear();
    int li = lit_of(id), f = flags_of(id);
    long n = n_of(id);
    auto push = [&](int lj, long m, const char* rule) {
        if (m < -R_ || m > R_) return;
        int g = f | (is_boxF(lits_[lj]) ? kF : 0) | (is_boxP(lits_[lj]) ? kP : 0);
        out.push_back({node(lj, m, g), rule});
    };
    for (int lj : imp_[li]) push(lj, n, "R1");
    const Literal& l = lits_[li];
    if (is_boxF(l)) {
        push(li, n + 1, "R2");
        push(base_[li], n + 1, "R3");
        if (n == 0 && r4F_[li]) push(li, -1, "R4");
    } else if (is_boxP(l)) {
        push(li, n - 1, "R2");
        push(base_[li], n - 1, "R3");
        if (n == 0 && r4P_[li]) push(li, 1, "R4");
    } else {
        if ((f & kF) && boxF_[li] >= 0) push(boxF_[li], n - 1, "R5");
        if ((f & kP) && boxP_[li] >= 0) push(boxP_[li], n + 1, "R5");
    }
}

// A stutter end is a band node whose literal already occurred, at a
// position further from zero's opposite side, on some band path into it.
void CoreCalculus::stutter(bool left) {
    int side = left ? 0 : 1, s = left ? 1 : -1;
    int L = static_cast<int>(lits_.size()), N = static_cast<int>(reached_.size());
    std::vector<int> band;
    std::vector<int> local(N, -1);
    for (int id = 0; id < N; ++id)
        if (reached_[id] && s * n_of(id) < 0) {
            local[id] = static_cast<int>(band.size());
            band.push_back(id);
        }
    int B = static_cast<int>(band.size());
    std::vector<std::vector<int>> adj(B);
    std::vector<std::pair<int, const char*>> succ;
    for (int i = 0; i < B; ++i) {
        successors(band[i], succ);
        for (auto [v, rule] : succ)
            if (local[v] >= 0) adj[i].push_back(local[v]);
    }
    int nc = 0;
    std::vector<int> comp = scc(adj, nc);
    std::vector<int> best(static_cast<size_t>(nc) * L, INT_MIN);
    std::vector<std::vector<int>> members(nc);
    for (int i = 0; i < B; ++i) {
        members[comp[i]].push_back(i);
        int& b = best[static_cast<size_t>(comp[i]) * L + lit_of(band[i])];
        b = std::max(b, static_cast<int>(s * n_of(band[i])));
    }
    for (int c = nc - 1; c >= 0; --c)
        for (int i : members[c])
            for (int j : adj[i]) {
                int d = comp[j];
                if (d == c) continue;
                for (int l = 0; l < L; ++l)
                    best[static_cast<size_t>(d) * L + l] =
                        std::max(best[static_cast<size_t>(d) * L + l], best[static_cast<size_t>(c) * L + l]);
            }
    std::vector<int> ends;
    for (int i = 0; i < B; ++i)
        if (best[static_cast<size_t>(comp[i]) * L + lit_of(band[i])] > s * n_of(band[i])) ends.push_back(band[i]);

    stParent_[side].assign(N, -2);
    stRule_[side].assign(N, "");
    stEnd_[side].assign(L, -1);
    int flag = left ? kF : kP;
    std::vector<int> queue;
    for (int e : ends) {
        stParent_[side][e] = -1;
        queue.push_back(e);
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        if ((flags_of(u) & flag) && stEnd_[side][lit_of(u)] < 0) stEnd_[side][lit_of(u)] = u;
        successors(u, succ);
        for (auto [v, rule] : succ)
            if (stParent_[side][v] == -2) {
                stParent_[side][v] = u;
                stRule_[side][v] = rule;
                queue.push_back(v);
            }
    }
}

Trace CoreCalculus::path_to(int id) const {
    Trace t;
    for (int x = id; x >= 0; x = parent_[x]) t.push_back({lits_[lit_of(x)], n_of(x), parentRule_[x]});
    std::reverse(t.begin(), t.end());
    return t;
}

Trace CoreCalculus::stutter_path(bool left, int id) const {
    int side = left ? 0 : 1;
    Trace tail;
    int x = id;
    for (; stParent_[side][x] >= 0; x = stParent_[side][x])
        tail.push_back({lits_[lit_of(x)], n_of(x), stRule_[side][x]});
    Trace t = path_to(x);
    std::reverse(tail.begin(), tail.end());
    t.insert(t.end(), tail.begin(), tail.end());
    return t;
}

bool CoreCalculus::zero_derives(const Literal& l, long n, Trace* trace) const {
    int li = index(l);
    if (li < 0) return false;
    auto found = [&](int id) {
        if (trace) *trace = path_to(id);
        return true;
    };
    if (n >= -R_ && n <= R_)
        for (int f = 0; f < 4; ++f)
            if (reached_[node(li, n, f)]) return found(node(li, n, f));
    for (long m = -R_; m <= std::min<long>(n, R_); ++m)
        for (int f : {kF, kF | kP})
            if (reached_[node(li, m, f)]) return found(node(li, m, f));
    if (stEnd_[0][li] >= 0) {
        if (trace) *trace = stutter_path(true, stEnd_[0][li]);
        return true;
    }
    for (long m = std::max<long>(n, -R_); m <= R_; ++m)
        for (int f : {kP, kF | kP})
            if (reached_[node(li, m, f)]) return found(node(li, m, f));
    if (stEnd_[1][li] >= 0) {
        if (trace) *trace = stutter_path(false, stEnd_[1][li]);
        return true;
    }
    return false;
}

bool CoreCalculus::forall_derives(const Literal& l, Trace* trace) const {
    int li = index(l);
    if (li < 0 || forallParent_[li] == -2) return false;
    if (trace) {
        std::vector<int> chain;
        for (int x = li; x >= 0; x = forallParent_[x]) chain.push_back(x);
        std::reverse(chain.begin(), chain.end());
        trace->clear();
        long n = 0;
        for (size_t i = 0; i < chain.size(); ++i) {
            int x = chain[i];
            const char* rule = i ? forallRule_[x] : "";
            if (i) {
                int prev = chain[i - 1];
                std::string r = rule;
                if (r == "R3") n += is_boxF(lits_[prev]) ? 1 : -1;
                if (r == "R5") n += is_boxF(lits_[x]) ? -1 : 1;
            }
            trace->push_back({lits_[x], n, rule});
        }
    }
    return true;
}

CoreBoxResult decide_core_box(const RestrictedForm& rf) {
    CoreBoxResult res;
    CoreCalculus calc(rf);
    int K = size(rf) + 4;
    for (auto& c0 : rf.phiAll) {
        auto c = clean(c0);
        if (!c || !c->pos.empty()) continue;
        for (int n = -K; n <= K; ++n) {
            bool all = true;
            for (auto& l : c->neg)
                if (!calc.zero_derives(l, n) && !calc.forall_derives(l)) {
                    all = false;
                    break;
                }
            if (!all) continue;
            res.sat = false;
            res.violated = std::make_pair(c0, n);
            for (auto& l : c->neg) {
                Trace t;
                if (!calc.zero_derives(l, n, &t)) calc.forall_derives(l, &t);
                res.traces.push_back(t);
            }
            return res;
        }
    }
    return res;
}

}  // namespace ltlz
