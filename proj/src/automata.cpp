#include "ltlz/automata.hpp"

#include <algorithm>
#include <numeric>

#include "ltlz/graph.hpp"

namespace ltlz {

bool UnaryNFA::accepts(long k) const {
    std::vector<char> cur(static_cast<size_t>(states), 0), nxt;
    cur[initial] = 1;
    for (long i = 0; i < k; ++i) {
        nxt.assign(cur.size(), 0);
        for (int s = 0; s < states; ++s)
            if (cur[s])
                for (int t : succ[s]) nxt[t] = 1;
        cur.swap(nxt);
    }
    return cur[accepting] != 0;
}

std::optional<long long> Progression::first_positive() const {
    if (a > 0) return a;
    if (b > 0) return b;
    return std::nullopt;
}

bool progression_hits_interval(long long a, long long b, long long lo, long long hi) {
    if (hi - lo < 2) return false;
    if (b == 0) return lo < a && a < hi;
    long long first;
    if (a > lo) {
        first = a;
    } else {
        // least m with a + b*m > lo, from the floor of (lo - a) / b
        long long m = (lo - a) / b + 1;
        first = a + b * m;
    }
    return first < hi;
}

bool ProgressionSet::contains(long long n) const {
    return std::any_of(progs.begin(), progs.end(), [&](const Progression& p) { return p.contains(n); });
}

std::optional<long long> ProgressionSet::first_positive() const {
    std::optional<long long> best;
    for (auto& p : progs)
        if (auto f = p.first_positive(); f && (!best || *f < *best)) best = f;
    return best;
}

bool ProgressionSet::hits_interval(long long lo, long long hi) const {
    return std::any_of(progs.begin(), progs.end(),
                       [&](const Progression& p) { return progression_hits_interval(p.a, p.b, lo, hi); });
}

bool ProgressionSet::within_a1_bounds() const {
    return std::all_of(progs.begin(), progs.end(), [&](const Progression& p) {
        return p.a >= 0 && p.b >= 0 && p.a <= sourceStates && p.b <= sourceStates;
    });
}

// Tail plus cycles: acceptance below the threshold is read off directly,
// above it every accepting run passes through a cyclic component whose
// period fixes the accepted residues.
ProgressionSet chrobak(const UnaryNFA& nfa) {
    ProgressionSet out;
    int n = nfa.states;
    out.sourceStates = n;
    if (n == 0) return out;
    long T = static_cast<long>(n) * n + n + 1;

    int ncomp = 0;
    std::vector<int> comp = scc(nfa.succ, ncomp);

    // plain acceptance for k < T + n
    long H = T + n + 1;
    std::vector<char> acc(static_cast<size_t>(H), 0);
    {
        std::vector<char> cur(n, 0), nxt;
        cur[nfa.initial] = 1;
        for (long k = 0; k < H; ++k) {
            acc[k] = cur[nfa.accepting];
            nxt.assign(n, 0);
            for (int s = 0; s < n; ++s)
                if (cur[s])
                    for (int t : nfa.succ[s]) nxt[t] = 1;
            cur.swap(nxt);
        }
    }

    std::vector<Progression> periodic;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
            if (comp[v] == c) members.push_back(v);
        // period: gcd of level differences along internal edges
        std::vector<long> level(n, -1);
        level[members[0]] = 0;
        std::vector<int> queue{members[0]};
        long d = 0;
        bool cyclic = false;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (int w : nfa.succ[v]) {
                if (comp[w] != c) continue;
                cyclic = true;
                if (level[w] < 0) {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                } else {
                    d = std::gcd(d, std::labs(level[v] + 1 - level[w]));
                }
            }
        }
        if (!cyclic) continue;
        if (d == 0) d = 1;  // unreachable for a cyclic component, kept for safety

        // runs that visit the component: simulate (state, visited) pairs
        long top = T + d;
        std::vector<char> cur(2 * n, 0), nxt;
        auto id = [&](int s, int f) { return 2 * s + f; };
        cur[id(nfa.initial, comp[nfa.initial] == c)] = 1;
        std::vector<char> hit(static_cast<size_t>(top), 0);
        for (long k = 0; k < top; ++k) {
            hit[k] = cur[id(nfa.accepting, 1)];
            nxt.assign(2 * n, 0);
            for (int s = 0; s < n; ++s)
                for (int f = 0; f < 2; ++f)
                    if (cur[id(s, f)])
                        for (int t : nfa.succ[s]) nxt[id(t, f | (comp[t] == c))] = 1;
            cur.swap(nxt);
        }
        for (long k = T; k < top; ++k) {
            if (!hit[k]) continue;
            long long a = k;
            while (a - d >= 0 && acc[a - d]) a -= d;
            periodic.push_back({a, d});
        }
    }

    // drop progressions contained in another one
    std::sort(periodic.begin(), periodic.end(),
              [](const Progression& x, const Progression& y) { return std::tie(x.b, x.a) < std::tie(y.b, y.a); });
    for (auto& p : periodic) {
        bool dup = std::any_of(out.progs.begin(), out.progs.end(), [&](const Progression& q) {
            return p.b % q.b == 0 && p.a >= q.a && (p.a - q.a) % q.b == 0;
        });
        if (!dup) out.progs.push_back(p);
    }
    for (long k = 0; k < T; ++k)
        if (acc[k] && !out.contains(k)) out.progs.push_back({k, 0});
    return out;
}

}  // namespace ltlz
