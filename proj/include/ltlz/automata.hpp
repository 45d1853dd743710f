#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ltlz {

// NFA over the one-letter alphabet {0}.
struct UnaryNFA {
    int states = 0;
    int initial = 0, accepting = 0;
    std::vector<std::vector<int>> succ;

    explicit UnaryNFA(int n = 0) : states(n), succ(static_cast<size_t>(n)) {}
    void add(int from, int to) { succ[static_cast<size_t>(from)].push_back(to); }
    // reference semantics by direct simulation (test use)
    bool accepts(long k) const;
};

struct Progression {
    long long a = 0, b = 0;  // a + b*N; b == 0 is the singleton {a}

    bool contains(long long n) const { return b == 0 ? n == a : (n >= a && (n - a) % b == 0); }
    // least positive member, if any
    std::optional<long long> first_positive() const;
    bool operator==(const Progression&) const = default;
};

struct ProgressionSet {
    std::vector<Progression> progs;
    int sourceStates = 0;

    bool contains(long long n) const;
    std::optional<long long> first_positive() const;
    // does some member fall strictly between lo and hi
    bool hits_interval(long long lo, long long hi) const;
    bool within_a1_bounds() const;
};

ProgressionSet chrobak(const UnaryNFA& nfa);

// exists m >= 0 with lo < a + b*m < hi
bool progression_hits_interval(long long a, long long b, long long lo, long long hi);

}  // namespace ltlz
